#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "spanner/graph.hpp"

namespace spanner {

// A simple cycle with a fixed traversal direction. Positions are indices into
// the stored vertex sequence; segment arithmetic follows the orientation.
class OrientedCycle {
public:
    explicit OrientedCycle(std::vector<int> verts);

    int length() const { return static_cast<int>(verts_.size()); }
    const std::vector<int>& vertices() const { return verts_; }
    int vertex(int pos) const { return verts_[static_cast<size_t>(mod(pos))]; }

    // -1 when v is not on the cycle.
    int position_of(int v) const {
        auto it = pos_.find(v);
        return it == pos_.end() ? -1 : it->second;
    }
    bool contains_vertex(int v) const { return pos_.count(v) > 0; }

    // Edge leaving position pos along the orientation, canonical pair.
    Edge edge_at(int pos) const { return make_edge(vertex(pos), vertex(pos + 1)); }
    std::pair<int, int> oriented_edge_at(int pos) const { return {vertex(pos), vertex(pos + 1)}; }

    // Position i such that edge_at(i) == (u,v); -1 when (u,v) is not a cycle edge.
    int edge_position(int u, int v) const;
    bool contains_edge(int u, int v) const { return edge_position(u, v) >= 0; }

    // Number of edges on the oriented segment from_v -> to_v (0 when equal).
    int segment_edge_count(int from_v, int to_v) const;
    std::vector<int> segment_vertices(int from_v, int to_v) const;

    OrientedCycle reversed() const;
    OrientedCycle rotated_to(int start_v) const;
    // Rotate and flip as needed so the sequence starts (start_v, next_v, ...).
    OrientedCycle oriented(int start_v, int next_v) const;

    // Smallest vertex first, then its smaller cycle-neighbor as successor.
    std::vector<int> canonical_rotation() const;

private:
    int mod(int i) const {
        int l = length();
        return ((i % l) + l) % l;
    }
    std::vector<int> verts_;
    std::unordered_map<int, int> pos_;
};

// Smallest cycle of the (masked) graph, or nullopt for a forest. Among all
// minimum-length cycles the one with lexicographically least canonical
// rotation is returned, so results are reproducible.
std::optional<OrientedCycle> girth_and_smallest_cycle(const Graph& g);
std::optional<OrientedCycle> girth_and_smallest_cycle(const Graph& g, const EdgeMask& within);

// Girth value only (same search, no extraction); nullopt for forests.
std::optional<int> girth_value(const Graph& g, const EdgeMask* within);

}  // namespace spanner
