#pragma once

#include <optional>
#include <vector>

#include "spanner/graph.hpp"

namespace spanner {

// Unweighted shortest-path view from one source. Unreachable vertices are an
// explicit state, never a sentinel leaking into arithmetic.
class DistView {
public:
    DistView(int source, std::vector<int> dist, std::vector<int> parent)
        : source_(source), dist_(std::move(dist)), parent_(std::move(parent)) {}

    int source() const { return source_; }
    int size() const { return static_cast<int>(dist_.size()); }

    bool reachable(int v) const { return dist_[static_cast<size_t>(v)] >= 0; }

    int hops(int v) const {
        if (!reachable(v)) throw InternalError("hops() queried for unreachable vertex");
        return dist_[static_cast<size_t>(v)];
    }

    std::optional<int> try_hops(int v) const {
        if (!reachable(v)) return std::nullopt;
        return dist_[static_cast<size_t>(v)];
    }

    // BFS predecessor; -1 for the source and unreachable vertices.
    int parent(int v) const { return parent_[static_cast<size_t>(v)]; }

private:
    int source_;
    std::vector<int> dist_;
    std::vector<int> parent_;
};

DistView bfs(const Graph& g, int src);
DistView bfs(const Graph& g, const EdgeMask& within, int src);

namespace detail {

// Distance from src to dst using only masked edges (nullptr = whole graph),
// exploring no deeper than cap. nullopt when dst is farther than cap.
std::optional<int> bounded_dist(const Graph& g, const EdgeMask* within, int src, int dst, int cap);

// Single-source distances with a depth cap; unreached entries are -1.
void bounded_dists(const Graph& g, const EdgeMask* within, int src, int cap,
                   std::vector<int>& dist_out);

}  // namespace detail

}  // namespace spanner
