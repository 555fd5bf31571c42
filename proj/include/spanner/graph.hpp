#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spanner {

// Raised for malformed caller input (bad files, broken invariants, misuse).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an internal consistency check fails; indicates a bug here.
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Undirected edge, stored canonically as (min, max).
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Immutable simple undirected graph. Vertices are 0..n-1, edges are kept
// sorted canonically and addressed by a stable edge id (index into edges()).
// Subgraphs never copy the vertex universe; they are EdgeMask views.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_[static_cast<size_t>(id)]; }

    // Neighbors of v as (neighbor, edge_id), sorted by neighbor.
    std::span<const std::pair<int, int>> neighbors(int v) const {
        return {adj_[static_cast<size_t>(v)].data(), adj_[static_cast<size_t>(v)].size()};
    }

    std::optional<int> edge_id(int u, int v) const;
    bool has_edge(int u, int v) const { return edge_id(u, v).has_value(); }

    // Per-vertex component label (0-based, in order of first vertex).
    std::vector<int> component_labels() const;
    int component_count() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

// Edge-subset view over a graph, indexed by edge id. 1 byte per edge keeps
// BFS filtering branch-cheap.
using EdgeMask = std::vector<char>;

EdgeMask full_mask(const Graph& g);
EdgeMask empty_mask(const Graph& g);
int mask_popcount(const EdgeMask& m);
EdgeMask mask_from_edges(const Graph& g, const std::vector<Edge>& edges);
std::vector<Edge> edges_of_mask(const Graph& g, const EdgeMask& m);

// Edge-list text format: first non-comment line "n m", then m lines "u v".
// Blank lines and lines starting with '#' are ignored.
Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list_file(const std::string& path, const Graph& g);
// Subgraph serialization; emits "# base: <base_name>" before the header.
void write_edge_list(std::ostream& out, const Graph& g, const EdgeMask& sub,
                     const std::string& base_name);
void write_edge_list_file(const std::string& path, const Graph& g, const EdgeMask& sub,
                          const std::string& base_name);

}  // namespace spanner
