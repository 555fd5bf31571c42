#pragma once

#include <memory>
#include <vector>

#include "spanner/graph.hpp"

namespace spanner {

// A candidate k-spanner: base graph, stretch, and the kept edge subset. The
// vertex universe is always the base graph's; the base is shared immutably.
struct SpannerInstance {
    std::shared_ptr<const Graph> base;
    int k = 1;
    EdgeMask sub;

    SpannerInstance(std::shared_ptr<const Graph> base_graph, int stretch, EdgeMask sub_edges);

    static SpannerInstance whole(std::shared_ptr<const Graph> base_graph, int stretch);

    int sub_edge_count() const { return mask_popcount(sub); }
    std::vector<Edge> sub_edges() const { return edges_of_mask(*base, sub); }
};

// Stretch check on edges of the base graph: every (u,v) in E_G must satisfy
// dist_H(u,v) <= k. For unweighted multiplicative spanners this is equivalent
// to the all-pairs condition; the equivalence is itself under test.
bool is_k_spanner(const Graph& g, const EdgeMask& h, int k);
bool is_k_spanner(const SpannerInstance& inst);

}  // namespace spanner
