#pragma once

#include <cstdint>
#include <vector>

#include "spanner/cycle.hpp"
#include "spanner/graph.hpp"

namespace spanner {

// Shortest s-t path in the masked subgraph maximizing the number of its edges
// that lie on sc. Longest-path DP over the shortest-path DAG from s, cycle
// edges weighted 1 and all others 0; ties resolved toward the smallest next
// vertex. Throws InputError when s and t are disconnected.
std::vector<int> max_cycle_overlap_path(const Graph& g, const EdgeMask& h, int s, int t,
                                        const OrientedCycle& sc);

// Number of s-t paths in h \ {avoid} whose length equals dist_h(s,t).
// Zero certifies that every shortest s-t path of h uses the avoided edge.
std::uint64_t count_shortest_paths_avoiding(const Graph& g, const EdgeMask& h, int s, int t,
                                            Edge avoid);

}  // namespace spanner
