#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "spanner/spanner.hpp"

namespace spanner {

// Derived layout of the hard instance: a length-k cycle split into six
// segments, six arcs of length p = 2*floor(k/6)+9 between alternating
// anchors, and an optional pendant path padding the graph to n vertices.
struct GadgetSpec {
    int k = 0;
    int n = 0;
    std::array<int, 6> segment_lengths{};  // sum to k
    int arc_length = 0;                    // p
    int core_size = 0;                     // n' = k + 6p - 6
    std::array<int, 6> anchors{};          // cycle indices of a..f
    int pendant_length = 0;                // n - n'
};

struct GadgetResult {
    Graph g;
    GadgetSpec spec;
    EdgeMask baseline;                  // cycle + arc edges minus the bridging ones
    std::vector<int> cycle_vertices;    // the length-k cycle in order
    // Arc i connects anchor_pairs[i].first/second; arc_edges[i] lists the arc's
    // edge ids in path order; bridge_edge[i] is the one excluded from baseline.
    std::array<std::pair<int, int>, 6> anchor_pairs{};
    std::array<std::vector<int>, 6> arc_edges{};
    std::array<int, 6> bridge_edge{};
};

inline constexpr int kGadgetMinStretch = 36;

int gadget_arc_length(int k);
int gadget_core_size(int k);

// Builds the n-vertex instance for stretch k and self-verifies: the baseline
// subgraph has exactly n edges, is a k-spanner, and its core girth equals k.
GadgetResult gen_lower_bound(int k, int n);

struct ArcInequalityReport {
    struct Violation {
        Edge segment_edge;
        int arc_index;
        Edge arc_edge;
        int dist;  // distance between the arc edge's endpoints after both removals
    };
    std::vector<Violation> violations;
    long long checks = 0;
};

// For every cycle-segment edge e, covering arc A and arc edge e', checks
// dist_{G \ {e,e'}}(u,v) >= k+1 for e' = (u,v) by direct BFS.
ArcInequalityReport check_arc_inequality(const GadgetResult& gadget);

struct RandomModel {
    enum class Kind { Gnp, CyclePlusChords, GreedySeeded } kind = Kind::Gnp;
    double p = 0.3;   // gnp edge probability
    int chords = 0;   // extra chords on the cycle
    int k = 2;        // stretch for the greedy-seeded model
    bool require_connected = false;  // gnp retries until connected when set

    static RandomModel parse(const std::string& text);
    std::string name() const;
};

// Seeded, bit-reproducible generator for the test families.
Graph gen_random(int n, const RandomModel& model, std::uint64_t seed);

}  // namespace spanner
