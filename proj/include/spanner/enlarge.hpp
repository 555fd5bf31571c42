#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spanner/cycle.hpp"
#include "spanner/spanner.hpp"

namespace spanner {

enum class RegimeKind { Auto, Extreme, Good, Approx2, Bucket };

struct RegimeChoice {
    RegimeKind kind = RegimeKind::Auto;
    int t = 3;  // bucket count parameter, only read when kind == Bucket

    static RegimeChoice parse(const std::string& text);
    std::string name() const;
};

// Diagnostic payload produced when a prescribed candidate action fails its
// verification. First-class data, not a crash: it carries enough of the
// instance to reproduce the failure offline.
struct LemmaViolation {
    std::string stage;
    std::string detail;
    int n = 0;
    int k = 0;
    std::vector<Edge> graph_edges;
    std::vector<Edge> spanner_edges;
    std::vector<int> cycle;
};

// Thrown internally; drivers catch it and surface the payload as a result.
struct LemmaViolationError : std::runtime_error {
    explicit LemmaViolationError(LemmaViolation v)
        : std::runtime_error(v.stage + ": " + v.detail), info(std::move(v)) {}
    LemmaViolation info;
};

struct EndangeredPair {
    int s = -1, t = -1;        // endpoints of the endangered G-edge; once tree
                               // normalization ran, s is on the removed-edge side
    int danger_edge = -1;      // edge id of the cycle edge whose loss endangers (s,t)
    std::vector<int> cd_path;  // shortest s-t path with maximum cycle overlap
    int ccd_edges = 0;         // size of that overlap
    int cycle_in = -1;         // first cycle vertex along cd_path
    int cycle_out = -1;        // last cycle vertex along cd_path
    int u_proj = -1, v_proj = -1;  // first cycle vertices on the anchor-tree paths
};

// One iteration's structural state: the oriented smallest cycle, the argmax
// endangered pair, its anchored path, the flanking cycle edges and the anchor
// tree that every selection rule measures against.
struct Frame {
    OrientedCycle sc;  // oriented so position 0 is a and the path segment runs a -> b
    EndangeredPair chosen;
    std::vector<int> p;  // anchored path s .. t
    int a = -1, b = -1;
    int a_prev = -1, b_next = -1;
    int e1_id = -1, e2_id = -1;  // (b, b') and (a', a)
    int seg_ab = 0;              // |SC[a,b]|
    int antipodal_edge_id = -1;
    std::vector<int> tree_parent;  // anchor tree rooted at a; -1 off-tree
    std::vector<int> tree_depth;
    EdgeMask e0;
    int endangered_total = 0;  // pairs that fed the argmax

    Edge e1(const Graph& g) const { return g.edge(e1_id); }
    Edge e2(const Graph& g) const { return g.edge(e2_id); }
    int first_cycle_vertex_on_tree_path(int v) const;
    int tree_path_length(int u, int v) const;
    // True when the tree path from v to the root passes through `top`.
    bool tree_path_through(int v, int top) const;
};

struct IterationRecord {
    int girth_before = 0;
    std::string branch;  // prune | large_cycle | extreme | good | approx2 | bucket
    Edge removed{-1, -1};
    std::vector<Edge> added;
    int endangered = 0;
    bool verified = false;
};

struct EnlargeTrace {
    std::vector<IterationRecord> iterations;
    int in_edges = 0;
    int out_edges = 0;
    long long bound_rhs = 0;
    bool bound_ok = false;
    long long iter_bound_rhs = 0;
    bool iter_bound_ok = true;
    int frames = 0;
    int depen_checks = 0;
    int conse_checks = 0;
    std::string regime;
    int slack = 0;
};

struct EnlargeResult {
    SpannerInstance result;
    EnlargeTrace trace;
    std::optional<LemmaViolation> violation;
    bool ok() const { return !violation.has_value(); }
};

// Driver: repeatedly break every cycle of length <= k+1 while preserving the
// spanner property, dispatching per the regime until girth >= k+2.
EnlargeResult enlarge_girth(const SpannerInstance& inst, RegimeChoice regime = {}, int slack = 8);

std::string trace_to_json(const EnlargeTrace& trace);
std::string violation_to_json(const LemmaViolation& v);
// Serializes g.edges, h.edges and meta.json under dir for offline study.
void write_violation_dir(const std::string& dir, const LemmaViolation& v);

// --- per-step operations -------------------------------------------------

// All (s,t) in E_G with dist_{H\{e}}(s,t) > k, enriched with their
// max-overlap shortest paths. Requires h to be a k-spanner and e to lie on
// its smallest cycle.
std::vector<EndangeredPair> find_endangered(const Graph& g, const EdgeMask& h, int k,
                                            Edge cycle_edge);

// Removes smallest-cycle edges whose removal keeps the spanner property until
// every current smallest-cycle edge is a danger (or girth reached k+2).
SpannerInstance prune_safe_cycle_edges(const SpannerInstance& inst);

struct BreakLargeCycleResult {
    std::optional<Edge> removed;
    std::optional<LemmaViolation> violation;
    bool ok() const { return removed.has_value(); }
};
// Scans sc in oriented order for an edge whose removal verifies.
// Precondition: 2(n_component - k) <= L <= k+1.
BreakLargeCycleResult break_large_cycle(const Graph& g, const EdgeMask& h, int k,
                                        const OrientedCycle& sc);

struct BuildFrameResult {
    std::optional<Frame> frame;
    std::optional<LemmaViolation> violation;
    bool ok() const { return frame.has_value(); }
};
// Argmax pair selection plus anchored-path decomposition and anchor tree.
// Throws InputError when some cycle edge has no endangered pair (prune first).
BuildFrameResult build_frame(const Graph& g, const EdgeMask& h, int k, const OrientedCycle& sc);

struct StepResult {
    std::optional<Edge> removed;
    std::vector<Edge> added;
    std::optional<LemmaViolation> violation;
    int endangered = 0;
    bool ok() const { return !violation.has_value(); }
};

StepResult step_extreme(const Graph& g, const EdgeMask& h, int k, const Frame& frame);
StepResult step_good(const Graph& g, const EdgeMask& h, int k, const Frame& frame);
StepResult step_approx2(const Graph& g, const EdgeMask& h, int k, const Frame& frame);
StepResult step_bucket(const Graph& g, const EdgeMask& h, int k, const Frame& frame, int t);

namespace detail {

// Edge ids of G whose endpoints sit farther than k apart in the masked graph.
std::vector<int> stretch_failures(const Graph& g, const EdgeMask& h, int k);

// Effective regime for a component of nc vertices under auto selection.
RegimeChoice auto_regime(int nc, int k, int slack);

}  // namespace detail

}  // namespace spanner
