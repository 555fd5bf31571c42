#include "spanner/enlarge.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <tuple>

#include "json.hpp"
#include "spanner/bfs.hpp"
#include "spanner/paths.hpp"

namespace spanner {

namespace detail {

std::vector<int> stretch_failures(const Graph& g, const EdgeMask& h, int k) {
    std::vector<int> out;
    thread_local std::vector<int> dist;
    for (int u = 0; u < g.vertex_count(); ++u) {
        bool need = false;
        for (auto [v, id] : g.neighbors(u))
            if (v > u && !h[static_cast<size_t>(id)]) {
                need = true;
                break;
            }
        if (!need) continue;
        bounded_dists(g, &h, u, k, dist);
        for (auto [v, id] : g.neighbors(u)) {
            if (v <= u || h[static_cast<size_t>(id)]) continue;
            if (dist[static_cast<size_t>(v)] == -1 || dist[static_cast<size_t>(v)] > k)
                out.push_back(id);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

RegimeChoice auto_regime(int nc, int k, int slack) {
    auto ceil_frac = [](long long a, long long b) { return static_cast<int>((a + b - 1) / b); };
    if (k >= ceil_frac(3LL * nc, 4) + slack) return {RegimeKind::Extreme, 0};
    if (k >= ceil_frac(2LL * nc, 3) + slack) return {RegimeKind::Good, 0};
    if (k >= ceil_frac(4LL * nc, 7) + slack) return {RegimeKind::Approx2, 0};
    if (k >= ceil_frac(12LL * nc, 23) + slack) return {RegimeKind::Bucket, 3};
    // Below the weakest threshold there is no guarantee; run the widest
    // machinery and let verification report what happens.
    return {RegimeKind::Bucket, 4};
}

}  // namespace detail

RegimeChoice RegimeChoice::parse(const std::string& text) {
    if (text == "auto") return {RegimeKind::Auto, 3};
    if (text == "extreme") return {RegimeKind::Extreme, 0};
    if (text == "good") return {RegimeKind::Good, 0};
    if (text == "approx2") return {RegimeKind::Approx2, 0};
    if (text.rfind("bucket:", 0) == 0) {
        int t = std::stoi(text.substr(7));
        if (t < 1 || t > 4) throw InputError("bucket parameter must be in 1..4");
        return {RegimeKind::Bucket, t};
    }
    throw InputError("unknown regime: " + text);
}

std::string RegimeChoice::name() const {
    switch (kind) {
        case RegimeKind::Auto: return "auto";
        case RegimeKind::Extreme: return "extreme";
        case RegimeKind::Good: return "good";
        case RegimeKind::Approx2: return "approx2";
        case RegimeKind::Bucket: return "bucket:" + std::to_string(t);
    }
    return "?";
}

int Frame::first_cycle_vertex_on_tree_path(int v) const {
    int cur = v;
    while (cur != -1) {
        if (sc.contains_vertex(cur)) return cur;
        cur = tree_parent[static_cast<size_t>(cur)];
    }
    return -1;
}

int Frame::tree_path_length(int u, int v) const {
    int du = tree_depth[static_cast<size_t>(u)];
    int dv = tree_depth[static_cast<size_t>(v)];
    if (du < 0 || dv < 0) throw InternalError("tree_path_length on off-tree vertex");
    int len = 0;
    while (du > dv) {
        u = tree_parent[static_cast<size_t>(u)];
        --du;
        ++len;
    }
    while (dv > du) {
        v = tree_parent[static_cast<size_t>(v)];
        --dv;
        ++len;
    }
    while (u != v) {
        u = tree_parent[static_cast<size_t>(u)];
        v = tree_parent[static_cast<size_t>(v)];
        len += 2;
    }
    return len;
}

bool Frame::tree_path_through(int v, int top) const {
    int cur = v;
    while (cur != -1) {
        if (cur == top) return true;
        if (cur == a) return false;
        cur = tree_parent[static_cast<size_t>(cur)];
    }
    return false;
}

namespace {

LemmaViolation make_violation(std::string stage, std::string detail, const Graph& g,
                              const EdgeMask& h, int k, const OrientedCycle* sc) {
    LemmaViolation v;
    v.stage = std::move(stage);
    v.detail = std::move(detail);
    v.n = g.vertex_count();
    v.k = k;
    v.graph_edges = g.edges();
    v.spanner_edges = edges_of_mask(g, h);
    if (sc) v.cycle = sc->vertices();
    return v;
}

// Enriches the endangered pair (s,t) for danger edge `eid`. Runs the
// structural checks: the max-overlap path must use the danger, and its cycle
// part must be one consecutive run on both the path and the cycle whose
// endpoints are the path's first and last cycle vertices.
EndangeredPair enrich_pair(const Graph& g, const EdgeMask& h, int k, const OrientedCycle& sc,
                           int eid, int s, int t, const std::vector<int>& cd,
                           int* conse_checks) {
    EndangeredPair pair;
    pair.s = s;
    pair.t = t;
    pair.danger_edge = eid;
    pair.cd_path = cd;

    int first_cv = -1, last_cv = -1;
    int run_first = -1, run_last = -1;  // indices of the cycle-edge run on the path
    int runs = 0;
    bool prev_on_cycle_edge = false;
    for (size_t i = 0; i + 1 < cd.size(); ++i) {
        bool on = sc.contains_edge(cd[i], cd[i + 1]);
        if (on) {
            if (!prev_on_cycle_edge) {
                ++runs;
                if (run_first < 0) run_first = static_cast<int>(i);
            }
            run_last = static_cast<int>(i + 1);
            ++pair.ccd_edges;
        }
        prev_on_cycle_edge = on;
    }
    for (size_t i = 0; i < cd.size(); ++i) {
        if (sc.contains_vertex(cd[i])) {
            if (first_cv < 0) first_cv = static_cast<int>(i);
            last_cv = static_cast<int>(i);
        }
    }

    auto fail = [&](const std::string& why) {
        throw LemmaViolationError(make_violation(
            "frame_conse",
            "pair (" + std::to_string(s) + "," + std::to_string(t) + "): " + why, g, h, k, &sc));
    };
    if (pair.ccd_edges == 0) fail("max-overlap path carries no cycle edge");
    if (runs != 1) fail("cycle edges not consecutive on the path");
    if (first_cv != run_first || last_cv != run_last)
        fail("path touches the cycle outside its cycle segment");
    auto [eu, ev] = g.edge(eid);
    bool has_danger = false;
    for (int i = run_first; i < run_last; ++i)
        if (make_edge(cd[static_cast<size_t>(i)], cd[static_cast<size_t>(i) + 1]) ==
            make_edge(eu, ev))
            has_danger = true;
    if (!has_danger) fail("danger edge missing from the cycle segment");
    // The segment must advance monotonically along the cycle.
    int dir = 0;
    for (int i = run_first; i < run_last; ++i) {
        int pa = sc.position_of(cd[static_cast<size_t>(i)]);
        int pb = sc.position_of(cd[static_cast<size_t>(i) + 1]);
        int L = sc.length();
        int step = (pb - pa + L) % L == 1 ? 1 : -1;
        if (dir == 0)
            dir = step;
        else if (dir != step)
            fail("cycle segment is not consecutive on the cycle");
    }
    if (conse_checks) ++(*conse_checks);

    pair.cycle_in = cd[static_cast<size_t>(run_first)];
    pair.cycle_out = cd[static_cast<size_t>(run_last)];
    return pair;
}

struct FrameChecks {
    int depen = 0;
    int conse = 0;
};

Frame build_frame_impl(const Graph& g, const EdgeMask& h, int k, const OrientedCycle& sc,
                       FrameChecks& checks) {
    const int L = sc.length();

    // Gather (pair, danger) triples over every cycle edge; the max-overlap
    // path is a property of the pair alone, so cache it.
    std::map<std::pair<int, int>, std::vector<int>> cd_cache;
    struct Triple {
        EndangeredPair pair;
        int e_pos;
    };
    std::vector<Triple> triples;
    EdgeMask scratch = h;
    for (int pos = 0; pos < L; ++pos) {
        Edge e = sc.edge_at(pos);
        auto eid = g.edge_id(e.first, e.second);
        if (!eid || !h[static_cast<size_t>(*eid)])
            throw InternalError("smallest cycle edge missing from spanner");
        scratch[static_cast<size_t>(*eid)] = 0;
        auto failing = detail::stretch_failures(g, scratch, k);
        scratch[static_cast<size_t>(*eid)] = 1;
        if (failing.empty())
            throw InputError("cycle edge (" + std::to_string(e.first) + "," +
                             std::to_string(e.second) +
                             ") endangers no pair; prune before building a frame");
        for (int fid : failing) {
            auto [s, t] = g.edge(fid);
            auto key = std::make_pair(s, t);
            auto it = cd_cache.find(key);
            if (it == cd_cache.end())
                it = cd_cache.emplace(key, max_cycle_overlap_path(g, h, s, t, sc)).first;
            triples.push_back({enrich_pair(g, h, k, sc, *eid, s, t, it->second, &checks.conse),
                               pos});
        }
    }
    if (triples.empty()) throw InternalError("no endangered pair on a sub-(k+2)-girth spanner");

    // argmax |Ccd|, ties toward the lexicographically least (s, t, position).
    const Triple* best = nullptr;
    for (const auto& tr : triples) {
        if (!best) {
            best = &tr;
            continue;
        }
        auto key = [](const Triple& x) {
            return std::make_tuple(-x.pair.ccd_edges, x.pair.s, x.pair.t, x.e_pos);
        };
        if (key(tr) < key(*best)) best = &tr;
    }

    Frame frame{sc, best->pair, best->pair.cd_path, -1, -1, -1, -1, -1, -1,
                0,  -1,         {},                 {}, {}, 0};
    frame.endangered_total = static_cast<int>(cd_cache.size());

    // Anchor the path: a and b are its first/last cycle vertices. Normalize
    // so the tail |p[b,t]| is the longer side; the swap reverses the path and
    // with it the cycle orientation.
    {
        std::vector<int>& p = frame.p;
        auto cycle_span = [&](const std::vector<int>& path) {
            int first = -1, last = -1;
            for (size_t i = 0; i < path.size(); ++i)
                if (sc.contains_vertex(path[i])) {
                    if (first < 0) first = static_cast<int>(i);
                    last = static_cast<int>(i);
                }
            return std::make_pair(first, last);
        };
        auto [ia, ib] = cycle_span(p);
        int prefix = ia;
        int suffix = static_cast<int>(p.size()) - 1 - ib;
        if (suffix < prefix) {
            std::reverse(p.begin(), p.end());
            std::reverse(frame.chosen.cd_path.begin(), frame.chosen.cd_path.end());
            std::swap(frame.chosen.s, frame.chosen.t);
            std::swap(frame.chosen.cycle_in, frame.chosen.cycle_out);
            std::tie(ia, ib) = cycle_span(p);
        }
        frame.a = p[static_cast<size_t>(ia)];
        frame.b = p[static_cast<size_t>(ib)];
        frame.sc = sc.oriented(frame.a, p[static_cast<size_t>(ia) + 1]);
    }

    frame.seg_ab = frame.sc.segment_edge_count(frame.a, frame.b);
    if (frame.seg_ab > L / 2)
        throw LemmaViolationError(
            make_violation("frame_segment", "|SC[a,b]| exceeds half the cycle", g, h, k, &sc));
    frame.a_prev = frame.sc.vertex(L - 1);
    frame.b_next = frame.sc.vertex(frame.seg_ab + 1);
    frame.e1_id = *g.edge_id(frame.b, frame.b_next);
    frame.e2_id = *g.edge_id(frame.a_prev, frame.a);
    {
        auto [du, dv] = g.edge(frame.chosen.danger_edge);
        int pu = frame.sc.position_of(du), pv = frame.sc.position_of(dv);
        int lo = std::min(pu, pv), hi = std::max(pu, pv);
        bool inside = (hi == lo + 1 && hi <= frame.seg_ab);
        if (!inside)
            throw LemmaViolationError(make_violation(
                "frame_segment", "danger edge fell outside SC[a,b]", g, h, k, &sc));
    }

    // Fact check: every shortest path between the chosen pair uses the danger.
    if (count_shortest_paths_avoiding(g, h, frame.chosen.s, frame.chosen.t,
                                      g.edge(frame.chosen.danger_edge)) != 0)
        throw LemmaViolationError(make_violation(
            "frame_depen", "a shortest path avoids the chosen danger edge", g, h, k, &sc));
    ++checks.depen;

    // E0: both off-cycle path segments plus the cycle minus a's antipodal edge.
    frame.antipodal_edge_id = [&] {
        Edge anti = frame.sc.edge_at(L / 2);
        return *g.edge_id(anti.first, anti.second);
    }();
    frame.e0 = empty_mask(g);
    for (int pos = 0; pos < L; ++pos) {
        Edge e = frame.sc.edge_at(pos);
        int id = *g.edge_id(e.first, e.second);
        if (id != frame.antipodal_edge_id) frame.e0[static_cast<size_t>(id)] = 1;
    }
    for (size_t i = 0; i + 1 < frame.p.size(); ++i) {
        int x = frame.p[i], y = frame.p[i + 1];
        if (frame.sc.contains_vertex(x) && frame.sc.contains_vertex(y)) continue;
        frame.e0[static_cast<size_t>(*g.edge_id(x, y))] = 1;
    }

    // Anchor tree: level-synchronous BFS from a that relaxes E0 edges first.
    const int n = g.vertex_count();
    frame.tree_parent.assign(static_cast<size_t>(n), -1);
    frame.tree_depth.assign(static_cast<size_t>(n), -1);
    frame.tree_depth[static_cast<size_t>(frame.a)] = 0;
    std::vector<int> frontier{frame.a}, next;
    while (!frontier.empty()) {
        next.clear();
        for (int pass = 0; pass < 2; ++pass) {
            for (int u : frontier) {
                for (auto [v, id] : g.neighbors(u)) {
                    if (!h[static_cast<size_t>(id)]) continue;
                    bool preferred = frame.e0[static_cast<size_t>(id)];
                    if ((pass == 0) != preferred) continue;
                    if (frame.tree_depth[static_cast<size_t>(v)] != -1) continue;
                    frame.tree_depth[static_cast<size_t>(v)] =
                        frame.tree_depth[static_cast<size_t>(u)] + 1;
                    frame.tree_parent[static_cast<size_t>(v)] = u;
                    next.push_back(v);
                }
            }
        }
        frontier = next;
    }
    DistView ref = bfs(g, h, frame.a);
    for (int v = 0; v < n; ++v) {
        int d = frame.tree_depth[static_cast<size_t>(v)];
        if ((d == -1) != !ref.reachable(v) || (d != -1 && d != ref.hops(v)))
            throw InternalError("anchor tree is not a shortest-path tree");
    }
    for (int id = 0; id < g.edge_count(); ++id) {
        if (!frame.e0[static_cast<size_t>(id)]) continue;
        auto [x, y] = g.edge(id);
        if (frame.tree_parent[static_cast<size_t>(x)] != y &&
            frame.tree_parent[static_cast<size_t>(y)] != x)
            throw LemmaViolationError(make_violation(
                "frame_tree",
                "required edge (" + std::to_string(x) + "," + std::to_string(y) +
                    ") missing from the anchor tree",
                g, h, k, &sc));
    }
    return frame;
}

// Pairs endangered by e2 on `cur` (which already lacks e2), normalized so the
// first endpoint's tree path to the root uses e2.
struct E2Pair {
    int u = -1, v = -1;
    int u_proj = -1, v_proj = -1;
    int edge_id = -1;
};

std::vector<E2Pair> e2_endangered(const Graph& g, const EdgeMask& cur, int k,
                                  const Frame& frame) {
    std::vector<E2Pair> pairs;
    for (int id : detail::stretch_failures(g, cur, k)) {
        auto [x, y] = g.edge(id);
        bool xu = frame.tree_path_through(x, frame.a_prev);
        bool yu = frame.tree_path_through(y, frame.a_prev);
        if (xu == yu)
            throw LemmaViolationError(make_violation(
                "frame_dichotomy",
                "pair (" + std::to_string(x) + "," + std::to_string(y) +
                    "): removed edge lies on " + (xu ? "both" : "neither") +
                    " anchor-tree path",
                g, cur, k, &frame.sc));
        E2Pair p;
        p.u = xu ? x : y;
        p.v = xu ? y : x;
        p.edge_id = id;
        p.u_proj = frame.first_cycle_vertex_on_tree_path(p.u);
        p.v_proj = frame.first_cycle_vertex_on_tree_path(p.v);
        if (p.u_proj < 0 || p.v_proj < 0)
            throw InternalError("endangered pair endpoint off the anchor tree");
        pairs.push_back(p);
    }
    return pairs;
}

bool edge_addition_is_short_cycle_free(const Graph& g, const EdgeMask& before, int k,
                                       int edge_id) {
    auto [u, v] = g.edge(edge_id);
    return !detail::bounded_dist(g, &before, u, v, k).has_value();
}

StepResult violation_step(LemmaViolation v) {
    StepResult r;
    r.violation = std::move(v);
    return r;
}

}  // namespace

std::vector<EndangeredPair> find_endangered(const Graph& g, const EdgeMask& h, int k,
                                            Edge cycle_edge) {
    auto eid = g.edge_id(cycle_edge.first, cycle_edge.second);
    if (!eid || !h[static_cast<size_t>(*eid)])
        throw InputError("edge is not part of the spanner");
    if (!is_k_spanner(g, h, k)) throw InputError("find_endangered expects a k-spanner");
    auto sc = girth_and_smallest_cycle(g, h);
    if (!sc || !sc->contains_edge(cycle_edge.first, cycle_edge.second))
        throw InputError("edge is not on the smallest cycle of the spanner");

    EdgeMask cur = h;
    cur[static_cast<size_t>(*eid)] = 0;
    std::vector<EndangeredPair> out;
    for (int fid : detail::stretch_failures(g, cur, k)) {
        auto [s, t] = g.edge(fid);
        auto cd = max_cycle_overlap_path(g, h, s, t, *sc);
        out.push_back(enrich_pair(g, h, k, *sc, *eid, s, t, cd, nullptr));
    }
    return out;
}

SpannerInstance prune_safe_cycle_edges(const SpannerInstance& inst) {
    const Graph& g = *inst.base;
    EdgeMask h = inst.sub;
    for (;;) {
        auto sc = girth_and_smallest_cycle(g, h);
        if (!sc || sc->length() >= inst.k + 2) break;
        bool removed = false;
        for (int pos = 0; pos < sc->length() && !removed; ++pos) {
            Edge e = sc->edge_at(pos);
            int id = *g.edge_id(e.first, e.second);
            h[static_cast<size_t>(id)] = 0;
            if (is_k_spanner(g, h, inst.k))
                removed = true;
            else
                h[static_cast<size_t>(id)] = 1;
        }
        if (!removed) break;  // every cycle edge is a danger for some pair
    }
    return SpannerInstance(inst.base, inst.k, std::move(h));
}

BreakLargeCycleResult break_large_cycle(const Graph& g, const EdgeMask& h, int k,
                                        const OrientedCycle& sc) {
    BreakLargeCycleResult res;
    EdgeMask cur = h;
    for (int pos = 0; pos < sc.length(); ++pos) {
        Edge e = sc.edge_at(pos);
        auto id = g.edge_id(e.first, e.second);
        if (!id || !h[static_cast<size_t>(*id)])
            throw InputError("cycle edge missing from spanner");
        cur[static_cast<size_t>(*id)] = 0;
        if (is_k_spanner(g, cur, k)) {
            res.removed = e;
            return res;
        }
        cur[static_cast<size_t>(*id)] = 1;
    }
    res.violation = make_violation("large_cycle",
                                   "no cycle edge is removable despite 2(n-k) <= L <= k+1", g, h,
                                   k, &sc);
    return res;
}

BuildFrameResult build_frame(const Graph& g, const EdgeMask& h, int k, const OrientedCycle& sc) {
    BuildFrameResult res;
    FrameChecks checks;
    try {
        res.frame = build_frame_impl(g, h, k, sc, checks);
    } catch (const LemmaViolationError& e) {
        res.violation = e.info;
    }
    return res;
}

StepResult step_extreme(const Graph& g, const EdgeMask& h, int k, const Frame& frame) {
    StepResult res;
    EdgeMask cur = h;
    for (int eid : {frame.e1_id, frame.e2_id}) {
        cur[static_cast<size_t>(eid)] = 0;
        if (is_k_spanner(g, cur, k)) {
            res.removed = g.edge(eid);
            return res;
        }
        cur[static_cast<size_t>(eid)] = 1;
    }
    return violation_step(make_violation(
        "extreme", "neither flanking cycle edge is removable", g, h, k, &frame.sc));
}

StepResult step_good(const Graph& g, const EdgeMask& h, int k, const Frame& frame) {
    StepResult res;
    res.removed = g.edge(frame.e2_id);
    EdgeMask cur = h;
    cur[static_cast<size_t>(frame.e2_id)] = 0;
    if (is_k_spanner(g, cur, k)) return res;

    try {
        auto pairs = e2_endangered(g, cur, k, frame);
        res.endangered = static_cast<int>(pairs.size());
        // v' closest to a along the orientation; ties by u' closest to a',
        // then lexicographically.
        const E2Pair* pick = nullptr;
        auto key = [&](const E2Pair& p) {
            int pv = frame.sc.position_of(p.v_proj);
            int du = frame.sc.segment_edge_count(p.u_proj, frame.a_prev);
            return std::make_tuple(pv, du, std::min(p.u, p.v), std::max(p.u, p.v));
        };
        for (const auto& p : pairs)
            if (!pick || key(p) < key(*pick)) pick = &p;
        if (!pick) throw InternalError("spanner check failed without endangered pairs");
        if (!edge_addition_is_short_cycle_free(g, cur, k, pick->edge_id))
            throw InternalError("endangered pair closer than k before addition");
        cur[static_cast<size_t>(pick->edge_id)] = 1;
        res.added.push_back(g.edge(pick->edge_id));
        if (!is_k_spanner(g, cur, k))
            return violation_step(make_violation(
                "good", "spanner still broken after the prescribed single addition", g, cur, k,
                &frame.sc));
    } catch (const LemmaViolationError& e) {
        return violation_step(e.info);
    }
    return res;
}

namespace {

// Shared two-round addition rule: argmin |SC[u',v']| within `eligible`,
// recomputing endangered pairs against the augmented graph for round two.
StepResult two_round_additions(const Graph& g, int k, const Frame& frame, const char* stage,
                               const std::function<bool(const E2Pair&)>& eligible,
                               EdgeMask& cur, std::vector<int>& added_ids) {
    StepResult res;
    auto key = [&](const E2Pair& p) {
        int seg = frame.sc.segment_edge_count(p.u_proj, p.v_proj);
        return std::make_tuple(seg, std::min(p.u, p.v), std::max(p.u, p.v));
    };
    for (int round = 0; round < 2; ++round) {
        auto pairs = e2_endangered(g, cur, k, frame);
        if (round == 0) res.endangered = static_cast<int>(pairs.size());
        const E2Pair* pick = nullptr;
        for (const auto& p : pairs) {
            if (!eligible(p)) continue;
            if (std::find(added_ids.begin(), added_ids.end(), p.edge_id) != added_ids.end())
                return violation_step(make_violation(
                    stage, "already-added pair re-selected", g, cur, k, &frame.sc));
            if (!pick || key(p) < key(*pick)) pick = &p;
        }
        if (!pick) return res;  // nothing left in scope
        if (!edge_addition_is_short_cycle_free(g, cur, k, pick->edge_id))
            throw InternalError("endangered pair closer than k before addition");
        added_ids.push_back(pick->edge_id);
        res.added.push_back(g.edge(pick->edge_id));
        cur[static_cast<size_t>(pick->edge_id)] = 1;
    }
    // Budget spent: anything still endangered in scope is a violation.
    auto pairs = e2_endangered(g, cur, k, frame);
    for (const auto& p : pairs)
        if (eligible(p))
            return violation_step(make_violation(
                stage, "pairs remain endangered after two additions", g, cur, k, &frame.sc));
    return res;
}

}  // namespace

StepResult step_approx2(const Graph& g, const EdgeMask& h, int k, const Frame& frame) {
    StepResult res;
    res.removed = g.edge(frame.e2_id);
    EdgeMask cur = h;
    cur[static_cast<size_t>(frame.e2_id)] = 0;
    if (is_k_spanner(g, cur, k)) return res;
    try {
        std::vector<int> added_ids;
        StepResult inner = two_round_additions(g, k, frame, "approx2",
                                               [](const E2Pair&) { return true; }, cur,
                                               added_ids);
        if (inner.violation) return inner;
        res.added = inner.added;
        res.endangered = inner.endangered;
        if (!is_k_spanner(g, cur, k))
            return violation_step(make_violation(
                "approx2", "spanner still broken after two additions", g, cur, k, &frame.sc));
    } catch (const LemmaViolationError& e) {
        return violation_step(e.info);
    }
    return res;
}

StepResult step_bucket(const Graph& g, const EdgeMask& h, int k, const Frame& frame, int t) {
    if (t < 1 || t > 4) throw InputError("bucket parameter must be in 1..4");
    StepResult res;
    res.removed = g.edge(frame.e2_id);
    EdgeMask cur = h;
    cur[static_cast<size_t>(frame.e2_id)] = 0;
    if (is_k_spanner(g, cur, k)) return res;

    const int width = (frame.seg_ab + t - 1) / t;
    auto bucket_of = [&](const E2Pair& p) -> std::pair<int, int> {
        int key_u = frame.tree_depth[static_cast<size_t>(p.u_proj)];
        int key_v = frame.tree_path_length(p.v_proj, frame.a_prev);
        int i = (key_u + width - 1) / width;
        int j = (key_v + width - 1) / width;
        if (i < 1 || i > t || j < 1 || j > t)
            throw LemmaViolationError(make_violation(
                "bucket_partition",
                "pair (" + std::to_string(p.u) + "," + std::to_string(p.v) +
                    ") projects outside the t x t partition (keys " + std::to_string(key_u) +
                    "," + std::to_string(key_v) + ", width " + std::to_string(width) + ")",
                g, cur, k, &frame.sc));
        return {i, j};
    };

    try {
        {
            auto pairs = e2_endangered(g, cur, k, frame);
            res.endangered = static_cast<int>(pairs.size());
            for (const auto& p : pairs) bucket_of(p);  // partition coverage check
        }
        std::vector<int> added_ids;
        for (int i = 1; i <= t; ++i) {
            for (int j = 1; j <= t; ++j) {
                StepResult inner = two_round_additions(
                    g, k, frame, "bucket",
                    [&](const E2Pair& p) { return bucket_of(p) == std::make_pair(i, j); }, cur,
                    added_ids);
                if (inner.violation) return inner;
                for (Edge e : inner.added) res.added.push_back(e);
            }
        }
        if (!is_k_spanner(g, cur, k))
            return violation_step(make_violation(
                "bucket", "spanner still broken after all buckets", g, cur, k, &frame.sc));
    } catch (const LemmaViolationError& e) {
        return violation_step(e.info);
    }
    return res;
}

namespace {

long long regime_bound_rhs(const RegimeChoice& regime, long long in_edges, long long nc) {
    switch (regime.kind) {
        case RegimeKind::Extreme:
        case RegimeKind::Good:
            return in_edges;
        case RegimeKind::Approx2:
            return nc + 2 * (in_edges - nc) + 1;
        case RegimeKind::Bucket: {
            long long f = 2LL * regime.t * regime.t;
            return nc + f * (in_edges - nc) + f;
        }
        case RegimeKind::Auto:
            break;
    }
    throw InternalError("regime_bound_rhs on unresolved regime");
}

}  // namespace

EnlargeResult enlarge_girth(const SpannerInstance& inst, RegimeChoice regime, int slack) {
    const Graph& g = *inst.base;
    const int k = inst.k;
    if (!is_k_spanner(inst)) throw InputError("enlarge_girth input is not a k-spanner");

    EnlargeTrace trace;
    trace.regime = regime.name();
    trace.slack = slack;
    trace.in_edges = mask_popcount(inst.sub);

    auto comp = g.component_labels();
    int comp_count = g.component_count();
    std::vector<int> comp_n(static_cast<size_t>(comp_count), 0);
    std::vector<long long> comp_in(static_cast<size_t>(comp_count), 0);
    std::vector<long long> comp_removals(static_cast<size_t>(comp_count), 0);
    for (int v = 0; v < g.vertex_count(); ++v) ++comp_n[static_cast<size_t>(comp[v])];
    for (int id = 0; id < g.edge_count(); ++id)
        if (inst.sub[static_cast<size_t>(id)])
            ++comp_in[static_cast<size_t>(comp[g.edge(id).first])];

    auto effective = [&](int nc) {
        return regime.kind == RegimeKind::Auto ? detail::auto_regime(nc, k, slack) : regime;
    };

    EdgeMask h = inst.sub;
    EdgeMask untouched = inst.sub;  // original spanner edges never yet removed
    std::optional<LemmaViolation> violation;

    auto apply_removal = [&](Edge e) {
        int id = *g.edge_id(e.first, e.second);
        if (!untouched[static_cast<size_t>(id)])
            throw InternalError("removed edge was not an untouched original edge");
        untouched[static_cast<size_t>(id)] = 0;
        h[static_cast<size_t>(id)] = 0;
        ++comp_removals[static_cast<size_t>(comp[e.first])];
    };

    while (!violation) {
        auto sc = girth_and_smallest_cycle(g, h);
        if (!sc || sc->length() >= k + 2) break;
        const int L = sc->length();
        const int cid = comp[sc->vertex(0)];
        const int nc = comp_n[static_cast<size_t>(cid)];

        IterationRecord rec;
        rec.girth_before = L;

        if (2 * (nc - k) <= L) {
            rec.branch = "large_cycle";
            auto r = break_large_cycle(g, h, k, *sc);
            if (!r.ok()) {
                violation = r.violation;
                rec.verified = false;
                trace.iterations.push_back(std::move(rec));
                break;
            }
            rec.removed = *r.removed;
            rec.verified = true;
            apply_removal(*r.removed);
            trace.iterations.push_back(std::move(rec));
            continue;
        }

        // Small-cycle branch: prune one safely removable edge if any.
        {
            bool pruned = false;
            for (int pos = 0; pos < L && !pruned; ++pos) {
                Edge e = sc->edge_at(pos);
                int id = *g.edge_id(e.first, e.second);
                h[static_cast<size_t>(id)] = 0;
                if (is_k_spanner(g, h, k)) {
                    h[static_cast<size_t>(id)] = 1;  // reapply through the accounting path
                    rec.branch = "prune";
                    rec.removed = e;
                    rec.verified = true;
                    apply_removal(e);
                    pruned = true;
                } else {
                    h[static_cast<size_t>(id)] = 1;
                }
            }
            if (pruned) {
                trace.iterations.push_back(std::move(rec));
                continue;
            }
        }

        // Every cycle edge is a danger: build the frame and run the regime step.
        FrameChecks checks;
        Frame frame{*sc, {}, {}, -1, -1, -1, -1, -1, -1, 0, -1, {}, {}, {}, 0};
        try {
            frame = build_frame_impl(g, h, k, *sc, checks);
        } catch (const LemmaViolationError& e) {
            violation = e.info;
            rec.branch = "frame";
            rec.verified = false;
            trace.iterations.push_back(std::move(rec));
            break;
        }
        ++trace.frames;
        trace.depen_checks += checks.depen;
        trace.conse_checks += checks.conse;

        RegimeChoice eff = effective(nc);
        StepResult step;
        switch (eff.kind) {
            case RegimeKind::Extreme:
                rec.branch = "extreme";
                step = step_extreme(g, h, k, frame);
                break;
            case RegimeKind::Good:
                rec.branch = "good";
                step = step_good(g, h, k, frame);
                break;
            case RegimeKind::Approx2:
                rec.branch = "approx2";
                step = step_approx2(g, h, k, frame);
                break;
            case RegimeKind::Bucket:
                rec.branch = "bucket";
                step = step_bucket(g, h, k, frame, eff.t);
                break;
            case RegimeKind::Auto:
                throw InternalError("auto regime not resolved");
        }
        rec.endangered = frame.endangered_total;
        if (!step.ok()) {
            violation = step.violation;
            rec.verified = false;
            trace.iterations.push_back(std::move(rec));
            break;
        }
        rec.removed = *step.removed;
        rec.added = step.added;
        rec.verified = true;
        apply_removal(*step.removed);
        for (Edge e : step.added) h[static_cast<size_t>(*g.edge_id(e.first, e.second))] = 1;
        trace.iterations.push_back(std::move(rec));

        if (comp_removals[static_cast<size_t>(cid)] >
            comp_in[static_cast<size_t>(cid)] - nc + 1) {
            violation = make_violation("iteration_bound",
                                       "component exceeded its removal budget", g, h, k,
                                       sc ? &*sc : nullptr);
            break;
        }
    }

    trace.out_edges = mask_popcount(h);
    trace.bound_rhs = 0;
    trace.bound_ok = true;
    trace.iter_bound_rhs = 0;
    std::vector<long long> comp_out(static_cast<size_t>(comp_count), 0);
    for (int id = 0; id < g.edge_count(); ++id)
        if (h[static_cast<size_t>(id)]) ++comp_out[static_cast<size_t>(comp[g.edge(id).first])];
    for (int c = 0; c < comp_count; ++c) {
        int nc = comp_n[static_cast<size_t>(c)];
        RegimeChoice eff = effective(nc);
        long long rhs = regime_bound_rhs(eff, comp_in[static_cast<size_t>(c)], nc);
        trace.bound_rhs += rhs;
        if (comp_out[static_cast<size_t>(c)] > rhs) trace.bound_ok = false;
        if (eff.kind == RegimeKind::Extreme) {
            // Subset requirement: nothing may have been added.
            for (int id = 0; id < g.edge_count(); ++id)
                if (comp[g.edge(id).first] == c && h[static_cast<size_t>(id)] &&
                    !inst.sub[static_cast<size_t>(id)])
                    trace.bound_ok = false;
        }
        long long iter_rhs = std::max(0LL, comp_in[static_cast<size_t>(c)] - nc + 1);
        trace.iter_bound_rhs += iter_rhs;
        if (comp_removals[static_cast<size_t>(c)] > iter_rhs) trace.iter_bound_ok = false;
    }

    EnlargeResult out{SpannerInstance(inst.base, k, std::move(h)), std::move(trace), violation};
    return out;
}

namespace {

nlohmann::ordered_json trace_json(const EnlargeTrace& t) {
    nlohmann::ordered_json j;
    j["iterations"] = nlohmann::ordered_json::array();
    for (const auto& it : t.iterations) {
        nlohmann::ordered_json rec;
        rec["girth_before"] = it.girth_before;
        rec["branch"] = it.branch;
        rec["removed"] = {it.removed.first, it.removed.second};
        auto added = nlohmann::ordered_json::array();
        for (auto [u, v] : it.added) added.push_back({u, v});
        rec["added"] = added;
        rec["endangered"] = it.endangered;
        rec["verified"] = it.verified;
        j["iterations"].push_back(rec);
    }
    j["totals"] = {{"in_edges", t.in_edges},
                   {"out_edges", t.out_edges},
                   {"bound_rhs", t.bound_rhs},
                   {"bound_ok", t.bound_ok},
                   {"iterations", static_cast<int>(t.iterations.size())},
                   {"iter_bound_rhs", t.iter_bound_rhs},
                   {"iter_bound_ok", t.iter_bound_ok},
                   {"frames", t.frames},
                   {"depen_checks", t.depen_checks},
                   {"conse_checks", t.conse_checks},
                   {"regime", t.regime},
                   {"slack", t.slack}};
    return j;
}

}  // namespace

std::string trace_to_json(const EnlargeTrace& trace) { return trace_json(trace).dump(2); }

std::string violation_to_json(const LemmaViolation& v) {
    nlohmann::ordered_json j;
    j["stage"] = v.stage;
    j["detail"] = v.detail;
    j["n"] = v.n;
    j["k"] = v.k;
    j["cycle"] = v.cycle;
    return j.dump(2);
}

void write_violation_dir(const std::string& dir, const LemmaViolation& v) {
    std::filesystem::create_directories(dir);
    Graph g(v.n, v.graph_edges);
    write_edge_list_file(dir + "/g.edges", g);
    write_edge_list_file(dir + "/h.edges", g, mask_from_edges(g, v.spanner_edges), "g.edges");
    std::ofstream meta(dir + "/meta.json");
    meta << violation_to_json(v) << '\n';
}

}  // namespace spanner
