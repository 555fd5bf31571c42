#include "spanner/oracle.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "spanner/greedy.hpp"

namespace spanner {

namespace {

// Dense bitmask engine for the brute-force searches. Vertices are compacted
// to those with positive degree, so up to 2 * kOracleEdgeCap = 44 slots.
struct TinyCtx {
    const Graph* g = nullptr;
    int k = 0;
    int m = 0;
    int na = 0;                            // active vertices
    std::vector<int> to_active;            // graph vertex -> active slot (-1 idle)
    std::vector<std::pair<int, int>> ends;  // edge id -> active endpoints
    std::uint32_t all_edges = 0;

    explicit TinyCtx(const Graph& graph, int stretch) : g(&graph), k(stretch) {
        m = graph.edge_count();
        if (m > kOracleEdgeCap)
            throw InputError("oracle refuses graphs with more than " +
                             std::to_string(kOracleEdgeCap) + " edges (got " +
                             std::to_string(m) + ")");
        to_active.assign(static_cast<size_t>(graph.vertex_count()), -1);
        for (int v = 0; v < graph.vertex_count(); ++v)
            if (!graph.neighbors(v).empty()) {
                to_active[static_cast<size_t>(v)] = na++;
            }
        ends.reserve(static_cast<size_t>(m));
        for (int id = 0; id < m; ++id) {
            auto [u, v] = graph.edge(id);
            ends.emplace_back(to_active[static_cast<size_t>(u)],
                              to_active[static_cast<size_t>(v)]);
        }
        all_edges = m == 32 ? 0xffffffffu : ((1u << m) - 1u);
    }

    void build_adj(std::uint32_t edges, std::uint64_t* adj) const {
        for (int i = 0; i < na; ++i) adj[i] = 0;
        std::uint32_t rest = edges;
        while (rest) {
            int id = std::countr_zero(rest);
            rest &= rest - 1;
            auto [a, b] = ends[static_cast<size_t>(id)];
            adj[a] |= 1ull << b;
            adj[b] |= 1ull << a;
        }
    }

    // Hop distance between active slots within cap; -1 when farther.
    int dist(const std::uint64_t* adj, int a, int b, int cap) const {
        if (a == b) return 0;
        std::uint64_t reach = 1ull << a;
        std::uint64_t frontier = reach;
        for (int d = 1; d <= cap; ++d) {
            std::uint64_t nxt = 0;
            std::uint64_t f = frontier;
            while (f) {
                int x = std::countr_zero(f);
                f &= f - 1;
                nxt |= adj[x];
            }
            nxt &= ~reach;
            if (!nxt) return -1;
            if (nxt >> b & 1) return d;
            reach |= nxt;
            frontier = nxt;
        }
        return -1;
    }

    bool spanner_ok(std::uint32_t cand, std::uint64_t* adj) const {
        build_adj(cand, adj);
        std::uint32_t missing = all_edges & ~cand;
        while (missing) {
            int id = std::countr_zero(missing);
            missing &= missing - 1;
            auto [a, b] = ends[static_cast<size_t>(id)];
            if (dist(adj, a, b, k) < 0) return false;
        }
        return true;
    }

    int girth(std::uint32_t cand, std::uint64_t* adj) const {
        int best = kGirthInfinite;
        std::uint32_t rest = cand;
        while (rest) {
            int id = std::countr_zero(rest);
            rest &= rest - 1;
            auto [a, b] = ends[static_cast<size_t>(id)];
            int cap = best == kGirthInfinite ? na : best - 2;
            build_adj(cand & ~(1u << id), adj);
            int d = dist(adj, a, b, cap);
            if (d >= 0 && d + 1 < best) best = d + 1;
        }
        return best;
    }
};

struct SearchOutcome {
    int opt = -1;
    std::uint64_t count = 0;
    std::map<int, std::uint64_t> girth_profile;
    std::vector<std::uint32_t> stored;
    bool capped = false;
    bool any_high = false;  // some witness girth >= girth_bound
    bool all_high = true;   // every witness girth >= girth_bound
    std::uint32_t first_high = 0;
};

// Ascending-size subset search. At the first feasible size, witnesses are
// enumerated exhaustively when enumerate_all, or until the first one
// otherwise; stop_early_on_high additionally cuts the level scan as soon as a
// witness clears girth_bound (classification use).
SearchOutcome search_min_spanner(const TinyCtx& ctx, bool enumerate_all, std::size_t witness_cap,
                                 int girth_bound, bool stop_early_on_high) {
    SearchOutcome out;
    std::uint64_t adj[64];

    std::uint32_t forced = 0;
    for (int id = 0; id < ctx.m; ++id) {
        auto [a, b] = ctx.ends[static_cast<size_t>(id)];
        ctx.build_adj(ctx.all_edges & ~(1u << id), adj);
        if (ctx.dist(adj, a, b, ctx.k) < 0) forced |= 1u << id;
    }
    std::vector<int> free_ids;
    for (int id = 0; id < ctx.m; ++id)
        if (!(forced >> id & 1)) free_ids.push_back(id);

    const int nf = static_cast<int>(free_ids.size());
    const int forced_count = ctx.m - nf;

    bool done = false;
    auto visit = [&](std::uint32_t cand) {
        if (!ctx.spanner_ok(cand, adj)) return;
        ++out.count;
        int gth = ctx.girth(cand, adj);
        ++out.girth_profile[gth];
        bool high = gth >= girth_bound;
        if (high && !out.any_high) out.first_high = cand;
        out.any_high = out.any_high || high;
        out.all_high = out.all_high && high;
        if (out.stored.size() < witness_cap)
            out.stored.push_back(cand);
        else
            out.capped = true;
        if (!enumerate_all || (stop_early_on_high && high)) done = true;
    };

    for (int size = std::max(forced_count, 0); size <= ctx.m && !out.count; ++size) {
        int pick = size - forced_count;
        if (pick < 0 || pick > nf) continue;
        // Lexicographic combinations with a stretch prune on exclusions.
        std::uint32_t chosen = forced;
        std::uint32_t available = ctx.all_edges;
        std::function<void(int, int)> rec = [&](int idx, int remaining) {
            if (done) return;
            if (remaining == 0) {
                visit(chosen);
                return;
            }
            if (idx >= nf || nf - idx < remaining) return;
            int id = free_ids[static_cast<size_t>(idx)];
            chosen |= 1u << id;
            rec(idx + 1, remaining - 1);
            chosen &= ~(1u << id);
            if (done) return;
            // Excluding id: its endpoints must stay within k using what's left.
            available &= ~(1u << id);
            auto [a, b] = ctx.ends[static_cast<size_t>(id)];
            ctx.build_adj(available, adj);
            if (ctx.dist(adj, a, b, ctx.k) >= 0) rec(idx + 1, remaining);
            available |= 1u << id;
        };
        rec(0, pick);
        if (out.count) out.opt = size;
    }
    if (out.opt < 0) throw InternalError("minimum spanner search found nothing");
    return out;
}

}  // namespace

bool OptReport::any_witness_girth_at_least(int bound) const {
    for (const auto& [g, c] : girth_profile)
        if (g >= bound && c > 0) return true;
    return false;
}

bool OptReport::all_witness_girth_at_least(int bound) const {
    for (const auto& [g, c] : girth_profile)
        if (g < bound && c > 0) return false;
    return true;
}

OptReport min_spanner(const Graph& g, int k, bool enumerate_all, std::size_t witness_cap) {
    if (k < 1) throw InputError("stretch must be at least 1");
    TinyCtx ctx(g, k);
    auto outcome = search_min_spanner(ctx, enumerate_all, enumerate_all ? witness_cap : 1,
                                      k + 2, false);
    OptReport report;
    report.opt_size = outcome.opt;
    report.witness_count = outcome.count;
    report.witnesses_capped = outcome.capped;
    report.girth_profile = std::move(outcome.girth_profile);
    auto unpack = [&](std::uint32_t cand) {
        std::vector<int> ids;
        for (int id = 0; id < ctx.m; ++id)
            if (cand >> id & 1) ids.push_back(id);
        return ids;
    };
    for (std::uint32_t cand : outcome.stored) report.witnesses.push_back(unpack(cand));
    if (outcome.any_high) report.high_girth_witness = unpack(outcome.first_high);
    return report;
}

OptProbe min_spanner_probe(const Graph& g, int k) {
    if (k < 1) throw InputError("stretch must be at least 1");
    TinyCtx ctx(g, k);
    auto outcome = search_min_spanner(ctx, true, 0, k + 2, true);
    OptProbe probe;
    probe.opt_size = outcome.opt;
    if (outcome.any_high) {
        std::vector<int> ids;
        for (int id = 0; id < ctx.m; ++id)
            if (outcome.first_high >> id & 1) ids.push_back(id);
        probe.high_girth_witness = std::move(ids);
    }
    return probe;
}

std::string pair_class_name(PairClass c) {
    switch (c) {
        case PairClass::ExtremelyGood: return "extremely_good";
        case PairClass::Good: return "good";
        case PairClass::NotGood: return "not_good";
    }
    return "?";
}

ClassifyReport classify_pair(int n, int k, std::uint64_t budget, std::uint64_t seed) {
    if (n < 2 || n > 7) throw InputError("classify_pair supports 2 <= n <= 7");
    if (k < 1) throw InputError("stretch must be at least 1");

    ClassifyReport report;
    report.n = n;
    report.k = k;

    std::vector<Edge> all_pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all_pairs.emplace_back(u, v);
    const int mf = static_cast<int>(all_pairs.size());
    const std::uint64_t universe = 1ull << mf;

    auto edges_of = [&](std::uint32_t mask) {
        std::vector<Edge> edges;
        for (int i = 0; i < mf; ++i)
            if (mask >> i & 1) edges.push_back(all_pairs[static_cast<size_t>(i)]);
        return edges;
    };
    auto connected = [&](std::uint32_t mask) {
        std::uint64_t adj[8] = {0};
        for (int i = 0; i < mf; ++i)
            if (mask >> i & 1) {
                auto [u, v] = all_pairs[static_cast<size_t>(i)];
                adj[u] |= 1ull << v;
                adj[v] |= 1ull << u;
            }
        std::uint64_t reach = 1, frontier = 1;
        while (frontier) {
            std::uint64_t nxt = 0;
            std::uint64_t f = frontier;
            while (f) {
                int x = std::countr_zero(f);
                f &= f - 1;
                nxt |= adj[x];
            }
            frontier = nxt & ~reach;
            reach |= nxt;
        }
        return reach == (1ull << n) - 1;
    };

    bool extremely_alive = true;
    auto consider = [&](std::uint32_t mask) {
        Graph g(n, edges_of(mask));
        TinyCtx ctx(g, k);
        auto outcome = search_min_spanner(ctx, true, 0, k + 2, !extremely_alive);
        ++report.graphs_checked;
        if (!outcome.any_high && !report.not_good_witness) report.not_good_witness = g.edges();
        if (extremely_alive && !outcome.all_high) {
            extremely_alive = false;
            if (!report.low_girth_witness) report.low_girth_witness = g.edges();
        }
        return outcome.any_high;
    };

    bool all_good = true;
    if (budget > 0 && universe > budget) {
        report.sampled = true;
        std::mt19937_64 rng(seed);
        std::unordered_set<std::uint32_t> seen;
        std::uint64_t attempts = 0;
        while (report.graphs_checked < budget && attempts < budget * 64) {
            ++attempts;
            auto mask = static_cast<std::uint32_t>(detail::rng_below(rng, universe));
            if (!connected(mask) || !seen.insert(mask).second) continue;
            if (!consider(mask)) {
                all_good = false;
                break;
            }
        }
    } else {
        for (std::uint64_t mask = 0; mask < universe; ++mask) {
            if (!connected(static_cast<std::uint32_t>(mask))) continue;
            if (!consider(static_cast<std::uint32_t>(mask))) {
                all_good = false;
                break;
            }
        }
    }

    if (!all_good)
        report.verdict = PairClass::NotGood;
    else if (extremely_alive)
        report.verdict = PairClass::ExtremelyGood;
    else
        report.verdict = PairClass::Good;
    return report;
}

CrossCheckReport cross_check_enlarger(const SpannerInstance& inst, RegimeChoice regime,
                                      int slack) {
    CrossCheckReport report;
    report.n = inst.base->vertex_count();
    report.k = inst.k;
    report.in_edges = inst.sub_edge_count();

    auto enlarged = enlarge_girth(inst, regime, slack);
    report.enlarge_ok = enlarged.ok();
    report.out_edges = enlarged.trace.out_edges;
    report.regime_bound_rhs = enlarged.trace.bound_rhs;
    report.regime_bound_ok = enlarged.trace.bound_ok;

    RegimeChoice eff = regime.kind == RegimeKind::Auto
                           ? detail::auto_regime(report.n, inst.k, slack)
                           : regime;
    report.regime = eff.name();
    switch (eff.kind) {
        case RegimeKind::Extreme:
        case RegimeKind::Good:
            report.approx_alpha = 1;
            report.approx_beta = 0;
            break;
        case RegimeKind::Approx2:
            report.approx_alpha = 2;
            report.approx_beta = 1;
            break;
        case RegimeKind::Bucket:
            report.approx_alpha = 2LL * eff.t * eff.t;
            report.approx_beta = 2LL * eff.t * eff.t;
            break;
        case RegimeKind::Auto:
            throw InternalError("unresolved regime in cross check");
    }

    report.opt = min_spanner(*inst.base, inst.k, false).opt_size;
    report.approx_lhs = report.out_edges - report.n;
    report.approx_rhs =
        report.approx_alpha * (report.opt - report.n) + report.approx_beta;
    report.approx_ok = report.approx_lhs <= report.approx_rhs;
    return report;
}

}  // namespace spanner
