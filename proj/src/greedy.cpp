#include "spanner/greedy.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "spanner/bfs.hpp"
#include "spanner/cycle.hpp"

namespace spanner {

namespace {

// Distance query on the partially built spanner, capped at k.
bool within_k(const std::vector<std::vector<int>>& adj, int s, int t, int k,
              std::vector<int>& dist, std::vector<int>& queue) {
    if (s == t) return true;
    dist.assign(adj.size(), -1);
    queue.clear();
    dist[static_cast<size_t>(s)] = 0;
    queue.push_back(s);
    for (size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        int du = dist[static_cast<size_t>(u)];
        if (du >= k) break;
        for (int v : adj[static_cast<size_t>(u)]) {
            if (dist[static_cast<size_t>(v)] != -1) continue;
            if (v == t) return true;
            dist[static_cast<size_t>(v)] = du + 1;
            queue.push_back(v);
        }
    }
    return false;
}

void validate_ordering(const Graph& g, const EdgeOrdering& order) {
    if (static_cast<int>(order.size()) != g.edge_count())
        throw InputError("edge ordering must list every edge exactly once");
    std::vector<char> seen(static_cast<size_t>(g.edge_count()), 0);
    for (int id : order) {
        if (id < 0 || id >= g.edge_count()) throw InputError("edge ordering id out of range");
        if (seen[static_cast<size_t>(id)]) throw InputError("edge ordering repeats an edge");
        seen[static_cast<size_t>(id)] = 1;
    }
}

int run_greedy(const Graph& g, int k, const EdgeOrdering& order, EdgeMask& out) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(g.vertex_count()));
    std::vector<int> dist, queue;
    int kept = 0;
    for (int id : order) {
        auto [u, v] = g.edge(id);
        if (!within_k(adj, u, v, k, dist, queue)) {
            out[static_cast<size_t>(id)] = 1;
            adj[static_cast<size_t>(u)].push_back(v);
            adj[static_cast<size_t>(v)].push_back(u);
            ++kept;
        }
    }
    return kept;
}

}  // namespace

EdgeOrdering lex_ordering(const Graph& g) {
    EdgeOrdering order(static_cast<size_t>(g.edge_count()));
    std::iota(order.begin(), order.end(), 0);  // edges are stored canonically sorted
    return order;
}

EdgeOrdering random_ordering(const Graph& g, std::uint64_t seed) {
    EdgeOrdering order = lex_ordering(g);
    std::mt19937_64 rng(seed);
    detail::rng_shuffle(rng, order);
    return order;
}

EdgeOrdering ordering_from_pairs(const Graph& g, const std::vector<Edge>& pairs) {
    EdgeOrdering order;
    order.reserve(pairs.size());
    for (auto [u, v] : pairs) {
        auto id = g.edge_id(u, v);
        if (!id)
            throw InputError("ordering lists edge (" + std::to_string(u) + "," +
                             std::to_string(v) + ") not present in the graph");
        order.push_back(*id);
    }
    validate_ordering(g, order);
    return order;
}

SpannerInstance greedy_spanner(std::shared_ptr<const Graph> g, int k, const EdgeOrdering& order) {
    if (k < 1) throw InputError("stretch must be at least 1");
    validate_ordering(*g, order);
    EdgeMask out = empty_mask(*g);
    run_greedy(*g, k, order, out);
    return SpannerInstance(std::move(g), k, std::move(out));
}

EdgeOrdering ordering_for_spanner(const SpannerInstance& inst) {
    if (!is_k_spanner(inst)) throw NotReconstructible("stretch");
    auto girth = girth_value(*inst.base, &inst.sub);
    if (girth && *girth < inst.k + 2) throw NotReconstructible("girth");
    EdgeOrdering order;
    order.reserve(static_cast<size_t>(inst.base->edge_count()));
    for (int id = 0; id < inst.base->edge_count(); ++id)
        if (inst.sub[static_cast<size_t>(id)]) order.push_back(id);
    for (int id = 0; id < inst.base->edge_count(); ++id)
        if (!inst.sub[static_cast<size_t>(id)]) order.push_back(id);
    return order;
}

GreedyMinReport exhaustive_greedy_min(const std::shared_ptr<const Graph>& g, int k,
                                      std::uint64_t sample_budget, std::uint64_t seed) {
    GreedyMinReport report;
    report.min_size = g->edge_count() + 1;
    EdgeMask scratch = empty_mask(*g);

    auto consider = [&](const EdgeOrdering& order) {
        std::fill(scratch.begin(), scratch.end(), 0);
        int kept = run_greedy(*g, k, order, scratch);
        ++report.orderings_tried;
        if (kept < report.min_size) {
            report.min_size = kept;
            report.witness = order;
        }
    };

    if (g->edge_count() <= 9) {
        EdgeOrdering order = lex_ordering(*g);
        do {
            consider(order);
        } while (std::next_permutation(order.begin(), order.end()));
        report.sampled = false;
        return report;
    }
    if (sample_budget == 0)
        throw InputError("exhaustive_greedy_min: m > 9 requires an explicit sampling budget");
    std::mt19937_64 rng(seed);
    EdgeOrdering order = lex_ordering(*g);
    for (std::uint64_t i = 0; i < sample_budget; ++i) {
        detail::rng_shuffle(rng, order);
        consider(order);
    }
    report.sampled = true;
    return report;
}

}  // namespace spanner
