#include "spanner/spanner.hpp"

#include "spanner/bfs.hpp"

namespace spanner {

SpannerInstance::SpannerInstance(std::shared_ptr<const Graph> base_graph, int stretch,
                                 EdgeMask sub_edges)
    : base(std::move(base_graph)), k(stretch), sub(std::move(sub_edges)) {
    if (!base) throw InputError("spanner instance needs a base graph");
    if (k < 1) throw InputError("stretch must be at least 1");
    if (static_cast<int>(sub.size()) != base->edge_count())
        throw InputError("sub-edge mask size does not match base graph");
}

SpannerInstance SpannerInstance::whole(std::shared_ptr<const Graph> base_graph, int stretch) {
    EdgeMask all = full_mask(*base_graph);
    return SpannerInstance(std::move(base_graph), stretch, std::move(all));
}

bool is_k_spanner(const Graph& g, const EdgeMask& h, int k) {
    if (static_cast<int>(h.size()) != g.edge_count())
        throw InputError("edge mask size does not match graph");
    if (k < 1) throw InputError("stretch must be at least 1");
    thread_local std::vector<int> dist;
    for (int u = 0; u < g.vertex_count(); ++u) {
        bool need = false;
        for (auto [v, id] : g.neighbors(u)) {
            if (v > u && !h[static_cast<size_t>(id)]) {
                need = true;
                break;
            }
        }
        if (!need) continue;
        detail::bounded_dists(g, &h, u, k, dist);
        for (auto [v, id] : g.neighbors(u)) {
            if (v <= u || h[static_cast<size_t>(id)]) continue;
            if (dist[static_cast<size_t>(v)] == -1 || dist[static_cast<size_t>(v)] > k)
                return false;
        }
    }
    return true;
}

bool is_k_spanner(const SpannerInstance& inst) { return is_k_spanner(*inst.base, inst.sub, inst.k); }

}  // namespace spanner
