#include "spanner/bfs.hpp"

#include <limits>

namespace spanner {

namespace {

DistView run_bfs(const Graph& g, const EdgeMask* within, int src) {
    if (src < 0 || src >= g.vertex_count()) throw InputError("bfs source out of range");
    if (within && static_cast<int>(within->size()) != g.edge_count())
        throw InputError("edge mask size does not match graph");
    std::vector<int> dist(static_cast<size_t>(g.vertex_count()), -1);
    std::vector<int> parent(static_cast<size_t>(g.vertex_count()), -1);
    std::vector<int> queue;
    queue.reserve(static_cast<size_t>(g.vertex_count()));
    dist[static_cast<size_t>(src)] = 0;
    queue.push_back(src);
    for (size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        for (auto [v, id] : g.neighbors(u)) {
            if (within && !(*within)[static_cast<size_t>(id)]) continue;
            if (dist[static_cast<size_t>(v)] != -1) continue;
            dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
            parent[static_cast<size_t>(v)] = u;
            queue.push_back(v);
        }
    }
    return DistView(src, std::move(dist), std::move(parent));
}

}  // namespace

DistView bfs(const Graph& g, int src) { return run_bfs(g, nullptr, src); }

DistView bfs(const Graph& g, const EdgeMask& within, int src) { return run_bfs(g, &within, src); }

namespace detail {

std::optional<int> bounded_dist(const Graph& g, const EdgeMask* within, int src, int dst,
                                int cap) {
    if (src == dst) return 0;
    if (cap <= 0) return std::nullopt;
    thread_local std::vector<int> dist;
    thread_local std::vector<int> queue;
    dist.assign(static_cast<size_t>(g.vertex_count()), -1);
    queue.clear();
    dist[static_cast<size_t>(src)] = 0;
    queue.push_back(src);
    for (size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        int du = dist[static_cast<size_t>(u)];
        if (du >= cap) break;  // queue is depth-ordered
        for (auto [v, id] : g.neighbors(u)) {
            if (within && !(*within)[static_cast<size_t>(id)]) continue;
            if (dist[static_cast<size_t>(v)] != -1) continue;
            if (v == dst) return du + 1;
            dist[static_cast<size_t>(v)] = du + 1;
            queue.push_back(v);
        }
    }
    return std::nullopt;
}

void bounded_dists(const Graph& g, const EdgeMask* within, int src, int cap,
                   std::vector<int>& dist_out) {
    dist_out.assign(static_cast<size_t>(g.vertex_count()), -1);
    std::vector<int> queue;
    dist_out[static_cast<size_t>(src)] = 0;
    queue.push_back(src);
    for (size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        int du = dist_out[static_cast<size_t>(u)];
        if (du >= cap) break;
        for (auto [v, id] : g.neighbors(u)) {
            if (within && !(*within)[static_cast<size_t>(id)]) continue;
            if (dist_out[static_cast<size_t>(v)] != -1) continue;
            dist_out[static_cast<size_t>(v)] = du + 1;
            queue.push_back(v);
        }
    }
}

}  // namespace detail

}  // namespace spanner
