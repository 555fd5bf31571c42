#include "spanner/paths.hpp"

#include <algorithm>
#include <limits>

#include "spanner/bfs.hpp"

namespace spanner {

std::vector<int> max_cycle_overlap_path(const Graph& g, const EdgeMask& h, int s, int t,
                                        const OrientedCycle& sc) {
    DistView ds = bfs(g, h, s);
    if (!ds.reachable(t)) throw InputError("max_cycle_overlap_path: s and t disconnected");
    DistView dt = bfs(g, h, t);
    int total = ds.hops(t);

    auto on_dag = [&](int v) {
        return ds.reachable(v) && dt.reachable(v) && ds.hops(v) + dt.hops(v) == total;
    };

    // best[v] = max cycle-edge weight of a shortest v->t path.
    std::vector<long long> best(static_cast<size_t>(g.vertex_count()),
                                std::numeric_limits<long long>::min());
    std::vector<std::vector<int>> by_depth(static_cast<size_t>(total) + 1);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (on_dag(v)) by_depth[static_cast<size_t>(ds.hops(v))].push_back(v);
    best[static_cast<size_t>(t)] = 0;
    for (int d = total - 1; d >= 0; --d) {
        for (int v : by_depth[static_cast<size_t>(d)]) {
            for (auto [w, id] : g.neighbors(v)) {
                if (!h[static_cast<size_t>(id)]) continue;
                if (!on_dag(w) || ds.hops(w) != d + 1) continue;
                long long cand = best[static_cast<size_t>(w)] + (sc.contains_edge(v, w) ? 1 : 0);
                best[static_cast<size_t>(v)] = std::max(best[static_cast<size_t>(v)], cand);
            }
        }
    }

    std::vector<int> path{s};
    int v = s;
    while (v != t) {
        int pick = -1;
        long long pick_val = std::numeric_limits<long long>::min();
        for (auto [w, id] : g.neighbors(v)) {
            if (!h[static_cast<size_t>(id)]) continue;
            if (!on_dag(w) || ds.hops(w) != ds.hops(v) + 1) continue;
            long long val = best[static_cast<size_t>(w)] + (sc.contains_edge(v, w) ? 1 : 0);
            if (val > pick_val) {  // neighbors are sorted, so first max is smallest vertex
                pick_val = val;
                pick = w;
            }
        }
        if (pick < 0) throw InternalError("shortest-path DAG reconstruction failed");
        path.push_back(pick);
        v = pick;
    }
    return path;
}

std::uint64_t count_shortest_paths_avoiding(const Graph& g, const EdgeMask& h, int s, int t,
                                            Edge avoid) {
    if (s == t) return 1;
    DistView base = bfs(g, h, s);
    if (!base.reachable(t)) return 0;
    int target = base.hops(t);

    auto avoid_id = g.edge_id(avoid.first, avoid.second);
    EdgeMask sub = h;
    if (avoid_id) sub[static_cast<size_t>(*avoid_id)] = 0;

    // Path counting over the BFS layering of h \ {avoid}.
    std::vector<int> dist(static_cast<size_t>(g.vertex_count()), -1);
    std::vector<std::uint64_t> cnt(static_cast<size_t>(g.vertex_count()), 0);
    std::vector<int> queue;
    dist[static_cast<size_t>(s)] = 0;
    cnt[static_cast<size_t>(s)] = 1;
    queue.push_back(s);
    for (size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        int du = dist[static_cast<size_t>(u)];
        if (du >= target) break;
        for (auto [v, id] : g.neighbors(u)) {
            if (!sub[static_cast<size_t>(id)]) continue;
            if (dist[static_cast<size_t>(v)] == -1) {
                dist[static_cast<size_t>(v)] = du + 1;
                cnt[static_cast<size_t>(v)] = cnt[static_cast<size_t>(u)];
                queue.push_back(v);
            } else if (dist[static_cast<size_t>(v)] == du + 1) {
                cnt[static_cast<size_t>(v)] += cnt[static_cast<size_t>(u)];
            }
        }
    }
    if (dist[static_cast<size_t>(t)] != target) return 0;
    return cnt[static_cast<size_t>(t)];
}

}  // namespace spanner
