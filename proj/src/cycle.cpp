#include "spanner/cycle.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "spanner/bfs.hpp"

namespace spanner {

OrientedCycle::OrientedCycle(std::vector<int> verts) : verts_(std::move(verts)) {
    if (verts_.size() < 3) throw InputError("cycle needs at least 3 vertices");
    pos_.reserve(verts_.size());
    for (int i = 0; i < length(); ++i) {
        if (!pos_.emplace(verts_[static_cast<size_t>(i)], i).second)
            throw InputError("cycle vertices must be distinct");
    }
}

int OrientedCycle::edge_position(int u, int v) const {
    auto iu = pos_.find(u);
    if (iu == pos_.end()) return -1;
    int i = iu->second;
    if (vertex(i + 1) == v) return i;
    if (vertex(i - 1) == v) return mod(i - 1);
    return -1;
}

int OrientedCycle::segment_edge_count(int from_v, int to_v) const {
    int a = position_of(from_v), b = position_of(to_v);
    if (a < 0 || b < 0) throw InputError("segment endpoint not on cycle");
    return mod(b - a);
}

std::vector<int> OrientedCycle::segment_vertices(int from_v, int to_v) const {
    int a = position_of(from_v);
    int cnt = segment_edge_count(from_v, to_v);
    std::vector<int> out;
    out.reserve(static_cast<size_t>(cnt) + 1);
    for (int i = 0; i <= cnt; ++i) out.push_back(vertex(a + i));
    return out;
}

OrientedCycle OrientedCycle::reversed() const {
    std::vector<int> rv;
    rv.reserve(verts_.size());
    rv.push_back(verts_[0]);
    for (int i = length() - 1; i >= 1; --i) rv.push_back(verts_[static_cast<size_t>(i)]);
    return OrientedCycle(std::move(rv));
}

OrientedCycle OrientedCycle::rotated_to(int start_v) const {
    int p = position_of(start_v);
    if (p < 0) throw InputError("rotation target not on cycle");
    std::vector<int> rv;
    rv.reserve(verts_.size());
    for (int i = 0; i < length(); ++i) rv.push_back(vertex(p + i));
    return OrientedCycle(std::move(rv));
}

OrientedCycle OrientedCycle::oriented(int start_v, int next_v) const {
    OrientedCycle r = rotated_to(start_v);
    if (r.vertex(1) == next_v) return r;
    OrientedCycle rr = r.reversed();
    if (rr.vertex(1) != next_v) throw InputError("oriented(): vertices not adjacent on cycle");
    return rr;
}

std::vector<int> OrientedCycle::canonical_rotation() const {
    int best = *std::min_element(verts_.begin(), verts_.end());
    OrientedCycle r = rotated_to(best);
    if (r.vertex(1) > r.vertex(-1)) r = r.reversed();
    return r.vertices();
}

namespace {

// Phase 1 of the girth search: min over all BFS roots of the closed-walk
// certificate dist[u]+dist[v]+1 over non-tree edges. Exact for the value.
std::optional<int> girth_value_impl(const Graph& g, const EdgeMask* within) {
    int n = g.vertex_count();
    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(static_cast<size_t>(n));
    std::vector<int> parent(static_cast<size_t>(n));
    std::vector<int> queue;
    for (int r = 0; r < n; ++r) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        queue.clear();
        dist[static_cast<size_t>(r)] = 0;
        queue.push_back(r);
        for (size_t head = 0; head < queue.size(); ++head) {
            int u = queue[head];
            int du = dist[static_cast<size_t>(u)];
            if (best != std::numeric_limits<int>::max() && 2 * du > best) break;
            for (auto [v, id] : g.neighbors(u)) {
                if (within && !(*within)[static_cast<size_t>(id)]) continue;
                if (v == parent[static_cast<size_t>(u)]) continue;
                int dv = dist[static_cast<size_t>(v)];
                if (dv == -1) {
                    dist[static_cast<size_t>(v)] = du + 1;
                    parent[static_cast<size_t>(v)] = u;
                    queue.push_back(v);
                } else {
                    best = std::min(best, du + dv + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

// Phase 2: collect every cycle of exactly girth length and keep the one with
// the lexicographically least canonical rotation. Cycles of length L through
// edge (u,v) are (u,v) plus a length L-1 shortest u-v path avoiding (u,v).
void enumerate_paths(const Graph& g, const EdgeMask& sub, const std::vector<int>& du,
                     const std::vector<int>& dv, int target_len, int at, int goal,
                     std::vector<int>& path, const std::function<void(const std::vector<int>&)>& sink) {
    if (at == goal) {
        sink(path);
        return;
    }
    for (auto [w, id] : g.neighbors(at)) {
        if (!sub[static_cast<size_t>(id)]) continue;
        if (du[static_cast<size_t>(w)] != du[static_cast<size_t>(at)] + 1) continue;
        if (dv[static_cast<size_t>(w)] == -1 ||
            du[static_cast<size_t>(w)] + dv[static_cast<size_t>(w)] != target_len)
            continue;
        path.push_back(w);
        enumerate_paths(g, sub, du, dv, target_len, w, goal, path, sink);
        path.pop_back();
    }
}

}  // namespace

std::optional<int> girth_value(const Graph& g, const EdgeMask* within) {
    return girth_value_impl(g, within);
}

std::optional<OrientedCycle> girth_and_smallest_cycle(const Graph& g, const EdgeMask& within) {
    auto girth = girth_value_impl(g, &within);
    if (!girth) return std::nullopt;
    int glen = *girth;

    std::vector<int> best_canon;
    EdgeMask sub = within;
    std::vector<int> du, dv;
    for (int id = 0; id < g.edge_count(); ++id) {
        if (!within[static_cast<size_t>(id)]) continue;
        auto [u, v] = g.edge(id);
        sub[static_cast<size_t>(id)] = 0;
        detail::bounded_dists(g, &sub, u, glen - 1, du);
        if (du[static_cast<size_t>(v)] == glen - 1) {
            detail::bounded_dists(g, &sub, v, glen - 1, dv);
            std::vector<int> path{u};
            enumerate_paths(g, sub, du, dv, glen - 1, u, v, path,
                            [&](const std::vector<int>& p) {
                                OrientedCycle c(p);
                                auto canon = c.canonical_rotation();
                                if (best_canon.empty() || canon < best_canon)
                                    best_canon = std::move(canon);
                            });
        }
        sub[static_cast<size_t>(id)] = 1;
    }
    if (best_canon.empty()) throw InternalError("girth extraction found no cycle");
    return OrientedCycle(std::move(best_canon));
}

std::optional<OrientedCycle> girth_and_smallest_cycle(const Graph& g) {
    return girth_and_smallest_cycle(g, full_mask(g));
}

}  // namespace spanner
