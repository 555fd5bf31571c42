#include "spanner/gadget.hpp"

#include <cmath>
#include <random>
#include <set>

#include "spanner/bfs.hpp"
#include "spanner/cycle.hpp"
#include "spanner/greedy.hpp"

namespace spanner {

int gadget_arc_length(int k) { return 2 * (k / 6) + 9; }

int gadget_core_size(int k) { return k + 6 * gadget_arc_length(k) - 6; }

GadgetResult gen_lower_bound(int k, int n) {
    if (k < kGadgetMinStretch)
        throw InputError("gadget generator supports k >= " + std::to_string(kGadgetMinStretch));
    const int p = gadget_arc_length(k);
    const int core = gadget_core_size(k);
    if (n < core)
        throw InputError("n must be at least the core size n' = " + std::to_string(core));

    GadgetSpec spec;
    spec.k = k;
    spec.n = n;
    spec.arc_length = p;
    spec.core_size = core;
    spec.pendant_length = n - core;
    const int base = k / 6, rem = k % 6;
    for (int i = 0; i < 6; ++i) spec.segment_lengths[static_cast<size_t>(i)] = base + (i < rem);
    int at = 0;
    for (int i = 0; i < 6; ++i) {
        spec.anchors[static_cast<size_t>(i)] = at;
        at += spec.segment_lengths[static_cast<size_t>(i)];
    }

    std::vector<Edge> edges;
    std::vector<Edge> baseline_edges;
    // Blue cycle on vertices 0..k-1.
    for (int i = 0; i < k; ++i) {
        Edge e = make_edge(i, (i + 1) % k);
        edges.push_back(e);
        baseline_edges.push_back(e);
    }
    const int a = spec.anchors[0], b = spec.anchors[1], c = spec.anchors[2];
    const int d = spec.anchors[3], e_anchor = spec.anchors[4], f = spec.anchors[5];
    const std::array<std::pair<int, int>, 6> arc_ends = {{{a, c},
                                                          {c, e_anchor},
                                                          {e_anchor, a},
                                                          {b, d},
                                                          {d, f},
                                                          {f, b}}};
    int next_vertex = k;
    std::array<std::vector<Edge>, 6> arc_edge_pairs;
    std::array<Edge, 6> bridge_pairs;
    for (int i = 0; i < 6; ++i) {
        auto [from, to] = arc_ends[static_cast<size_t>(i)];
        int prev = from;
        for (int step = 0; step < p; ++step) {
            int cur = (step == p - 1) ? to : next_vertex++;
            Edge e = make_edge(prev, cur);
            edges.push_back(e);
            arc_edge_pairs[static_cast<size_t>(i)].push_back(e);
            // The bridging edge sits at the arc midpoint; its position on the
            // arc does not matter, the midpoint keeps it reproducible.
            if (step == p / 2)
                bridge_pairs[static_cast<size_t>(i)] = e;
            else
                baseline_edges.push_back(e);
            prev = cur;
        }
    }
    // Pendant path hanging off anchor a.
    int pendant_prev = a;
    for (int i = 0; i < spec.pendant_length; ++i) {
        int cur = next_vertex++;
        Edge e = make_edge(pendant_prev, cur);
        edges.push_back(e);
        baseline_edges.push_back(e);
        pendant_prev = cur;
    }
    if (next_vertex != n) throw InternalError("gadget vertex accounting is off");

    GadgetResult result{Graph(n, edges), spec, {}, {}, {}, {}, {}};
    result.baseline = mask_from_edges(result.g, baseline_edges);
    result.cycle_vertices.resize(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) result.cycle_vertices[static_cast<size_t>(i)] = i;
    for (int i = 0; i < 6; ++i) {
        result.anchor_pairs[static_cast<size_t>(i)] = arc_ends[static_cast<size_t>(i)];
        for (const Edge& e : arc_edge_pairs[static_cast<size_t>(i)])
            result.arc_edges[static_cast<size_t>(i)].push_back(
                *result.g.edge_id(e.first, e.second));
        Edge be = bridge_pairs[static_cast<size_t>(i)];
        result.bridge_edge[static_cast<size_t>(i)] = *result.g.edge_id(be.first, be.second);
    }

    // Self-verification.
    if (mask_popcount(result.baseline) != n)
        throw InternalError("gadget baseline does not have exactly n edges");
    if (!is_k_spanner(result.g, result.baseline, k))
        throw InternalError("gadget baseline is not a k-spanner");
    EdgeMask core_baseline = result.baseline;
    for (int id = 0; id < result.g.edge_count(); ++id) {
        auto [u, v] = result.g.edge(id);
        if (u >= core || v >= core) core_baseline[static_cast<size_t>(id)] = 0;
    }
    auto girth = girth_value(result.g, &core_baseline);
    if (!girth || *girth != k) throw InternalError("gadget baseline core girth is not k");
    return result;
}

ArcInequalityReport check_arc_inequality(const GadgetResult& gadget) {
    const Graph& g = gadget.g;
    const GadgetSpec& spec = gadget.spec;
    const int k = spec.k;
    ArcInequalityReport report;

    // Arcs covering each cycle segment, segment order C_{a,b} .. C_{f,a}.
    static constexpr int coverage[6][2] = {{0, 5}, {0, 3}, {1, 3}, {1, 4}, {2, 4}, {2, 5}};

    EdgeMask mask = full_mask(g);
    int seg_start = 0;
    for (int s = 0; s < 6; ++s) {
        int seg_len = spec.segment_lengths[static_cast<size_t>(s)];
        for (int off = 0; off < seg_len; ++off) {
            int pos = seg_start + off;
            Edge seg_edge = make_edge(pos, (pos + 1) % k);
            int seg_id = *g.edge_id(seg_edge.first, seg_edge.second);
            mask[static_cast<size_t>(seg_id)] = 0;
            for (int arc : coverage[s]) {
                for (int arc_eid : gadget.arc_edges[static_cast<size_t>(arc)]) {
                    auto [u, v] = g.edge(arc_eid);
                    mask[static_cast<size_t>(arc_eid)] = 0;
                    ++report.checks;
                    auto dist = detail::bounded_dist(g, &mask, u, v, k);
                    if (dist.has_value())
                        report.violations.push_back({seg_edge, arc, {u, v}, *dist});
                    mask[static_cast<size_t>(arc_eid)] = 1;
                }
            }
            mask[static_cast<size_t>(seg_id)] = 1;
        }
        seg_start += seg_len;
    }
    return report;
}

RandomModel RandomModel::parse(const std::string& text) {
    RandomModel m;
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        size_t start = 0;
        while (start <= s.size()) {
            size_t colon = s.find(':', start);
            if (colon == std::string::npos) {
                parts.push_back(s.substr(start));
                break;
            }
            parts.push_back(s.substr(start, colon - start));
            start = colon + 1;
        }
        return parts;
    };
    auto parts = split(text);
    try {
        if (parts[0] == "gnp") {
            m.kind = Kind::Gnp;
            if (parts.size() < 2) throw InputError("gnp model needs a probability");
            m.p = std::stod(parts[1]);
            if (m.p < 0.0 || m.p > 1.0) throw InputError("gnp probability out of [0,1]");
            if (parts.size() > 2 && parts[2] == "connected") m.require_connected = true;
        } else if (parts[0] == "chords") {
            m.kind = Kind::CyclePlusChords;
            if (parts.size() < 2) throw InputError("chords model needs a count");
            m.chords = std::stoi(parts[1]);
        } else if (parts[0] == "greedy") {
            m.kind = Kind::GreedySeeded;
            if (parts.size() < 2) throw InputError("greedy model needs a stretch");
            m.k = std::stoi(parts[1]);
        } else {
            throw InputError("unknown random model: " + text);
        }
    } catch (const std::invalid_argument&) {
        throw InputError("malformed random model: " + text);
    }
    return m;
}

std::string RandomModel::name() const {
    switch (kind) {
        case Kind::Gnp:
            return "gnp:" + std::to_string(p) + (require_connected ? ":connected" : "");
        case Kind::CyclePlusChords:
            return "chords:" + std::to_string(chords);
        case Kind::GreedySeeded:
            return "greedy:" + std::to_string(k);
    }
    return "?";
}

namespace {

Graph gen_gnp(int n, double p, bool require_connected, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (detail::rng_unit(rng) < p) edges.emplace_back(u, v);
        Graph g(n, std::move(edges));
        if (!require_connected || g.component_count() <= 1) return g;
    }
    throw InputError("could not sample a connected G(n,p) graph; p too small");
}

Graph gen_chords(int n, int chords, std::mt19937_64& rng) {
    if (n < 3) throw InputError("cycle_plus_chords needs n >= 3");
    long long max_chords = static_cast<long long>(n) * (n - 3) / 2;
    if (chords < 0 || chords > max_chords)
        throw InputError("chord count must be in [0, n(n-3)/2]");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back(make_edge(i, (i + 1) % n));
    std::set<Edge> chosen(edges.begin(), edges.end());
    int placed = 0;
    while (placed < chords) {
        int u = static_cast<int>(detail::rng_below(rng, static_cast<std::uint64_t>(n)));
        int v = static_cast<int>(detail::rng_below(rng, static_cast<std::uint64_t>(n)));
        if (u == v) continue;
        Edge e = make_edge(u, v);
        if (chosen.count(e)) continue;
        chosen.insert(e);
        edges.push_back(e);
        ++placed;
    }
    return Graph(n, std::move(edges));
}

}  // namespace

Graph gen_random(int n, const RandomModel& model, std::uint64_t seed) {
    if (n < 1) throw InputError("graph needs at least one vertex");
    std::mt19937_64 rng(seed);
    switch (model.kind) {
        case RandomModel::Kind::Gnp:
            return gen_gnp(n, model.p, model.require_connected, rng);
        case RandomModel::Kind::CyclePlusChords:
            return gen_chords(n, model.chords, rng);
        case RandomModel::Kind::GreedySeeded: {
            double p = std::min(1.0, (std::log(static_cast<double>(n)) + 2.0) / n);
            auto base = std::make_shared<Graph>(gen_gnp(n, p, true, rng));
            auto inst = greedy_spanner(base, model.k, lex_ordering(*base));
            return Graph(n, inst.sub_edges());
        }
    }
    throw InternalError("unhandled random model");
}

}  // namespace spanner
