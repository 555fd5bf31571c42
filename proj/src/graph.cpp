#include "spanner/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace spanner {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 0) throw InputError("vertex count must be non-negative");
    for (auto& [u, v] : edges) {
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n_)
            throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") out of range for n=" + std::to_string(n_));
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw InputError("duplicate edge in edge list");
    edges_ = std::move(edges);

    adj_.assign(static_cast<size_t>(n_), {});
    for (int id = 0; id < edge_count(); ++id) {
        auto [u, v] = edges_[static_cast<size_t>(id)];
        adj_[static_cast<size_t>(u)].emplace_back(v, id);
        adj_[static_cast<size_t>(v)].emplace_back(u, id);
    }
    for (auto& lst : adj_) std::sort(lst.begin(), lst.end());
}

std::optional<int> Graph::edge_id(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return std::nullopt;
    const auto& lst = adj_[static_cast<size_t>(u)];
    auto it = std::lower_bound(lst.begin(), lst.end(), std::pair<int, int>{v, -1});
    if (it != lst.end() && it->first == v) return it->second;
    return std::nullopt;
}

std::vector<int> Graph::component_labels() const {
    std::vector<int> label(static_cast<size_t>(n_), -1);
    std::vector<int> stack;
    int next = 0;
    for (int s = 0; s < n_; ++s) {
        if (label[static_cast<size_t>(s)] != -1) continue;
        label[static_cast<size_t>(s)] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, id] : neighbors(u)) {
                (void)id;
                if (label[static_cast<size_t>(v)] == -1) {
                    label[static_cast<size_t>(v)] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    return label;
}

int Graph::component_count() const {
    auto lab = component_labels();
    return lab.empty() ? 0 : 1 + *std::max_element(lab.begin(), lab.end());
}

EdgeMask full_mask(const Graph& g) { return EdgeMask(static_cast<size_t>(g.edge_count()), 1); }
EdgeMask empty_mask(const Graph& g) { return EdgeMask(static_cast<size_t>(g.edge_count()), 0); }

int mask_popcount(const EdgeMask& m) {
    int c = 0;
    for (char b : m) c += b ? 1 : 0;
    return c;
}

EdgeMask mask_from_edges(const Graph& g, const std::vector<Edge>& edges) {
    EdgeMask m = empty_mask(g);
    for (auto [u, v] : edges) {
        auto id = g.edge_id(u, v);
        if (!id)
            throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") not present in base graph");
        m[static_cast<size_t>(*id)] = 1;
    }
    return m;
}

std::vector<Edge> edges_of_mask(const Graph& g, const EdgeMask& m) {
    std::vector<Edge> out;
    for (int id = 0; id < g.edge_count(); ++id)
        if (m[static_cast<size_t>(id)]) out.push_back(g.edge(id));
    return out;
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    long n = -1, m = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        if (n < 0) {
            if (ls >> n >> m) {
                if (n < 0 || m < 0) throw InputError("invalid header in edge list");
                continue;
            }
            std::string tok;
            std::istringstream probe(line);
            if (probe >> tok) throw InputError("expected 'n m' header, got: " + line);
            n = -1;  // blank line, keep looking
            continue;
        }
        long u, v;
        if (ls >> u >> v) {
            edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        } else {
            std::string tok;
            std::istringstream probe(line);
            if (probe >> tok) throw InputError("malformed edge line: " + line);
        }
    }
    if (n < 0) throw InputError("edge list missing 'n m' header");
    if (static_cast<long>(edges.size()) != m)
        throw InputError("edge list declares " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
    return Graph(static_cast<int>(n), std::move(edges));
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    write_edge_list(out, g);
}

void write_edge_list(std::ostream& out, const Graph& g, const EdgeMask& sub,
                     const std::string& base_name) {
    out << "# base: " << base_name << '\n';
    out << g.vertex_count() << ' ' << mask_popcount(sub) << '\n';
    for (int id = 0; id < g.edge_count(); ++id)
        if (sub[static_cast<size_t>(id)])
            out << g.edge(id).first << ' ' << g.edge(id).second << '\n';
}

void write_edge_list_file(const std::string& path, const Graph& g, const EdgeMask& sub,
                          const std::string& base_name) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    write_edge_list(out, g, sub, base_name);
}

}  // namespace spanner
