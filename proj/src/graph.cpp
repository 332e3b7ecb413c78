#include "qgnn/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qgnn {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges,
             std::vector<double> weights)
    : n_(n), edges_(std::move(edges)), weights_(std::move(weights)) {
    if (n_ <= 0) throw std::invalid_argument("Graph: node count must be positive");
    if (edges_.size() != weights_.size())
        throw std::invalid_argument("Graph: edge/weight count mismatch");
    for (auto& [j, k] : edges_) {
        if (j == k) throw std::invalid_argument("Graph: self-loop");
        if (j > k) std::swap(j, k);
        if (j < 0 || k >= n_) throw std::invalid_argument("Graph: node index out of range");
    }
    for (double w : weights_) {
        if (!(w > 0.0)) throw std::invalid_argument("Graph: weights must be > 0");
    }
    // canonical order, weights follow their edges
    std::vector<size_t> order(edges_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return edges_[a] < edges_[b]; });
    std::vector<std::pair<int, int>> es;
    std::vector<double> ws;
    es.reserve(edges_.size());
    ws.reserve(weights_.size());
    for (size_t i : order) {
        if (!es.empty() && es.back() == edges_[i])
            throw std::invalid_argument("Graph: duplicate edge");
        es.push_back(edges_[i]);
        ws.push_back(weights_[i]);
    }
    edges_ = std::move(es);
    weights_ = std::move(ws);
}

Graph::Graph(int n, std::vector<std::pair<int, int>> edges)
    : Graph(n, edges, std::vector<double>(edges.size(), 1.0)) {}

bool Graph::has_edge(int j, int k) const {
    if (j > k) std::swap(j, k);
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(j, k));
}

double Graph::degree(int v) const {
    double d = 0.0;
    for (size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].first == v || edges_[i].second == v) d += weights_[i];
    return d;
}

int Graph::unweighted_degree(int v) const {
    int d = 0;
    for (const auto& [j, k] : edges_)
        if (j == v || k == v) ++d;
    return d;
}

std::vector<int> Graph::neighbors(int v) const {
    std::vector<int> nb;
    for (const auto& [j, k] : edges_) {
        if (j == v) nb.push_back(k);
        else if (k == v) nb.push_back(j);
    }
    std::sort(nb.begin(), nb.end());
    return nb;
}

bool Graph::is_connected() const {
    if (n_ <= 1) return true;
    std::vector<std::vector<int>> adj(n_);
    for (const auto& [j, k] : edges_) {
        adj[j].push_back(k);
        adj[k].push_back(j);
    }
    std::vector<bool> seen(n_, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int count = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = true;
                ++count;
                q.push(u);
            }
    }
    return count == n_;
}

std::string Graph::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    auto arr = nlohmann::json::array();
    for (size_t i = 0; i < edges_.size(); ++i)
        arr.push_back({edges_[i].first, edges_[i].second, weights_[i]});
    j["edges"] = arr;
    return j.dump();
}

Graph Graph::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    std::vector<double> weights;
    for (const auto& e : j.at("edges")) {
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        weights.push_back(e.at(2).get<double>());
    }
    return Graph(n, std::move(edges), std::move(weights));
}

Eigen::MatrixXd laplacian(const Graph& g) {
    int n = g.num_nodes();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    const auto& edges = g.edges();
    const auto& w = g.weights();
    for (size_t i = 0; i < edges.size(); ++i) {
        auto [j, k] = edges[i];
        L(j, j) += w[i];
        L(k, k) += w[i];
        L(j, k) -= w[i];
        L(k, j) -= w[i];
    }
    return L;
}

Graph erdos_renyi_connected(int n, double p, std::mt19937_64& rng,
                            int max_attempts) {
    if (n < 2) throw std::invalid_argument("erdos_renyi_connected: n >= 2 required");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("erdos_renyi_connected: p must be in (0,1)");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<std::pair<int, int>> edges;
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (unit(rng) < p) edges.emplace_back(j, k);
        Graph g(n, std::move(edges));
        if (g.is_connected()) return g;
    }
    throw std::runtime_error(
        "erdos_renyi_connected: no connected graph within attempt budget");
}

Graph permute(const Graph& g, const std::vector<int>& perm) {
    int n = g.num_nodes();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permute: permutation length mismatch");
    std::vector<bool> hit(n, false);
    for (int v : perm) {
        if (v < 0 || v >= n || hit[v])
            throw std::invalid_argument("permute: not a bijection");
        hit[v] = true;
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.num_edges());
    for (const auto& [j, k] : g.edges()) edges.emplace_back(perm[j], perm[k]);
    return Graph(n, std::move(edges), g.weights());
}

namespace {

// Sorted multiset of neighbor degrees; a node can only map to a node with
// the same signature.
std::vector<int> degree_signature(const Graph& g, int v) {
    std::vector<int> sig;
    for (int u : g.neighbors(v)) sig.push_back(g.unweighted_degree(u));
    std::sort(sig.begin(), sig.end());
    return sig;
}

struct IsoSearch {
    const Graph& g1;
    const Graph& g2;
    std::vector<std::vector<bool>> adj1, adj2;
    std::vector<int> mapping;       // g1 node -> g2 node, -1 unassigned
    std::vector<bool> used;

    bool consistent(int v, int target) const {
        for (int u = 0; u < v; ++u) {
            if (adj1[v][u] != adj2[target][mapping[u]]) return false;
        }
        return true;
    }

    bool extend(int v, const std::vector<std::vector<int>>& candidates) {
        if (v == g1.num_nodes()) return true;
        for (int target : candidates[v]) {
            if (used[target] || !consistent(v, target)) continue;
            mapping[v] = target;
            used[target] = true;
            if (extend(v + 1, candidates)) return true;
            used[target] = false;
            mapping[v] = -1;
        }
        return false;
    }
};

}  // namespace

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int j = 0; j + 1 < n; ++j) edges.emplace_back(j, j + 1);
    return Graph(n, std::move(edges));
}

Graph ring_graph(int n) {
    if (n < 3) throw std::invalid_argument("ring_graph: n >= 3 required");
    std::vector<std::pair<int, int>> edges;
    for (int j = 0; j < n; ++j) edges.emplace_back(j, (j + 1) % n);
    return Graph(n, std::move(edges));
}

Graph bridged_triangles() {
    return Graph(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
}

bool are_isomorphic(const Graph& g1, const Graph& g2) {
    int n = g1.num_nodes();
    if (n != g2.num_nodes()) return false;
    if (g1.num_edges() != g2.num_edges()) return false;

    std::vector<int> deg1(n), deg2(n);
    for (int v = 0; v < n; ++v) {
        deg1[v] = g1.unweighted_degree(v);
        deg2[v] = g2.unweighted_degree(v);
    }
    {
        auto s1 = deg1, s2 = deg2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) return false;
    }
    std::vector<std::vector<int>> sig1(n), sig2(n);
    for (int v = 0; v < n; ++v) {
        sig1[v] = degree_signature(g1, v);
        sig2[v] = degree_signature(g2, v);
    }
    {
        auto s1 = sig1, s2 = sig2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) return false;
    }

    std::vector<std::vector<int>> candidates(n);
    for (int v = 0; v < n; ++v) {
        for (int u = 0; u < n; ++u)
            if (deg1[v] == deg2[u] && sig1[v] == sig2[u])
                candidates[v].push_back(u);
        if (candidates[v].empty()) return false;
    }

    IsoSearch search{g1, g2, {}, {}, std::vector<int>(n, -1),
                     std::vector<bool>(n, false)};
    search.adj1.assign(n, std::vector<bool>(n, false));
    search.adj2.assign(n, std::vector<bool>(n, false));
    for (const auto& [j, k] : g1.edges())
        search.adj1[j][k] = search.adj1[k][j] = true;
    for (const auto& [j, k] : g2.edges())
        search.adj2[j][k] = search.adj2[k][j] = true;
    return search.extend(0, candidates);
}

}  // namespace qgnn
