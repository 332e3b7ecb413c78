#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qgnn {

/// Weighted undirected graph on nodes [0, n). Edges are stored as sorted
/// unique pairs (j < k) with strictly positive weights. Immutable after
/// construction; safe to share across threads.
class Graph {
public:
    Graph(int n, std::vector<std::pair<int, int>> edges,
          std::vector<double> weights);
    Graph(int n, std::vector<std::pair<int, int>> edges);  // unit weights

    int num_nodes() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<double>& weights() const { return weights_; }

    bool has_edge(int j, int k) const;
    double degree(int v) const;       // weighted degree
    int unweighted_degree(int v) const;
    std::vector<int> neighbors(int v) const;
    bool is_connected() const;

    std::string to_json() const;
    static Graph from_json(const std::string& text);

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_ &&
               weights_ == other.weights_;
    }

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<double> weights_;
};

/// Graph Laplacian L = D - A: L_jj = sum_k Lambda_jk, L_jk = -Lambda_jk.
Eigen::MatrixXd laplacian(const Graph& g);

/// Samples connected graphs from G(n, p) by rejection: edges drawn
/// independently, disconnected candidates discarded.
Graph erdos_renyi_connected(int n, double p, std::mt19937_64& rng,
                            int max_attempts = 10000);

/// Relabels nodes: edge {j,k} maps to {perm[j], perm[k]} with its weight.
Graph permute(const Graph& g, const std::vector<int>& perm);

/// Exact isomorphism test (weights ignored) via backtracking with
/// degree-sequence and neighbor-degree-multiset pruning.
bool are_isomorphic(const Graph& g1, const Graph& g2);

Graph path_graph(int n);
Graph ring_graph(int n);
/// Two triangles {0,1,2} and {3,4,5} joined by the bridge edge {2,3}.
Graph bridged_triangles();

}  // namespace qgnn
