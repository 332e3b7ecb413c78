#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "qgnn/graph.hpp"

using namespace qgnn;

namespace {

// brute-force isomorphism over all n! permutations, for cross-checking
bool isomorphic_brute(const Graph& g1, const Graph& g2) {
    int n = g1.num_nodes();
    if (n != g2.num_nodes() || g1.num_edges() != g2.num_edges()) return false;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (const auto& [j, k] : g1.edges())
            if (!g2.has_edge(perm[j], perm[k])) {
                ok = false;
                break;
            }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

int component_count(const Graph& g) {
    int n = g.num_nodes();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int v) {
        return parent[v] == v ? v : parent[v] = find(parent[v]);
    };
    for (const auto& [j, k] : g.edges()) parent[find(j)] = find(k);
    int c = 0;
    for (int v = 0; v < n; ++v)
        if (find(v) == v) ++c;
    return c;
}

}  // namespace

TEST_CASE("laplacian of unweighted triangle") {
    Graph g(3, {{0, 1}, {0, 2}, {1, 2}});
    Eigen::MatrixXd L = laplacian(g);
    Eigen::MatrixXd expected(3, 3);
    expected << 2, -1, -1, -1, 2, -1, -1, -1, 2;
    CHECK((L - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("laplacian of edgeless graph is zero") {
    Graph g(2, {});
    CHECK(laplacian(g).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("laplacian of weighted path") {
    Graph g(3, {{0, 1}, {1, 2}}, {2.0, 3.0});
    Eigen::MatrixXd expected(3, 3);
    expected << 2, -2, 0, -2, 5, -3, 0, -3, 3;
    CHECK((laplacian(g) - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("laplacian rows sum to zero and matrix is PSD") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = erdos_renyi_connected(6, 0.5, rng);
        Eigen::MatrixXd L = laplacian(g);
        CHECK((L - L.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK((L * Eigen::VectorXd::Ones(6)).cwiseAbs().maxCoeff() < 1e-12);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
        CHECK(es.eigenvalues().minCoeff() > -1e-10);
    }
}

TEST_CASE("laplacian zero-eigenvalue multiplicity counts components") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 4 + static_cast<int>(unit(rng) * 5);  // 4..8
        std::vector<std::pair<int, int>> edges;
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (unit(rng) < 0.3) edges.emplace_back(j, k);
        Graph g(n, std::move(edges));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian(g));
        int zero_count = 0;
        for (int i = 0; i < n; ++i)
            if (std::abs(es.eigenvalues()(i)) < 1e-9) ++zero_count;
        CHECK(zero_count == component_count(g));
    }
}

TEST_CASE("erdos_renyi_connected n=2 forces the single edge") {
    std::mt19937_64 rng(1);
    Graph g = erdos_renyi_connected(2, 0.999, rng);
    CHECK(g.num_edges() == 1);
}

TEST_CASE("erdos_renyi_connected is deterministic under a fixed seed") {
    std::mt19937_64 rng1(99), rng2(99);
    Graph g1 = erdos_renyi_connected(6, 0.5, rng1);
    Graph g2 = erdos_renyi_connected(6, 0.5, rng2);
    CHECK(g1 == g2);
}

TEST_CASE("erdos_renyi_connected mean edge count near binomial mean") {
    // n=15, p=0.5: mean 52.5, sd ~ sqrt(105*0.25) ~= 5.12; conditioning on
    // connectivity biases slightly upward
    std::mt19937_64 rng(7);
    double total = 0.0;
    const int draws = 1000;
    for (int i = 0; i < draws; ++i)
        total += erdos_renyi_connected(15, 0.5, rng).num_edges();
    double mean = total / draws;
    double sigma_of_mean = std::sqrt(105 * 0.25) / std::sqrt(draws);
    CHECK(mean > 52.5 - 3 * sigma_of_mean);
    CHECK(mean < 52.5 + 3 * sigma_of_mean + 1.0);
}

TEST_CASE("permute identity and hand-worked path") {
    Graph path(3, {{0, 1}, {1, 2}});
    CHECK(permute(path, {0, 1, 2}) == path);
    Graph mapped = permute(path, {2, 0, 1});
    CHECK(mapped.has_edge(0, 2));
    CHECK(mapped.has_edge(0, 1));
    CHECK(mapped.num_edges() == 2);

    Graph tri(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(permute(tri, {1, 2, 0}) == tri);
}

TEST_CASE("permute rejects bad permutations") {
    Graph g(3, {{0, 1}});
    CHECK_THROWS(permute(g, {0, 1}));
    CHECK_THROWS(permute(g, {0, 0, 1}));
}

TEST_CASE("are_isomorphic basics") {
    Graph tri(3, {{0, 1}, {0, 2}, {1, 2}});
    Graph path3(3, {{0, 1}, {1, 2}});
    CHECK(are_isomorphic(tri, tri));
    CHECK_FALSE(are_isomorphic(tri, path3));
    CHECK_FALSE(are_isomorphic(tri, Graph(4, {{0, 1}, {0, 2}, {1, 2}})));
}

TEST_CASE("C6 vs two triangles: equal degree sequences, not isomorphic") {
    Graph c6 = ring_graph(6);
    Graph two_tri(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
    CHECK_FALSE(are_isomorphic(c6, two_tri));
    CHECK_FALSE(isomorphic_brute(c6, two_tri));
}

TEST_CASE("are_isomorphic agrees with brute force on random pairs") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto random_graph = [&](int n, double p) {
        std::vector<std::pair<int, int>> edges;
        for (int j = 0; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (unit(rng) < p) edges.emplace_back(j, k);
        return Graph(n, std::move(edges));
    };
    for (int trial = 0; trial < 50; ++trial) {
        Graph g1 = random_graph(6, 0.5);
        Graph g2 = random_graph(6, 0.5);
        CHECK(are_isomorphic(g1, g2) == isomorphic_brute(g1, g2));
    }
}

TEST_CASE("property: graph is isomorphic to any relabeling") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = erdos_renyi_connected(7, 0.4, rng);
        std::vector<int> perm(7);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(are_isomorphic(g, permute(g, perm)));
    }
}

TEST_CASE("property: laplacian conjugates under permutation") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = erdos_renyi_connected(6, 0.5, rng);
        std::vector<int> perm(6);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Eigen::MatrixXd P = Eigen::MatrixXd::Zero(6, 6);
        for (int v = 0; v < 6; ++v) P(perm[v], v) = 1.0;
        Eigen::MatrixXd lhs = laplacian(permute(g, perm));
        Eigen::MatrixXd rhs = P * laplacian(g) * P.transpose();
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("graph JSON round trip, canonical edge order") {
    Graph g(4, {{2, 3}, {0, 1}, {1, 3}}, {1.5, 1.0, 2.0});
    Graph back = Graph::from_json(g.to_json());
    CHECK(back == g);
    CHECK(g.edges().front() == std::make_pair(0, 1));
}

TEST_CASE("graph constructor rejects invalid input") {
    CHECK_THROWS(Graph(3, {{0, 0}}));                    // self loop
    CHECK_THROWS(Graph(3, {{0, 5}}));                    // out of range
    CHECK_THROWS(Graph(3, {{0, 1}, {1, 0}}));            // duplicate
    CHECK_THROWS(Graph(3, {{0, 1}}, {-1.0}));            // bad weight
    std::mt19937_64 rng(1);
    CHECK_THROWS(erdos_renyi_connected(1, 0.5, rng));
}
