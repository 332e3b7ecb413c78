#include "qgnn/hamiltonians.hpp"

#include <stdexcept>

namespace qgnn {

IsingParams IsingParams::zeros(const Graph& g) {
    IsingParams p;
    for (const auto& e : g.edges()) p.couplings[e] = 0.0;
    for (int v = 0; v < g.num_nodes(); ++v) p.biases[v] = 0.0;
    return p;
}

namespace {

void check_params(const Graph& g, const IsingParams& params) {
    if (params.couplings.size() != static_cast<size_t>(g.num_edges()) ||
        params.biases.size() != static_cast<size_t>(g.num_nodes()))
        throw std::invalid_argument("ising_hamiltonian: params/graph mismatch");
    for (const auto& [e, J] : params.couplings)
        if (!g.has_edge(e.first, e.second))
            throw std::invalid_argument("ising_hamiltonian: coupling on non-edge");
}

}  // namespace

PauliSum ising_diagonal_part(const Graph& g, const IsingParams& params) {
    check_params(g, params);
    std::vector<PauliTerm> terms;
    for (const auto& [e, J] : params.couplings)
        terms.push_back({J, {{e.first, Axis::Z}, {e.second, Axis::Z}}});
    for (const auto& [v, Q] : params.biases)
        terms.push_back({Q, {{v, Axis::Z}}});
    return PauliSum(std::move(terms));
}

PauliSum ising_hamiltonian(const Graph& g, const IsingParams& params) {
    PauliSum h = ising_diagonal_part(g, params);
    std::vector<PauliTerm> x_terms;
    for (int v = 0; v < g.num_nodes(); ++v)
        x_terms.push_back({1.0, {{v, Axis::X}}});
    h += PauliSum(std::move(x_terms));
    return h;
}

PauliSum coupling_hamiltonian_1q(const Graph& g) {
    // sum_jk L_jk |1><1|_j |1><1|_k with |1><1| = (I - Z)/2, expanded and
    // merged; identity offsets kept so eigenvalues equal b^T L b exactly.
    Eigen::MatrixXd L = laplacian(g);
    const int n = g.num_nodes();
    std::vector<PauliTerm> terms;
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            double c = L(j, k);
            if (c == 0.0) continue;
            if (j == k) {
                // L_jj (I - Z_j)/2
                terms.push_back({c / 2.0, {}});
                terms.push_back({-c / 2.0, {{j, Axis::Z}}});
            } else {
                // L_jk (I - Z_j)(I - Z_k)/4
                terms.push_back({c / 4.0, {}});
                terms.push_back({-c / 4.0, {{j, Axis::Z}}});
                terms.push_back({-c / 4.0, {{k, Axis::Z}}});
                terms.push_back({c / 4.0, {{j, Axis::Z}, {k, Axis::Z}}});
            }
        }
    }
    return PauliSum(std::move(terms)).simplified(1e-15);
}

PauliSum mixer_hamiltonian(const Graph& g) {
    std::vector<PauliTerm> terms;
    for (int v = 0; v < g.num_nodes(); ++v)
        terms.push_back({1.0, {{v, Axis::X}}});
    return PauliSum(std::move(terms));
}

PauliSum ghz_stabilizer_sum(int n) {
    if (n < 2) throw std::invalid_argument("ghz_stabilizer_sum: n >= 2 required");
    std::vector<PauliTerm> terms;
    PauliTerm xs{1.0, {}};
    for (int j = 0; j < n; ++j) xs.ops.emplace_back(j, Axis::X);
    terms.push_back(std::move(xs));
    for (int j = 0; j + 1 < n; ++j)
        terms.push_back({1.0, {{j, Axis::Z}, {j + 1, Axis::Z}}});
    return PauliSum(std::move(terms));
}

PauliSum zz_edge_hamiltonian(const Graph& g) {
    std::vector<PauliTerm> terms;
    for (const auto& [j, k] : g.edges())
        terms.push_back({1.0, {{j, Axis::Z}, {k, Axis::Z}}});
    return PauliSum(std::move(terms));
}

PauliSum graph_hamiltonian(const Graph& g,
                           const std::vector<EdgeTermSpec>& edge_terms,
                           const std::vector<NodeTermSpec>& node_terms) {
    std::vector<PauliTerm> terms;
    for (const auto& spec : edge_terms) {
        for (const auto& [e, W] : spec.coeffs) {
            if (!g.has_edge(e.first, e.second))
                throw std::invalid_argument("graph_hamiltonian: coefficient on non-edge");
            terms.push_back({W, {{e.first, spec.op_j}, {e.second, spec.op_k}}});
        }
    }
    for (const auto& spec : node_terms) {
        for (const auto& [v, B] : spec.coeffs) {
            if (v < 0 || v >= g.num_nodes())
                throw std::invalid_argument("graph_hamiltonian: node out of range");
            terms.push_back({B, {{v, spec.op}}});
        }
    }
    return PauliSum(std::move(terms));
}

}  // namespace qgnn
