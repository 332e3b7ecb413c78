#pragma once

#include <map>

#include "qgnn/graph.hpp"
#include "qgnn/pauli.hpp"

namespace qgnn {

/// Ising couplings and biases keyed by a graph's edges and nodes. The
/// transverse field is fixed at unit strength on every node.
struct IsingParams {
    std::map<std::pair<int, int>, double> couplings;  // edge {j<k} -> J_jk
    std::map<int, double> biases;                     // node -> Q_v

    static IsingParams zeros(const Graph& g);
};

/// H = sum_E J_jk Z_j Z_k + sum_V Q_v Z_v + sum_V X_v.
/// Terms fall into two commuting groups: {ZZ, Z} and {X}.
PauliSum ising_hamiltonian(const Graph& g, const IsingParams& params);

/// Diagonal part only (ZZ and Z terms).
PauliSum ising_diagonal_part(const Graph& g, const IsingParams& params);

/// Single-qubit-precision coupling Hamiltonian:
/// H_C = sum_jk L_jk |1><1|_j |1><1|_k, expanded into I/Z/ZZ terms.
/// Eigenvalue on bitstring b is exactly b^T L b.
PauliSum coupling_hamiltonian_1q(const Graph& g);

/// H_K = sum_V X_j (single-qubit-precision kinetic term).
PauliSum mixer_hamiltonian(const Graph& g);

/// GHZ stabilizer generator sum: X^(x)n + sum_{j=0}^{n-2} Z_j Z_{j+1}.
PauliSum ghz_stabilizer_sum(int n);

/// H_1 = sum_E Z_j Z_k.
PauliSum zz_edge_hamiltonian(const Graph& g);

/// General parameterized graph Hamiltonian: per-edge two-qubit terms
/// W_r * O_j (x) P_k over an index set, plus per-node terms B_r * R_v.
struct EdgeTermSpec {
    Axis op_j;
    Axis op_k;
    std::map<std::pair<int, int>, double> coeffs;  // W per edge
};
struct NodeTermSpec {
    Axis op;
    std::map<int, double> coeffs;  // B per node
};
PauliSum graph_hamiltonian(const Graph& g,
                           const std::vector<EdgeTermSpec>& edge_terms,
                           const std::vector<NodeTermSpec>& node_terms);

}  // namespace qgnn
