#pragma once

#include <functional>
#include <vector>

#include "qgnn/graph.hpp"
#include "qgnn/statevector.hpp"

namespace qgnn {

/// Qubit encoding of continuous node values: each node gets an m-qubit
/// register holding a grid index s, with grid value x_s = h*(s - (2^m-1)/2).
/// Node j occupies qubits [offset_j, offset_j + m); the first qubit of a
/// register is the least significant bit of s.
class PositionRegister {
public:
    PositionRegister(int n_nodes, int m, double h);

    int n_nodes() const { return static_cast<int>(offsets_.size()); }
    int qubits_per_node() const { return m_; }
    int total_qubits() const { return m_ * n_nodes(); }
    int grid_size() const { return 1 << m_; }
    double spacing() const { return h_; }
    int offset(int node) const { return offsets_.at(node); }

    double grid_value(int s) const {
        return h_ * (s - (grid_size() - 1) / 2.0);
    }
    /// Centered conjugate (momentum) grid, spacing 2*pi / (2^m * h).
    double momentum_value(int k) const {
        return 2.0 * M_PI / (grid_size() * h_) * (k - (grid_size() - 1) / 2.0);
    }

    int register_index(uint64_t bits, int node) const {
        return static_cast<int>((bits >> offsets_.at(node)) &
                                ((uint64_t{1} << m_) - 1));
    }

    /// Grid spacing so the grid spans [-half_span, half_span].
    static double spacing_for_span(int m, double half_span) {
        return 2.0 * half_span / ((1 << m) - 1);
    }

private:
    int m_;
    double h_;
    std::vector<int> offsets_;
};

/// exp(-i (t/2) p^2) on every node register: centered DFT to the momentum
/// grid, diagonal phase, inverse transform.
void evolve_position_kinetic(StateVector& state, const PositionRegister& reg,
                             double t);

/// exp(-i t sum_j f(x_j)): diagonal phase from a per-node grid potential.
void evolve_position_potential(StateVector& state, const PositionRegister& reg,
                               const std::function<double(double)>& f, double t);

/// exp(-i t H_C) with H_C = 1/2 sum_{jk in E} Lambda_jk (x_j - x_k)^2.
void evolve_position_coupling(StateVector& state, const PositionRegister& reg,
                              const Graph& g, double t);

/// 1/2 sum Lambda_jk (x_j - x_k)^2 evaluated on one basis state.
double coupling_energy(const PositionRegister& reg, const Graph& g,
                       uint64_t bits);

/// sum_j f(x_j) evaluated on one basis state.
double potential_energy(const PositionRegister& reg,
                        const std::function<double(double)>& f, uint64_t bits);

/// Marginal probability distribution of one node's grid position.
std::vector<double> position_marginal(const StateVector& state,
                                      const PositionRegister& reg, int node);

}  // namespace qgnn
