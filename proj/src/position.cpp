#include "qgnn/position.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qgnn {

PositionRegister::PositionRegister(int n_nodes, int m, double h)
    : m_(m), h_(h) {
    if (n_nodes < 1) throw std::invalid_argument("PositionRegister: n_nodes >= 1");
    if (m < 1 || m > 10)
        throw std::invalid_argument("PositionRegister: qubits per node out of range");
    if (!(h > 0.0)) throw std::invalid_argument("PositionRegister: spacing must be > 0");
    offsets_.resize(n_nodes);
    for (int j = 0; j < n_nodes; ++j) offsets_[j] = j * m;
}

namespace {

void check_layout(const StateVector& state, const PositionRegister& reg) {
    if (state.n_qubits() != reg.total_qubits())
        throw std::invalid_argument("position register layout mismatch");
}

// Applies a d x d matrix to the sub-register of one node, iterating over
// all configurations of the remaining qubits.
void apply_register_matrix(StateVector& state, const PositionRegister& reg,
                           int node, const Eigen::MatrixXcd& mat) {
    const int m = reg.qubits_per_node();
    const int d = reg.grid_size();
    const int off = reg.offset(node);
    const int64_t dim = state.dim();
    const uint64_t low_mask = (uint64_t{1} << off) - 1;
    auto& amps = state.amps();
    Eigen::VectorXcd block(d);
    // iterate over basis states of the other qubits
    const int64_t outer = dim >> m;
    for (int64_t o = 0; o < outer; ++o) {
        const uint64_t lo = static_cast<uint64_t>(o) & low_mask;
        const uint64_t hi = (static_cast<uint64_t>(o) & ~low_mask) << m;
        const uint64_t base = hi | lo;
        for (int s = 0; s < d; ++s)
            block(s) = amps(base | (static_cast<uint64_t>(s) << off));
        block = mat * block;
        for (int s = 0; s < d; ++s)
            amps(base | (static_cast<uint64_t>(s) << off)) = block(s);
    }
}

// Centered DFT: F[k][s] = exp(-2*pi*i*(k-c)(s-c)/d) / sqrt(d), c = (d-1)/2.
// Maps the centered position grid to the centered momentum grid.
Eigen::MatrixXcd centered_dft(int d) {
    Eigen::MatrixXcd F(d, d);
    const double c = (d - 1) / 2.0;
    for (int k = 0; k < d; ++k)
        for (int s = 0; s < d; ++s)
            F(k, s) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                                 -2.0 * M_PI * (k - c) * (s - c) / d);
    return F;
}

}  // namespace

void evolve_position_kinetic(StateVector& state, const PositionRegister& reg,
                             double t) {
    check_layout(state, reg);
    const int d = reg.grid_size();
    Eigen::MatrixXcd F = centered_dft(d);
    Eigen::VectorXcd phases(d);
    for (int k = 0; k < d; ++k) {
        double p = reg.momentum_value(k);
        phases(k) = std::polar(1.0, -0.5 * t * p * p);
    }
    Eigen::MatrixXcd kinetic = F.adjoint() * phases.asDiagonal() * F;
    for (int j = 0; j < reg.n_nodes(); ++j)
        apply_register_matrix(state, reg, j, kinetic);
}

double potential_energy(const PositionRegister& reg,
                        const std::function<double(double)>& f, uint64_t bits) {
    double e = 0.0;
    for (int j = 0; j < reg.n_nodes(); ++j)
        e += f(reg.grid_value(reg.register_index(bits, j)));
    return e;
}

double coupling_energy(const PositionRegister& reg, const Graph& g,
                       uint64_t bits) {
    double e = 0.0;
    const auto& edges = g.edges();
    const auto& w = g.weights();
    for (size_t i = 0; i < edges.size(); ++i) {
        double xj = reg.grid_value(reg.register_index(bits, edges[i].first));
        double xk = reg.grid_value(reg.register_index(bits, edges[i].second));
        e += 0.5 * w[i] * (xj - xk) * (xj - xk);
    }
    return e;
}

void evolve_position_potential(StateVector& state, const PositionRegister& reg,
                               const std::function<double(double)>& f,
                               double t) {
    check_layout(state, reg);
    // evaluate f once per grid point
    const int d = reg.grid_size();
    std::vector<double> fx(d);
    for (int s = 0; s < d; ++s) {
        fx[s] = f(reg.grid_value(s));
        if (!std::isfinite(fx[s]))
            throw std::invalid_argument(
                "evolve_position_potential: non-finite potential value");
    }
    auto& amps = state.amps();
    for (int64_t i = 0; i < amps.size(); ++i) {
        double e = 0.0;
        for (int j = 0; j < reg.n_nodes(); ++j)
            e += fx[reg.register_index(static_cast<uint64_t>(i), j)];
        amps(i) *= std::polar(1.0, -t * e);
    }
}

void evolve_position_coupling(StateVector& state, const PositionRegister& reg,
                              const Graph& g, double t) {
    check_layout(state, reg);
    if (g.num_nodes() != reg.n_nodes())
        throw std::invalid_argument("evolve_position_coupling: node count mismatch");
    auto& amps = state.amps();
    for (int64_t i = 0; i < amps.size(); ++i) {
        double e = coupling_energy(reg, g, static_cast<uint64_t>(i));
        amps(i) *= std::polar(1.0, -t * e);
    }
}

std::vector<double> position_marginal(const StateVector& state,
                                      const PositionRegister& reg, int node) {
    check_layout(state, reg);
    std::vector<double> probs(reg.grid_size(), 0.0);
    for (int64_t i = 0; i < state.dim(); ++i)
        probs[reg.register_index(static_cast<uint64_t>(i), node)] +=
            std::norm(state.amps()(i));
    return probs;
}

}  // namespace qgnn
