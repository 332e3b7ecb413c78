#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qgnn/pauli.hpp"

namespace qgnn {

inline constexpr int kDenseQubitCap = 14;

/// Normalized amplitude vector over 2^n basis states. Qubit 0 is the least
/// significant bit of the basis index.
class StateVector {
public:
    explicit StateVector(int n_qubits);  // |0...0>
    StateVector(int n_qubits, Eigen::VectorXcd amps);

    static StateVector plus_state(int n_qubits);  // |+>^n
    static StateVector ghz(int n_qubits);
    static StateVector basis(int n_qubits, uint64_t index);

    int n_qubits() const { return n_qubits_; }
    int64_t dim() const { return amps_.size(); }
    const Eigen::VectorXcd& amps() const { return amps_; }
    Eigen::VectorXcd& amps() { return amps_; }

    double norm() const { return amps_.norm(); }
    void renormalize();

    /// Binary snapshot: u32 qubit count then interleaved (re, im) doubles,
    /// little endian.
    std::vector<std::byte> dump() const;
    static StateVector load(const std::vector<std::byte>& bytes);

private:
    int n_qubits_;
    Eigen::VectorXcd amps_;
};

struct MeasurementRecord {
    std::vector<uint64_t> bitstrings;
    int shots = 0;
};

/// exp(-i t H) for H diagonal in the computational basis (Z/ZZ/identity terms).
void evolve_diagonal(StateVector& state, const PauliSum& h, double t);

/// exp(-i t sum_j X_j) over the listed qubits, i.e. Rx(2t) per qubit.
void evolve_mixer(StateVector& state, const std::vector<int>& qubits, double t);

/// Exact exp(-i t H) via dense eigendecomposition; n capped (default 14).
void evolve_dense(StateVector& state, const PauliSum& h, double t);

/// Caches the eigendecomposition of a dense Hamiltonian so repeated
/// evolutions for different times are cheap.
class DensePropagator {
public:
    DensePropagator(const PauliSum& h, int n_qubits);
    void apply(StateVector& state, double t) const;
    const Eigen::VectorXd& eigenvalues() const { return evals_; }
    const Eigen::MatrixXcd& eigenvectors() const { return evecs_; }

private:
    Eigen::VectorXd evals_;
    Eigen::MatrixXcd evecs_;
};

/// Ground state of the dense Hamiltonian; global phase fixed so the first
/// nonzero amplitude is real positive.
StateVector ground_state(const PauliSum& h, int n_qubits);

std::complex<double> overlap(const StateVector& a, const StateVector& b);

/// Swap-test shot statistics: `shots` Bernoulli draws with
/// P(accept) = (1 + |<a|b>|^2) / 2; returns 2*(accept fraction) - 1,
/// clamped to [0, 1].
double swap_test_estimate(const StateVector& a, const StateVector& b, int shots,
                          std::mt19937_64& rng);

MeasurementRecord sample_bitstrings(const StateVector& state, int shots,
                                    std::mt19937_64& rng);

/// <state|H|state>; imaginary residue below 1e-10 is discarded.
double expectation(const StateVector& state, const PauliSum& h);

/// CNOT with the given control and target qubits.
void apply_cnot(StateVector& state, int control, int target);

}  // namespace qgnn
