#include "qgnn/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace qgnn {

namespace {

void check_qubit(int q, int n) {
    if (q < 0 || q >= n)
        throw std::out_of_range("qubit index out of range");
}

Eigen::VectorXcd apply_pauli_sum(const PauliSum& h, const Eigen::VectorXcd& v,
                                 int n_qubits) {
    const int64_t dim = v.size();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    const std::complex<double> I(0.0, 1.0);
    for (const auto& t : h.terms()) {
        for (const auto& [q, a] : t.ops) check_qubit(q, n_qubits);
        for (int64_t col = 0; col < dim; ++col) {
            int64_t row = col;
            std::complex<double> amp = t.coeff * v(col);
            for (const auto& [q, a] : t.ops) {
                uint64_t bit = (static_cast<uint64_t>(col) >> q) & 1;
                switch (a) {
                    case Axis::X:
                        row ^= int64_t{1} << q;
                        break;
                    case Axis::Y:
                        row ^= int64_t{1} << q;
                        amp *= bit ? -I : I;
                        break;
                    case Axis::Z:
                        amp *= bit ? -1.0 : 1.0;
                        break;
                }
            }
            out(row) += amp;
        }
    }
    return out;
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 30)
        throw std::invalid_argument("StateVector: unsupported qubit count");
    amps_ = Eigen::VectorXcd::Zero(int64_t{1} << n_qubits);
    amps_(0) = 1.0;
}

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
    if (amps_.size() != (int64_t{1} << n_qubits))
        throw std::invalid_argument("StateVector: amplitude length mismatch");
    if (std::abs(amps_.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("StateVector: not normalized");
}

StateVector StateVector::plus_state(int n_qubits) {
    StateVector s(n_qubits);
    const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
    s.amps_.setConstant(a);
    return s;
}

StateVector StateVector::ghz(int n_qubits) {
    StateVector s(n_qubits);
    s.amps_.setZero();
    const double a = 1.0 / std::sqrt(2.0);
    s.amps_(0) = a;
    s.amps_(s.dim() - 1) = a;
    return s;
}

StateVector StateVector::basis(int n_qubits, uint64_t index) {
    StateVector s(n_qubits);
    if (index >= static_cast<uint64_t>(s.dim()))
        throw std::out_of_range("StateVector::basis: index out of range");
    s.amps_.setZero();
    s.amps_(static_cast<int64_t>(index)) = 1.0;
    return s;
}

void StateVector::renormalize() { amps_ /= amps_.norm(); }

std::vector<std::byte> StateVector::dump() const {
    std::vector<std::byte> out(4 + 16 * static_cast<size_t>(dim()));
    uint32_t n = static_cast<uint32_t>(n_qubits_);
    std::memcpy(out.data(), &n, 4);
    for (int64_t i = 0; i < dim(); ++i) {
        double re = amps_(i).real(), im = amps_(i).imag();
        std::memcpy(out.data() + 4 + 16 * i, &re, 8);
        std::memcpy(out.data() + 4 + 16 * i + 8, &im, 8);
    }
    return out;
}

StateVector StateVector::load(const std::vector<std::byte>& bytes) {
    if (bytes.size() < 4) throw std::invalid_argument("StateVector::load: truncated");
    uint32_t n;
    std::memcpy(&n, bytes.data(), 4);
    int64_t dim = int64_t{1} << n;
    if (bytes.size() != 4 + 16 * static_cast<size_t>(dim))
        throw std::invalid_argument("StateVector::load: length mismatch");
    Eigen::VectorXcd amps(dim);
    for (int64_t i = 0; i < dim; ++i) {
        double re, im;
        std::memcpy(&re, bytes.data() + 4 + 16 * i, 8);
        std::memcpy(&im, bytes.data() + 4 + 16 * i + 8, 8);
        amps(i) = {re, im};
    }
    return StateVector(static_cast<int>(n), std::move(amps));
}

void evolve_diagonal(StateVector& state, const PauliSum& h, double t) {
    if (!h.is_diagonal())
        throw std::invalid_argument("evolve_diagonal: non-diagonal term present");
    if (h.min_qubits() > state.n_qubits())
        throw std::invalid_argument("evolve_diagonal: qubit index out of range");
    auto& amps = state.amps();
    const int64_t dim = amps.size();
    for (int64_t i = 0; i < dim; ++i) {
        double e = h.diagonal_energy(static_cast<uint64_t>(i));
        amps(i) *= std::polar(1.0, -t * e);
    }
}

void evolve_mixer(StateVector& state, const std::vector<int>& qubits, double t) {
    const double c = std::cos(t);
    const std::complex<double> ms(0.0, -std::sin(t));
    auto& amps = state.amps();
    const int64_t dim = amps.size();
    for (int q : qubits) {
        check_qubit(q, state.n_qubits());
        const int64_t bit = int64_t{1} << q;
        for (int64_t i = 0; i < dim; ++i) {
            if (i & bit) continue;
            const std::complex<double> a0 = amps(i), a1 = amps(i | bit);
            amps(i) = c * a0 + ms * a1;
            amps(i | bit) = ms * a0 + c * a1;
        }
    }
}

DensePropagator::DensePropagator(const PauliSum& h, int n_qubits) {
    if (n_qubits > kDenseQubitCap)
        throw std::invalid_argument(
            "DensePropagator: above dense cap; use a Trotterized path");
    if (h.min_qubits() > n_qubits)
        throw std::invalid_argument("DensePropagator: qubit index out of range");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense(n_qubits));
    evals_ = es.eigenvalues();
    evecs_ = es.eigenvectors();
}

void DensePropagator::apply(StateVector& state, double t) const {
    if (state.dim() != evecs_.rows())
        throw std::invalid_argument("DensePropagator: dimension mismatch");
    Eigen::VectorXcd coeffs = evecs_.adjoint() * state.amps();
    for (int64_t i = 0; i < coeffs.size(); ++i)
        coeffs(i) *= std::polar(1.0, -t * evals_(i));
    state.amps() = evecs_ * coeffs;
}

void evolve_dense(StateVector& state, const PauliSum& h, double t) {
    DensePropagator prop(h, state.n_qubits());
    prop.apply(state, t);
}

StateVector ground_state(const PauliSum& h, int n_qubits) {
    DensePropagator prop(h, n_qubits);
    Eigen::VectorXcd v = prop.eigenvectors().col(0);
    // phase fix: first nonzero amplitude real positive
    for (int64_t i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-9) {
            v *= std::conj(v(i)) / std::abs(v(i));
            break;
        }
    }
    v /= v.norm();
    return StateVector(n_qubits, std::move(v));
}

std::complex<double> overlap(const StateVector& a, const StateVector& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument("overlap: dimension mismatch");
    return a.amps().dot(b.amps());  // Eigen dot conjugates the left operand
}

double swap_test_estimate(const StateVector& a, const StateVector& b, int shots,
                          std::mt19937_64& rng) {
    if (shots < 1) throw std::invalid_argument("swap_test_estimate: shots >= 1");
    const double p_accept = (1.0 + std::norm(overlap(a, b))) / 2.0;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int accepts = 0;
    for (int s = 0; s < shots; ++s)
        if (unit(rng) < p_accept) ++accepts;
    double est = 2.0 * static_cast<double>(accepts) / shots - 1.0;
    return std::clamp(est, 0.0, 1.0);
}

MeasurementRecord sample_bitstrings(const StateVector& state, int shots,
                                    std::mt19937_64& rng) {
    if (shots < 1) throw std::invalid_argument("sample_bitstrings: shots >= 1");
    const int64_t dim = state.dim();
    std::vector<double> cdf(dim);
    double acc = 0.0;
    for (int64_t i = 0; i < dim; ++i) {
        acc += std::norm(state.amps()(i));
        cdf[i] = acc;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    MeasurementRecord rec;
    rec.shots = shots;
    rec.bitstrings.reserve(shots);
    for (int s = 0; s < shots; ++s) {
        double u = unit(rng) * acc;
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        rec.bitstrings.push_back(
            static_cast<uint64_t>(std::distance(cdf.begin(), it)));
    }
    return rec;
}

double expectation(const StateVector& state, const PauliSum& h) {
    if (h.min_qubits() > state.n_qubits())
        throw std::invalid_argument("expectation: dimension mismatch");
    Eigen::VectorXcd hv = apply_pauli_sum(h, state.amps(), state.n_qubits());
    std::complex<double> val = state.amps().dot(hv);
    return val.real();
}

void apply_cnot(StateVector& state, int control, int target) {
    check_qubit(control, state.n_qubits());
    check_qubit(target, state.n_qubits());
    if (control == target)
        throw std::invalid_argument("apply_cnot: control equals target");
    auto& amps = state.amps();
    const int64_t cbit = int64_t{1} << control;
    const int64_t tbit = int64_t{1} << target;
    for (int64_t i = 0; i < amps.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amps(i), amps(i | tbit));
    }
}

}  // namespace qgnn
