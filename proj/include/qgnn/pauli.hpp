#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qgnn {

enum class Axis { X, Y, Z };

char axis_char(Axis a);

/// One Pauli string with a real coefficient. Operators are sorted by qubit
/// index with at most one per qubit; an empty ops list is an identity offset.
struct PauliTerm {
    double coeff = 0.0;
    std::vector<std::pair<int, Axis>> ops;

    bool is_diagonal() const;  // only Z operators (or identity)
    uint64_t z_mask() const;
};

/// Real-coefficient sum of Pauli strings. Hermitian by construction.
/// Immutable in spirit: build once, share freely.
class PauliSum {
public:
    PauliSum() = default;
    explicit PauliSum(std::vector<PauliTerm> terms);

    const std::vector<PauliTerm>& terms() const { return terms_; }
    int min_qubits() const;  // 1 + highest qubit index touched (0 if none)
    bool is_diagonal() const;

    /// Eigenvalue of a diagonal sum on computational basis state `bits`.
    double diagonal_energy(uint64_t bits) const;

    Eigen::MatrixXcd to_dense(int n_qubits) const;

    /// Merges identical strings, drops zero coefficients.
    PauliSum simplified(double tol = 0.0) const;

    PauliSum& operator+=(const PauliSum& other);
    PauliSum scaled(double factor) const;

    /// Text format: one term per line, `<coeff> <axis><qubit> ...`;
    /// identity term is `<coeff> I`.
    std::string to_text() const;
    static PauliSum parse(const std::string& text);

private:
    std::vector<PauliTerm> terms_;
};

}  // namespace qgnn
