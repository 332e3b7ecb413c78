#include "qgnn/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qgnn {

char axis_char(Axis a) {
    switch (a) {
        case Axis::X: return 'X';
        case Axis::Y: return 'Y';
        case Axis::Z: return 'Z';
    }
    return '?';
}

bool PauliTerm::is_diagonal() const {
    for (const auto& [q, a] : ops)
        if (a != Axis::Z) return false;
    return true;
}

uint64_t PauliTerm::z_mask() const {
    uint64_t mask = 0;
    for (const auto& [q, a] : ops)
        if (a == Axis::Z) mask |= uint64_t{1} << q;
    return mask;
}

PauliSum::PauliSum(std::vector<PauliTerm> terms) : terms_(std::move(terms)) {
    for (auto& t : terms_) {
        if (!std::isfinite(t.coeff))
            throw std::invalid_argument("PauliSum: non-finite coefficient");
        std::sort(t.ops.begin(), t.ops.end());
        for (size_t i = 0; i + 1 < t.ops.size(); ++i)
            if (t.ops[i].first == t.ops[i + 1].first)
                throw std::invalid_argument(
                    "PauliSum: multiple operators on one qubit in a term");
        for (const auto& [q, a] : t.ops)
            if (q < 0 || q >= 64)
                throw std::invalid_argument("PauliSum: qubit index out of range");
    }
}

int PauliSum::min_qubits() const {
    int n = 0;
    for (const auto& t : terms_)
        for (const auto& [q, a] : t.ops) n = std::max(n, q + 1);
    return n;
}

bool PauliSum::is_diagonal() const {
    for (const auto& t : terms_)
        if (!t.is_diagonal()) return false;
    return true;
}

double PauliSum::diagonal_energy(uint64_t bits) const {
    double e = 0.0;
    for (const auto& t : terms_) {
        uint64_t mask = t.z_mask();
        int parity = std::popcount(bits & mask) & 1;
        e += parity ? -t.coeff : t.coeff;
    }
    return e;
}

Eigen::MatrixXcd PauliSum::to_dense(int n_qubits) const {
    const int64_t dim = int64_t{1} << n_qubits;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
    const std::complex<double> I(0.0, 1.0);
    for (const auto& t : terms_) {
        // each basis column j maps to a single basis row under a Pauli string
        for (int64_t col = 0; col < dim; ++col) {
            int64_t row = col;
            std::complex<double> amp = t.coeff;
            for (const auto& [q, a] : t.ops) {
                uint64_t bit = (col >> q) & 1;
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
            H(row, col) += amp;
        }
    }
    return H;
}

PauliSum PauliSum::simplified(double tol) const {
    std::map<std::vector<std::pair<int, Axis>>, double> merged;
    for (const auto& t : terms_) merged[t.ops] += t.coeff;
    std::vector<PauliTerm> out;
    for (auto& [ops, c] : merged)
        if (std::abs(c) > tol) out.push_back({c, ops});
    return PauliSum(std::move(out));
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

PauliSum PauliSum::scaled(double factor) const {
    std::vector<PauliTerm> out = terms_;
    for (auto& t : out) t.coeff *= factor;
    return PauliSum(std::move(out));
}

std::string PauliSum::to_text() const {
    std::ostringstream os;
    os.precision(17);
    for (const auto& t : terms_) {
        os << t.coeff;
        if (t.ops.empty()) {
            os << " I";
        } else {
            for (const auto& [q, a] : t.ops) os << ' ' << axis_char(a) << q;
        }
        os << '\n';
    }
    return os.str();
}

PauliSum PauliSum::parse(const std::string& text) {
    std::vector<PauliTerm> terms;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        PauliTerm t;
        if (!(ls >> t.coeff))
            throw std::invalid_argument("PauliSum::parse: bad coefficient: " + line);
        std::string tok;
        while (ls >> tok) {
            if (tok == "I") continue;
            if (tok.size() < 2)
                throw std::invalid_argument("PauliSum::parse: bad operator: " + tok);
            Axis a;
            switch (tok[0]) {
                case 'X': a = Axis::X; break;
                case 'Y': a = Axis::Y; break;
                case 'Z': a = Axis::Z; break;
                default:
                    throw std::invalid_argument("PauliSum::parse: bad axis: " + tok);
            }
            t.ops.emplace_back(std::stoi(tok.substr(1)), a);
        }
        terms.push_back(std::move(t));
    }
    return PauliSum(std::move(terms));
}

}  // namespace qgnn
