#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qgnn/hamiltonians.hpp"
#include "qgnn/statevector.hpp"

using namespace qgnn;

namespace {

StateVector random_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd amps(int64_t{1} << n);
    for (int64_t i = 0; i < amps.size(); ++i) amps(i) = {gauss(rng), gauss(rng)};
    amps /= amps.norm();
    return StateVector(n, std::move(amps));
}

// independent oracle: expm(-i t H) by Taylor series summation
Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& H, double t) {
    const std::complex<double> I(0, 1);
    Eigen::MatrixXcd A = -I * t * H;
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(H.rows(), H.cols());
    Eigen::MatrixXcd sum = term;
    for (int k = 1; k < 60; ++k) {
        term = term * A / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    return sum;
}

}  // namespace

TEST_CASE("evolve_diagonal identity, eigenstate phase, ZZ eigenvalue") {
    PauliSum z(std::vector<PauliTerm>{{1.0, {{0, Axis::Z}}}});
    StateVector s(1);
    evolve_diagonal(s, z, 0.0);
    CHECK(s.amps()(0) == std::complex<double>(1, 0));

    evolve_diagonal(s, z, M_PI / 2);
    CHECK(std::norm(s.amps()(0)) == doctest::Approx(1.0));
    CHECK(s.amps()(0).real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.amps()(0).imag() == doctest::Approx(-1.0));

    PauliSum zz(std::vector<PauliTerm>{{1.0, {{0, Axis::Z}, {1, Axis::Z}}}});
    double t = 0.37;
    StateVector s01 = StateVector::basis(2, 0b01);
    evolve_diagonal(s01, zz, t);
    // ZZ on |01> has eigenvalue -1, so the phase is e^{+it}
    CHECK(s01.amps()(1).real() == doctest::Approx(std::cos(t)));
    CHECK(s01.amps()(1).imag() == doctest::Approx(std::sin(t)));
}

TEST_CASE("evolve_diagonal rejects non-diagonal Hamiltonians") {
    PauliSum x(std::vector<PauliTerm>{{1.0, {{0, Axis::X}}}});
    StateVector s(1);
    CHECK_THROWS(evolve_diagonal(s, x, 1.0));
}

TEST_CASE("evolve_mixer closed forms") {
    StateVector s(1);
    evolve_mixer(s, {0}, M_PI / 2);
    CHECK(std::abs(s.amps()(0)) < 1e-12);
    CHECK(s.amps()(1).imag() == doctest::Approx(-1.0));  // -i|1>

    StateVector h(1);
    evolve_mixer(h, {0}, M_PI / 4);
    CHECK(std::norm(h.amps()(0)) == doctest::Approx(0.5));
    CHECK(std::norm(h.amps()(1)) == doctest::Approx(0.5));

    StateVector bad(1);
    CHECK_THROWS(evolve_mixer(bad, {3}, 1.0));
}

TEST_CASE("evolve_dense matches evolve_mixer for H = X") {
    PauliSum x(std::vector<PauliTerm>{{1.0, {{0, Axis::X}}}});
    StateVector dense(1), mixer(1);
    evolve_dense(dense, x, M_PI / 2);
    evolve_mixer(mixer, {0}, M_PI / 2);
    CHECK((dense.amps() - mixer.amps()).norm() < 1e-12);
}

TEST_CASE("evolve_dense agrees with Taylor-series oracle") {
    std::mt19937_64 rng(5);
    PauliSum h(std::vector<PauliTerm>{{1.0, {{0, Axis::Z}, {1, Axis::Z}}},
                                      {1.0, {{0, Axis::X}}}});
    std::uniform_real_distribution<double> tdist(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        double t = tdist(rng);
        StateVector psi = random_state(2, rng);
        Eigen::VectorXcd expected = expm_taylor(h.to_dense(2), t) * psi.amps();
        evolve_dense(psi, h, t);
        CHECK((psi.amps() - expected).norm() < 1e-8);
    }
}

TEST_CASE("evolve_dense refuses above the cap") {
    PauliSum x(std::vector<PauliTerm>{{1.0, {{0, Axis::X}}}});
    StateVector s(15);
    CHECK_THROWS(evolve_dense(s, x, 0.1));
}

TEST_CASE("dense and structured evolution agree for diagonal H") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int n : {2, 4, 8}) {
        Graph g = erdos_renyi_connected(n, 0.5, rng);
        IsingParams p = IsingParams::zeros(g);
        for (auto& [e, J] : p.couplings) J = gauss(rng);
        for (auto& [v, Q] : p.biases) Q = gauss(rng);
        PauliSum diag = ising_diagonal_part(g, p);
        StateVector a = random_state(n, rng);
        StateVector b = a;
        evolve_diagonal(a, diag, 0.83);
        evolve_dense(b, diag, 0.83);
        CHECK((a.amps() - b.amps()).norm() < 1e-9);
    }
}

TEST_CASE("diagonal phases compose additively") {
    std::mt19937_64 rng(9);
    Graph g = ring_graph(4);
    PauliSum h = coupling_hamiltonian_1q(g);
    StateVector a = random_state(4, rng);
    StateVector b = a;
    evolve_diagonal(a, h, 0.3);
    evolve_diagonal(a, h, 0.9);
    evolve_diagonal(b, h, 1.2);
    CHECK((a.amps() - b.amps()).norm() < 1e-12);
}

TEST_CASE("norm preservation across random evolutions") {
    std::mt19937_64 rng(11);
    Graph g = erdos_renyi_connected(5, 0.5, rng);
    PauliSum diag = coupling_hamiltonian_1q(g);
    std::uniform_real_distribution<double> tdist(-3.0, 3.0);
    StateVector s = random_state(5, rng);
    for (int i = 0; i < 500; ++i) {
        if (i % 2 == 0) evolve_diagonal(s, diag, tdist(rng));
        else evolve_mixer(s, {0, 1, 2, 3, 4}, tdist(rng));
        CHECK(std::abs(s.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("first-order Trotter error shrinks ~2x when doubling steps") {
    std::mt19937_64 rng(13);
    Graph g = ring_graph(4);
    IsingParams p = IsingParams::zeros(g);
    for (auto& [e, J] : p.couplings) J = 1.0;
    for (auto& [v, Q] : p.biases) Q = 0.5;
    PauliSum diag = ising_diagonal_part(g, p);
    PauliSum full = ising_hamiltonian(g, p);
    const double T = 1.0;
    StateVector exact = random_state(4, rng);
    StateVector initial = exact;
    evolve_dense(exact, full, T);

    auto trotter_error = [&](int steps) {
        StateVector s = initial;
        double dt = T / steps;
        for (int k = 0; k < steps; ++k) {
            evolve_diagonal(s, diag, dt);
            evolve_mixer(s, {0, 1, 2, 3}, dt);
        }
        return (s.amps() - exact.amps()).norm();
    };
    double prev = trotter_error(32);
    for (int steps : {64, 128, 256}) {
        double cur = trotter_error(steps);
        CHECK(prev / cur > 1.8);
        CHECK(prev / cur < 2.2);
        prev = cur;
    }
}

TEST_CASE("ground_state closed forms and degenerate tie-break") {
    PauliSum z(std::vector<PauliTerm>{{1.0, {{0, Axis::Z}}}});
    StateVector gz = ground_state(z, 1);
    CHECK(std::norm(gz.amps()(1)) == doctest::Approx(1.0));

    PauliSum mx(std::vector<PauliTerm>{{-1.0, {{0, Axis::X}}}});
    StateVector gx = ground_state(mx, 1);
    CHECK(gx.amps()(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(gx.amps()(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));

    // degenerate ground space of ZZ: deterministic representative
    PauliSum zz(std::vector<PauliTerm>{{1.0, {{0, Axis::Z}, {1, Axis::Z}}}});
    StateVector g1 = ground_state(zz, 2);
    StateVector g2 = ground_state(zz, 2);
    CHECK((g1.amps() - g2.amps()).norm() == 0.0);
    CHECK(std::norm(g1.amps()(0b01)) + std::norm(g1.amps()(0b10)) ==
          doctest::Approx(1.0));
    // phase fix: first nonzero amplitude real positive
    for (int64_t i = 0; i < g1.dim(); ++i) {
        if (std::abs(g1.amps()(i)) > 1e-9) {
            CHECK(g1.amps()(i).imag() == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(g1.amps()(i).real() > 0.0);
            break;
        }
    }
}

TEST_CASE("overlap closed forms") {
    std::mt19937_64 rng(15);
    StateVector psi = random_state(3, rng);
    CHECK(std::abs(overlap(psi, psi) - 1.0) < 1e-12);
    CHECK(std::abs(overlap(StateVector::basis(1, 0), StateVector::basis(1, 1))) <
          1e-12);
    CHECK(overlap(StateVector::plus_state(1), StateVector(1)).real() ==
          doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK_THROWS(overlap(StateVector(1), StateVector(2)));
}

TEST_CASE("swap_test_estimate statistics") {
    std::mt19937_64 rng(17);
    StateVector psi = random_state(3, rng);
    CHECK(swap_test_estimate(psi, psi, 100, rng) == doctest::Approx(1.0));

    // |<a|b>|^2 = 0.5: estimate within 3 sigma of 0.5 at 1e5 shots
    Eigen::VectorXcd amps(2);
    amps << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    StateVector plus(1, amps);
    StateVector zero(1);
    double est = swap_test_estimate(plus, zero, 100000, rng);
    CHECK(std::abs(est - 0.5) < 0.01);

    double ortho = swap_test_estimate(StateVector::basis(1, 0),
                                      StateVector::basis(1, 1), 200000, rng);
    CHECK(ortho < 0.01);
    CHECK_THROWS(swap_test_estimate(psi, psi, 0, rng));
}

TEST_CASE("sample_bitstrings support and frequencies") {
    std::mt19937_64 rng(19);
    auto rec0 = sample_bitstrings(StateVector(3), 50, rng);
    for (uint64_t b : rec0.bitstrings) CHECK(b == 0);

    auto recp = sample_bitstrings(StateVector::plus_state(1), 100000, rng);
    double freq1 = 0.0;
    for (uint64_t b : recp.bitstrings) freq1 += static_cast<double>(b);
    freq1 /= recp.shots;
    CHECK(std::abs(freq1 - 0.5) < 0.005);

    auto recg = sample_bitstrings(StateVector::ghz(3), 500, rng);
    for (uint64_t b : recg.bitstrings) CHECK((b == 0 || b == 7));
}

TEST_CASE("state dump round trip") {
    std::mt19937_64 rng(21);
    StateVector psi = random_state(4, rng);
    StateVector back = StateVector::load(psi.dump());
    CHECK(back.n_qubits() == 4);
    CHECK((back.amps() - psi.amps()).norm() == 0.0);
}

TEST_CASE("apply_cnot basics") {
    StateVector s = StateVector::basis(2, 0b01);  // qubit 0 = 1
    apply_cnot(s, 0, 1);
    CHECK(std::norm(s.amps()(0b11)) == doctest::Approx(1.0));
    apply_cnot(s, 0, 1);
    CHECK(std::norm(s.amps()(0b01)) == doctest::Approx(1.0));
    CHECK_THROWS(apply_cnot(s, 0, 0));
}
