#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "qgnn/graph.hpp"
#include "qgnn/hamiltonians.hpp"
#include "qgnn/statevector.hpp"

using namespace qgnn;

namespace {

Eigen::MatrixXcd qubit_permutation_matrix(const std::vector<int>& perm) {
    int n = static_cast<int>(perm.size());
    int64_t dim = int64_t{1} << n;
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(dim, dim);
    for (int64_t b = 0; b < dim; ++b) {
        int64_t mapped = 0;
        for (int q = 0; q < n; ++q)
            if ((b >> q) & 1) mapped |= int64_t{1} << perm[q];
        P(mapped, b) = 1.0;
    }
    return P;
}

}  // namespace

TEST_CASE("pure transverse field: H = X0 + X1, ground energy -2") {
    Graph g(2, {{0, 1}});
    IsingParams p = IsingParams::zeros(g);
    PauliSum h = ising_hamiltonian(g, p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense(2));
    CHECK(es.eigenvalues().minCoeff() == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("single-edge Ising spectrum matches independent diagonalization") {
    Graph g(2, {{0, 1}});
    IsingParams p = IsingParams::zeros(g);
    p.couplings[{0, 1}] = 1.0;
    PauliSum h = ising_hamiltonian(g, p);
    // independent oracle: build Z(x)Z + X(x)I + I(x)X by Kronecker products
    Eigen::Matrix2cd X, Z, I2;
    X << 0, 1, 1, 0;
    Z << 1, 0, 0, -1;
    I2.setIdentity();
    auto kron = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
        Eigen::Matrix4cd out;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        return out;
    };
    // qubit 0 is the least significant bit: term on qubit 0 sits right of (x)
    Eigen::Matrix4cd oracle = kron(Z, Z) + kron(I2, X) + kron(X, I2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e1(h.to_dense(2));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> e2(oracle);
    CHECK((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ring Ising Hamiltonian invariant under cyclic relabeling") {
    Graph ring = ring_graph(4);
    IsingParams p = IsingParams::zeros(ring);
    for (auto& [e, J] : p.couplings) J = 1.0;
    Eigen::MatrixXcd H = ising_hamiltonian(ring, p).to_dense(4);
    Eigen::MatrixXcd P = qubit_permutation_matrix({1, 2, 3, 0});
    CHECK((P * H * P.adjoint() - H).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ising_hamiltonian rejects mismatched params") {
    Graph g(3, {{0, 1}});
    IsingParams p;  // empty
    CHECK_THROWS(ising_hamiltonian(g, p));
}

TEST_CASE("coupling_hamiltonian_1q hand-worked eigenvalues") {
    Graph tri(3, {{0, 1}, {0, 2}, {1, 2}});
    PauliSum h = coupling_hamiltonian_1q(tri);
    CHECK(h.is_diagonal());
    CHECK(h.diagonal_energy(0b000) == doctest::Approx(0.0));
    CHECK(h.diagonal_energy(0b111) == doctest::Approx(0.0));
    CHECK(h.diagonal_energy(0b001) == doctest::Approx(2.0));  // b = 100 on nodes

    Graph path3 = path_graph(3);
    PauliSum hp = coupling_hamiltonian_1q(path3);
    CHECK(hp.diagonal_energy(0b101) == doctest::Approx(2.0));
}

TEST_CASE("property: Eq.5 eigenvalues equal b^T L b exhaustively") {
    std::mt19937_64 rng(3);
    for (int n : {2, 4, 6, 8, 10}) {
        Graph g = erdos_renyi_connected(n, 0.5, rng);
        Eigen::MatrixXd L = laplacian(g);
        PauliSum h = coupling_hamiltonian_1q(g);
        for (uint64_t b = 0; b < (uint64_t{1} << n); ++b) {
            Eigen::VectorXd x(n);
            for (int q = 0; q < n; ++q) x(q) = (b >> q) & 1;
            CHECK(h.diagonal_energy(b) ==
                  doctest::Approx(x.transpose() * L * x).epsilon(1e-10));
        }
    }
}

TEST_CASE("coupling_hamiltonian_1q is permutation equivariant") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = erdos_renyi_connected(5, 0.5, rng);
        std::vector<int> perm(5);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Eigen::MatrixXcd lhs = coupling_hamiltonian_1q(permute(g, perm)).to_dense(5);
        Eigen::MatrixXcd P = qubit_permutation_matrix(perm);
        Eigen::MatrixXcd rhs = P * coupling_hamiltonian_1q(g).to_dense(5) * P.adjoint();
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("mixer spectrum and expectation") {
    Graph g3(3, {{0, 1}, {1, 2}});
    PauliSum h = mixer_hamiltonian(g3);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense(3));
    Eigen::VectorXd expected(8);
    expected << -3, -1, -1, -1, 1, 1, 1, 3;
    CHECK((es.eigenvalues() - expected).cwiseAbs().maxCoeff() < 1e-10);

    CHECK(expectation(StateVector::plus_state(3), h) == doctest::Approx(3.0));
    Graph g1(1, {});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es1(
        mixer_hamiltonian(g1).to_dense(1));
    CHECK(es1.eigenvalues()(0) == doctest::Approx(-1.0));
    CHECK(es1.eigenvalues()(1) == doctest::Approx(1.0));
}

TEST_CASE("ghz_stabilizer_sum expectations on reference states") {
    for (int n : {2, 3, 5, 7}) {
        PauliSum stab = ghz_stabilizer_sum(n);
        CHECK(static_cast<int>(stab.terms().size()) == n);
        CHECK(expectation(StateVector::ghz(n), stab) ==
              doctest::Approx(static_cast<double>(n)).epsilon(1e-10));
        CHECK(expectation(StateVector(n), stab) ==
              doctest::Approx(static_cast<double>(n - 1)).epsilon(1e-10));
        CHECK(expectation(StateVector::plus_state(n), stab) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK_THROWS(ghz_stabilizer_sum(1));
}

TEST_CASE("ghz_stabilizer_sum max eigenvalue n, attained by GHZ") {
    for (int n : {2, 4, 6}) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            ghz_stabilizer_sum(n).to_dense(n));
        int64_t dim = int64_t{1} << n;
        CHECK(es.eigenvalues()(dim - 1) == doctest::Approx(n).epsilon(1e-10));
        CHECK(es.eigenvalues()(dim - 2) < n - 1e-6);  // unique top eigenvalue
        Eigen::VectorXcd top = es.eigenvectors().col(dim - 1);
        std::complex<double> ov = StateVector::ghz(n).amps().dot(top);
        CHECK(std::norm(ov) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("zz_edge_hamiltonian eigenvalues") {
    Graph e(2, {{0, 1}});
    PauliSum h = zz_edge_hamiltonian(e);
    CHECK(h.diagonal_energy(0b00) == doctest::Approx(1.0));
    CHECK(h.diagonal_energy(0b01) == doctest::Approx(-1.0));
    PauliSum hr = zz_edge_hamiltonian(ring_graph(4));
    CHECK(hr.diagonal_energy(0b0101) == doctest::Approx(-4.0));
}

TEST_CASE("expectation matches dense quadratic form on random input") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd amps(8);
    for (int i = 0; i < 8; ++i) amps(i) = {gauss(rng), gauss(rng)};
    amps /= amps.norm();
    StateVector psi(3, amps);
    PauliSum h(std::vector<PauliTerm>{
        {0.4, {{0, Axis::X}, {1, Axis::Z}}},
        {-0.9, {{2, Axis::Y}}},
        {1.3, {{0, Axis::Z}, {1, Axis::X}, {2, Axis::X}}},
        {0.2, {}},
        {-0.6, {{1, Axis::Y}, {2, Axis::Z}}}});
    std::complex<double> dense_val = psi.amps().dot(h.to_dense(3) * psi.amps());
    CHECK(expectation(psi, h) == doctest::Approx(dense_val.real()).epsilon(1e-9));
    CHECK(std::abs(dense_val.imag()) < 1e-10);
    CHECK(expectation(StateVector(1), PauliSum(std::vector<PauliTerm>{
                                          {1.0, {{0, Axis::Z}}}})) ==
          doctest::Approx(1.0));
    CHECK(expectation(StateVector::plus_state(1),
                      PauliSum(std::vector<PauliTerm>{{1.0, {{0, Axis::Z}}}})) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("graph_hamiltonian builder places terms on edges and nodes") {
    Graph g = path_graph(3);
    EdgeTermSpec edge{Axis::Z, Axis::Z, {{{0, 1}, 0.5}, {{1, 2}, -0.5}}};
    NodeTermSpec node{Axis::X, {{0, 1.0}, {2, 2.0}}};
    PauliSum h = graph_hamiltonian(g, {edge}, {node});
    CHECK(h.terms().size() == 4);
    EdgeTermSpec bad{Axis::Z, Axis::Z, {{{0, 2}, 1.0}}};
    CHECK_THROWS(graph_hamiltonian(g, {bad}, {}));
}

TEST_CASE("constructed Hamiltonians are Hermitian in dense form") {
    std::mt19937_64 rng(23);
    Graph g = erdos_renyi_connected(5, 0.5, rng);
    IsingParams p = IsingParams::zeros(g);
    for (auto& [e, J] : p.couplings) J = 0.7;
    for (auto& [v, Q] : p.biases) Q = -0.2;
    for (const PauliSum& h :
         {ising_hamiltonian(g, p), coupling_hamiltonian_1q(g),
          mixer_hamiltonian(g), ghz_stabilizer_sum(5), zz_edge_hamiltonian(g)}) {
        Eigen::MatrixXcd H = h.to_dense(5);
        CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
}
