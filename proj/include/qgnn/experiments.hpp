#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qgnn/ansatz.hpp"
#include "qgnn/graph.hpp"
#include "qgnn/hamiltonians.hpp"
#include "qgnn/optimize.hpp"
#include "qgnn/statevector.hpp"

namespace qgnn {

// ---------------------------------------------------------------------------
// Shared pieces

/// Two-sample Kolmogorov-Smirnov statistic: sup |F_a - F_b|.
double ks_statistic(const std::vector<double>& a, const std::vector<double>& b);

/// KS between two exact discrete distributions (value -> probability mass).
double ks_statistic_exact(const std::map<double, double>& a,
                          const std::map<double, double>& b);

/// L(y, ks) = (1 - y)(1 - ks) + y * ks, y = 1 for isomorphic pairs.
double iso_pair_loss(int y, double ks);

/// Deterministic per-task RNG stream derived from a master seed.
std::mt19937_64 split_rng(uint64_t master_seed, uint64_t task_id);

// ---------------------------------------------------------------------------
// Hamiltonian dynamics learning (QGRNN)

struct DynamicsConfig {
    double t_max = 1.0;
    double trotter_delta = 0.05;
    int batch = 15;
    int adam_steps = 500;
    double adam_lr = 0.05;
    double fd_eps = 1e-4;
    bool fresh_batch = true;  // redraw sample times every Adam step
    uint64_t seed = 1;
};

struct DynamicsResult {
    IsingParams learned;
    double final_loss = 0.0;           // batch-average infidelity
    double max_nonedge_coupling = 0.0; // max |J| learned on a non-edge
    double max_param_error = 0.0;      // max |learned - hidden| on true params
    std::vector<TracePoint> trace;
    nlohmann::json record;
};

/// Batch-average infidelity of the Trotterized ansatz against states evolved
/// under the hidden Hamiltonian. Exposed for the self-consistency tests.
double dynamics_batch_infidelity(const Graph& complete,
                                 const Eigen::VectorXd& params,
                                 const StateVector& psi0,
                                 const std::vector<std::pair<double, StateVector>>& pairs,
                                 double trotter_delta);

DynamicsResult run_dynamics_learning(const Graph& g_true,
                                     const IsingParams& hidden,
                                     const DynamicsConfig& config);

// ---------------------------------------------------------------------------
// GHZ preparation on a sensor network (QGCNN)

struct GhzConfig {
    int depth = 6;
    int adam_steps = 1000;
    double adam_lr = 0.05;
    double fd_eps = 1e-4;
    double init_scale = 0.1;  // uniform init range for layer parameters
    uint64_t seed = 1;
};

struct GhzResult {
    double final_loss = 0.0;  // -<stabilizer sum>
    double fidelity = 0.0;    // |<GHZ_n|psi>|^2
    Eigen::VectorXd params;
    StateVector state;
    std::vector<TracePoint> trace;
    nlohmann::json record;
};

GhzResult run_ghz_preparation(const Graph& g, const GhzConfig& config);

/// Sweeps phi over the given points: phase rotation on every qubit, CNOT
/// cascade onto the collector, <X_collector> readout; returns the dominant
/// Fourier frequency divided by the single-qubit reference (cos 2*phi).
double phase_kickback_test(const StateVector& state, int collector,
                           const std::vector<double>& phis);

// ---------------------------------------------------------------------------
// Spectral clustering (QSGCNN)

struct ClusterConfig {
    bool single_qubit = true;
    int depth = 4;
    int qubits_per_node = 5;   // multi-qubit mode
    double half_span = 2.0;    // position grid spans [-half_span, half_span]
    double mu = 0.0;           // quartic potential hyperparameters
    double omega = 1.0;
    int nm_budget = 2000;
    double init_scale = 0.1;
    int shots = 0;             // 0: exact histogram from amplitudes
    uint64_t seed = 1;
};

struct ClusterResult {
    double final_loss = 0.0;
    Eigen::VectorXd params;
    // histogram over distinct energies, descending-probability config list
    std::vector<std::pair<double, double>> energy_histogram;
    std::vector<std::pair<uint64_t, double>> top_configs;  // single-qubit mode
    std::vector<std::vector<double>> node_marginals;       // multi-qubit mode
    std::vector<TracePoint> trace;
    nlohmann::json record;
};

ClusterResult run_spectral_clustering(const Graph& g,
                                      const ClusterConfig& config);

// ---------------------------------------------------------------------------
// Graph isomorphism classification (single-qubit QSGCNN)

struct IsoPair {
    Graph g1;
    Graph g2;
    int label = 0;  // 1 = isomorphic
};

struct IsoPairDataset {
    std::vector<IsoPair> train, val, test;
};

/// Balanced connected G(n, 0.5) pairs; isomorphic pairs are random
/// relabelings, non-isomorphic pairs verified by the exact oracle.
IsoPairDataset build_iso_dataset(int n, int n_train, int n_val, int n_test,
                                 uint64_t seed);

struct IsoConfig {
    int n = 6;
    int depth = 3;
    int samples = 50;         // energy samples per graph; 0 = exact
    int n_train = 100, n_val = 50, n_test = 50;
    int nm_budget = 2000;  // per restart
    int restarts = 8;
    double ks_threshold = 0.4;
    double init_scale = 1.2;
    uint64_t seed = 1;
};

struct IsoResult {
    double train_accuracy = 0.0, val_accuracy = 0.0, test_accuracy = 0.0;
    double final_loss = 0.0;
    Eigen::VectorXd params;
    // per-pair (split, index, label, ks, predicted)
    std::vector<std::tuple<std::string, int, int, double, int>> pair_ks;
    std::vector<TracePoint> trace;
    nlohmann::json record;
};

/// Energy samples of H_C at the output of the single-qubit QSGCNN.
std::vector<double> sample_energies(const Graph& g,
                                    const Eigen::VectorXd& params, int depth,
                                    int samples, std::mt19937_64& rng);

/// Exact output distribution over H_C eigenvalues (energy -> mass).
std::map<double, double> exact_energy_distribution(const Graph& g,
                                                   const Eigen::VectorXd& params,
                                                   int depth);

IsoResult run_graph_isomorphism(const IsoConfig& config);

}  // namespace qgnn
