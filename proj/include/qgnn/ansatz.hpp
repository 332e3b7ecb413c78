#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qgnn/graph.hpp"
#include "qgnn/hamiltonians.hpp"
#include "qgnn/pauli.hpp"
#include "qgnn/position.hpp"
#include "qgnn/statevector.hpp"

namespace qgnn {

enum class Tying { Free, Temporal, Spatial };

enum class SlotKind {
    Diagonal,           // exp(-i t H), H diagonal Pauli sum
    Mixer,              // exp(-i t sum X_j)
    Dense,              // exp(-i t H), arbitrary Pauli sum
    PositionCoupling,   // exp(-i t H_C) on a position register
    PositionKinetic,    // exp(-i t H_K) on a position register
    PositionPotential,  // exp(-i t sum f(x_j))
};

std::string slot_kind_name(SlotKind k);

struct AnsatzSlot {
    SlotKind kind;
    PauliSum ham;                              // Diagonal / Dense
    std::vector<int> qubits;                   // Mixer
    std::function<double(double)> potential;   // PositionPotential
};

/// Ordered layer schedule: Q slots applied in order, repeated over P layers,
/// each application scaled by its parameter. Parameter layout is p-major,
/// q-minor for FREE/SPATIAL; TEMPORAL shares one parameter per slot across
/// layers.
class AnsatzProgram {
public:
    AnsatzProgram(std::vector<AnsatzSlot> slots, int depth, Tying tying,
                  std::optional<PositionRegister> reg = std::nullopt,
                  std::optional<Graph> graph = std::nullopt);

    const std::vector<AnsatzSlot>& slots() const { return slots_; }
    int depth() const { return depth_; }
    Tying tying() const { return tying_; }
    int num_slots() const { return static_cast<int>(slots_.size()); }
    int param_count() const;
    const std::optional<PositionRegister>& position_register() const { return reg_; }
    const std::optional<Graph>& graph() const { return graph_; }

    /// Parameter index for layer p, slot q.
    int param_index(int p, int q) const;

    std::string describe_json() const;

private:
    std::vector<AnsatzSlot> slots_;
    int depth_;
    Tying tying_;
    std::optional<PositionRegister> reg_;
    std::optional<Graph> graph_;
};

/// Runs the schedule: for p = 1..P, q = 1..Q applies exp(-i eta_pq H_q).
StateVector apply_qgnn(const AnsatzProgram& program,
                       const Eigen::VectorXd& params, StateVector state);

/// H_eff = Delta^-1 sum_q eta_q H_q with Delta = sum |eta_q| (TEMPORAL only).
std::pair<PauliSum, double> qgrnn_effective_hamiltonian(
    const AnsatzProgram& program, const Eigen::VectorXd& params);

/// Single-qubit-precision QSGCNN: per layer exp(-i gamma H_C) then
/// exp(-i eta H_K); 2 parameters per layer.
AnsatzProgram qsgcnn_layer_schedule(const Graph& g, int depth);

/// Multi-qubit QSGCNN: per layer coupling, kinetic, quartic potential
/// ((x-mu)^2 - omega^2)^2, kinetic; 4 parameters per layer.
AnsatzProgram qsgcnn_layer_schedule(const Graph& g, const PositionRegister& reg,
                                    int depth, double mu, double omega);

/// Broadcasts tied coefficients to every edge and node of the graph.
IsingParams bind_spatial(const Graph& g, double coupling, double bias);

}  // namespace qgnn
