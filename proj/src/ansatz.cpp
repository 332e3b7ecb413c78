#include "qgnn/ansatz.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qgnn {

std::string slot_kind_name(SlotKind k) {
    switch (k) {
        case SlotKind::Diagonal: return "diagonal";
        case SlotKind::Mixer: return "mixer";
        case SlotKind::Dense: return "dense";
        case SlotKind::PositionCoupling: return "position-coupling";
        case SlotKind::PositionKinetic: return "position-kinetic";
        case SlotKind::PositionPotential: return "position-potential";
    }
    return "?";
}

AnsatzProgram::AnsatzProgram(std::vector<AnsatzSlot> slots, int depth,
                             Tying tying, std::optional<PositionRegister> reg,
                             std::optional<Graph> graph)
    : slots_(std::move(slots)),
      depth_(depth),
      tying_(tying),
      reg_(std::move(reg)),
      graph_(std::move(graph)) {
    if (depth_ < 1) throw std::invalid_argument("AnsatzProgram: depth >= 1");
    if (slots_.empty()) throw std::invalid_argument("AnsatzProgram: no slots");
    for (const auto& slot : slots_) {
        switch (slot.kind) {
            case SlotKind::Diagonal:
                if (!slot.ham.is_diagonal())
                    throw std::invalid_argument(
                        "AnsatzProgram: non-diagonal Hamiltonian in diagonal slot");
                break;
            case SlotKind::PositionCoupling:
            case SlotKind::PositionKinetic:
                if (!reg_) throw std::invalid_argument(
                        "AnsatzProgram: position slot without register");
                break;
            case SlotKind::PositionPotential:
                if (!reg_ || !slot.potential)
                    throw std::invalid_argument(
                        "AnsatzProgram: potential slot needs register and function");
                break;
            default:
                break;
        }
    }
}

int AnsatzProgram::param_count() const {
    return tying_ == Tying::Temporal ? num_slots() : depth_ * num_slots();
}

int AnsatzProgram::param_index(int p, int q) const {
    return tying_ == Tying::Temporal ? q : p * num_slots() + q;
}

std::string AnsatzProgram::describe_json() const {
    nlohmann::json j;
    j["depth"] = depth_;
    switch (tying_) {
        case Tying::Free: j["tying"] = "free"; break;
        case Tying::Temporal: j["tying"] = "temporal"; break;
        case Tying::Spatial: j["tying"] = "spatial"; break;
    }
    auto arr = nlohmann::json::array();
    for (const auto& s : slots_) arr.push_back(slot_kind_name(s.kind));
    j["slots"] = arr;
    j["param_count"] = param_count();
    j["param_layout"] = tying_ == Tying::Temporal ? "q" : "p-major,q-minor";
    return j.dump();
}

StateVector apply_qgnn(const AnsatzProgram& program,
                       const Eigen::VectorXd& params, StateVector state) {
    if (params.size() != program.param_count())
        throw std::invalid_argument("apply_qgnn: parameter layout mismatch");
    for (int p = 0; p < program.depth(); ++p) {
        for (int q = 0; q < program.num_slots(); ++q) {
            const double t = params(program.param_index(p, q));
            const auto& slot = program.slots()[q];
            switch (slot.kind) {
                case SlotKind::Diagonal:
                    evolve_diagonal(state, slot.ham, t);
                    break;
                case SlotKind::Mixer:
                    evolve_mixer(state, slot.qubits, t);
                    break;
                case SlotKind::Dense:
                    evolve_dense(state, slot.ham, t);
                    break;
                case SlotKind::PositionCoupling:
                    evolve_position_coupling(state, *program.position_register(),
                                             *program.graph(), t);
                    break;
                case SlotKind::PositionKinetic:
                    evolve_position_kinetic(state, *program.position_register(), t);
                    break;
                case SlotKind::PositionPotential:
                    evolve_position_potential(state, *program.position_register(),
                                              slot.potential, t);
                    break;
            }
        }
    }
    return state;
}

std::pair<PauliSum, double> qgrnn_effective_hamiltonian(
    const AnsatzProgram& program, const Eigen::VectorXd& params) {
    if (program.tying() != Tying::Temporal)
        throw std::invalid_argument(
            "qgrnn_effective_hamiltonian: TEMPORAL tying required");
    if (params.size() != program.param_count())
        throw std::invalid_argument("qgrnn_effective_hamiltonian: layout mismatch");
    double delta = params.cwiseAbs().sum();
    PauliSum h_eff;
    for (int q = 0; q < program.num_slots(); ++q) {
        const auto& slot = program.slots()[q];
        PauliSum ham = slot.ham;
        if (slot.kind == SlotKind::Mixer) {
            std::vector<PauliTerm> terms;
            for (int qubit : slot.qubits) terms.push_back({1.0, {{qubit, Axis::X}}});
            ham = PauliSum(std::move(terms));
        }
        double scale = delta > 0.0 ? params(q) / delta : 0.0;
        h_eff += ham.scaled(scale);
    }
    return {h_eff.simplified(), delta};
}

AnsatzProgram qsgcnn_layer_schedule(const Graph& g, int depth) {
    std::vector<AnsatzSlot> slots(2);
    slots[0].kind = SlotKind::Diagonal;
    slots[0].ham = coupling_hamiltonian_1q(g);
    slots[1].kind = SlotKind::Mixer;
    for (int v = 0; v < g.num_nodes(); ++v) slots[1].qubits.push_back(v);
    return AnsatzProgram(std::move(slots), depth, Tying::Spatial, std::nullopt, g);
}

AnsatzProgram qsgcnn_layer_schedule(const Graph& g, const PositionRegister& reg,
                                    int depth, double mu, double omega) {
    if (reg.n_nodes() != g.num_nodes())
        throw std::invalid_argument("qsgcnn_layer_schedule: register/graph mismatch");
    auto quartic = [mu, omega](double x) {
        double d = (x - mu) * (x - mu) - omega * omega;
        return d * d;
    };
    std::vector<AnsatzSlot> slots(4);
    slots[0].kind = SlotKind::PositionCoupling;
    slots[1].kind = SlotKind::PositionKinetic;
    slots[2].kind = SlotKind::PositionPotential;
    slots[2].potential = quartic;
    slots[3].kind = SlotKind::PositionKinetic;
    return AnsatzProgram(std::move(slots), depth, Tying::Spatial, reg, g);
}

IsingParams bind_spatial(const Graph& g, double coupling, double bias) {
    IsingParams p;
    for (const auto& e : g.edges()) p.couplings[e] = coupling;
    for (int v = 0; v < g.num_nodes(); ++v) p.biases[v] = bias;
    return p;
}

}  // namespace qgnn
