#include "qgnn/config.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qgnn {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& scope) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.count(it.key()))
            throw std::invalid_argument("config: unknown key \"" + scope +
                                        it.key() + "\"");
    }
}

template <typename T>
void read_field(const json& obj, const std::string& key, T& out) {
    if (obj.contains(key)) out = obj.at(key).get<T>();
}

void require_positive(double v, const std::string& field) {
    if (!(v > 0.0))
        throw std::invalid_argument("config: \"" + field + "\" must be > 0");
}

void require_nonnegative(double v, const std::string& field) {
    if (v < 0.0)
        throw std::invalid_argument("config: \"" + field + "\" must be >= 0");
}

}  // namespace

RunConfig parse_config(const json& doc) {
    RunConfig c;
    reject_unknown(doc, {"experiment", "seed", "out", "threads", "dynamics",
                         "ghz", "cluster", "isomorphism"}, "");
    if (!doc.contains("experiment"))
        throw std::invalid_argument("config: missing required field \"experiment\"");
    c.experiment = doc.at("experiment").get<std::string>();
    if (c.experiment != "dynamics" && c.experiment != "ghz" &&
        c.experiment != "cluster" && c.experiment != "isomorphism")
        throw std::invalid_argument("config: unsupported experiment \"" +
                                    c.experiment + "\"");
    read_field(doc, "seed", c.seed);
    read_field(doc, "out", c.out_dir);
    read_field(doc, "threads", c.threads);
    if (c.threads < 0)
        throw std::invalid_argument("config: \"threads\" must be >= 0");

    if (doc.contains("dynamics")) {
        const auto& d = doc.at("dynamics");
        reject_unknown(d, {"n", "topology", "hidden_j", "hidden_q", "t_max",
                           "trotter_delta", "batch", "adam_steps", "adam_lr",
                           "fd_eps", "fresh_batch"}, "dynamics.");
        read_field(d, "n", c.dynamics_n);
        read_field(d, "topology", c.dynamics_topology);
        read_field(d, "hidden_j", c.dynamics_hidden_j);
        read_field(d, "hidden_q", c.dynamics_hidden_q);
        read_field(d, "t_max", c.dynamics.t_max);
        read_field(d, "trotter_delta", c.dynamics.trotter_delta);
        read_field(d, "batch", c.dynamics.batch);
        read_field(d, "adam_steps", c.dynamics.adam_steps);
        read_field(d, "adam_lr", c.dynamics.adam_lr);
        read_field(d, "fd_eps", c.dynamics.fd_eps);
        read_field(d, "fresh_batch", c.dynamics.fresh_batch);
        if (c.dynamics_n < 2)
            throw std::invalid_argument("config: \"dynamics.n\" must be >= 2");
        require_positive(c.dynamics.t_max, "dynamics.t_max");
        require_positive(c.dynamics.trotter_delta, "dynamics.trotter_delta");
        if (c.dynamics.batch < 1)
            throw std::invalid_argument("config: \"dynamics.batch\" must be >= 1");
        if (c.dynamics.adam_steps < 1)
            throw std::invalid_argument("config: \"dynamics.adam_steps\" must be >= 1");
        require_positive(c.dynamics.adam_lr, "dynamics.adam_lr");
        require_positive(c.dynamics.fd_eps, "dynamics.fd_eps");
    }
    if (doc.contains("ghz")) {
        const auto& d = doc.at("ghz");
        reject_unknown(d, {"n", "topology", "depth", "adam_steps", "adam_lr",
                           "fd_eps", "init_scale"}, "ghz.");
        read_field(d, "n", c.ghz_n);
        read_field(d, "topology", c.ghz_topology);
        read_field(d, "depth", c.ghz.depth);
        read_field(d, "adam_steps", c.ghz.adam_steps);
        read_field(d, "adam_lr", c.ghz.adam_lr);
        read_field(d, "fd_eps", c.ghz.fd_eps);
        read_field(d, "init_scale", c.ghz.init_scale);
        if (c.ghz_n < 2)
            throw std::invalid_argument("config: \"ghz.n\" must be >= 2");
        if (c.ghz.depth < 1)
            throw std::invalid_argument("config: \"ghz.depth\" must be >= 1");
        if (c.ghz.adam_steps < 1)
            throw std::invalid_argument("config: \"ghz.adam_steps\" must be >= 1");
        require_positive(c.ghz.adam_lr, "ghz.adam_lr");
        require_positive(c.ghz.fd_eps, "ghz.fd_eps");
        require_positive(c.ghz.init_scale, "ghz.init_scale");
    }
    if (doc.contains("cluster")) {
        const auto& d = doc.at("cluster");
        reject_unknown(d, {"graph", "mode", "depth", "qubits_per_node",
                           "half_span", "mu", "omega", "nm_budget",
                           "init_scale", "shots"}, "cluster.");
        read_field(d, "graph", c.cluster_graph);
        if (d.contains("mode")) {
            std::string mode = d.at("mode").get<std::string>();
            if (mode == "single-qubit") c.cluster.single_qubit = true;
            else if (mode == "multi-qubit") c.cluster.single_qubit = false;
            else throw std::invalid_argument("config: bad \"cluster.mode\"");
        }
        read_field(d, "depth", c.cluster.depth);
        read_field(d, "qubits_per_node", c.cluster.qubits_per_node);
        read_field(d, "half_span", c.cluster.half_span);
        read_field(d, "mu", c.cluster.mu);
        read_field(d, "omega", c.cluster.omega);
        read_field(d, "nm_budget", c.cluster.nm_budget);
        read_field(d, "init_scale", c.cluster.init_scale);
        read_field(d, "shots", c.cluster.shots);
        if (c.cluster.depth < 1)
            throw std::invalid_argument("config: \"cluster.depth\" must be >= 1");
        if (c.cluster.qubits_per_node < 1)
            throw std::invalid_argument(
                "config: \"cluster.qubits_per_node\" must be >= 1");
        require_positive(c.cluster.half_span, "cluster.half_span");
        require_positive(c.cluster.omega, "cluster.omega");
        if (c.cluster.nm_budget < 1)
            throw std::invalid_argument("config: \"cluster.nm_budget\" must be >= 1");
        require_nonnegative(c.cluster.shots, "cluster.shots");
    }
    if (doc.contains("isomorphism")) {
        const auto& d = doc.at("isomorphism");
        reject_unknown(d, {"n", "depth", "samples", "n_train", "n_val",
                           "n_test", "nm_budget", "restarts", "ks_threshold",
                           "init_scale"},
                       "isomorphism.");
        read_field(d, "n", c.iso.n);
        read_field(d, "depth", c.iso.depth);
        read_field(d, "samples", c.iso.samples);
        read_field(d, "n_train", c.iso.n_train);
        read_field(d, "n_val", c.iso.n_val);
        read_field(d, "n_test", c.iso.n_test);
        read_field(d, "nm_budget", c.iso.nm_budget);
        read_field(d, "restarts", c.iso.restarts);
        read_field(d, "ks_threshold", c.iso.ks_threshold);
        read_field(d, "init_scale", c.iso.init_scale);
        if (c.iso.n < 2)
            throw std::invalid_argument("config: \"isomorphism.n\" must be >= 2");
        if (c.iso.depth < 1)
            throw std::invalid_argument("config: \"isomorphism.depth\" must be >= 1");
        require_nonnegative(c.iso.samples, "isomorphism.samples");
        if (c.iso.n_train < 2 || c.iso.n_val < 2 || c.iso.n_test < 2)
            throw std::invalid_argument(
                "config: isomorphism split sizes must be >= 2");
        if (c.iso.nm_budget < 1)
            throw std::invalid_argument(
                "config: \"isomorphism.nm_budget\" must be >= 1");
        if (c.iso.restarts < 1)
            throw std::invalid_argument(
                "config: \"isomorphism.restarts\" must be >= 1");
        if (c.iso.ks_threshold < 0.0 || c.iso.ks_threshold > 1.0)
            throw std::invalid_argument(
                "config: \"isomorphism.ks_threshold\" must be in [0,1]");
    }
    // seeds flow into the per-experiment configs
    c.dynamics.seed = c.seed;
    c.ghz.seed = c.seed;
    c.cluster.seed = c.seed;
    c.iso.seed = c.seed;
    return c;
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: parse error: ") + e.what());
    }
    return parse_config(doc);
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

nlohmann::json RunConfig::effective_json() const {
    json j;
    j["experiment"] = experiment;
    j["seed"] = seed;
    j["out"] = out_dir;
    j["threads"] = threads;
    j["dynamics"] = {{"n", dynamics_n},
                     {"topology", dynamics_topology},
                     {"hidden_j", dynamics_hidden_j},
                     {"hidden_q", dynamics_hidden_q},
                     {"t_max", dynamics.t_max},
                     {"trotter_delta", dynamics.trotter_delta},
                     {"batch", dynamics.batch},
                     {"adam_steps", dynamics.adam_steps},
                     {"adam_lr", dynamics.adam_lr},
                     {"fd_eps", dynamics.fd_eps},
                     {"fresh_batch", dynamics.fresh_batch}};
    j["ghz"] = {{"n", ghz_n},
                {"topology", ghz_topology},
                {"depth", ghz.depth},
                {"adam_steps", ghz.adam_steps},
                {"adam_lr", ghz.adam_lr},
                {"fd_eps", ghz.fd_eps},
                {"init_scale", ghz.init_scale}};
    j["cluster"] = {{"graph", cluster_graph},
                    {"mode", cluster.single_qubit ? "single-qubit" : "multi-qubit"},
                    {"depth", cluster.depth},
                    {"qubits_per_node", cluster.qubits_per_node},
                    {"half_span", cluster.half_span},
                    {"mu", cluster.mu},
                    {"omega", cluster.omega},
                    {"nm_budget", cluster.nm_budget},
                    {"init_scale", cluster.init_scale},
                    {"shots", cluster.shots}};
    j["isomorphism"] = {{"n", iso.n},
                        {"depth", iso.depth},
                        {"samples", iso.samples},
                        {"n_train", iso.n_train},
                        {"n_val", iso.n_val},
                        {"n_test", iso.n_test},
                        {"nm_budget", iso.nm_budget},
                        {"restarts", iso.restarts},
                        {"ks_threshold", iso.ks_threshold},
                        {"init_scale", iso.init_scale}};
    return j;
}

Graph config_graph(const RunConfig& config) {
    if (config.experiment == "dynamics") {
        if (config.dynamics_topology == "ring") return ring_graph(config.dynamics_n);
        if (config.dynamics_topology == "path") return path_graph(config.dynamics_n);
        throw std::invalid_argument("config: bad \"dynamics.topology\"");
    }
    if (config.experiment == "ghz") {
        if (config.ghz_topology == "path") return path_graph(config.ghz_n);
        if (config.ghz_topology == "ring") return ring_graph(config.ghz_n);
        throw std::invalid_argument("config: bad \"ghz.topology\"");
    }
    if (config.experiment == "cluster") {
        if (config.cluster_graph == "bridged-triangles") return bridged_triangles();
        if (config.cluster_graph == "two-nodes") return Graph(2, {{0, 1}});
        // anything else is a path to a graph JSON file
        std::ifstream in(config.cluster_graph);
        if (!in)
            throw std::invalid_argument("config: cannot open graph file " +
                                        config.cluster_graph);
        std::stringstream ss;
        ss << in.rdbuf();
        return Graph::from_json(ss.str());
    }
    throw std::invalid_argument("config_graph: experiment has no graph preset");
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

namespace {

std::string trace_csv(const std::vector<TracePoint>& trace) {
    std::ostringstream os;
    os << "iteration,loss,wall_ms";
    if (!trace.empty())
        for (int i = 0; i < trace.front().params.size(); ++i) os << ",p" << i;
    os << "\n";
    os.precision(17);
    for (const auto& tp : trace) {
        os << tp.iteration << ',' << tp.loss << ',' << tp.wall_ms;
        for (int i = 0; i < tp.params.size(); ++i) os << ',' << tp.params(i);
        os << "\n";
    }
    return os.str();
}

std::string histogram_csv(const std::vector<std::pair<double, double>>& hist) {
    std::ostringstream os;
    os << "energy,probability\n";
    os.precision(17);
    for (const auto& [e, p] : hist) os << e << ',' << p << "\n";
    return os.str();
}

}  // namespace

nlohmann::json run_experiment(const RunConfig& config, std::string* summary) {
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    auto out_path = [&](const std::string& name) {
        return (fs::path(config.out_dir) / name).string();
    };

    nlohmann::json result;
    result["config"] = config.effective_json();
    std::vector<TracePoint> trace;
    std::ostringstream line;

    if (config.experiment == "dynamics") {
        Graph g = config_graph(config);
        IsingParams hidden;
        for (const auto& e : g.edges())
            hidden.couplings[e] = config.dynamics_hidden_j;
        for (int v = 0; v < g.num_nodes(); ++v)
            hidden.biases[v] = config.dynamics_hidden_q;
        auto r = run_dynamics_learning(g, hidden, config.dynamics);
        result["metrics"] = r.record;
        trace = std::move(r.trace);
        line << "dynamics: final infidelity " << r.final_loss
             << ", max non-edge |J| " << r.max_nonedge_coupling
             << ", max param error " << r.max_param_error;
    } else if (config.experiment == "ghz") {
        Graph g = config_graph(config);
        auto r = run_ghz_preparation(g, config.ghz);
        result["metrics"] = r.record;
        trace = std::move(r.trace);
        line << "ghz: final loss " << r.final_loss << ", fidelity "
             << r.fidelity;
    } else if (config.experiment == "cluster") {
        Graph g = config_graph(config);
        auto r = run_spectral_clustering(g, config.cluster);
        result["metrics"] = r.record;
        trace = std::move(r.trace);
        write_file_atomic(out_path("histogram.csv"),
                          histogram_csv(r.energy_histogram));
        line << "cluster: final loss " << r.final_loss;
    } else if (config.experiment == "isomorphism") {
        auto r = run_graph_isomorphism(config.iso);
        result["metrics"] = r.record;
        trace = std::move(r.trace);
        std::ostringstream pairs;
        pairs << "split,index,label,ks,predicted\n";
        pairs.precision(17);
        for (const auto& [split, idx, label, ks, pred] : r.pair_ks)
            pairs << split << ',' << idx << ',' << label << ',' << ks << ','
                  << pred << "\n";
        write_file_atomic(out_path("pairs.csv"), pairs.str());
        line << "isomorphism: train " << r.train_accuracy << "%, val "
             << r.val_accuracy << "%, test " << r.test_accuracy << "%";
    } else {
        throw std::invalid_argument("run_experiment: unsupported experiment");
    }

    // timestamps live apart from the reproducible payload
    auto now = std::chrono::system_clock::now().time_since_epoch();
    result["meta"] = {
        {"unix_ms",
         std::chrono::duration_cast<std::chrono::milliseconds>(now).count()}};

    write_file_atomic(out_path("trace.csv"), trace_csv(trace));
    write_file_atomic(out_path("result.json"), result.dump(2) + "\n");
    if (summary) *summary = line.str();
    return result;
}

}  // namespace qgnn
