#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qgnn/experiments.hpp"

namespace qgnn {

/// Fully validated run configuration with every default filled in. The
/// effective values are echoed verbatim into the result metadata.
struct RunConfig {
    std::string experiment;  // dynamics | ghz | cluster | isomorphism
    uint64_t seed = 1;
    std::string out_dir = "results";
    int threads = 0;  // 0 = auto

    // dynamics
    int dynamics_n = 4;
    std::string dynamics_topology = "ring";
    double dynamics_hidden_j = 1.0;
    double dynamics_hidden_q = 0.5;
    DynamicsConfig dynamics;

    // ghz
    int ghz_n = 6;
    std::string ghz_topology = "path";
    GhzConfig ghz;

    // cluster
    std::string cluster_graph = "bridged-triangles";
    ClusterConfig cluster;

    // isomorphism
    IsoConfig iso;

    nlohmann::json effective_json() const;
};

/// Parses and validates a config JSON document. Unknown keys and
/// out-of-range values are rejected with the offending field named.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Resolves the experiment graph named in the config.
Graph config_graph(const RunConfig& config);

/// Atomic write (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

/// Dispatches to the configured experiment and writes result.json,
/// trace.csv and the experiment-specific CSVs under out_dir. Returns the
/// result record. `summary` receives a one-line human-readable summary.
nlohmann::json run_experiment(const RunConfig& config, std::string* summary);

}  // namespace qgnn
