#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qgnn/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"qgnn-lab: quantum graph neural network experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<int> threads;

    const std::vector<std::string> experiments = {"dynamics", "ghz", "cluster",
                                                  "isomorphism"};
    for (const auto& name : experiments) {
        auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", config_path, "config JSON file");
        sub->add_option("--seed", seed, "master seed (overrides config)");
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_option("--threads", threads, "worker threads, 0 = auto");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    const std::string experiment = app.get_subcommands().front()->get_name();
    try {
        qgnn::RunConfig config;
        if (!config_path.empty()) {
            config = qgnn::parse_config_file(config_path);
            if (config.experiment != experiment)
                throw std::invalid_argument(
                    "config file is for experiment \"" + config.experiment +
                    "\" but \"" + experiment + "\" was requested");
        } else {
            nlohmann::json doc;
            doc["experiment"] = experiment;
            config = qgnn::parse_config(doc);
        }
        if (seed) {
            config.seed = *seed;
            config.dynamics.seed = *seed;
            config.ghz.seed = *seed;
            config.cluster.seed = *seed;
            config.iso.seed = *seed;
        }
        if (out_dir) config.out_dir = *out_dir;
        if (threads) config.threads = *threads;

        std::string summary;
        qgnn::run_experiment(config, &summary);
        std::cout << summary << "\n";
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
