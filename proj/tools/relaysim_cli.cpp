// Experiment runner: reproduces the bundled figure configurations or a
// user-supplied config file, writing one CSV per run.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "relaysim/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"SWIPT decode-and-forward relay network simulator"};

    std::string config_path;
    std::string preset;
    std::string out_path;
    std::int64_t seed = -1;
    std::int64_t runs = -1;
    bool list_presets = false;

    app.add_option("--config", config_path, "flat key-value config file");
    app.add_option("--preset", preset, "bundled configuration (see --list-presets)");
    app.add_option("--out", out_path, "output CSV path (overrides config)");
    app.add_option("--seed", seed, "random seed (overrides config)");
    app.add_option("--runs", runs, "trials per sweep point (overrides config)");
    app.add_flag("--list-presets", list_presets, "print preset names and exit");

    CLI11_PARSE(app, argc, argv);

    if (list_presets) {
        for (const auto& name : relaysim::preset_names()) std::cout << name << '\n';
        return 0;
    }

    try {
        relaysim::ExperimentConfig cfg;
        if (!preset.empty() && !config_path.empty()) {
            std::cerr << "error: pass either --preset or --config, not both\n";
            return 2;
        } else if (!preset.empty()) {
            cfg = relaysim::preset_config(preset);
        } else if (!config_path.empty()) {
            cfg = relaysim::parse_config_file(config_path);
        } else {
            std::cerr << "error: one of --preset or --config is required\n";
            return 2;
        }
        if (!out_path.empty()) cfg.out_path = out_path;
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        if (runs >= 0) cfg.runs = static_cast<std::uint64_t>(runs);

        relaysim::run_experiment(cfg);
        std::cout << "wrote " << cfg.out_path << '\n';
        return 0;
    } catch (const relaysim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const relaysim::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    }
}
