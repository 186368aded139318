#include "relopt/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"Relay link energy analysis and optimal power allocation"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a named experiment");
    std::string experiment, out_dir, config_file;
    long long seed = -1, mc_symbols = -1;
    run->add_option("experiment", experiment,
                    "fig2-ser | fig5-relay-location | fig6-ber-targets | fig7-m075 | "
                    "fig8-m-sweep | fig9-coopgain | table-opa | custom-sweep")
        ->required();
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--config", config_file, "flat key=value config file");
    run->add_option("--seed", seed, "RNG seed");
    run->add_option("--mc-symbols", mc_symbols, "Monte Carlo symbols per point");
    run->allow_extras(); // generic --key value overrides

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    relopt::experiment_config cfg;
    cfg.experiment = experiment;
    cfg.output_dir = out_dir;
    try {
        if (!config_file.empty()) cfg.overrides = relopt::parse_config_file(config_file);
        // command-line overrides win over the file
        const std::vector<std::string> extras = run->remaining();
        for (size_t i = 0; i < extras.size(); i += 2) {
            std::string key = extras[i];
            if (key.rfind("--", 0) != 0 || i + 1 >= extras.size()) {
                std::cerr << "expected --key value pairs, got: " << key << "\n";
                return 2;
            }
            key = key.substr(2);
            for (auto& ch : key)
                if (ch == '-') ch = '_';
            cfg.overrides[key] = extras[i + 1];
        }
        if (seed >= 0) cfg.overrides["seed"] = std::to_string(seed);
        if (mc_symbols >= 0) cfg.overrides["mc_symbols"] = std::to_string(mc_symbols);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return relopt::run_experiment(cfg);
}
