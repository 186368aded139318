#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace relopt {

// Named experiment runner. Configuration is a flat key=value map resolved as
// defaults <- config file <- command-line overrides (later wins); unknown
// keys are rejected.
struct experiment_config {
    std::string experiment;
    std::string output_dir;
    std::map<std::string, std::string> overrides;

    static bool is_known_experiment(const std::string& name);
};

// Parses "key = value" lines ('#' comments, blank lines ignored).
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Runs the experiment, writing results.csv, summary.txt and manifest.txt
// into output_dir. Returns the process exit code: 0 on success, 2 on
// configuration errors, 3 when any row hit an accuracy error (rows are
// still emitted with NA entries).
int run_experiment(const experiment_config& config);

} // namespace relopt
