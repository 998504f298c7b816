#ifndef TWOLAYER_SCENARIO_HPP
#define TWOLAYER_SCENARIO_HPP

#include <string>
#include <vector>

#include "twolayer/config.hpp"

namespace twolayer {

enum ExitCode { exit_ok = 0, exit_config = 1, exit_admissibility = 2, exit_solver = 3 };

struct ScenarioResult {
    int exit_code = exit_ok;
    std::string manifest_path;
    std::vector<std::string> files;  // every data file written, relative to the output dir
    std::string message;
};

// Runs cfg.mode and writes manifest.json plus the declared data files into
// cfg.output.dir. Errors are reported in the manifest and the exit code.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

}  // namespace twolayer

#endif
