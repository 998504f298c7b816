#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twolayer/config.hpp"
#include "twolayer/errors.hpp"
#include "twolayer/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Two-layer internal wave model runner"};
    std::string mode, config_path, out_dir;
    std::vector<std::string> overrides;
    app.add_option("mode", mode, "simulate | order | dispersion | compare")
        ->required()
        ->check(CLI::IsMember({"simulate", "order", "dispersion", "compare"}));
    app.add_option("--config", config_path, "scenario config file")->required();
    app.add_option("--out", out_dir, "output directory (overrides [output] dir)");
    app.add_option("--override", overrides, "section.key=value, may be repeated");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : twolayer::exit_config;
    }

    overrides.insert(overrides.begin(), "mode=" + mode);
    if (!out_dir.empty()) overrides.push_back("output.dir=" + out_dir);

    twolayer::ScenarioConfig cfg;
    try {
        cfg = twolayer::load_config(config_path, overrides);
    } catch (const twolayer::ConfigError& e) {
        for (const auto& m : e.messages()) std::cerr << config_path << ": " << m << "\n";
        return twolayer::exit_config;
    }

    auto res = twolayer::run_scenario(cfg);
    if (res.exit_code != twolayer::exit_ok) std::cerr << "error: " << res.message << "\n";
    std::cout << res.manifest_path << "\n";
    return res.exit_code;
}
