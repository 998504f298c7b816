#ifndef TWOLAYER_CONFIG_HPP
#define TWOLAYER_CONFIG_HPP

#include <numbers>
#include <string>
#include <vector>

#include "twolayer/analysis.hpp"
#include "twolayer/models.hpp"
#include "twolayer/timeloop.hpp"

namespace twolayer {

enum class Mode { simulate, order, dispersion, compare };
std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

struct ModelSection {
    ModelId id = ModelId::SW1D;
    bool tension = false;
    FamilyParams family;
    ClVariant cl_variant = ClVariant::unidirectional;
    double cl_theta = 0.5, cl_lambda = 0.0;
    int cl_sign = 1;
    std::string bottom = "none";  // none | sine | gaussian
    double bottom_amplitude = 1.0;

    friend bool operator==(const ModelSection&, const ModelSection&) = default;
};

struct GridSection {
    int n = 256;
    int ny = 0;  // 0: same as n for 2D models, unused in 1D
    double length = 2.0 * std::numbers::pi;
    double length_y = 2.0 * std::numbers::pi;

    friend bool operator==(const GridSection&, const GridSection&) = default;
};

struct InitialSection {
    std::string profile = "sine";  // sine | gaussian | solitary-guess | file
    double amplitude = 0.1;
    double wavenumber = 1.0;
    double width = 1.0;
    double center = -1.0;               // negative: middle of the domain
    std::string velocity = "zero";      // zero | right-moving | ztov | profile
    double velocity_amplitude = 0.0;    // used by velocity = profile
    std::string file;                   // CSV with zeta (and optionally v) columns

    friend bool operator==(const InitialSection&, const InitialSection&) = default;
};

struct SweepSection {
    std::vector<double> mus = {1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
    EpsilonPath path = EpsilonPath::fixed;
    double eps_fixed = 0.1;
    ModelId model_b = ModelId::SW1D;
    double target = 1.0;
    double tolerance = 0.15;
    double s_index = 0.0;

    friend bool operator==(const SweepSection&, const SweepSection&) = default;
};

struct DispersionSection {
    int k_max = 40;
    friend bool operator==(const DispersionSection&, const DispersionSection&) = default;
};

struct CompareSection {
    std::string experiment = "unidirectional";  // unidirectional | decoupled | models
    std::vector<double> mus = {4e-4, 1e-3, 4e-3};
    ModelId model_b = ModelId::CHGN1D;          // experiment = models
    double target = 2.0;
    double tolerance = 0.3;
    double s_index = 0.0;

    friend bool operator==(const CompareSection&, const CompareSection&) = default;
};

struct OutputSection {
    std::string dir = "out";
    bool snapshots = false;
    std::string format = "csv";  // csv | binary

    friend bool operator==(const OutputSection&, const OutputSection&) = default;
};

struct ScenarioConfig {
    Mode mode = Mode::simulate;
    ModelSection model;
    Params params;
    GridSection grid;
    StepperConfig stepper;
    SolverOptions solver;
    InitialSection initial;
    SweepSection sweep;
    DispersionSection dispersion;
    CompareSection compare;
    OutputSection output;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Line-oriented "key = value" text with [sections], comma lists and '#'
// comments. Overrides are "section.key=value" or "key=value" (unique key).
// Throws ConfigError listing every violation with its line.
ScenarioConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});
ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});
std::string serialize(const ScenarioConfig& cfg);

// Assembled objects.
Grid make_grid(const ScenarioConfig& cfg);
ModelSpec make_model(const ScenarioConfig& cfg, ModelId id);
ModelSpec make_model(const ScenarioConfig& cfg);
std::pair<Field, VecField> make_initial(const ScenarioConfig& cfg, const ModelSpec& m);

}  // namespace twolayer

#endif
