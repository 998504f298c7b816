#include "twolayer/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "twolayer/errors.hpp"
#include "twolayer/field_io.hpp"

namespace twolayer {

std::string to_string(Mode m) {
    switch (m) {
        case Mode::simulate: return "simulate";
        case Mode::order: return "order";
        case Mode::dispersion: return "dispersion";
        case Mode::compare: return "compare";
    }
    return "?";
}

Mode mode_from_string(const std::string& s) {
    for (auto m : {Mode::simulate, Mode::order, Mode::dispersion, Mode::compare})
        if (to_string(m) == s) return m;
    throw std::invalid_argument("unknown mode '" + s + "' (simulate, order, dispersion, compare)");
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_double(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') throw std::invalid_argument("expects a number, got '" + s + "'");
    return v;
}

int to_int(const std::string& s) {
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || *end != '\0') throw std::invalid_argument("expects an integer, got '" + s + "'");
    return int(v);
}

bool to_bool(const std::string& s) {
    if (s == "true" || s == "on" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "off" || s == "no" || s == "0") return false;
    throw std::invalid_argument("expects true/false, got '" + s + "'");
}

std::vector<double> to_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        out.push_back(to_double(tok));
    }
    return out;
}

std::string list_str(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
    return s;
}

std::string path_str(EpsilonPath p) {
    switch (p) {
        case EpsilonPath::fixed: return "fixed";
        case EpsilonPath::sqrt_mu: return "sqrt_mu";
        case EpsilonPath::mu: return "mu";
    }
    return "?";
}

EpsilonPath path_from(const std::string& s) {
    for (auto p : {EpsilonPath::fixed, EpsilonPath::sqrt_mu, EpsilonPath::mu})
        if (path_str(p) == s) return p;
    throw std::invalid_argument("unknown epsilon path '" + s + "' (fixed, sqrt_mu, mu)");
}

struct Key {
    std::string section, name;
    std::function<void(ScenarioConfig&, const std::string&)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

template <typename Ref>
Key dbl(std::string sec, std::string name, Ref ref) {
    return {sec, name, [ref](ScenarioConfig& c, const std::string& v) { ref(c) = to_double(v); },
            [ref](const ScenarioConfig& c) { return fmt(ref(const_cast<ScenarioConfig&>(c))); }};
}
template <typename Ref>
Key integer(std::string sec, std::string name, Ref ref) {
    return {sec, name, [ref](ScenarioConfig& c, const std::string& v) { ref(c) = to_int(v); },
            [ref](const ScenarioConfig& c) { return std::to_string(ref(const_cast<ScenarioConfig&>(c))); }};
}
template <typename Ref>
Key boolean(std::string sec, std::string name, Ref ref) {
    return {sec, name, [ref](ScenarioConfig& c, const std::string& v) { ref(c) = to_bool(v); },
            [ref](const ScenarioConfig& c) { return std::string(ref(const_cast<ScenarioConfig&>(c)) ? "true" : "false"); }};
}
template <typename Ref>
Key text(std::string sec, std::string name, Ref ref) {
    return {sec, name, [ref](ScenarioConfig& c, const std::string& v) { ref(c) = v; },
            [ref](const ScenarioConfig& c) { return ref(const_cast<ScenarioConfig&>(c)); }};
}
template <typename Ref>
Key list(std::string sec, std::string name, Ref ref) {
    return {sec, name, [ref](ScenarioConfig& c, const std::string& v) { ref(c) = to_list(v); },
            [ref](const ScenarioConfig& c) { return list_str(ref(const_cast<ScenarioConfig&>(c))); }};
}
template <typename Ref>
Key model_id(std::string sec, std::string name, Ref ref) {
    return {sec, name, [ref](ScenarioConfig& c, const std::string& v) { ref(c) = model_id_from_string(v); },
            [ref](const ScenarioConfig& c) { return to_string(ref(const_cast<ScenarioConfig&>(c))); }};
}

#define REF(expr) [](ScenarioConfig& c) -> auto& { return c.expr; }

const std::vector<Key>& registry() {
    static const std::vector<Key> keys = {
        {"", "mode", [](ScenarioConfig& c, const std::string& v) { c.mode = mode_from_string(v); },
         [](const ScenarioConfig& c) { return to_string(c.mode); }},

        model_id("model", "id", REF(model.id)),
        boolean("model", "tension", REF(model.tension)),
        dbl("model", "theta1", REF(model.family.theta1)),
        dbl("model", "theta2", REF(model.family.theta2)),
        dbl("model", "lambda1", REF(model.family.lambda1)),
        dbl("model", "lambda2", REF(model.family.lambda2)),
        {"model", "cl_variant", [](ScenarioConfig& c, const std::string& v) { c.model.cl_variant = cl_variant_from_string(v); },
         [](const ScenarioConfig& c) { return to_string(c.model.cl_variant); }},
        dbl("model", "cl_theta", REF(model.cl_theta)),
        dbl("model", "cl_lambda", REF(model.cl_lambda)),
        integer("model", "cl_sign", REF(model.cl_sign)),
        text("model", "bottom", REF(model.bottom)),
        dbl("model", "bottom_amplitude", REF(model.bottom_amplitude)),

        dbl("params", "gamma", REF(params.gamma)),
        dbl("params", "epsilon", REF(params.epsilon)),
        dbl("params", "beta", REF(params.beta)),
        dbl("params", "mu", REF(params.mu)),
        dbl("params", "delta", REF(params.delta)),
        dbl("params", "bond_inv", REF(params.bond_inv)),
        dbl("params", "bo_inv", REF(params.bo_inv)),

        integer("grid", "n", REF(grid.n)),
        integer("grid", "ny", REF(grid.ny)),
        dbl("grid", "length", REF(grid.length)),
        dbl("grid", "length_y", REF(grid.length_y)),

        dbl("stepper", "dt", REF(stepper.dt)),
        dbl("stepper", "t_end", REF(stepper.t_end)),
        integer("stepper", "stride", REF(stepper.stride)),
        text("stepper", "scheme", REF(stepper.scheme)),
        dbl("stepper", "neumann_tol", REF(solver.neumann_tol)),
        integer("stepper", "neumann_max", REF(solver.neumann_max)),
        dbl("stepper", "cg_tol", REF(solver.cg_tol)),
        integer("stepper", "cg_max", REF(solver.cg_max)),
        dbl("stepper", "unpack_tol", REF(solver.unpack_tol)),
        integer("stepper", "unpack_max", REF(solver.unpack_max)),

        text("initial", "profile", REF(initial.profile)),
        dbl("initial", "amplitude", REF(initial.amplitude)),
        dbl("initial", "wavenumber", REF(initial.wavenumber)),
        dbl("initial", "width", REF(initial.width)),
        dbl("initial", "center", REF(initial.center)),
        text("initial", "velocity", REF(initial.velocity)),
        dbl("initial", "velocity_amplitude", REF(initial.velocity_amplitude)),
        text("initial", "file", REF(initial.file)),

        list("sweep", "mus", REF(sweep.mus)),
        {"sweep", "path", [](ScenarioConfig& c, const std::string& v) { c.sweep.path = path_from(v); },
         [](const ScenarioConfig& c) { return path_str(c.sweep.path); }},
        dbl("sweep", "eps_fixed", REF(sweep.eps_fixed)),
        model_id("sweep", "model_b", REF(sweep.model_b)),
        dbl("sweep", "target", REF(sweep.target)),
        dbl("sweep", "tolerance", REF(sweep.tolerance)),
        dbl("sweep", "s_index", REF(sweep.s_index)),

        integer("dispersion", "k_max", REF(dispersion.k_max)),

        text("compare", "experiment", REF(compare.experiment)),
        list("compare", "mus", REF(compare.mus)),
        model_id("compare", "model_b", REF(compare.model_b)),
        dbl("compare", "target", REF(compare.target)),
        dbl("compare", "tolerance", REF(compare.tolerance)),
        dbl("compare", "s_index", REF(compare.s_index)),

        text("output", "dir", REF(output.dir)),
        boolean("output", "snapshots", REF(output.snapshots)),
        text("output", "format", REF(output.format)),
    };
    return keys;
}

#undef REF

const Key* find_key(const std::string& section, const std::string& name) {
    for (const auto& k : registry())
        if (k.section == section && k.name == name) return &k;
    return nullptr;
}

bool known_section(const std::string& s) {
    for (const auto& k : registry())
        if (k.section == s) return true;
    return false;
}

struct Entry {
    std::string value;
    std::string where;  // "line N" or "override 'x'"
};

bool one_of(const std::string& v, std::initializer_list<const char*> options) {
    for (const char* o : options)
        if (v == o) return true;
    return false;
}

bool power_of_two(int n) { return n >= 8 && (n & (n - 1)) == 0; }

}  // namespace

ScenarioConfig parse_config(const std::string& text_in, const std::vector<std::string>& overrides) {
    std::vector<std::string> errors;
    std::map<std::pair<std::string, std::string>, Entry> entries;

    std::stringstream in(text_in);
    std::string raw;
    std::string section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string where = "line " + std::to_string(lineno);
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                errors.push_back(where + ": malformed section header '" + line + "'");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (!known_section(section)) errors.push_back(where + ": unknown section [" + section + "]");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back(where + ": expected 'key = value', got '" + line + "'");
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!find_key(section, key)) {
            if (known_section(section))
                errors.push_back(where + ": unknown key '" + key + "'" + (section.empty() ? "" : " in [" + section + "]"));
            continue;
        }
        auto id = std::make_pair(section, key);
        if (entries.count(id)) errors.push_back(where + ": duplicate key '" + key + "' (first at " + entries[id].where + ")");
        entries[id] = {value, where};
    }

    for (const auto& ov : overrides) {
        std::string where = "override '" + ov + "'";
        auto eq = ov.find('=');
        if (eq == std::string::npos) {
            errors.push_back(where + ": expected key=value");
            continue;
        }
        std::string lhs = trim(ov.substr(0, eq));
        std::string value = trim(ov.substr(eq + 1));
        std::string sec, key = lhs;
        auto dot = lhs.find('.');
        if (dot != std::string::npos) {
            sec = lhs.substr(0, dot);
            key = lhs.substr(dot + 1);
        } else {
            int hits = 0;
            for (const auto& k : registry())
                if (k.name == key) {
                    sec = k.section;
                    ++hits;
                }
            if (hits > 1) {
                errors.push_back(where + ": key '" + key + "' is ambiguous, use section.key");
                continue;
            }
        }
        if (!find_key(sec, key)) {
            errors.push_back(where + ": unknown key '" + lhs + "'");
            continue;
        }
        entries[{sec, key}] = {value, where};
    }

    ScenarioConfig cfg;
    for (const auto& [id, e] : entries) {
        try {
            find_key(id.first, id.second)->set(cfg, e.value);
        } catch (const std::exception& ex) {
            errors.push_back(e.where + ": " + id.second + " " + ex.what());
        }
    }

    auto at = [&](const std::string& sec, const std::string& key) {
        auto it = entries.find({sec, key});
        return it == entries.end() ? std::string("[" + sec + "] default") : it->second.where;
    };
    auto need = [&](bool ok, const std::string& sec, const std::string& key, const std::string& msg) {
        if (!ok) errors.push_back(at(sec, key) + ": " + msg);
    };

    Params& p = cfg.params;
    need(p.gamma >= 0.0 && p.gamma < 1.0, "params", "gamma", "gamma must lie in [0,1)");
    need(p.epsilon >= 0.0 && p.epsilon <= 1.0, "params", "epsilon", "epsilon must lie in [0,1]");
    need(p.beta >= 0.0 && p.beta <= 1.0, "params", "beta", "beta must lie in [0,1]");
    need(p.mu > 0.0 && std::isfinite(p.mu), "params", "mu", "mu must be positive");
    RegimeBounds rb;
    need(p.delta >= rb.delta_min && p.delta <= rb.delta_max, "params", "delta",
         "delta must lie in [" + fmt(rb.delta_min) + ", " + fmt(rb.delta_max) + "]");
    need(p.bond_inv >= 0.0, "params", "bond_inv", "bond_inv must be >= 0");
    need(p.bo_inv >= 0.0, "params", "bo_inv", "bo_inv must be >= 0");
    bool has_bond = entries.count({"params", "bond_inv"}), has_bo = entries.count({"params", "bo_inv"});
    if (p.mu > 0.0) {
        if (has_bond && has_bo) {
            double expect = p.mu * p.bo_inv;
            double scale = std::max({std::abs(p.bond_inv), std::abs(expect), 1e-300});
            if (std::abs(p.bond_inv - expect) > 1e-12 * scale)
                errors.push_back(at("params", "bond_inv") + ": bond_inv = " + fmt(p.bond_inv) + " and bo_inv = " +
                                 fmt(p.bo_inv) + " are inconsistent (bond_inv must equal mu*bo_inv = " + fmt(expect) + ")");
        } else if (has_bo) {
            p.with_bo_inv(p.bo_inv);
        } else if (has_bond) {
            p.with_bond_inv(p.bond_inv);
        }
    }

    need(power_of_two(cfg.grid.n), "grid", "n", "n must be a power of two >= 8");
    need(cfg.grid.ny == 0 || power_of_two(cfg.grid.ny), "grid", "ny", "ny must be 0 or a power of two >= 8");
    need(cfg.grid.length > 0.0, "grid", "length", "length must be positive");
    need(cfg.grid.length_y > 0.0, "grid", "length_y", "length_y must be positive");

    need(cfg.stepper.dt >= 0.0, "stepper", "dt", "dt must be >= 0 (0 selects 0.5*dx)");
    need(cfg.stepper.t_end >= 0.0, "stepper", "t_end", "t_end must be >= 0");
    need(cfg.stepper.stride >= 1, "stepper", "stride", "stride must be >= 1");
    need(cfg.stepper.scheme == "ERK4", "stepper", "scheme", "scheme must be ERK4");
    need(cfg.solver.neumann_tol > 0.0, "stepper", "neumann_tol", "neumann_tol must be positive");
    need(cfg.solver.cg_tol > 0.0, "stepper", "cg_tol", "cg_tol must be positive");
    need(cfg.solver.unpack_tol > 0.0, "stepper", "unpack_tol", "unpack_tol must be positive");
    need(cfg.solver.neumann_max >= 1, "stepper", "neumann_max", "neumann_max must be >= 1");
    need(cfg.solver.cg_max >= 1, "stepper", "cg_max", "cg_max must be >= 1");
    need(cfg.solver.unpack_max >= 1, "stepper", "unpack_max", "unpack_max must be >= 1");

    const auto& ini = cfg.initial;
    need(one_of(ini.profile, {"sine", "gaussian", "solitary-guess", "file"}), "initial", "profile",
         "profile must be one of sine, gaussian, solitary-guess, file");
    need(one_of(ini.velocity, {"zero", "right-moving", "ztov", "profile"}), "initial", "velocity",
         "velocity must be one of zero, right-moving, ztov, profile");
    need(ini.width > 0.0, "initial", "width", "width must be positive");
    if (ini.profile == "file") {
        need(!ini.file.empty(), "initial", "file", "file is required when profile = file");
        need(ini.file.empty() || std::filesystem::exists(ini.file), "initial", "file",
             "file '" + ini.file + "' does not exist");
    }
    need(!(ini.velocity == "ztov" && is_2d(cfg.model.id)), "initial", "velocity", "velocity = ztov is 1D only");

    need(one_of(cfg.model.bottom, {"none", "sine", "gaussian"}), "model", "bottom",
         "bottom must be one of none, sine, gaussian");
    need(cfg.model.cl_sign == 1 || cfg.model.cl_sign == -1, "model", "cl_sign", "cl_sign must be +1 or -1");

    if (cfg.mode == Mode::order) {
        need(cfg.sweep.mus.size() >= 3, "sweep", "mus", "mus needs at least 3 values");
        for (double m : cfg.sweep.mus) need(m > 0.0, "sweep", "mus", "mus must be positive");
        need(!is_2d(cfg.model.id) && !is_2d(cfg.sweep.model_b) && cfg.model.id != ModelId::CL_SCALAR &&
                 cfg.sweep.model_b != ModelId::CL_SCALAR,
             "sweep", "model_b", "order mode compares 1D two-field models");
    }
    if (cfg.mode == Mode::dispersion) need(cfg.dispersion.k_max >= 1, "dispersion", "k_max", "k_max must be >= 1");
    if (cfg.mode == Mode::compare) {
        need(one_of(cfg.compare.experiment, {"unidirectional", "decoupled", "models"}), "compare", "experiment",
             "experiment must be one of unidirectional, decoupled, models");
        if (cfg.compare.experiment != "models") {
            need(cfg.compare.mus.size() >= 3, "compare", "mus", "mus needs at least 3 values");
            for (double m : cfg.compare.mus) need(m > 0.0 && m <= 1.0, "compare", "mus", "mus must lie in (0,1]");
        }
    }
    need(one_of(cfg.output.format, {"csv", "binary"}), "output", "format", "format must be csv or binary");

    if (errors.empty()) {
        try {
            ModelSpec m = make_model(cfg);
            validate(m);
        } catch (const std::exception& e) {
            errors.push_back(at("model", "id") + ": " + e.what());
        }
    }
    if (!errors.empty()) throw ConfigError(errors);
    return cfg;
}

ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot read config file '" + path + "'"});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), overrides);
}

std::string serialize(const ScenarioConfig& cfg) {
    std::string out;
    std::string section = "\x01";
    for (const auto& k : registry()) {
        if (k.section != section) {
            section = k.section;
            if (!section.empty()) out += "\n[" + section + "]\n";
        }
        out += k.name + " = " + k.get(cfg) + "\n";
    }
    return out;
}

Grid make_grid(const ScenarioConfig& cfg) {
    if (is_2d(cfg.model.id)) {
        int ny = cfg.grid.ny > 0 ? cfg.grid.ny : cfg.grid.n;
        return Grid(cfg.grid.n, ny, cfg.grid.length, cfg.grid.length_y);
    }
    return Grid(cfg.grid.n, cfg.grid.length);
}

ModelSpec make_model(const ScenarioConfig& cfg, ModelId id) {
    ModelSpec m;
    m.id = id;
    m.params = cfg.params;
    m.family = cfg.model.family;
    m.cl_variant = cfg.model.cl_variant;
    m.cl_theta = cfg.model.cl_theta;
    m.cl_lambda = cfg.model.cl_lambda;
    m.cl_sign = cfg.model.cl_sign;
    m.tension = cfg.model.tension;
    m.solver = cfg.solver;
    if (cfg.model.bottom != "none") {
        Grid g = make_grid(cfg);
        double a = cfg.model.bottom_amplitude, L = g.length(0);
        if (cfg.model.bottom == "sine")
            m.bottom = Field::sample(g, [&](double x) { return a * std::cos(2.0 * std::numbers::pi * x / L); });
        else
            m.bottom = Field::sample(g, [&](double x) { return a * std::exp(-(x - 0.5 * L) * (x - 0.5 * L)); });
    }
    return m;
}

ModelSpec make_model(const ScenarioConfig& cfg) { return make_model(cfg, cfg.model.id); }

std::pair<Field, VecField> make_initial(const ScenarioConfig& cfg, const ModelSpec& m) {
    Grid g = make_grid(cfg);
    const auto& ini = cfg.initial;
    double L = g.length(0);
    double c = ini.center < 0.0 ? 0.5 * L : ini.center;
    double k = 2.0 * std::numbers::pi * ini.wavenumber / L;
    auto shape = [&](double x) {
        if (ini.profile == "sine") return std::sin(k * x);
        double s = (x - c) / ini.width;
        if (ini.profile == "gaussian") return std::exp(-s * s);
        double sech = 1.0 / std::cosh(s);
        return sech * sech;
    };
    Field zeta(g), u(g);
    bool have_file_v = false;
    if (ini.profile == "file") {
        for (auto& [name, f] : read_fields_csv(ini.file)) {
            if (!(f.grid() == g)) throw ConfigError({"initial file '" + ini.file + "' does not match the [grid] section"});
            if (name == "zeta") zeta = f;
            if (name == "v") {
                u = f;
                have_file_v = true;
            }
        }
    } else {
        zeta = Field::sample(g, [&](double x) { return ini.amplitude * shape(x); });
    }
    if (!have_file_v) {
        if (ini.velocity == "right-moving") u = (m.params.gamma + m.params.delta) * zeta;
        else if (ini.velocity == "ztov") u = unidirectional_velocity(zeta, m.params);
        else if (ini.velocity == "profile")
            u = ini.profile == "file" ? ini.velocity_amplitude * zeta
                                      : Field::sample(g, [&](double x) { return ini.velocity_amplitude * shape(x); });
    }
    VecField v = g.dim() == 2 ? VecField(std::vector<Field>{u, Field(g)}) : VecField(std::vector<Field>{u});
    return {zeta, v};
}

}  // namespace twolayer
