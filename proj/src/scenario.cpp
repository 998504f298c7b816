#include "twolayer/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "twolayer/analysis.hpp"
#include "twolayer/errors.hpp"
#include "twolayer/field_io.hpp"

namespace twolayer {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// null for non-finite values (JSON has no NaN)
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

class Writer {
public:
    explicit Writer(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    void table(const std::string& name, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
        std::ofstream out(dir_ / name);
        if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
        for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
        out << "\n";
        char buf[64];
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.17g", r[i]);
                out << (i ? "," : "") << buf;
            }
            out << "\n";
        }
        files.push_back(name);
    }

    void fields(const std::string& name, const std::vector<NamedField>& f) {
        write_fields_csv((dir_ / name).string(), f);
        files.push_back(name);
    }

    void binary(const std::string& name, const Field& f) {
        write_field_binary((dir_ / name).string(), f);
        files.push_back(name);
    }

    fs::path path(const std::string& name) const { return dir_ / name; }

    std::vector<std::string> files;

private:
    fs::path dir_;
};

json params_json(const Params& p) {
    return {{"gamma", p.gamma}, {"epsilon", p.epsilon}, {"beta", p.beta},       {"mu", p.mu},
            {"delta", p.delta}, {"bond_inv", p.bond_inv}, {"bo_inv", p.bo_inv}};
}

json model_json(const ModelSpec& m) {
    return {{"id", to_string(m.id)},
            {"tension", m.tension},
            {"family", {{"theta1", m.family.theta1}, {"theta2", m.family.theta2}, {"lambda1", m.family.lambda1},
                        {"lambda2", m.family.lambda2}}},
            {"cl_variant", to_string(m.cl_variant)},
            {"cl_theta", m.cl_theta},
            {"cl_lambda", m.cl_lambda},
            {"cl_sign", m.cl_sign},
            {"bottom", m.bottom.has_value()},
            {"velocity_role", to_string(velocity_role(m.id))}};
}

json fit_json(const OrderFit& f, double target, double tol) {
    return {{"slope", num(f.slope)},
            {"intercept", num(f.intercept)},
            {"fit_residual", num(f.fit_residual)},
            {"status", f.status},
            {"target", target},
            {"band", {target - tol, target + tol}},
            {"pass", f.within(target, tol)}};
}

void snapshot(Writer& w, const ScenarioConfig& cfg, const ModelSpec& m, const State& s, std::size_t i) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "snapshot_%04zu", i);
    std::vector<NamedField> f = {{"zeta", s.zeta}};
    const char* comp[2] = {"x", "y"};
    std::string vname = m.id == ModelId::CL_SCALAR ? "" : (s.role == VelocityRole::gn_momentum_w ? "w" : "v");
    for (int c = 0; c < s.vel.size(); ++c) f.emplace_back(s.vel.size() > 1 ? vname + "_" + comp[c] : vname, s.vel[c]);
    if (cfg.output.format == "csv") {
        w.fields(std::string(stem) + ".csv", f);
    } else {
        for (const auto& [name, field] : f) w.binary(std::string(stem) + "_" + name + ".bin", field);
    }
}

json run_simulate(const ScenarioConfig& cfg, Writer& w) {
    ModelSpec m = make_model(cfg);
    auto [zeta, v] = make_initial(cfg, m);
    State s0 = initial_state(m, zeta, v);
    Trajectory traj = integrate(m, s0, cfg.stepper);
    std::vector<std::vector<double>> rows;
    for (const auto& mo : traj.monitors)
        rows.push_back({mo.t, mo.mean_zeta, mo.mean_vel, mo.energy, mo.min_depth, mo.margin});
    w.table("monitors.csv", {"t", "mean_zeta", "mean_vel", "energy", "min_depth", "margin"}, rows);
    if (cfg.output.snapshots)
        for (std::size_t i = 0; i < traj.states.size(); ++i) snapshot(w, cfg, m, traj.states[i], i);
    const auto& first = traj.monitors.front();
    const auto& last = traj.monitors.back();
    return {{"steps", traj.steps},
            {"dt", traj.dt},
            {"mean_zeta_drift", std::abs(last.mean_zeta - first.mean_zeta)},
            {"mean_vel_drift", std::abs(last.mean_vel - first.mean_vel)},
            {"energy_relative_drift", num(std::abs(last.energy - first.energy) / std::abs(first.energy))}};
}

json run_order(const ScenarioConfig& cfg, Writer& w) {
    const auto& sw = cfg.sweep;
    ModelSpec a = make_model(cfg), b = make_model(cfg, sw.model_b);
    auto res = residual_order(a, b, sw.path, sw.eps_fixed, sw.mus, cfg.grid.n, sw.s_index);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < sw.mus.size(); ++i)
        rows.push_back({sw.mus[i], path_epsilon(sw.path, sw.mus[i], sw.eps_fixed), res.fit.y[i], res.norm_a[i]});
    w.table("order.csv", {"mu", "epsilon", "residual", "rhs_norm_a"}, rows);
    json out = fit_json(res.fit, sw.target, sw.tolerance);
    out["model_a"] = to_string(a.id);
    out["model_b"] = to_string(b.id);
    return out;
}

json run_dispersion(const ScenarioConfig& cfg, Writer& w) {
    ModelSpec m = make_model(cfg);
    if (cfg.dispersion.k_max > cfg.grid.n / 3)
        throw ConfigError({"[dispersion] k_max = " + std::to_string(cfg.dispersion.k_max) + " exceeds the resolved range n/3"});
    std::vector<std::vector<double>> rows;
    double worst = 0.0;
    Params p = effective_params(m);
    for (int k = 1; k <= cfg.dispersion.k_max; ++k) {
        double c = model_dispersion(m, k);
        double ca = assembled_dispersion(m, k, cfg.grid.n);
        double ce = full_euler_dispersion(k, p);
        worst = std::max(worst, std::abs(c - ca));
        rows.push_back({double(k), c, ca, ce, std::abs(c - ca)});
    }
    w.table("dispersion.csv", {"k", "c_model", "c_assembled", "c_full_euler", "abs_diff"}, rows);
    return {{"max_abs_diff_model_vs_assembled", worst}};
}

json run_compare(const ScenarioConfig& cfg, Writer& w) {
    const auto& cmp = cfg.compare;
    if (cmp.experiment == "models") {
        ModelSpec a = make_model(cfg), b = make_model(cfg, cmp.model_b);
        auto [za, va] = make_initial(cfg, a);
        Trajectory ta = integrate(a, initial_state(a, za, va), cfg.stepper);
        Trajectory tb = integrate(b, initial_state(b, za, va), cfg.stepper);
        auto physical = [](const ModelSpec& m, Trajectory t) {
            for (auto& s : t.states) s = make_state(s.zeta, shear_velocity(m, s), VelocityRole::shear_mean_v);
            return t;
        };
        auto series = compare_trajectories(physical(a, ta), physical(b, tb), a.params, cmp.s_index);
        std::vector<std::vector<double>> rows;
        for (const auto& e : series) rows.push_back({e.t, e.error});
        w.table("compare.csv", {"t", "error"}, rows);
        return {{"terminal_error", series.back().error}};
    }
    ExperimentSetup setup;
    setup.gamma = cfg.params.gamma;
    setup.delta = cfg.params.delta;
    setup.n = cfg.grid.n;
    setup.length = cfg.grid.length;
    setup.t_end = cfg.stepper.t_end;
    setup.dt = cfg.stepper.dt > 0.0 ? cfg.stepper.dt : setup.dt;
    setup.amplitude = cfg.initial.amplitude;
    setup.theta = cfg.model.cl_theta;
    setup.solver = cfg.solver;
    Experiment ex = cmp.experiment == "unidirectional" ? unidirectional_experiment(cmp.mus, setup)
                                                       : decoupled_experiment(cmp.mus, setup);
    std::vector<std::vector<double>> rows;
    for (const auto& r : ex.rows) rows.push_back({r.mu, r.epsilon, r.eps0, r.error});
    w.table("compare.csv", {"mu", "epsilon", "eps0", "error"}, rows);
    json out = fit_json(ex.fit, cmp.target, cmp.tolerance);
    out["experiment"] = cmp.experiment;
    return out;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    ScenarioResult res;
    Writer w(cfg.output.dir);
    json manifest;
    manifest["mode"] = to_string(cfg.mode);
    manifest["config"] = serialize(cfg);
    manifest["model"] = model_json(make_model(cfg));
    manifest["params"] = params_json(cfg.params);
    manifest["stepper"] = {{"dt", cfg.stepper.dt},         {"t_end", cfg.stepper.t_end}, {"stride", cfg.stepper.stride},
                           {"scheme", cfg.stepper.scheme}, {"cg_tol", cfg.solver.cg_tol}, {"unpack_tol", cfg.solver.unpack_tol},
                           {"neumann_tol", cfg.solver.neumann_tol}};
    manifest["seeds"] = json::array();
    manifest["status"] = "ok";
    try {
        json out;
        switch (cfg.mode) {
            case Mode::simulate: out = run_simulate(cfg, w); break;
            case Mode::order: out = run_order(cfg, w); break;
            case Mode::dispersion: out = run_dispersion(cfg, w); break;
            case Mode::compare: out = run_compare(cfg, w); break;
        }
        manifest["result"] = out;
    } catch (const AdmissibilityError& e) {
        res.exit_code = exit_admissibility;
        manifest["status"] = "admissibility";
        manifest["error"] = {{"condition", e.condition()}, {"margin", num(e.margin())}, {"location", num(e.location())},
                             {"time", e.time() ? json(*e.time()) : json(nullptr)}, {"message", e.what()}};
        res.message = e.what();
    } catch (const SolverError& e) {
        res.exit_code = exit_solver;
        manifest["status"] = "solver";
        manifest["error"] = {{"message", e.what()}, {"iterations", e.iterations()}, {"residual", num(e.residual())}};
        res.message = e.what();
    } catch (const BlowUpError& e) {
        res.exit_code = exit_solver;
        manifest["status"] = "blowup";
        manifest["error"] = {{"message", e.what()}, {"time", e.time()}};
        res.message = e.what();
    } catch (const ConfigError& e) {
        res.exit_code = exit_config;
        manifest["status"] = "config";
        manifest["error"] = {{"message", e.what()}, {"messages", e.messages()}};
        res.message = e.what();
    } catch (const std::exception& e) {
        res.exit_code = exit_config;
        manifest["status"] = "error";
        manifest["error"] = {{"message", e.what()}};
        res.message = e.what();
    }
    manifest["files"] = w.files;
    res.files = w.files;
    res.manifest_path = w.path("manifest.json").string();
    std::ofstream out(res.manifest_path);
    out << manifest.dump(2) << "\n";
    return res;
}

}  // namespace twolayer
