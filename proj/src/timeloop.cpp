#include "twolayer/timeloop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twolayer/errors.hpp"

namespace twolayer {

double default_dt(const Grid& g) {
    double h = g.spacing(0);
    if (g.dim() == 2) h = std::min(h, g.spacing(1));
    return 0.5 * h;
}

std::pair<int, double> step_plan(double t_end, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be >= 0");
    if (t_end == 0.0) return {0, dt};
    int n = static_cast<int>(std::ceil(t_end / dt - 1e-9));
    n = std::max(n, 1);
    return {n, t_end / n};
}

namespace {

double smallest_margin(const Margins& m) { return std::min({m.hyperbolicity, m.ellipticity, m.contraction, m.mass}); }

}  // namespace

MonitorSample sample_monitors(const ModelSpec& m, const State& s, double t) {
    MonitorSample out;
    out.t = t;
    out.mean_zeta = s.zeta.mean();
    out.mean_vel = s.vel.size() > 0 ? s.vel[0].mean() : 0.0;
    Params p = effective_params(m);
    if (m.id == ModelId::SYMBOUSS1D)
        out.energy = sym_boussinesq_energy(s, p, sym_boussinesq_ops(p.gamma, p.delta, p.bo_inv));
    else
        out.energy = inner(s.zeta, s.zeta) + (s.vel.size() > 0 ? inner(s.vel, s.vel) : 0.0);
    Margins mg = margins(m, s);
    out.min_depth = m.id == ModelId::CL_SCALAR ? std::numeric_limits<double>::quiet_NaN() : mg.min_depth;
    out.margin = smallest_margin(mg);
    return out;
}

Trajectory integrate(const ModelSpec& m, const State& s0, const StepperConfig& cfg) {
    if (cfg.scheme != "ERK4") throw std::invalid_argument("unknown time scheme '" + cfg.scheme + "'");
    if (cfg.stride < 1) throw std::invalid_argument("output stride must be >= 1");
    double dt_req = cfg.dt > 0.0 ? cfg.dt : default_dt(s0.grid());
    auto [n, dt] = step_plan(cfg.t_end, dt_req);

    Trajectory traj;
    traj.dt = dt;
    traj.steps = n;
    auto record = [&](const State& s, double t) {
        traj.times.push_back(t);
        traj.states.push_back(s);
        traj.monitors.push_back(sample_monitors(m, s, t));
    };

    State s = s0;
    if (!s.all_finite()) throw BlowUpError(0.0, "initial state");
    try {
        check_admissible(m, s);
    } catch (const AdmissibilityError& e) {
        throw e.at_time(0.0);
    }
    record(s, 0.0);

    auto f = [&](const State& x) { return rhs(m, x); };
    for (int i = 1; i <= n; ++i) {
        double t = i * dt;
        try {
            s = rk4_step(f, s, dt);
        } catch (const AdmissibilityError& e) {
            throw e.at_time(t - dt);
        }
        if (!s.all_finite()) throw BlowUpError(t, "field values");
        try {
            check_admissible(m, s);
        } catch (const AdmissibilityError& e) {
            throw e.at_time(t);
        }
        if (i % cfg.stride == 0 || i == n) record(s, t);
    }
    return traj;
}

double x_s_norm(const State& s, const Params& p, double s_index) {
    double sum = std::pow(sobolev_norm(s.zeta, s_index), 2);
    for (int i = 0; i < s.vel.size(); ++i) {
        const Field& v = s.vel[i];
        sum += std::pow(sobolev_norm(v, s_index), 2);
        for (int a = 0; a < v.grid().dim(); ++a) sum += p.mu * std::pow(sobolev_norm(deriv(v, a), s_index), 2);
    }
    return std::sqrt(sum);
}

}  // namespace twolayer
