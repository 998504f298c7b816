#include "twolayer/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "twolayer/errors.hpp"

namespace twolayer {

OrderFit fit_order(std::vector<double> x, std::vector<double> y, double degenerate_floor, double inconclusive_above) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_order: size mismatch");
    if (x.size() < 3) throw std::invalid_argument("fit_order: at least 3 points are needed");
    for (double xi : x)
        if (!(xi > 0.0)) throw std::invalid_argument("fit_order: abscissae must be positive");
    OrderFit f;
    f.x = std::move(x);
    f.y = std::move(y);
    if (std::all_of(f.y.begin(), f.y.end(), [&](double v) { return v <= degenerate_floor; })) {
        f.status = "degenerate";
        return f;
    }
    if (std::any_of(f.y.begin(), f.y.end(), [](double v) { return !(v > 0.0) || !std::isfinite(v); })) {
        f.status = "inconclusive";
        f.fit_residual = std::numeric_limits<double>::infinity();
        return f;
    }
    const std::size_t n = f.x.size();
    Eigen::MatrixXd a(n, 2);
    Eigen::VectorXd b(n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, 0) = std::log10(f.x[i]);
        a(i, 1) = 1.0;
        b(i) = std::log10(f.y[i]);
    }
    Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
    f.slope = c(0);
    f.intercept = c(1);
    f.fit_residual = (a * c - b).cwiseAbs().maxCoeff();
    if (f.fit_residual > inconclusive_above) f.status = "inconclusive";
    return f;
}

// ---- dispersion

double model_dispersion_sq(const ModelSpec& m, double k) {
    Params p = effective_params(m);
    double mu = p.mu, k2 = k * k;
    double nu = chgn_coeffs(p.gamma, p.delta).nu;
    switch (m.id) {
        case ModelId::SW1D:
        case ModelId::SW2D: return 1.0 + k2 * p.bond_inv;
        case ModelId::GN1D:
        case ModelId::GN2D: return (1.0 + k2 * p.bond_inv) / (1.0 + mu * nu * k2);
        case ModelId::CHGN1D: return 1.0 / (1.0 + mu * nu * k2);
        case ModelId::BOUSS1D: {
            auto ops = boussinesq_ops(p.gamma, p.delta, p.bo_inv, m.family.theta1, m.family.theta2, m.family.lambda1,
                                      m.family.lambda2);
            double gd = p.gamma + p.delta;
            double a = 1.0 / gd - mu * k2 * ops.A2(0, 1);
            double b = gd - mu * k2 * ops.A2(1, 0);
            return a * b / ((1.0 + mu * k2 * ops.A1(0, 0)) * (1.0 + mu * k2 * ops.A1(1, 1)));
        }
        case ModelId::SYMBOUSS1D: return (1.0 + mu * k2 * (1.0 + p.bo_inv)) / (1.0 + mu * k2 * (1.0 + nu));
        case ModelId::CL_SCALAR: {
            double c = model_dispersion(m, k);
            return c * c;
        }
    }
    throw std::invalid_argument("model_dispersion: unknown model");
}

double model_dispersion(const ModelSpec& m, double k) {
    if (m.id != ModelId::CL_SCALAR) return std::sqrt(model_dispersion_sq(m, k));
    Params p = effective_params(m);
    auto c = cl_coeffs(m.cl_variant, p.gamma, p.delta, m.cl_theta, m.cl_lambda);
    double k2 = k * k;
    if (c.variant == ClVariant::unidirectional) return (1.0 - p.mu * c.nu_x * k2) / (1.0 + p.mu * c.nu_t * k2);
    // frame speed of the decoupled equation plus the unit recombination shift
    return m.cl_sign * (1.0 - p.mu * c.nu_x * k2 / (1.0 + p.mu * c.nu_t * k2));
}

double assembled_dispersion(const ModelSpec& m, int k, Index n) {
    ModelSpec lin = m;
    lin.params.epsilon = 0.0;
    const double two_pi = 2.0 * std::numbers::pi;
    bool two_d = is_2d(m.id);
    Grid g = two_d ? Grid(n, 8, two_pi, two_pi) : Grid(n, two_pi);
    Field c = Field::sample(g, [k](double x, double = 0.0) { return std::cos(k * x); });
    Field s = Field::sample(g, [k](double x, double = 0.0) { return std::sin(k * x); });
    Field zero(g);

    auto velocity = [&](const Field& f) {
        return two_d ? VecField(std::vector<Field>{f, zero}) : VecField(std::vector<Field>{f});
    };

    if (m.id == ModelId::CL_SCALAR) {
        Field r = rhs(lin, scalar_state(c)).zeta;
        double speed = inner(s, r) / inner(s, s) / k;
        if (m.cl_variant == ClVariant::decoupled) speed += m.cl_sign;
        return speed;
    }

    State basis[4] = {make_state(c, velocity(zero), velocity_role(m.id)), make_state(s, velocity(zero), velocity_role(m.id)),
                      make_state(zero, velocity(c), velocity_role(m.id)), make_state(zero, velocity(s), velocity_role(m.id))};
    Eigen::Matrix4d L;
    for (int j = 0; j < 4; ++j) {
        State r = rhs(lin, basis[j]);
        Field comps[4] = {r.zeta, r.zeta, r.vel[0], r.vel[0]};
        for (int i = 0; i < 4; ++i) {
            const Field& b = i % 2 == 0 ? c : s;
            L(i, j) = inner(b, comps[i]) / inner(b, b);
        }
    }
    Eigen::EigenSolver<Eigen::Matrix4d> es(L, false);
    double omega = es.eigenvalues().imag().cwiseAbs().maxCoeff();
    return omega / k;
}

double full_euler_dispersion_sq(double k, const Params& p) {
    if (!(k > 0.0)) throw std::invalid_argument("full_euler_dispersion: k must be positive");
    double kk = std::sqrt(p.mu) * k;
    double t1 = std::tanh(kk);
    double t2 = std::tanh(kk / p.delta);
    return (p.gamma + p.delta) * (1.0 + k * k * p.bond_inv) * t1 * t2 / (kk * (t1 + p.gamma * t2));
}

double full_euler_dispersion(double k, const Params& p) { return std::sqrt(full_euler_dispersion_sq(k, p)); }

// ---- consistency residuals

double path_epsilon(EpsilonPath path, double mu, double eps_fixed) {
    switch (path) {
        case EpsilonPath::fixed: return eps_fixed;
        case EpsilonPath::sqrt_mu: return std::sqrt(mu);
        case EpsilonPath::mu: return mu;
    }
    return eps_fixed;
}

ResidualOrder residual_order(const ModelSpec& a, const ModelSpec& b, EpsilonPath path, double eps_fixed,
                             const std::vector<double>& mus, Index n, double s_index) {
    Grid g(n, 2.0 * std::numbers::pi);
    Field zeta = Field::sample(g, [](double x) { return 0.5 * std::sin(x); });
    Field v = Field::sample(g, [](double x) { return 0.3 * std::cos(x); });
    ResidualOrder out;
    std::vector<double> diffs;
    for (double mu : mus) {
        ModelSpec ma = a, mb = b;
        for (ModelSpec* m : {&ma, &mb}) {
            m->params.mu = mu;
            m->params.epsilon = path_epsilon(path, mu, eps_fixed);
            if (m->params.bo_inv != 0.0) m->params.with_bo_inv(m->params.bo_inv);
        }
        try {
            auto ta = model_tendency(ma, zeta, v);
            auto tb = model_tendency(mb, zeta, v);
            double dz = sobolev_norm(ta.zeta_t - tb.zeta_t, s_index);
            double dv = sobolev_norm(ta.v_t - tb.v_t, s_index);
            diffs.push_back(std::hypot(dz, dv));
            out.norm_a.push_back(std::hypot(sobolev_norm(ta.zeta_t, s_index), sobolev_norm(ta.v_t, s_index)));
        } catch (const AdmissibilityError& e) {
            std::ostringstream os;
            os << e.condition() << " at mu = " << mu;
            throw AdmissibilityError(os.str(), e.margin(), e.location());
        }
    }
    double scale = *std::max_element(out.norm_a.begin(), out.norm_a.end());
    out.fit = fit_order(mus, diffs, 1e-12 * scale);
    return out;
}

// ---- trajectories

double state_distance(const State& a, const State& b, const Params& p, double s_index) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("state_distance: grid mismatch");
    if (a.vel.size() != b.vel.size()) throw std::invalid_argument("state_distance: velocity shape mismatch");
    State d = a;
    d.axpy(-1.0, b);
    return x_s_norm(d, p, s_index);
}

std::vector<ErrorSample> compare_trajectories(const Trajectory& a, const Trajectory& b, const Params& p,
                                              double s_index) {
    if (a.times.size() != b.times.size()) throw std::invalid_argument("compare_trajectories: output strides differ");
    std::vector<ErrorSample> out;
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        if (std::abs(a.times[i] - b.times[i]) > 1e-12 * std::max(1.0, std::abs(a.times[i])))
            throw std::invalid_argument("compare_trajectories: timestamps differ");
        if (!(a.states[i].grid() == b.states[i].grid())) throw std::invalid_argument("compare_trajectories: grid mismatch");
        out.push_back({a.times[i], state_distance(a.states[i], b.states[i], p, s_index)});
    }
    return out;
}

namespace {

Field bump(const Grid& g, double amplitude) {
    double centre = 0.5 * g.length(0);
    return Field::sample(g, [&](double x) { return amplitude * std::exp(-(x - centre) * (x - centre)); });
}

State final_state(const ModelSpec& m, const State& s0, const ExperimentSetup& setup) {
    StepperConfig cfg;
    cfg.dt = setup.dt;
    cfg.t_end = setup.t_end;
    cfg.stride = std::numeric_limits<int>::max();
    return integrate(m, s0, cfg).states.back();
}

}  // namespace

Experiment unidirectional_experiment(const std::vector<double>& mus, const ExperimentSetup& setup) {
    Grid g(setup.n, setup.length);
    Field zeta0 = bump(g, setup.amplitude);
    Experiment ex;
    std::vector<double> errs;
    for (double mu : mus) {
        Params p;
        p.gamma = setup.gamma;
        p.delta = setup.delta;
        p.mu = mu;
        p.epsilon = std::sqrt(mu);

        ModelSpec chgn;
        chgn.id = ModelId::CHGN1D;
        chgn.params = p;
        chgn.solver = setup.solver;
        State ref = final_state(chgn, build_unidirectional_ic(zeta0, p), setup);

        ModelSpec cl;
        cl.id = ModelId::CL_SCALAR;
        cl.params = p;
        cl.cl_variant = ClVariant::unidirectional;
        cl.cl_theta = setup.theta;
        cl.solver = setup.solver;
        Field u = final_state(cl, scalar_state(zeta0), setup).zeta;
        State approx = make_state(u, unidirectional_velocity(u, p));

        double e = state_distance(ref, approx, p);
        ex.rows.push_back({mu, p.epsilon, mu, e});
        errs.push_back(e);
    }
    ex.fit = fit_order(mus, errs);
    return ex;
}

Experiment decoupled_experiment(const std::vector<double>& mus, const ExperimentSetup& setup) {
    Grid g(setup.n, setup.length);
    Field zeta0 = bump(g, setup.amplitude);
    Field v0(g);
    Experiment ex;
    std::vector<double> eps0s, errs;
    for (double mu : mus) {
        Params p;
        p.gamma = setup.gamma;
        p.delta = setup.delta;
        p.mu = mu;
        p.epsilon = mu;

        ModelSpec sym;
        sym.id = ModelId::SYMBOUSS1D;
        sym.params = p;
        sym.solver = setup.solver;
        State ref = final_state(sym, make_state(zeta0, v0), setup);

        auto c = cl_coeffs(ClVariant::decoupled, p.gamma, p.delta, setup.theta, 0.0);
        State approx = decoupled_evolve(zeta0, v0, p, c, setup.t_end, setup.dt);

        double eps0 = std::max(p.epsilon * std::abs(p.delta * p.delta - p.gamma), mu);
        double e = state_distance(ref, approx, p);
        ex.rows.push_back({mu, p.epsilon, eps0, e});
        eps0s.push_back(eps0);
        errs.push_back(e);
    }
    ex.fit = fit_order(eps0s, errs);
    return ex;
}

RichardsonResult richardson_order(const ModelSpec& m, const State& s0, double t_end, double dt) {
    StepperConfig cfg;
    cfg.t_end = t_end;
    cfg.stride = std::numeric_limits<int>::max();
    State u[3] = {s0, s0, s0};
    for (int i = 0; i < 3; ++i) {
        cfg.dt = dt / std::pow(2.0, i);
        u[i] = integrate(m, s0, cfg).states.back();
    }
    Params p = effective_params(m);
    RichardsonResult r;
    r.e_coarse = state_distance(u[0], u[1], p);
    r.e_fine = state_distance(u[1], u[2], p);
    r.ratio = r.e_coarse / r.e_fine;
    r.order = std::log2(r.ratio);
    return r;
}

}  // namespace twolayer
