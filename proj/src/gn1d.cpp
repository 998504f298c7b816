#include <cmath>

#include "twolayer/errors.hpp"
#include "twolayer/models.hpp"

namespace twolayer {

namespace {

Field dx(const Field& f) { return deriv(f, 0, 1); }

bool has_topography(const Params& p, const Field* bottom) { return bottom && p.beta != 0.0; }

double flat_nu(const Params& p) { return chgn_coeffs(p.gamma, p.delta).nu; }

template <typename Pack>
Field unpack_with(Pack&& pack, const Field& w, const Params& p, const SolverOptions& opt, IterationReport* report) {
    double a = p.mu * flat_nu(p);
    auto prec = [&](const Field& r) { return helmholtz_inverse(a, r); };
    Field v = prec(w);
    auto rep = richardson(pack, prec, w, v, [](const Field& f) { return l2_norm(f); }, opt.unpack_tol, opt.unpack_max,
                          "fixed point for GN velocity");
    if (report) *report = rep;
    return v;
}

Field transport(const DepthFields& d, const Params& p, const Field& v) { return (1.0 + d.xi) * v / (p.gamma + p.delta); }

Field sw_flux(const DepthFields& d, const Params& p, const Field& v) {
    Field H = d.h1 + p.gamma * d.h2;
    return (square(d.h1) - p.gamma * square(d.h2)) / square(H) * square(v);
}

}  // namespace

Field gn1d_pack(const Field& zeta, const Field& v, const Params& p, const Field* bottom) {
    auto d = depth_fields(zeta, p, bottom);
    check_depth(d);
    Field H = d.h1 + p.gamma * d.h2;
    Field u2 = d.h1 * v / H;
    Field u1 = -1.0 * d.h2 * v / H;
    Field zero(zeta.grid());
    return v + p.mu * t_operator(d.h2, d.bb, u2) - p.mu * p.gamma * t_operator(d.h1, zero, u1);
}

Field gn1d_unpack(const Field& zeta, const Field& w, const Params& p, const Field* bottom, const SolverOptions& opt,
                  IterationReport* report) {
    auto d = depth_fields(zeta, p, bottom);
    check_depth(d);
    auto pack = [&](const Field& v) { return gn1d_pack(zeta, v, p, bottom); };
    return unpack_with(pack, w, p, opt, report);
}

Field gn1d_flat_pack(const Field& zeta, const Field& v, const Params& p) {
    auto d = depth_fields(zeta, p);
    check_depth(d);
    return v + p.mu * qbar(d.h1, d.h2, p.gamma, v);
}

Field gn1d_flat_unpack(const Field& zeta, const Field& w, const Params& p, const SolverOptions& opt,
                       IterationReport* report) {
    auto d = depth_fields(zeta, p);
    check_depth(d);
    auto pack = [&](const Field& v) { return v + p.mu * qbar(d.h1, d.h2, p.gamma, v); };
    return unpack_with(pack, w, p, opt, report);
}

State gn1d_rhs(const State& s, const Params& p, const Field* bottom, const SolverOptions& opt) {
    auto d = depth_fields(s.zeta, p, bottom);
    check_depth(d);
    Field v = gn1d_unpack(s.zeta, s.v(), p, bottom, opt);
    double gd = p.gamma + p.delta;
    Field zeta_t = -1.0 * dx(transport(d, p, v));
    Field w_t = -gd * dx(s.zeta) - 0.5 * p.epsilon * dx(sw_flux(d, p, v)) +
                p.mu * p.epsilon * dx(r0_nonlinear(d, v, p.gamma)) + curvature_term(s.zeta, p);
    return make_state(dealias(zeta_t), dealias(w_t), s.role);
}

State gn1d_flat_rhs(const State& s, const Params& p, const SolverOptions& opt) {
    auto d = depth_fields(s.zeta, p);
    check_depth(d);
    Field v = gn1d_flat_unpack(s.zeta, s.v(), p, opt);
    double gd = p.gamma + p.delta;
    Field zeta_t = -1.0 * dx(transport(d, p, v));
    Field w_t = -gd * dx(s.zeta) - 0.5 * p.epsilon * dx(sw_flux(d, p, v)) +
                p.mu * p.epsilon * dx(rbar(d.h1, d.h2, p.gamma, v)) + curvature_term(s.zeta, p);
    return make_state(dealias(zeta_t), dealias(w_t), s.role);
}

Tendency gn1d_tendency(const Field& zeta, const Field& v, const Params& p, const Field* bottom,
                       const SolverOptions& opt) {
    bool topo = has_topography(p, bottom);
    auto pack = [&](const Field& z, const Field& u) {
        return topo ? gn1d_pack(z, u, p, bottom) : gn1d_flat_pack(z, u, p);
    };
    State s = make_state(zeta, pack(zeta, v), VelocityRole::gn_momentum_w);
    State r = topo ? gn1d_rhs(s, p, bottom, opt) : gn1d_flat_rhs(s, p, opt);

    // ∂t(pack(ζ, v)) = pack(ζ, ∂tv) + (∂ζ pack)[∂tζ] v, pack being linear in v
    Field rhs = r.v();
    double zt = r.zeta.max_abs();
    if (p.epsilon != 0.0 && zt != 0.0) {
        double eta = 1e-3 / (p.epsilon * zt);
        auto shifted = [&](double a) { return pack(zeta + a * eta * r.zeta, v); };
        Field dpack = (8.0 * (shifted(1.0) - shifted(-1.0)) - (shifted(2.0) - shifted(-2.0))) / (12.0 * eta);
        rhs -= dpack;
    }
    Field v_t = topo ? gn1d_unpack(zeta, rhs, p, bottom, opt) : gn1d_flat_unpack(zeta, rhs, p, opt);
    return {r.zeta, v_t};
}

Gn1dResidual gn1d_residual(const Field& zeta, const Field& v, const Field& zeta_t, const Field& v_t, const Params& p,
                           const Field* bottom, double dt_fd) {
    if (!(dt_fd > 0.0)) throw std::invalid_argument("dt_fd must be positive");
    auto d = depth_fields(zeta, p, bottom);
    check_depth(d);
    double gd = p.gamma + p.delta;
    Field mass = zeta_t + dx(transport(d, p, v));
    Field w_t = (gn1d_pack(zeta + dt_fd * zeta_t, v + dt_fd * v_t, p, bottom) - gn1d_pack(zeta, v, p, bottom)) / dt_fd;
    Field momentum = w_t + gd * dx(zeta) + 0.5 * p.epsilon * dx(sw_flux(d, p, v)) -
                     p.mu * p.epsilon * dx(r0_nonlinear(d, v, p.gamma)) - curvature_term(zeta, p);
    return {std::move(mass), std::move(momentum)};
}

}  // namespace twolayer
