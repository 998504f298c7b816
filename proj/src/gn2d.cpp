#include "twolayer/errors.hpp"
#include "twolayer/models.hpp"

namespace twolayer {

namespace {

double flat_nu(const Params& p) { return chgn_coeffs(p.gamma, p.delta).nu; }

// Layer velocities and their dispersive images (I + μδ𝔔h₂𝒯)ũ₂, (I + μ𝔔h₁𝒯)ũ₁.
struct Images {
    DepthFields d;
    VecField transport, u1, u2, a1, a2;
};

Images images(const Field& zeta, const VecField& v, const Params& p, const Field* bottom, const SolverOptions& opt) {
    auto d = depth_fields(zeta, p, bottom);
    check_depth(d);
    Field xi1 = -p.epsilon * zeta;
    Field xi2 = p.delta * (p.epsilon * zeta - d.bb);
    VecField tr = (1.0 + d.xi) * v * (1.0 / (p.gamma + p.delta));
    VecField u1 = q_operator(xi1, tr, opt) * -1.0;
    VecField u2 = q_operator(xi2, tr, opt) * p.delta;
    Field zero(zeta.grid());
    VecField a2 = u2 + q_operator(xi2, d.h2 * t_operator(d.h2, d.bb, u2), opt) * (p.mu * p.delta);
    VecField a1 = u1 + q_operator(xi1, d.h1 * t_operator(d.h1, zero, u1), opt) * p.mu;
    return {std::move(d), std::move(tr), std::move(u1), std::move(u2), std::move(a1), std::move(a2)};
}

Field kinetic(const Images& im, double gamma) { return dot(im.a2, im.a2) - gamma * dot(im.a1, im.a1); }

}  // namespace

Gn2dVelocities gn2d_velocities(const Field& zeta, const VecField& v, const Params& p, const Field* bottom,
                               const SolverOptions& opt) {
    auto d = depth_fields(zeta, p, bottom);
    check_depth(d);
    VecField tr = (1.0 + d.xi) * v * (1.0 / (p.gamma + p.delta));
    Field xi2 = p.delta * (p.epsilon * zeta - d.bb);
    return {q_operator(-p.epsilon * zeta, tr, opt) * -1.0, q_operator(xi2, tr, opt) * p.delta};
}

VecField gn2d_pack(const Field& zeta, const VecField& v, const Params& p, const Field* bottom,
                   const SolverOptions& opt) {
    auto im = images(zeta, v, p, bottom, opt);
    return im.a2 - p.gamma * im.a1;
}

VecField gn2d_unpack(const Field& zeta, const VecField& m, const Params& p, const Field* bottom,
                     const SolverOptions& opt) {
    double a = p.mu * flat_nu(p);
    auto apply = [&](const VecField& v) { return gn2d_pack(zeta, v, p, bottom, opt); };
    auto prec = [&](const VecField& r) { return project_gradient(helmholtz_inverse(a, r)); };
    VecField v = prec(m);
    richardson(apply, prec, m, v, [](const VecField& f) { return l2_norm(f); }, opt.unpack_tol, opt.unpack_max,
               "fixed point for 2D GN velocity");
    return v;
}

State gn2d_rhs(const State& s, const Params& p, const Field* bottom, const SolverOptions& opt) {
    VecField v = gn2d_unpack(s.zeta, s.vel, p, bottom, opt);
    auto im = images(s.zeta, v, p, bottom, opt);
    double gd = p.gamma + p.delta;
    Field zeta_t = -1.0 * divergence(im.transport);
    VecField m_t = gradient(s.zeta) * (-gd) - gradient(kinetic(im, p.gamma)) * (0.5 * p.epsilon) +
                   gradient(n0_nonlinear(im.d, im.u1, im.u2, p.gamma)) * (p.mu * p.epsilon) +
                   curvature_term_vec(s.zeta, p);
    return make_state(dealias(zeta_t), dealias(std::move(m_t)), s.role);
}

Gn2dResidual gn2d_residual(const Field& zeta, const VecField& v, const Field& zeta_t, const VecField& v_t,
                           const Params& p, const Field* bottom, double dt_fd, const SolverOptions& opt) {
    if (!(dt_fd > 0.0)) throw std::invalid_argument("dt_fd must be positive");
    auto im = images(zeta, v, p, bottom, opt);
    double gd = p.gamma + p.delta;
    Field mass = zeta_t + divergence(im.transport);
    VecField m_now = im.a2 - p.gamma * im.a1;
    VecField m_next = gn2d_pack(zeta + dt_fd * zeta_t, v + dt_fd * v_t, p, bottom, opt);
    VecField momentum = (m_next - m_now) * (1.0 / dt_fd) + gradient(zeta) * gd +
                        gradient(kinetic(im, p.gamma)) * (0.5 * p.epsilon) -
                        gradient(n0_nonlinear(im.d, im.u1, im.u2, p.gamma)) * (p.mu * p.epsilon) -
                        curvature_term_vec(zeta, p);
    return {std::move(mass), std::move(momentum)};
}

}  // namespace twolayer
