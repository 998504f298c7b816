#include "twolayer/errors.hpp"
#include "twolayer/models.hpp"

namespace twolayer {

State sw1d_rhs(const State& s, const Params& p, const Field* bottom) {
    auto d = depth_fields(s.zeta, p, bottom);
    check_depth(d);
    const Field& v = s.v();
    double gd = p.gamma + p.delta;
    Field H = d.h1 + p.gamma * d.h2;
    Field coef = (square(d.h1) - p.gamma * square(d.h2)) / square(H);

    Field zeta_t = -1.0 * deriv((1.0 + d.xi) * v / gd, 0);
    Field v_t = -gd * deriv(s.zeta, 0) - 0.5 * p.epsilon * deriv(coef * square(v), 0);
    if (p.bond_inv != 0.0) v_t += gd * p.bond_inv * deriv(s.zeta, 0, 3);
    return make_state(dealias(zeta_t), dealias(v_t), s.role);
}

double sw1d_hyperbolicity(const State& s, const Params& p, const Field* bottom) {
    auto d = depth_fields(s.zeta, p, bottom);
    Field H = d.h1 + p.gamma * d.h2;
    Field m = (p.gamma + p.delta) - p.gamma * p.epsilon * p.epsilon * square(d.h1 + d.h2) * square(s.v()) / cube(H);
    return m.min();
}

State sw2d_rhs(const State& s, const Params& p, const SolverOptions& opt) {
    auto d = depth_fields(s.zeta, p);
    check_depth(d);
    const VecField& V = s.vel;
    double gd = p.gamma + p.delta;
    VecField rV = r_operator(s.zeta, p, V, opt);

    Field zeta_t = -1.0 * divergence(d.h1 * rV);
    VecField upper = V - p.gamma * rV;
    Field energy = dot(upper, upper) - p.gamma * dot(rV, rV);
    VecField V_t = gradient(s.zeta) * (-gd) - gradient(energy) * (0.5 * p.epsilon);
    if (p.bond_inv != 0.0) V_t += gradient(laplacian(s.zeta)) * (gd * p.bond_inv);
    return make_state(dealias(zeta_t), dealias(std::move(V_t)), s.role);
}

double sw2d_hyperbolicity(const State& s, const Params& p, const SolverOptions& opt) {
    auto d = depth_fields(s.zeta, p);
    Field H = d.h1 + p.gamma * d.h2;
    VecField rV = r_operator(s.zeta, p, s.vel, opt);
    VecField w = s.vel + (1.0 - p.gamma) * rV;
    Field m = (p.gamma + p.delta) - p.gamma * p.epsilon * p.epsilon * dot(w, w) / H;
    return m.min();
}

}  // namespace twolayer
