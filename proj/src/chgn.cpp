#include "twolayer/errors.hpp"
#include "twolayer/models.hpp"

namespace twolayer {

State chgn1d_rhs(const State& s, const Params& p, const ChgnCoeffs& c, const SolverOptions& opt) {
    auto d = depth_fields(s.zeta, p);
    check_depth(d);
    check_ellipticity(s.zeta, c, p);
    const Field& v = s.v();
    double gd = p.gamma + p.delta;
    Field H = d.h1 + p.gamma * d.h2;
    Field q1 = 1.0 + p.epsilon * c.kappa1 * s.zeta;
    Field vx = deriv(v, 0);

    Field zeta_t = -1.0 * deriv((1.0 + d.xi) * v / gd, 0);
    Field coef = (square(d.h1) - p.gamma * square(d.h2)) / square(H) - c.varsigma;
    Field f = -gd * q1 * deriv(s.zeta, 0) - 0.5 * p.epsilon * q1 * deriv(coef * square(v), 0) -
              p.mu * p.epsilon * (2.0 / 3.0) * c.alpha * deriv(square(vx), 0);
    Field v_t = -p.epsilon * c.varsigma * v * vx + mft_solve(s.zeta, c, p, f, opt);
    return make_state(dealias(zeta_t), dealias(v_t), s.role);
}

}  // namespace twolayer
