#include "twolayer/errors.hpp"
#include "twolayer/models.hpp"
#include "twolayer/timeloop.hpp"

namespace twolayer {

namespace {

Field dx(const Field& f, int order = 1) { return deriv(f, 0, order); }

// (1 + a∂x²) per mode; inverse when requested.
Field second_order_factor(const Field& f, double a, bool inverse) {
    if (a == 0.0) return f;
    const auto& g = f.grid();
    return fourier_multiplier(f, [&](Index ix, Index) {
        double k = g.wavenumber(0, ix);
        double s = 1.0 - a * k * k;
        if (inverse && s == 0.0) throw std::domain_error("(1 + μλ∂x²) is singular on a resolved mode");
        return inverse ? 1.0 / s : s;
    });
}

}  // namespace

Field cl_rhs(const Field& u, const Params& p, const ClCoeffs& c, int sign) {
    if (!c.admissible) throw AdmissibilityError("ν_t > 0 (scalar equation well-posed)", c.nu_t, 0.0);
    if (sign != 1 && sign != -1) throw std::invalid_argument("cl_rhs: sign must be +1 or -1");
    double e = p.epsilon, mu = p.mu;
    Field ux = dx(u);
    Field u2 = square(u);
    Field flux = e * c.alpha1 * 0.5 * u2 + e * e * c.alpha2 / 3.0 * u2 * u + e * e * e * c.alpha3 * 0.25 * u2 * u2 +
                 mu * c.nu_x * dx(u, 2) + mu * e * (c.kappa1 * u * dx(u, 2) + c.kappa2 * square(ux));
    Field r = -double(sign) * dx(flux);
    if (c.variant == ClVariant::unidirectional) r -= double(sign) * ux;
    return dealias(helmholtz_inverse(mu * c.nu_t, r));
}

Field unidirectional_velocity(const Field& zeta, const Params& p) {
    auto d = depth_fields(zeta, p);
    check_depth(d);
    auto c = cl_coeffs(ClVariant::unidirectional, p.gamma, p.delta, 0.0, 0.0);
    double e = p.epsilon;
    Field z2 = square(zeta);
    Field zxx = dx(zeta, 2);
    Field vl = zeta + e * c.alpha1 * 0.5 * z2 + e * e * c.alpha2 / 3.0 * z2 * zeta + e * e * e * c.alpha3 * 0.25 * z2 * z2 +
               p.mu * c.nu_x * zxx + p.mu * e * (c.kappa1 * zeta * zxx + c.kappa2 * square(dx(zeta)));
    return (d.h1 + p.gamma * d.h2) / (d.h1 * d.h2) * vl;
}

State build_unidirectional_ic(const Field& zeta0, const Params& p) {
    return make_state(zeta0, unidirectional_velocity(zeta0, p));
}

State decoupled_evolve(const Field& zeta0, const Field& v0, const Params& p, const ClCoeffs& c, double T, double dt) {
    if (c.variant != ClVariant::decoupled) throw std::invalid_argument("decoupled_evolve needs the decoupled coefficients");
    if (!c.admissible) throw AdmissibilityError("ν_t > 0 (scalar equation well-posed)", c.nu_t, 0.0);
    double gd = p.gamma + p.delta;
    double a = p.mu * c.lambda;
    auto [n, h] = step_plan(T, dt);

    Field parts[2] = {0.5 * (zeta0 + v0 / gd), 0.5 * (zeta0 - v0 / gd)};
    for (int k = 0; k < 2; ++k) {
        int sign = k == 0 ? 1 : -1;
        State s = scalar_state(second_order_factor(parts[k], sign * a, false));
        auto f = [&](const State& x) { return scalar_state(cl_rhs(x.zeta, p, c, sign)); };
        for (int i = 0; i < n; ++i) {
            s = rk4_step(f, s, h);
            if (!s.all_finite()) throw BlowUpError((i + 1) * h, "decoupled scalar field");
        }
        parts[k] = second_order_factor(s.zeta, sign * a, true);
    }
    Field right = translate(parts[0], T);
    Field left = translate(parts[1], -T);
    return make_state(right + left, gd * (right - left));
}

}  // namespace twolayer
