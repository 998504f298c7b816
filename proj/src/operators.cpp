#include "twolayer/operators.hpp"

#include <cmath>

#include "twolayer/errors.hpp"

namespace twolayer {

namespace {

Field dx(const Field& f) { return deriv(f, 0, 1); }

VecField as_vec(const Field& f) { return VecField(std::vector<Field>{f}); }

}  // namespace

double node_location(const Grid& g, Index i) { return g.coordinate(0, i % g.n(0)); }

DepthFields depth_fields(const Field& zeta, const Params& p, const Field* bottom) {
    const auto& g = zeta.grid();
    Field bb = bottom ? p.beta * *bottom : Field(g);
    Field h1 = 1.0 - p.epsilon * zeta;
    Field h2 = (1.0 / p.delta) + p.epsilon * zeta - bb;
    Field xi = (p.gamma + p.delta) * h1 * h2 / (h1 + p.gamma * h2) - 1.0;
    return {std::move(h1), std::move(h2), std::move(xi), std::move(bb)};
}

void check_depth(const DepthFields& d, double h_min) {
    double m1 = d.h1.min(), m2 = d.h2.min();
    if (!(m1 > h_min))
        throw AdmissibilityError("h₁ = 1−εζ > 0 (H1)", m1 - h_min, node_location(d.h1.grid(), d.h1.argmin()));
    if (!(m2 > h_min))
        throw AdmissibilityError("h₂ = 1/δ+εζ−βb > 0 (H1)", m2 - h_min, node_location(d.h2.grid(), d.h2.argmin()));
}

VecField t_operator(const Field& h, const Field& b, const VecField& v) {
    if (!(h.min() > 0.0)) throw AdmissibilityError("depth h > 0 in 𝒯[h,b]", h.min(), node_location(h.grid(), h.argmin()));
    Field div_v = divergence(v);
    Field h2 = square(h);
    VecField out = gradient(h2 * h * div_v) * (-1.0 / 3.0) / h;
    VecField gb = gradient(b);
    Field gbv = dot(gb, v);
    out += (gradient(h2 * gbv) - h2 * div_v * gb) * 0.5 / h;
    out += gbv * gb;
    return out;
}

Field t_operator(const Field& h, const Field& b, const Field& v) { return t_operator(h, b, as_vec(v))[0]; }

NeumannResult q_operator_series(const Field& xi, const VecField& w, const SolverOptions& opt) {
    double amp = xi.max_abs();
    if (!(amp < 1.0)) {
        Index i;
        xi.values().abs().maxCoeff(&i);
        throw AdmissibilityError("|ξ|∞ < 1", 1.0 - amp, node_location(xi.grid(), i));
    }
    NeumannResult res;
    VecField term = project_gradient(w);
    res.value = term;
    double wn = l2_norm(w);
    double tn = l2_norm(term);
    res.increment_norms.push_back(tn);
    if (wn == 0.0 || tn <= opt.neumann_tol * wn) return res;
    for (int n = 1; n <= opt.neumann_max; ++n) {
        term = project_gradient(xi * term);
        term *= -1.0;
        res.value += term;
        tn = l2_norm(term);
        res.increment_norms.push_back(tn);
        if (tn <= opt.neumann_tol * wn) return res;
    }
    throw SolverError("Neumann series for 𝔔[ξ]", opt.neumann_max, tn / wn);
}

VecField q_operator(const Field& xi, const VecField& w, const SolverOptions& opt) {
    return q_operator_series(xi, w, opt).value;
}

VecField r_operator(const Field& zeta, const Params& p, const VecField& w, const SolverOptions& opt) {
    auto d = depth_fields(zeta, p);
    check_depth(d);
    double norm = 1.0 + p.gamma / p.delta;
    Field xi_r = (d.h1 + p.gamma * d.h2) / norm - 1.0;
    return q_operator(xi_r, d.h2 * w * (1.0 / norm), opt);
}

Field qbar(const Field& h1, const Field& h2, double gamma, const Field& v) {
    Field H = h1 + gamma * h2;
    Field a = h1 * v / H;
    Field c = h2 * v / H;
    Field inner1 = dx(cube(h2) * dx(a));
    Field inner2 = dx(cube(h1) * dx(c));
    return (h1 * inner1 + gamma * h2 * inner2) * (-1.0 / 3.0) / (h1 * h2);
}

Field rbar(const Field& h1, const Field& h2, double gamma, const Field& v) {
    Field H = h1 + gamma * h2;
    Field a = h1 * v / H;
    Field c = h2 * v / H;
    Field squares = 0.5 * (square(h2 * dx(a)) - gamma * square(h1 * dx(c)));
    Field inner1 = dx(cube(h2) * dx(a));
    Field inner2 = dx(cube(h1) * dx(c));
    return squares + (1.0 / 3.0) * (v / H) * (h1 / h2 * inner1 - gamma * h2 / h1 * inner2);
}

double ellipticity_margin(const Field& zeta, const ChgnCoeffs& c, const Params& p) {
    Field q1 = 1.0 + p.epsilon * c.kappa1 * zeta;
    Field q2 = 1.0 + p.epsilon * c.kappa2 * zeta;
    return std::min(q1.min(), q2.min());
}

void check_ellipticity(const Field& zeta, const ChgnCoeffs& c, const Params& p, double h_min) {
    Field q1 = 1.0 + p.epsilon * c.kappa1 * zeta;
    Field q2 = 1.0 + p.epsilon * c.kappa2 * zeta;
    double m1 = q1.min(), m2 = q2.min();
    if (m1 <= h_min || m2 <= h_min) {
        if (m2 <= m1)
            throw AdmissibilityError("1+εκ₂ζ > 0 (H2)", m2 - h_min, node_location(q2.grid(), q2.argmin()));
        throw AdmissibilityError("1+εκ₁ζ > 0 (H2)", m1 - h_min, node_location(q1.grid(), q1.argmin()));
    }
}

Field mft_apply(const Field& zeta, const ChgnCoeffs& c, const Params& p, const Field& v) {
    Field q1 = 1.0 + p.epsilon * c.kappa1 * zeta;
    Field q2 = 1.0 + p.epsilon * c.kappa2 * zeta;
    return q1 * v - p.mu * c.nu * dx(q2 * dx(v));
}

Field mft_solve(const Field& zeta, const ChgnCoeffs& c, const Params& p, const Field& f, const SolverOptions& opt,
                IterationReport* report) {
    check_ellipticity(zeta, c, p);
    Field q1 = 1.0 + p.epsilon * c.kappa1 * zeta;
    Field q2 = 1.0 + p.epsilon * c.kappa2 * zeta;
    double a = p.mu * c.nu;
    auto apply = [&](const Field& v) { return q1 * v - a * dx(q2 * dx(v)); };
    auto prec = [&](const Field& r) { return helmholtz_inverse(a, r); };
    auto dotf = [](const Field& x, const Field& y) { return inner(x, y); };
    Field x = helmholtz_inverse(a, f);
    auto rep = pcg(apply, prec, f, x, dotf, opt.cg_tol, opt.cg_max, "CG for 𝔗[εζ]");
    if (report) *report = rep;
    return x;
}

Field curvature_term(const Field& zeta, const Params& p) {
    double coef = (p.gamma + p.delta) * p.bond_inv;
    if (coef == 0.0) return Field(zeta.grid());
    double a = p.epsilon * std::sqrt(p.mu);
    if (a < 1e-8) return coef * deriv(zeta, 0, 3);
    Field zx = dx(zeta);
    Field slope = zx / map(zx, [a](double s) { return std::sqrt(1.0 + a * a * s * s); });
    return coef * deriv(slope, 0, 2);
}

VecField curvature_term_vec(const Field& zeta, const Params& p) {
    const auto& g = zeta.grid();
    double coef = (p.gamma + p.delta) * p.bond_inv;
    if (coef == 0.0) return VecField(g);
    double a = p.epsilon * std::sqrt(p.mu);
    VecField gz = gradient(zeta);
    if (a < 1e-8) return gradient(divergence(gz)) * coef;
    Field denom = map(dot(gz, gz), [a](double s) { return std::sqrt(1.0 + a * a * s); });
    return gradient(divergence(gz / denom)) * coef;
}

Field n0_nonlinear(const DepthFields& d, const VecField& u1, const VecField& u2, double gamma) {
    Field upper = -1.0 * d.h2 * divergence(u2) + dot(gradient(d.bb), u2);
    Field lower = d.h1 * divergence(u1);
    return 0.5 * (square(upper) - gamma * square(lower));
}

Field r0_nonlinear(const DepthFields& d, const Field& v, double gamma) {
    Field H = d.h1 + gamma * d.h2;
    Field u2 = d.h1 * v / H;
    Field u1 = -1.0 * d.h2 * v / H;
    Field zero(v.grid());
    Field squares = n0_nonlinear(d, as_vec(u1), as_vec(u2), gamma);
    return squares - u2 * t_operator(d.h2, d.bb, u2) + gamma * u1 * t_operator(d.h1, zero, u1);
}

}  // namespace twolayer
