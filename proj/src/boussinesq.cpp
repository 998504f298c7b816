#include "twolayer/errors.hpp"
#include "twolayer/models.hpp"

namespace twolayer {

namespace {

// (c0 − μ c2 ∂x²)⁻¹ applied per Fourier mode.
Field mass_inverse(double c0, double c2, double mu, const Field& f) {
    const auto& g = f.grid();
    return fourier_multiplier(f, [&](Index ix, Index) {
        double k = g.wavenumber(0, ix);
        return 1.0 / (c0 + mu * c2 * k * k);
    });
}

}  // namespace

State boussinesq_rhs(const State& s, const Params& p, const BoussinesqOps& ops) {
    const Field& zeta = s.zeta;
    const Field& v = s.v();
    Field U[2] = {deriv(zeta, 0), deriv(v, 0)};
    Field U3[2] = {deriv(zeta, 0, 3), deriv(v, 0, 3)};
    // A[U]∂xU in conservative form
    Field nl[2] = {ops.a_nl * deriv(zeta * v, 0), ops.a_nl * deriv(0.5 * square(v), 0)};

    Field out[2] = {Field(zeta.grid()), Field(zeta.grid())};
    for (int i = 0; i < 2; ++i) {
        Field r = -p.epsilon * nl[i];
        for (int j = 0; j < 2; ++j) {
            if (ops.A0(i, j) != 0.0) r -= ops.A0(i, j) * U[j];
            if (ops.A2(i, j) != 0.0) r -= p.mu * ops.A2(i, j) * U3[j];
        }
        out[i] = dealias(mass_inverse(1.0, ops.A1(i, i), p.mu, r));
    }
    return make_state(std::move(out[0]), std::move(out[1]), s.role);
}

State sym_boussinesq_rhs(const State& s, const Params& p, const SymBoussinesqOps& ops, const SolverOptions& opt) {
    const Field& zeta = s.zeta;
    const Field& v = s.v();
    const auto& g = zeta.grid();
    double gd = ops.gamma_plus_delta;
    Field U[2] = {deriv(zeta, 0), deriv(v, 0)};
    Field U3[2] = {deriv(zeta, 0, 3), deriv(v, 0, 3)};
    Field nl[2] = {ops.sigma_coef * deriv(zeta * v, 0),
                   ops.sigma_coef * deriv(0.5 * square(zeta) + 0.5 * square(v) / (gd * gd), 0)};

    Field b[2] = {-p.epsilon * nl[0], -p.epsilon * nl[1]};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (ops.Sigma0(i, j) != 0.0) b[i] -= ops.Sigma0(i, j) * U[j];
            if (ops.Sigma1(i, j) != 0.0) b[i] += p.mu * ops.Sigma1(i, j) * U3[j];
        }

    Field zeta_t = mass_inverse(ops.S0(0, 0), ops.S1(0, 0), p.mu, b[0]);

    Field m11 = ops.S0(1, 1) + p.epsilon * ops.s_coef * zeta;
    if (!(m11.min() > 0.0))
        throw AdmissibilityError("S₀+εS[U] positive definite", m11.min(), node_location(g, m11.argmin()));
    double c2 = ops.S1(1, 1);
    auto apply = [&](const Field& x) { return m11 * x - p.mu * c2 * deriv(x, 0, 2); };
    auto prec = [&](const Field& r) { return mass_inverse(ops.S0(1, 1), c2, p.mu, r); };
    auto dotf = [](const Field& x, const Field& y) { return inner(x, y); };
    Field v_t = prec(b[1]);
    pcg(apply, prec, b[1], v_t, dotf, opt.cg_tol, opt.cg_max, "CG for the symmetric Boussinesq mass operator");
    return make_state(dealias(zeta_t), dealias(v_t), s.role);
}

double sym_boussinesq_energy(const State& s, const Params& p, const SymBoussinesqOps& ops) {
    const Field* U[2] = {&s.zeta, &s.v()};
    Field Ux[2] = {deriv(s.zeta, 0), deriv(s.v(), 0)};
    double e = p.epsilon * ops.s_coef * inner(s.zeta, square(s.v()));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) e += ops.S0(i, j) * inner(*U[i], *U[j]) + p.mu * ops.S1(i, j) * inner(Ux[i], Ux[j]);
    return e;
}

}  // namespace twolayer
