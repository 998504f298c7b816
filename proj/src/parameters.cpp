#include "twolayer/parameters.hpp"

#include <cmath>
#include <stdexcept>

namespace twolayer {

namespace {

void check_gamma_delta(double gamma, double delta) {
    if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0,1)");
    if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be positive");
}

}  // namespace

void validate(const Params& p, const RegimeBounds& b) {
    check_gamma_delta(p.gamma, p.delta);
    if (!(p.mu > 0.0) || !std::isfinite(p.mu)) throw std::invalid_argument("mu must be positive");
    if (!(p.epsilon >= 0.0 && p.epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in [0,1]");
    if (!(p.beta >= 0.0 && p.beta <= 1.0)) throw std::invalid_argument("beta must lie in [0,1]");
    if (!(p.bond_inv >= 0.0)) throw std::invalid_argument("bond_inv must be >= 0");
    if (!(p.bo_inv >= 0.0)) throw std::invalid_argument("bo_inv must be >= 0");
    if (p.delta < b.delta_min || p.delta > b.delta_max)
        throw std::invalid_argument("delta must lie in [delta_min, delta_max]");
}

std::set<Regime> regime_of(const Params& p, const RegimeBounds& b) {
    std::set<Regime> out;
    bool sw = p.mu > 0.0 && p.mu <= b.mu_max && p.epsilon >= 0.0 && p.epsilon <= 1.0 && p.delta >= b.delta_min &&
              p.delta <= b.delta_max && p.gamma >= 0.0 && p.gamma < 1.0;
    if (!sw) return out;
    out.insert(Regime::SW);
    if (p.epsilon <= b.M * std::sqrt(p.mu)) out.insert(Regime::CH);
    if (p.epsilon <= b.M * p.mu) out.insert(Regime::LW);
    return out;
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::SW: return "SW";
        case Regime::CH: return "CH";
        case Regime::LW: return "LW";
    }
    return "?";
}

ChgnCoeffs chgn_coeffs(double gamma, double delta) {
    check_gamma_delta(gamma, delta);
    double gd = gamma + delta;
    double crit = delta * delta - gamma;
    double one_gd = 1.0 + gamma * delta;
    ChgnCoeffs c;
    c.nu = one_gd / (3.0 * delta * gd);
    c.alpha = (1.0 - gamma) / (gd * gd);
    c.beta_c = one_gd * crit / (delta * gd * gd * gd);
    c.kappa1 = 2.0 * crit / gd - delta * (1.0 - gamma) / one_gd;
    c.kappa2 = 3.0 * crit / gd;
    c.varsigma = 2.0 * delta * (1.0 - gamma) / (gd * one_gd) - crit / (gd * gd);
    return c;
}

BoussinesqOps boussinesq_ops(double gamma, double delta, double bo_inv, double theta1, double theta2, double lambda1,
                             double lambda2) {
    check_gamma_delta(gamma, delta);
    if (theta1 < 0.0 || theta2 < 0.0) throw std::invalid_argument("theta1, theta2 must be >= 0");
    if (bo_inv < 0.0) throw std::invalid_argument("bo_inv must be >= 0");
    double gd = gamma + delta;
    double nu = (1.0 + gamma * delta) / (3.0 * delta * gd);
    BoussinesqOps ops;
    ops.A0 << 0.0, 1.0 / gd, gd, 0.0;
    ops.A1 << (1.0 - lambda1) * theta2, 0.0, 0.0, (1.0 - lambda2) * (nu + theta1);
    ops.A2 << 0.0, (lambda1 * theta2 - theta1) / gd, -gd * bo_inv + gd * (lambda2 * (nu + theta1) - theta2), 0.0;
    ops.a_nl = (delta * delta - gamma) / (gd * gd);
    ops.theta1 = theta1;
    ops.theta2 = theta2;
    ops.lambda1 = lambda1;
    ops.lambda2 = lambda2;
    return ops;
}

SymBoussinesqOps sym_boussinesq_ops(double gamma, double delta, double bo_inv) {
    check_gamma_delta(gamma, delta);
    if (bo_inv < 0.0) throw std::invalid_argument("bo_inv must be >= 0");
    double gd = gamma + delta;
    auto base = boussinesq_ops(gamma, delta, bo_inv);
    SymBoussinesqOps s;
    s.gamma_plus_delta = gd;
    s.S0 << gd, 0.0, 0.0, 1.0 / gd;
    s.T << gd * (1.0 + bo_inv), 0.0, 0.0, 1.0 / gd;
    s.S1 = s.S0 * base.A1 + s.T;
    s.Sigma0 << 0.0, 1.0, 1.0, 0.0;
    s.Sigma1 << 0.0, 1.0 + bo_inv, 1.0 + bo_inv, 0.0;
    s.s_coef = (delta * delta - gamma) / (gd * gd);
    s.sigma_coef = (delta * delta - gamma) / gd;
    return s;
}

std::string to_string(ClVariant v) { return v == ClVariant::unidirectional ? "unidirectional" : "decoupled"; }

ClVariant cl_variant_from_string(const std::string& s) {
    if (s == "unidirectional") return ClVariant::unidirectional;
    if (s == "decoupled") return ClVariant::decoupled;
    throw std::invalid_argument("unknown CL variant '" + s + "'");
}

ClCoeffs cl_coeffs(ClVariant variant, double gamma, double delta, double theta, double lambda) {
    check_gamma_delta(gamma, delta);
    double gd = gamma + delta;
    double crit = delta * delta - gamma;
    double one_gd = 1.0 + gamma * delta;
    double base = one_gd / (6.0 * delta * gd);
    ClCoeffs c;
    c.variant = variant;
    c.theta = theta;
    c.lambda = lambda;
    c.alpha1 = 1.5 * crit / gd;
    if (variant == ClVariant::unidirectional) {
        double d3 = delta * delta * delta;
        double d4 = d3 * delta;
        c.alpha2 = 21.0 * crit * crit / (8.0 * gd * gd) - 3.0 * (d3 + gamma) / gd;
        c.alpha3 = 71.0 * crit * crit * crit / (16.0 * gd * gd * gd) - 37.0 * crit * (d3 + gamma) / (4.0 * gd * gd) +
                   5.0 * (d4 - gamma) / gd;
        c.nu_x = (1.0 - theta - lambda) * base;
        c.nu_t = (theta + lambda) * base;
        c.kappa1 = (14.0 - 6.0 * (theta + lambda)) * crit * one_gd / (24.0 * delta * gd * gd) - (1.0 - gamma) / (6.0 * gd);
        c.kappa2 = (17.0 - 12.0 * theta) * crit * one_gd / (48.0 * delta * gd * gd) - (1.0 - gamma) / (12.0 * gd);
    } else {
        double dp1 = delta + 1.0;
        c.alpha2 = -3.0 * gamma * delta * dp1 * dp1 / (gd * gd);
        c.alpha3 = -5.0 * delta * delta * dp1 * dp1 * gamma * (1.0 - gamma) / (gd * gd * gd);
        c.nu_t = theta / 6.0 * one_gd / (delta * gd) + lambda;
        c.nu_x = (1.0 - theta) / 6.0 * one_gd / (delta * gd) - lambda;
        double common = one_gd * crit / (3.0 * delta * gd * gd) * (1.0 + (1.0 - theta) / 4.0);
        c.kappa1 = common - (1.0 - gamma) / (6.0 * gd) + lambda * 1.5 * crit / gd;
        c.kappa2 = common - (1.0 - gamma) / (12.0 * gd);
    }
    c.admissible = c.nu_t > 0.0;
    return c;
}

}  // namespace twolayer
