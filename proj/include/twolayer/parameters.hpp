#ifndef TWOLAYER_PARAMETERS_HPP
#define TWOLAYER_PARAMETERS_HPP

#include <set>
#include <string>

#include <Eigen/Core>

namespace twolayer {

// Dimensionless parameters. Surface tension enters as bond_inv (Bo⁻¹) for the
// shallow-water and Green-Naghdi systems and as bo_inv (bo⁻¹, Bo⁻¹ = μ bo⁻¹)
// for the Boussinesq family.
struct Params {
    double gamma = 0.5;
    double epsilon = 0.1;
    double beta = 0.0;
    double mu = 0.01;
    double delta = 1.0;
    double bond_inv = 0.0;
    double bo_inv = 0.0;

    // Sets both tension parameters from bo⁻¹.
    Params& with_bo_inv(double b) { bo_inv = b; bond_inv = mu * b; return *this; }
    Params& with_bond_inv(double b) { bond_inv = b; bo_inv = b / mu; return *this; }

    friend bool operator==(const Params&, const Params&) = default;
};

struct RegimeBounds {
    double mu_max = 1.0;
    double delta_min = 0.1;
    double delta_max = 10.0;
    double M = 5.0;
    double bo_min_inv = 1.0;

    friend bool operator==(const RegimeBounds&, const RegimeBounds&) = default;
};

// Throws std::invalid_argument on out-of-range entries.
void validate(const Params& p, const RegimeBounds& b = {});

enum class Regime { SW, CH, LW };
std::set<Regime> regime_of(const Params& p, const RegimeBounds& b = {});
std::string to_string(Regime r);

// Coefficients of the Camassa-Holm-regime system. beta_c is the dispersive
// coefficient, distinct from the topography parameter Params::beta.
struct ChgnCoeffs {
    double nu, alpha, beta_c, kappa1, kappa2, varsigma;
};
ChgnCoeffs chgn_coeffs(double gamma, double delta);

using Mat2 = Eigen::Matrix2d;

struct BoussinesqOps {
    Mat2 A0, A1, A2;   // A1, A2 hold the family member (breve) matrices
    double a_nl;       // A[U] = a_nl [[v, ζ], [0, v]]
    double theta1, theta2, lambda1, lambda2;

    Mat2 nonlinear(double zeta, double v) const {
        Mat2 m;
        m << v, zeta, 0.0, v;
        return a_nl * m;
    }
};
BoussinesqOps boussinesq_ops(double gamma, double delta, double bo_inv, double theta1 = 0.0, double theta2 = 0.0,
                             double lambda1 = 0.0, double lambda2 = 0.0);

struct SymBoussinesqOps {
    Mat2 S0, T, S1, Sigma0, Sigma1;
    double s_coef;      // S[U] = s_coef [[0, 0], [0, ζ]]
    double sigma_coef;  // Σ[U] = sigma_coef [[v, ζ], [ζ, v/(γ+δ)²]]
    double gamma_plus_delta;

    Mat2 S(double zeta) const {
        Mat2 m;
        m << 0.0, 0.0, 0.0, s_coef * zeta;
        return m;
    }
    Mat2 Sigma(double zeta, double v) const {
        Mat2 m;
        double gd2 = gamma_plus_delta * gamma_plus_delta;
        m << v, zeta, zeta, v / gd2;
        return sigma_coef * m;
    }
};
SymBoussinesqOps sym_boussinesq_ops(double gamma, double delta, double bo_inv);

enum class ClVariant { unidirectional, decoupled };
std::string to_string(ClVariant v);
ClVariant cl_variant_from_string(const std::string& s);

struct ClCoeffs {
    ClVariant variant;
    double alpha1, alpha2, alpha3, nu_x, nu_t, kappa1, kappa2;
    double theta, lambda;
    bool admissible;  // false when nu_t <= 0 (not suitable for time stepping)
};
ClCoeffs cl_coeffs(ClVariant variant, double gamma, double delta, double theta, double lambda);

}  // namespace twolayer

#endif
