#ifndef TWOLAYER_OPERATORS_HPP
#define TWOLAYER_OPERATORS_HPP

#include <vector>

#include "twolayer/parameters.hpp"
#include "twolayer/solvers.hpp"
#include "twolayer/spectral.hpp"

namespace twolayer {

// Layer depths and the normalized transport coefficient
// h1 h2/(h1 + γ h2) = (1 + xi)/(γ + δ). bb is the scaled bottom βb.
struct DepthFields {
    Field h1, h2, xi, bb;
};

DepthFields depth_fields(const Field& zeta, const Params& p, const Field* bottom = nullptr);

// Throws AdmissibilityError naming the layer whose depth is <= h_min.
void check_depth(const DepthFields& d, double h_min = 0.0);

// x-coordinate of node i (used in diagnostics).
double node_location(const Grid& g, Index i);

// 𝒯[h,b]V; b is the already-scaled bottom.
VecField t_operator(const Field& h, const Field& b, const VecField& v);
Field t_operator(const Field& h, const Field& b, const Field& v);

struct NeumannResult {
    VecField value;
    std::vector<double> increment_norms;  // L2 norm of each series term
};

// 𝔔[ξ]W by the truncated Neumann series Σ (−1)ⁿ (Π(ξ Π·))ⁿ ΠW.
NeumannResult q_operator_series(const Field& xi, const VecField& w, const SolverOptions& opt = {});
VecField q_operator(const Field& xi, const VecField& w, const SolverOptions& opt = {});

// 𝔯[εζ]W: gradient field V with ∇·((h1 + γh2)V) = ∇·(h2 W).
VecField r_operator(const Field& zeta, const Params& p, const VecField& w, const SolverOptions& opt = {});

// 1D flat-bottom Green-Naghdi operators.
Field qbar(const Field& h1, const Field& h2, double gamma, const Field& v);
Field rbar(const Field& h1, const Field& h2, double gamma, const Field& v);

// Ellipticity of 𝔗[εζ]: both 1 + εκᵢζ must stay positive.
void check_ellipticity(const Field& zeta, const ChgnCoeffs& c, const Params& p, double h_min = 0.0);
double ellipticity_margin(const Field& zeta, const ChgnCoeffs& c, const Params& p);

Field mft_apply(const Field& zeta, const ChgnCoeffs& c, const Params& p, const Field& v);
Field mft_solve(const Field& zeta, const ChgnCoeffs& c, const Params& p, const Field& f, const SolverOptions& opt = {},
                IterationReport* report = nullptr);

// Surface-tension forcing ((γ+δ)/Bo) ∂x²(∂xζ/√(1 + a²(∂xζ)²)), a = ε√μ, and
// its gradient form in 2D.
Field curvature_term(const Field& zeta, const Params& p);
VecField curvature_term_vec(const Field& zeta, const Params& p);

// ½[(−h2 ∇·u2 + ∇(βb)·u2)² − γ (h1 ∇·u1)²].
Field n0_nonlinear(const DepthFields& d, const VecField& u1, const VecField& u2, double gamma);

// Full 1D nonlinear term of the momentum equation with topography, built from v.
Field r0_nonlinear(const DepthFields& d, const Field& v, double gamma);

}  // namespace twolayer

#endif
