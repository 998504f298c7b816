#ifndef TWOLAYER_ANALYSIS_HPP
#define TWOLAYER_ANALYSIS_HPP

#include <functional>
#include <string>
#include <vector>

#include "twolayer/models.hpp"
#include "twolayer/timeloop.hpp"

namespace twolayer {

// Least-squares fit of log10(y) against log10(x).
struct OrderFit {
    std::vector<double> x, y;
    double slope = 0.0;
    double intercept = 0.0;
    double fit_residual = 0.0;  // max deviation from the fitted line, log10 units
    std::string status = "ok";  // ok | inconclusive | degenerate

    bool within(double target, double tol) const { return status == "ok" && std::abs(slope - target) <= tol; }
};

// degenerate_floor: every y at or below it is treated as rounding noise.
OrderFit fit_order(std::vector<double> x, std::vector<double> y, double degenerate_floor = 0.0,
                   double inconclusive_above = 0.2);

// ---- dispersion

// Phase speed of the linearization about rest. Two-field models return the
// positive root of c²; CL_SCALAR returns the signed lab-frame speed.
double model_dispersion(const ModelSpec& m, double k);
double model_dispersion_sq(const ModelSpec& m, double k);

// Same quantity read off the eigenvalues of the RHS linearized at rest
// (ε = 0) on the cos/sin basis of integer mode k of a 2π-periodic grid.
double assembled_dispersion(const ModelSpec& m, int k, Index n = 256);

// Linearized two-layer rigid-lid phase speed from the flat-state Laplace problems.
double full_euler_dispersion_sq(double k, const Params& p);
double full_euler_dispersion(double k, const Params& p);

// ---- consistency residuals

enum class EpsilonPath { fixed, sqrt_mu, mu };
double path_epsilon(EpsilonPath path, double mu, double eps_fixed);

struct ResidualOrder {
    OrderFit fit;
    std::vector<double> norm_a;  // |∂t(ζ, v)| of model A, for scale
};

// For each μ evaluates both models' (∂tζ, ∂tv) on (ζ*, v*) = (0.5 sin x, 0.3 cos x)
// and fits the Hˢ norm of the difference against μ.
ResidualOrder residual_order(const ModelSpec& a, const ModelSpec& b, EpsilonPath path, double eps_fixed,
                             const std::vector<double>& mus, Index n = 256, double s_index = 0.0);

// ---- trajectories

struct ErrorSample {
    double t;
    double error;
};

// X^s distance of matching states; states must share grid, role and timestamps.
std::vector<ErrorSample> compare_trajectories(const Trajectory& a, const Trajectory& b, const Params& p,
                                              double s_index = 0.0);
double state_distance(const State& a, const State& b, const Params& p, double s_index = 0.0);

struct ExperimentRow {
    double mu, epsilon, eps0, error;
};
struct Experiment {
    std::vector<ExperimentRow> rows;
    OrderFit fit;
};

struct ExperimentSetup {
    double gamma = 0.5, delta = 1.0;
    Index n = 512;
    double length = 8.0 * 3.141592653589793;
    double t_end = 1.0, dt = 1e-3;
    double amplitude = 0.5;
    double theta = 0.5;  // BBM-type parameter of the scalar equation
    SolverOptions solver;
};

// Unidirectional scalar equation against CHGN1D from (ztov)-prepared data, ε = √μ.
Experiment unidirectional_experiment(const std::vector<double>& mus, const ExperimentSetup& setup = {});
// Decoupled scalar pair against SYMBOUSS1D from generic data, ε = μ; fitted against ε₀.
Experiment decoupled_experiment(const std::vector<double>& mus, const ExperimentSetup& setup = {});

// Observed temporal order from three runs at dt, dt/2, dt/4 (terminal X⁰ state).
struct RichardsonResult {
    double e_coarse, e_fine, ratio, order;
};
RichardsonResult richardson_order(const ModelSpec& m, const State& s0, double t_end, double dt);

}  // namespace twolayer

#endif
