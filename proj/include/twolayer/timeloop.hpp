#ifndef TWOLAYER_TIMELOOP_HPP
#define TWOLAYER_TIMELOOP_HPP

#include <string>
#include <vector>

#include "twolayer/models.hpp"

namespace twolayer {

struct StepperConfig {
    double dt = 0.0;  // <= 0 selects 0.5·Δx
    double t_end = 1.0;
    int stride = 1;   // output every stride steps (the final state is always kept)
    std::string scheme = "ERK4";

    friend bool operator==(const StepperConfig&, const StepperConfig&) = default;
};

struct MonitorSample {
    double t = 0.0;
    double mean_zeta = 0.0;
    double mean_vel = 0.0;   // mean of the first velocity component (v, V_x, w or unused)
    double energy = 0.0;     // E⁰ for SYMBOUSS1D, squared X⁰ norm of the prognostic pair otherwise
    double min_depth = 1.0;
    double margin = 1.0;     // smallest of the model's remaining admissibility margins
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<MonitorSample> monitors;
    double dt = 0.0;
    int steps = 0;
};

// One classical RK4 step for any f: State -> State.
template <typename Rhs>
State rk4_step(Rhs&& f, const State& s, double dt) {
    State k1 = f(s);
    State y = s;
    y.axpy(0.5 * dt, k1);
    State k2 = f(y);
    y = s;
    y.axpy(0.5 * dt, k2);
    State k3 = f(y);
    y = s;
    y.axpy(dt, k3);
    State k4 = f(y);
    State out = s;
    out.axpy(dt / 6.0, k1).axpy(dt / 3.0, k2).axpy(dt / 3.0, k3).axpy(dt / 6.0, k4);
    return out;
}

double default_dt(const Grid& g);

// Number of steps and the adjusted step landing exactly on t_end.
std::pair<int, double> step_plan(double t_end, double dt);

MonitorSample sample_monitors(const ModelSpec& m, const State& s, double t);

// Throws AdmissibilityError (with time), SolverError or BlowUpError.
Trajectory integrate(const ModelSpec& m, const State& s0, const StepperConfig& cfg);

// (|ζ|²_{Hˢ} + |v|²_{Hˢ} + μ|∂xv|²_{Hˢ})^{1/2}; scalar states use |u|_{Hˢ}.
double x_s_norm(const State& s, const Params& p, double s_index = 0.0);

}  // namespace twolayer

#endif
