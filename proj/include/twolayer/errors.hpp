#ifndef TWOLAYER_ERRORS_HPP
#define TWOLAYER_ERRORS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twolayer {

// A pointwise admissibility condition (depth, ellipticity, hyperbolicity,
// contraction) failed. margin is the value of the violated quantity.
class AdmissibilityError : public std::runtime_error {
public:
    AdmissibilityError(std::string condition, double margin, double location, std::optional<double> time = {})
        : std::runtime_error(compose(condition, margin, location, time)),
          condition_(std::move(condition)), margin_(margin), location_(location), time_(time) {}

    const std::string& condition() const { return condition_; }
    double margin() const { return margin_; }
    double location() const { return location_; }
    std::optional<double> time() const { return time_; }

    AdmissibilityError at_time(double t) const { return AdmissibilityError(condition_, margin_, location_, t); }

private:
    static std::string compose(const std::string& c, double m, double x, std::optional<double> t) {
        std::string s = "admissibility lost: " + c + " (margin " + std::to_string(m) + " at x = " + std::to_string(x);
        if (t) s += ", t = " + std::to_string(*t);
        return s + ")";
    }

    std::string condition_;
    double margin_;
    double location_;
    std::optional<double> time_;
};

// An iterative sub-solver (Neumann series, CG, fixed point) did not reach its tolerance.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& solver, int iterations, double residual)
        : std::runtime_error(solver + " did not converge after " + std::to_string(iterations) +
                             " iterations (residual " + std::to_string(residual) + ")"),
          iterations_(iterations), residual_(residual) {}

    int iterations() const { return iterations_; }
    double residual() const { return residual_; }

private:
    int iterations_;
    double residual_;
};

// Non-finite values appeared during time integration.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(double time, const std::string& what)
        : std::runtime_error("non-finite " + what + " at t = " + std::to_string(time)), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> messages)
        : std::runtime_error(join(messages)), messages_(std::move(messages)) {}
    const std::vector<std::string>& messages() const { return messages_; }

private:
    static std::string join(const std::vector<std::string>& m) {
        std::string s;
        for (const auto& line : m) s += (s.empty() ? "" : "\n") + line;
        return s;
    }
    std::vector<std::string> messages_;
};

}  // namespace twolayer

#endif
