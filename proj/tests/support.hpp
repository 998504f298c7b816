#ifndef TWOLAYER_TEST_SUPPORT_HPP
#define TWOLAYER_TEST_SUPPORT_HPP

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "twolayer/spectral.hpp"

namespace testing {

using twolayer::Field;
using twolayer::Grid;
using twolayer::Index;
using twolayer::VecField;

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

// Seeds are fixed per suite so failures replay exactly.
constexpr unsigned seed_spectral = 1101;
constexpr unsigned seed_parameters = 1202;
constexpr unsigned seed_operators = 1303;
constexpr unsigned seed_models = 1404;
constexpr unsigned seed_config = 1505;

// Random trigonometric polynomial with modes up to kmax, coefficients decaying like 1/(1+|k|²).
inline Field random_trig(const Grid& g, std::mt19937& rng, int kmax) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Field f(g);
    bool two = g.dim() == 2;
    double sx = 2.0 * pi / g.length(0), sy = two ? 2.0 * pi / g.length(1) : 0.0;
    for (int kx = 0; kx <= kmax; ++kx)
        for (int ky = two ? -kmax : 0; ky <= (two ? kmax : 0); ++ky) {
            double a = u(rng), b = u(rng);
            auto term = [&](double x, double y) {
                double ph = kx * sx * x + ky * sy * y;
                return (a * std::cos(ph) + b * std::sin(ph)) / (1.0 + kx * kx + ky * ky);
            };
            if (two)
                f += Field::sample(g, term);
            else
                f += Field::sample(g, [&](double x) { return term(x, 0.0); });
        }
    return f;
}

inline Field scaled_to(Field f, double amp) { return f *= amp / f.max_abs(); }

inline VecField vec1(const Field& f) { return VecField(std::vector<Field>{f}); }
inline VecField vec2(const Field& a, const Field& b) { return VecField(std::vector<Field>{a, b}); }

// Periodic fourth-order central difference on equally spaced samples.
inline Eigen::ArrayXd fd(const Eigen::ArrayXd& f, double h) {
    Index n = f.size();
    Eigen::ArrayXd d(n);
    for (Index i = 0; i < n; ++i) {
        auto at = [&](Index j) { return f[((j % n) + n) % n]; };
        d[i] = (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / (12.0 * h);
    }
    return d;
}

// Fine 1D periodic sampling for finite-difference oracles.
struct Fine {
    Index n;
    double h;
    Eigen::ArrayXd x;

    explicit Fine(Index n_ = 4096, double length = two_pi) : n(n_), h(length / double(n_)), x(n_) {
        for (Index i = 0; i < n; ++i) x[i] = h * double(i);
    }
    template <typename Fn>
    Eigen::ArrayXd sample(Fn&& fn) const {
        Eigen::ArrayXd out(n);
        for (Index i = 0; i < n; ++i) out[i] = fn(x[i]);
        return out;
    }
    Eigen::ArrayXd d(const Eigen::ArrayXd& f) const { return fd(f, h); }

    // Sup-norm distance between a coarse field and fine samples taken at the coarse nodes.
    double sup_diff(const Field& coarse, const Eigen::ArrayXd& fine) const {
        Index stride = n / coarse.size();
        double m = 0.0;
        for (Index i = 0; i < coarse.size(); ++i) m = std::max(m, std::abs(coarse[i] - fine[i * stride]));
        return m;
    }
};

inline double rel_l2(const Field& a, const Field& b) { return twolayer::l2_norm(a - b) / twolayer::l2_norm(b); }

}  // namespace testing

#endif
