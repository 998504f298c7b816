#include <doctest.h>

#include "support.hpp"
#include "twolayer/errors.hpp"
#include "twolayer/operators.hpp"

using namespace twolayer;
using namespace testing;

namespace {

Params params(double gamma, double delta, double eps, double mu = 0.01) {
    Params p;
    p.gamma = gamma;
    p.delta = delta;
    p.epsilon = eps;
    p.mu = mu;
    return p;
}

}  // namespace

TEST_CASE("depth fields and the depth guard") {
    Grid g(64, two_pi);
    Field z = Field::sample(g, [](double x) { return 0.5 * std::sin(x); });
    Params p = params(0.5, 2.0, 0.2);
    auto d = depth_fields(z, p);
    CHECK((d.h1 - (1.0 - 0.2 * z)).max_abs() < 1e-15);
    CHECK((d.h2 - (0.5 + 0.2 * z)).max_abs() < 1e-15);
    Field xi = (p.gamma + p.delta) * d.h1 * d.h2 / (d.h1 + p.gamma * d.h2) - 1.0;
    CHECK((d.xi - xi).max_abs() < 1e-14);

    Field deep = Field::sample(g, [](double x) { return 3.0 * std::sin(x); });
    p.epsilon = 0.5;
    try {
        check_depth(depth_fields(deep, p));
        FAIL("expected a depth violation");
    } catch (const AdmissibilityError& e) {
        CHECK(e.condition().find("(H1)") != std::string::npos);
        CHECK(e.margin() < 0.0);
    }
}

TEST_CASE("T operator") {
    Grid g(64, two_pi);
    Field one = Field::constant(g, 1.0), zero(g);
    Field s = Field::sample(g, [](double x) { return std::sin(x); });
    CHECK((t_operator(one, zero, s) - s / 3.0).max_abs() < 1e-13);

    Field h = Field::sample(g, [](double x) { return 1.0 + 0.2 * std::sin(2 * x); });
    CHECK(t_operator(h, zero, Field::constant(g, 2.0)).max_abs() < 1e-13);
}

TEST_CASE("T operator with topography against finite differences at n = 4096") {
    Grid g(128, two_pi);
    Fine f;
    auto hf = [](double x) { return 1.0 + 0.1 * std::cos(x); };
    auto bf = [](double x) { return 0.2 * std::sin(x); };
    auto vf = [](double x) { return std::cos(x); };
    Field out = t_operator(Field::sample(g, hf), Field::sample(g, bf), Field::sample(g, vf));

    auto h = f.sample(hf), b = f.sample(bf), v = f.sample(vf);
    auto bx = f.d(b), vx = f.d(v);
    Eigen::ArrayXd ref = -f.d(h.cube() * vx) / (3.0 * h) + (f.d(h.square() * bx * v) - h.square() * bx * vx) / (2.0 * h) +
                         bx * bx * v;
    CHECK(f.sup_diff(out, ref) < 1e-6);
}

TEST_CASE("Q operator special cases") {
    std::mt19937 rng(seed_operators);
    Grid g1(64, two_pi);
    Field w = random_trig(g1, rng, 5);
    SUBCASE("xi = 0 gives the projection") {
        Grid g2(32, 32, two_pi, two_pi);
        VecField w2 = vec2(random_trig(g2, rng, 3), random_trig(g2, rng, 3));
        CHECK(l2_norm(q_operator(Field(g2), w2) - project_gradient(w2)) < 1e-14);
    }
    SUBCASE("constant xi in 1D") {
        CHECK((q_operator(Field::constant(g1, 0.5), vec1(w))[0] - w / 1.5).max_abs() < 1e-11);
    }
    SUBCASE("contraction failure") {
        CHECK_THROWS_AS(q_operator(Field::constant(g1, 1.0), vec1(w)), AdmissibilityError);
    }
}

TEST_CASE("Q operator divergence identity on a fixed 2D case") {
    Grid g(64, 64, two_pi, two_pi);
    Field xi = Field::sample(g, [](double x, double y) { return 0.3 * std::sin(x) * std::sin(y); });
    VecField w = gradient(Field::sample(g, [](double x, double y) { return std::cos(x) + std::cos(y); }));
    SolverOptions opt;
    VecField v = q_operator(xi, w, opt);
    Field lhs = divergence((1.0 + xi) * v);
    Field rhs = divergence(w);
    CHECK(l2_norm(lhs - rhs) <= 10.0 * opt.neumann_tol * l2_norm(rhs));
}

TEST_CASE("property: Q operator on random data") {
    std::mt19937 rng(seed_operators + 1);
    Grid g(32, 32, two_pi, two_pi);
    Grid g1(128, two_pi);
    SolverOptions opt;
    for (int trial = 0; trial < 10; ++trial) {
        CAPTURE(trial);
        Field xi = scaled_to(random_trig(g, rng, 3), 0.5);
        VecField w = vec2(random_trig(g, rng, 4), random_trig(g, rng, 4));
        auto res = q_operator_series(xi, w, opt);
        const VecField& v = res.value;
        // curl-free
        Field curl = deriv(v[1], 0, 1) - deriv(v[0], 1, 1);
        CHECK(l2_norm(curl) <= 1e-10 * l2_norm(v));
        // divergence identity
        Field rhs = divergence(w);
        CHECK(l2_norm(divergence((1.0 + xi) * v) - rhs) <= 10.0 * opt.neumann_tol * l2_norm(rhs));
        // geometric decay of the series increments
        double bound = xi.max_abs() + 0.05;
        const auto& inc = res.increment_norms;
        for (std::size_t i = 1; i + 1 < inc.size(); ++i)
            if (inc[i - 1] > 1e3 * opt.neumann_tol * l2_norm(w)) CHECK(inc[i] <= bound * inc[i - 1]);

        Field xi1 = scaled_to(random_trig(g1, rng, 4), 0.5);
        Field w1 = random_trig(g1, rng, 6);
        Field v1 = q_operator(xi1, vec1(w1), opt)[0];
        CHECK(rel_l2(v1, w1 / (1.0 + xi1)) <= 10.0 * opt.neumann_tol);
    }
}

TEST_CASE("r operator") {
    std::mt19937 rng(seed_operators + 2);
    SUBCASE("exact reduction in 1D") {
        Grid g(128, two_pi);
        Params p = params(0.5, 1.5, 0.3);
        Field z = scaled_to(random_trig(g, rng, 4), 0.8);
        Field w = random_trig(g, rng, 5);
        auto d = depth_fields(z, p);
        Field v = r_operator(z, p, vec1(w))[0];
        CHECK(rel_l2(v, d.h2 * w / (d.h1 + p.gamma * d.h2)) < 1e-10);
    }
    SUBCASE("flat state with gamma = 0 is the scaled projection") {
        Grid g(32, 32, two_pi, two_pi);
        Params p = params(0.0, 2.0, 0.1);
        VecField w = vec2(random_trig(g, rng, 3), random_trig(g, rng, 3));
        CHECK(l2_norm(r_operator(Field(g), p, w) - project_gradient(w) * (1.0 / p.delta)) < 1e-13 * l2_norm(w));
    }
    SUBCASE("divergence identity in 2D") {
        Grid g(32, 32, two_pi, two_pi);
        Params p = params(0.5, 1.0, 0.1);
        SolverOptions opt;
        for (int trial = 0; trial < 5; ++trial) {
            Field z = scaled_to(random_trig(g, rng, 3), 1.0);
            VecField w = vec2(random_trig(g, rng, 3), random_trig(g, rng, 3));
            auto d = depth_fields(z, p);
            VecField v = r_operator(z, p, w, opt);
            Field rhs = divergence(d.h2 * w);
            CHECK(l2_norm(divergence((d.h1 + p.gamma * d.h2) * v) - rhs) <= 10.0 * opt.neumann_tol * l2_norm(rhs));
        }
    }
}

TEST_CASE("Green-Naghdi flat operators by hand") {
    Grid g(64, two_pi);
    Field s = Field::sample(g, [](double x) { return std::sin(x); });
    Field c = Field::sample(g, [](double x) { return std::cos(x); });
    Field one = Field::constant(g, 1.0);
    CHECK(qbar(one, one, 0.3, Field(g)).max_abs() == 0.0);
    CHECK(rbar(one, one, 0.3, Field(g)).max_abs() == 0.0);
    CHECK((qbar(one, one, 0.0, s) - s / 3.0).max_abs() < 1e-13);
    CHECK((rbar(one, one, 0.0, s) - (0.5 * c * c - s * s / 3.0)).max_abs() < 1e-13);
}

TEST_CASE("property: flat-state Q-bar constant equals nu") {
    std::mt19937 rng(seed_operators + 3);
    std::uniform_real_distribution<double> ug(0.0, 0.99), ud(0.1, 10.0);
    Grid g(64, two_pi);
    Field s = Field::sample(g, [](double x) { return std::sin(2 * x); });
    for (int i = 0; i < 50; ++i) {
        double gm = ug(rng), d = ud(rng);
        Field h1 = Field::constant(g, 1.0), h2 = Field::constant(g, 1.0 / d);
        double nu = chgn_coeffs(gm, d).nu;
        CHECK((qbar(h1, h2, gm, s) - 4.0 * nu * s).max_abs() < 1e-12 * (1.0 + 4.0 * nu));
    }
}

TEST_CASE("Q-bar against finite differences") {
    Grid g(128, two_pi);
    Fine f;
    double gm = 0.4;
    auto h1f = [](double x) { return 1.0 - 0.2 * std::sin(x); };
    auto h2f = [](double x) { return 0.8 + 0.2 * std::sin(x); };
    auto vf = [](double x) { return std::cos(x) + 0.3 * std::sin(2 * x); };
    Field out = qbar(Field::sample(g, h1f), Field::sample(g, h2f), gm, Field::sample(g, vf));
    auto h1 = f.sample(h1f), h2 = f.sample(h2f), v = f.sample(vf);
    auto den = h1 + gm * h2;
    Eigen::ArrayXd ref =
        -(h1 * f.d(h2.cube() * f.d(h1 * v / den)) + gm * h2 * f.d(h1.cube() * f.d(h2 * v / den))) / (3.0 * h1 * h2);
    CHECK(f.sup_diff(out, ref) < 1e-6);
}

TEST_CASE("camassa-holm elliptic operator") {
    Grid g(64, two_pi);
    Field s = Field::sample(g, [](double x) { return std::sin(x); });
    SUBCASE("flat state with mu nu = 1/3") {
        Params p = params(0.0, 1.0, 0.1, 1.0);
        auto c = chgn_coeffs(0.0, 1.0);
        CHECK((mft_apply(Field(g), c, p, s) - (4.0 / 3.0) * s).max_abs() < 1e-13);
    }
    SUBCASE("solve inverts apply; the operator is symmetric") {
        std::mt19937 rng(seed_operators + 4);
        Params p = params(0.5, 1.0, 0.2, 0.05);
        auto c = chgn_coeffs(0.5, 1.0);
        SolverOptions opt;
        for (int trial = 0; trial < 10; ++trial) {
            Field z = scaled_to(random_trig(g, rng, 3), 1.0);
            Field a = random_trig(g, rng, 6), b = random_trig(g, rng, 6);
            CHECK(rel_l2(mft_solve(z, c, p, mft_apply(z, c, p, a), opt), a) <= 10.0 * opt.cg_tol);
            double ab = inner(a, mft_apply(z, c, p, b)), ba = inner(mft_apply(z, c, p, a), b);
            CHECK(std::abs(ab - ba) <= 1e-12 * (std::abs(ab) + l2_norm(a) * l2_norm(b)));
            CHECK(inner(a, mft_apply(z, c, p, a)) > 0.0);
        }
    }
    SUBCASE("ellipticity guard") {
        Params p = params(0.0, 2.0, 0.2);
        auto c = chgn_coeffs(0.0, 2.0);
        try {
            check_ellipticity(s, c, p);
            FAIL("expected an ellipticity violation");
        } catch (const AdmissibilityError& e) {
            CHECK(e.condition().find("1+εκ₂ζ") != std::string::npos);
        }
        CHECK(ellipticity_margin(s, c, p) < 0.0);
    }
}

TEST_CASE("camassa-holm operator against finite differences") {
    Grid g(128, two_pi);
    Fine f;
    Params p = params(0.5, 1.0, 0.1, 0.01);
    auto c = chgn_coeffs(0.5, 1.0);
    auto zf = [](double x) { return 0.3 * std::cos(x); };
    auto vf = [](double x) { return std::sin(x) + 0.2 * std::cos(3 * x); };
    Field out = mft_apply(Field::sample(g, zf), c, p, Field::sample(g, vf));
    auto z = f.sample(zf), v = f.sample(vf);
    Eigen::ArrayXd q1 = 1.0 + p.epsilon * c.kappa1 * z, q2 = 1.0 + p.epsilon * c.kappa2 * z;
    Eigen::ArrayXd ref = q1 * v - p.mu * c.nu * f.d(q2 * f.d(v));
    CHECK(f.sup_diff(out, ref) < 1e-6);
}

TEST_CASE("curvature forcing") {
    Grid g(128, two_pi);
    Field s = Field::sample(g, [](double x) { return std::sin(x); });
    Field c = Field::sample(g, [](double x) { return std::cos(x); });
    Params p = params(0.5, 0.5, 0.1, 0.01);
    CHECK(curvature_term(s, p).max_abs() == 0.0);

    SUBCASE("linear limit") {
        Params q = params(0.5, 0.5, 1e-9, 1e-2);
        q.bond_inv = 1.0;
        // a third derivative lifts roundoff by up to k_max^3
        double kmax = 64.0;
        CHECK((curvature_term(s, q) + c).max_abs() < 4.0 * kmax * kmax * kmax * 2.2e-16);
    }
    SUBCASE("full formula against finite differences") {
        Params q = params(0.5, 0.5, 0.1, 1.0);  // ε√μ = 0.1
        q.bond_inv = 1.0;
        Fine f;
        double a = 0.1;
        auto flux = f.sample([&](double x) { return std::cos(x) / std::sqrt(1.0 + a * a * std::cos(x) * std::cos(x)); });
        CHECK(f.sup_diff(curvature_term(s, q), f.d(f.d(flux))) < 1e-6);
    }
    SUBCASE("2D gradient form reduces to 1D on y-independent data") {
        Grid g2(128, 8, two_pi, two_pi);
        Params q = params(0.5, 0.5, 0.1, 1.0);
        q.bond_inv = 0.7;
        Field s2 = Field::sample(g2, [](double x, double) { return std::sin(x); });
        VecField v = curvature_term_vec(s2, q);
        Field one = curvature_term(s, q);
        for (Index i = 0; i < 128; ++i) CHECK(std::abs(v[0][i + 3 * 128] - one[i]) < 1e-10);
        CHECK(v[1].max_abs() < 1e-12);
    }
}

TEST_CASE("quadratic nonlinear term") {
    Grid g(64, two_pi);
    Field zero(g);
    Field s = Field::sample(g, [](double x) { return std::sin(x); });
    Field c = Field::sample(g, [](double x) { return std::cos(x); });
    Params p = params(0.0, 1.0, 0.1);
    auto d = depth_fields(zero, p);
    CHECK(n0_nonlinear(d, vec1(zero), vec1(zero), 0.0).max_abs() == 0.0);
    CHECK((n0_nonlinear(d, vec1(zero), vec1(s), 0.0) - 0.5 * c * c).max_abs() < 1e-13);
    // γ = 1 with equal depths and equal velocities cancels exactly
    DepthFields eq{Field::constant(g, 1.0), Field::constant(g, 1.0), zero, zero};
    CHECK(n0_nonlinear(eq, vec1(s), vec1(s), 1.0).max_abs() < 1e-15);
}
