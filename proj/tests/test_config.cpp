#include <doctest.h>

#include "support.hpp"
#include "twolayer/config.hpp"
#include "twolayer/errors.hpp"

using namespace twolayer;
using namespace testing;

namespace {

std::vector<std::string> errors_of(const std::string& text, const std::vector<std::string>& ov = {}) {
    try {
        parse_config(text, ov);
    } catch (const ConfigError& e) {
        return e.messages();
    }
    return {};
}

bool any_contains(const std::vector<std::string>& msgs, const std::string& needle) {
    for (const auto& m : msgs)
        if (m.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("minimal config") {
    auto cfg = parse_config("mode = simulate\n[model]\nid = SW1D\n");
    CHECK(cfg.mode == Mode::simulate);
    CHECK(cfg.model.id == ModelId::SW1D);
    CHECK(cfg.params == Params{});
    CHECK(cfg.grid.n == 256);
    CHECK(cfg.stepper.scheme == "ERK4");
}

TEST_CASE("comments, lists and sections") {
    auto cfg = parse_config(R"(# scenario
mode = order   # trailing comment
[model]
id = GN1D
[params]
gamma = 0.25
delta = 0.5
[sweep]
mus = 1e-4, 1e-3, 1e-2
path = sqrt_mu
model_b = CHGN1D
)");
    CHECK(cfg.mode == Mode::order);
    CHECK(cfg.params.gamma == 0.25);
    CHECK(cfg.sweep.mus == std::vector<double>{1e-4, 1e-3, 1e-2});
    CHECK(cfg.sweep.path == EpsilonPath::sqrt_mu);
    CHECK(cfg.sweep.model_b == ModelId::CHGN1D);
}

TEST_CASE("gamma outside [0,1) is rejected") {
    auto msgs = errors_of("[params]\ngamma = 1.2\n");
    REQUIRE(msgs.size() == 1);
    CHECK(msgs[0] == "line 2: gamma must lie in [0,1)");
}

TEST_CASE("inconsistent tension parameters echo both values") {
    auto msgs = errors_of("[params]\nmu = 0.01\nbond_inv = 0.5\nbo_inv = 3\n");
    REQUIRE(msgs.size() == 1);
    CHECK(msgs[0].find("line 3") == 0);
    CHECK(msgs[0].find("bond_inv = 0.5") != std::string::npos);
    CHECK(msgs[0].find("bo_inv = 3") != std::string::npos);

    auto ok = parse_config("[params]\nmu = 0.01\nbond_inv = 0.03\nbo_inv = 3\n");
    CHECK(ok.params.bond_inv == 0.03);
    auto derived = parse_config("[params]\nmu = 0.01\nbo_inv = 3\n");
    CHECK(derived.params.bond_inv == doctest::Approx(0.03).epsilon(1e-15));
}

TEST_CASE("every violation is listed with its line") {
    auto msgs = errors_of("mode = simulate\n[grid]\nn = 100\nfoo = 1\n[params]\nmu = abc\n[nowhere]\nx = 1\n");
    CHECK(any_contains(msgs, "line 3: n must be a power of two"));
    CHECK(any_contains(msgs, "line 4: unknown key 'foo' in [grid]"));
    CHECK(any_contains(msgs, "line 6: mu"));
    CHECK(any_contains(msgs, "line 7: unknown section [nowhere]"));
    CHECK(msgs.size() >= 4);
}

TEST_CASE("duplicate keys and malformed lines") {
    auto msgs = errors_of("[params]\ngamma = 0.1\ngamma = 0.2\nnot a pair\n");
    CHECK(any_contains(msgs, "line 3: duplicate key 'gamma' (first at line 2)"));
    CHECK(any_contains(msgs, "line 4: expected 'key = value'"));
}

TEST_CASE("overrides") {
    auto cfg = parse_config("[params]\ngamma = 0.1\n", {"params.gamma=0.3", "mu=0.05", "mode=dispersion"});
    CHECK(cfg.params.gamma == 0.3);
    CHECK(cfg.params.mu == 0.05);
    CHECK(cfg.mode == Mode::dispersion);
    auto msgs = errors_of("", {"mus=1,2,3"});
    CHECK(any_contains(msgs, "ambiguous"));
    msgs = errors_of("", {"params.gamma=2"});
    CHECK(any_contains(msgs, "override 'params.gamma=2': gamma must lie in [0,1)"));
}

TEST_CASE("model-level constraints surface as config errors") {
    auto msgs = errors_of("[model]\nid = CHGN1D\ntension = true\n");
    CHECK(msgs.size() == 1);
    CHECK(any_contains(msgs, "line 2"));
    msgs = errors_of("mode = order\n[sweep]\nmus = 1e-3, 1e-2\n");
    CHECK(any_contains(msgs, "at least 3"));
    msgs = errors_of("[initial]\nprofile = file\nfile = /definitely/not/here.csv\n");
    CHECK(any_contains(msgs, "does not exist"));
}

TEST_CASE("round trip of the defaults") {
    ScenarioConfig cfg;
    CHECK(parse_config(serialize(cfg)) == cfg);
}

TEST_CASE("property: serialize then parse is the identity") {
    std::mt19937 rng(seed_config);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const char* ids[] = {"SW1D", "GN1D", "CHGN1D", "BOUSS1D", "SYMBOUSS1D", "CL_SCALAR", "SW2D", "GN2D"};
    const char* profiles[] = {"sine", "gaussian", "solitary-guess"};
    for (int trial = 0; trial < 50; ++trial) {
        CAPTURE(trial);
        ScenarioConfig c;
        c.mode = Mode(trial % 4);
        c.model.id = model_id_from_string(ids[trial % 8]);
        c.params.gamma = 0.99 * u(rng);
        c.params.delta = 0.1 + 9.0 * u(rng);
        c.params.epsilon = u(rng);
        c.params.mu = 1e-4 + u(rng);
        bool tension_ok = c.model.id != ModelId::CHGN1D && c.model.id != ModelId::CL_SCALAR;
        c.model.tension = tension_ok && u(rng) < 0.5;
        c.params.with_bo_inv(u(rng));
        c.model.cl_theta = u(rng);
        c.model.cl_lambda = 0.1 * u(rng);
        c.model.cl_sign = u(rng) < 0.5 ? 1 : -1;
        c.model.cl_variant = u(rng) < 0.5 ? ClVariant::unidirectional : ClVariant::decoupled;
        if (c.model.id == ModelId::BOUSS1D) c.model.family = {u(rng), u(rng), u(rng), u(rng)};
        c.grid.n = 8 << (trial % 6);
        c.grid.length = 1.0 + 30.0 * u(rng);
        c.stepper.dt = 1e-3 * u(rng);
        c.stepper.t_end = 5.0 * u(rng);
        c.stepper.stride = 1 + trial % 7;
        c.solver.cg_tol = 1e-14 + 1e-10 * u(rng);
        c.initial.profile = profiles[trial % 3];
        c.initial.amplitude = u(rng);
        c.initial.wavenumber = 1.0 + trial % 4;
        c.sweep.mus = {1e-4 * (1 + u(rng)), 1e-3, 1e-2 * (1 + u(rng))};
        c.sweep.path = EpsilonPath(trial % 3);
        c.compare.mus = {0.02, 0.01 * (1 + u(rng)), 0.005};
        c.compare.experiment = trial % 2 ? "unidirectional" : "decoupled";
        c.output.dir = "out_" + std::to_string(trial);
        c.output.snapshots = trial % 2 == 0;
        if (c.mode == Mode::order && (is_2d(c.model.id) || c.model.id == ModelId::CL_SCALAR)) c.model.id = ModelId::GN1D;
        std::string text = serialize(c);
        CAPTURE(text);
        CHECK(parse_config(text) == c);
    }
}

TEST_CASE("assembled objects") {
    auto cfg = parse_config("[model]\nid = GN2D\n[grid]\nn = 32\n");
    Grid g = make_grid(cfg);
    CHECK(g.dim() == 2);
    CHECK(g.n(1) == 32);

    cfg = parse_config("[model]\nid = GN1D\nbottom = sine\nbottom_amplitude = 0.5\n[params]\nbeta = 0.2\n[grid]\nn = 64\n");
    ModelSpec m = make_model(cfg);
    REQUIRE(m.bottom.has_value());
    CHECK(m.bottom->max_abs() == doctest::Approx(0.5).epsilon(1e-12));

    cfg = parse_config("[model]\nid = SW1D\n[grid]\nn = 64\n[initial]\nprofile = sine\namplitude = 0.2\nvelocity = right-moving\n");
    auto [z, v] = make_initial(cfg, make_model(cfg));
    CHECK(z.max_abs() == doctest::Approx(0.2).epsilon(1e-12));
    CHECK((v[0] - (cfg.params.gamma + cfg.params.delta) * z).max_abs() < 1e-15);
}
