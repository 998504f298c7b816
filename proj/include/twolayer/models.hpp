#ifndef TWOLAYER_MODELS_HPP
#define TWOLAYER_MODELS_HPP

#include <optional>
#include <string>

#include "twolayer/operators.hpp"
#include "twolayer/parameters.hpp"
#include "twolayer/solvers.hpp"
#include "twolayer/spectral.hpp"

namespace twolayer {

enum class ModelId { SW1D, SW2D, GN1D, CHGN1D, BOUSS1D, SYMBOUSS1D, CL_SCALAR, GN2D };
std::string to_string(ModelId id);
ModelId model_id_from_string(const std::string& s);
bool is_2d(ModelId id);

enum class VelocityRole { shear_mean_v, shear_V, gn_momentum_w, scalar_u };
std::string to_string(VelocityRole r);

// Prognostic pair. For scalar models zeta holds u and vel is empty.
struct State {
    Field zeta;
    VecField vel;
    VelocityRole role = VelocityRole::shear_mean_v;

    const Field& v() const { return vel[0]; }
    Field& v() { return vel[0]; }
    const Grid& grid() const { return zeta.grid(); }
    bool all_finite() const { return zeta.all_finite() && vel.all_finite(); }

    State& axpy(double a, const State& o);  // this += a·o
};

State make_state(Field zeta, Field v, VelocityRole role = VelocityRole::shear_mean_v);
State make_state(Field zeta, VecField v, VelocityRole role);
State scalar_state(Field u);

struct FamilyParams {
    double theta1 = 0.0, theta2 = 0.0, lambda1 = 0.0, lambda2 = 0.0;
    friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

struct ModelSpec {
    ModelId id = ModelId::SW1D;
    Params params;
    std::optional<Field> bottom;  // unscaled b; multiplied by params.beta
    FamilyParams family;
    ClVariant cl_variant = ClVariant::unidirectional;
    double cl_theta = 0.0, cl_lambda = 0.0;
    int cl_sign = 1;       // direction of the decoupled scalar equation
    bool tension = false;  // off: Bo⁻¹ and bo⁻¹ are treated as zero
    SolverOptions solver;

    const Field* bottom_ptr() const { return bottom ? &*bottom : nullptr; }
};

// Parameters as seen by the equations (tension switched off when requested).
Params effective_params(const ModelSpec& m);

// Throws std::invalid_argument when the option set is inconsistent.
void validate(const ModelSpec& m);

VelocityRole velocity_role(ModelId id);

// Time derivative of the state, same role as the input.
State rhs(const ModelSpec& m, const State& s);

// Builds the prognostic state from (ζ, v) and recovers v from it.
State initial_state(const ModelSpec& m, const Field& zeta, const VecField& v);
VecField shear_velocity(const ModelSpec& m, const State& s);

// Admissibility margins; a non-positive entry means the condition failed.
struct Margins {
    double min_depth = 1.0;
    double hyperbolicity = 1.0;
    double ellipticity = 1.0;
    double contraction = 1.0;  // 1 − |ξ|∞ where Neumann series are used
    double mass = 1.0;         // symmetric Boussinesq mass operator
};
Margins margins(const ModelSpec& m, const State& s);
void check_admissible(const ModelSpec& m, const State& s);

// ---- shallow water
State sw1d_rhs(const State& s, const Params& p, const Field* bottom = nullptr);
double sw1d_hyperbolicity(const State& s, const Params& p, const Field* bottom = nullptr);
State sw2d_rhs(const State& s, const Params& p, const SolverOptions& opt = {});
double sw2d_hyperbolicity(const State& s, const Params& p, const SolverOptions& opt = {});

// ---- Green-Naghdi, 1D
Field gn1d_pack(const Field& zeta, const Field& v, const Params& p, const Field* bottom = nullptr);
Field gn1d_unpack(const Field& zeta, const Field& w, const Params& p, const Field* bottom = nullptr,
                  const SolverOptions& opt = {}, IterationReport* report = nullptr);
// General path with 𝒯 and ℛ₀ (any bottom).
State gn1d_rhs(const State& s, const Params& p, const Field* bottom = nullptr, const SolverOptions& opt = {});
// Flat-bottom path with 𝒬̄ and ℛ̄.
Field gn1d_flat_pack(const Field& zeta, const Field& v, const Params& p);
Field gn1d_flat_unpack(const Field& zeta, const Field& w, const Params& p, const SolverOptions& opt = {},
                       IterationReport* report = nullptr);
State gn1d_flat_rhs(const State& s, const Params& p, const SolverOptions& opt = {});

// Time derivatives of (ζ, v) for the 1D models, used by residual comparisons.
struct Tendency {
    Field zeta_t;
    Field v_t;
};
Tendency gn1d_tendency(const Field& zeta, const Field& v, const Params& p, const Field* bottom = nullptr,
                       const SolverOptions& opt = {});
Tendency model_tendency(const ModelSpec& m, const Field& zeta, const Field& v);

// Residuals of the 1D mass and momentum equations with ∂t of the momentum
// combination taken by forward differencing at spacing dt_fd.
struct Gn1dResidual {
    Field mass;
    Field momentum;
};
Gn1dResidual gn1d_residual(const Field& zeta, const Field& v, const Field& zeta_t, const Field& v_t, const Params& p,
                           const Field* bottom, double dt_fd);

// ---- Camassa-Holm regime
State chgn1d_rhs(const State& s, const Params& p, const ChgnCoeffs& c, const SolverOptions& opt = {});

// ---- Boussinesq family
State boussinesq_rhs(const State& s, const Params& p, const BoussinesqOps& ops);
State sym_boussinesq_rhs(const State& s, const Params& p, const SymBoussinesqOps& ops, const SolverOptions& opt = {});
double sym_boussinesq_energy(const State& s, const Params& p, const SymBoussinesqOps& ops);

// ---- scalar models
Field cl_rhs(const Field& u, const Params& p, const ClCoeffs& c, int sign = 1);
// v_u = ((h1 + γh2)/(h1 h2)) v̲[ζ] with the θ = λ = 0 coefficients.
Field unidirectional_velocity(const Field& zeta, const Params& p);
State build_unidirectional_ic(const Field& zeta0, const Params& p);
State decoupled_evolve(const Field& zeta0, const Field& v0, const Params& p, const ClCoeffs& c, double T, double dt);

// ---- Green-Naghdi, 2D
struct Gn2dVelocities {
    VecField u1, u2;
};
Gn2dVelocities gn2d_velocities(const Field& zeta, const VecField& v, const Params& p, const Field* bottom = nullptr,
                               const SolverOptions& opt = {});
VecField gn2d_pack(const Field& zeta, const VecField& v, const Params& p, const Field* bottom = nullptr,
                   const SolverOptions& opt = {});
VecField gn2d_unpack(const Field& zeta, const VecField& m, const Params& p, const Field* bottom = nullptr,
                     const SolverOptions& opt = {});
State gn2d_rhs(const State& s, const Params& p, const Field* bottom = nullptr, const SolverOptions& opt = {});

struct Gn2dResidual {
    Field mass;
    VecField momentum;
};
Gn2dResidual gn2d_residual(const Field& zeta, const VecField& v, const Field& zeta_t, const VecField& v_t,
                           const Params& p, const Field* bottom, double dt_fd, const SolverOptions& opt = {});

}  // namespace twolayer

#endif
