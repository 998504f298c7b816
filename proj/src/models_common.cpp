#include <cmath>
#include <stdexcept>

#include "twolayer/errors.hpp"
#include "twolayer/models.hpp"

namespace twolayer {

std::string to_string(ModelId id) {
    switch (id) {
        case ModelId::SW1D: return "SW1D";
        case ModelId::SW2D: return "SW2D";
        case ModelId::GN1D: return "GN1D";
        case ModelId::CHGN1D: return "CHGN1D";
        case ModelId::BOUSS1D: return "BOUSS1D";
        case ModelId::SYMBOUSS1D: return "SYMBOUSS1D";
        case ModelId::CL_SCALAR: return "CL_SCALAR";
        case ModelId::GN2D: return "GN2D";
    }
    return "?";
}

ModelId model_id_from_string(const std::string& s) {
    for (auto id : {ModelId::SW1D, ModelId::SW2D, ModelId::GN1D, ModelId::CHGN1D, ModelId::BOUSS1D,
                    ModelId::SYMBOUSS1D, ModelId::CL_SCALAR, ModelId::GN2D})
        if (to_string(id) == s) return id;
    throw std::invalid_argument("unknown model id '" + s + "'");
}

bool is_2d(ModelId id) { return id == ModelId::SW2D || id == ModelId::GN2D; }

std::string to_string(VelocityRole r) {
    switch (r) {
        case VelocityRole::shear_mean_v: return "shear_mean_v";
        case VelocityRole::shear_V: return "shear_V";
        case VelocityRole::gn_momentum_w: return "gn_momentum_w";
        case VelocityRole::scalar_u: return "scalar_u";
    }
    return "?";
}

State& State::axpy(double a, const State& o) {
    zeta += a * o.zeta;
    for (int i = 0; i < vel.size(); ++i) vel[i] += a * o.vel[i];
    return *this;
}

State make_state(Field zeta, Field v, VelocityRole role) {
    return State{std::move(zeta), VecField(std::vector<Field>{std::move(v)}), role};
}

State make_state(Field zeta, VecField v, VelocityRole role) { return State{std::move(zeta), std::move(v), role}; }

State scalar_state(Field u) { return State{std::move(u), VecField(), VelocityRole::scalar_u}; }

Params effective_params(const ModelSpec& m) {
    Params p = m.params;
    if (!m.tension) {
        p.bond_inv = 0.0;
        p.bo_inv = 0.0;
    }
    return p;
}

VelocityRole velocity_role(ModelId id) {
    switch (id) {
        case ModelId::SW2D: return VelocityRole::shear_V;
        case ModelId::GN1D:
        case ModelId::GN2D: return VelocityRole::gn_momentum_w;
        case ModelId::CL_SCALAR: return VelocityRole::scalar_u;
        default: return VelocityRole::shear_mean_v;
    }
}

void validate(const ModelSpec& m) {
    validate(m.params);
    bool flat_only = m.id == ModelId::CHGN1D || m.id == ModelId::BOUSS1D || m.id == ModelId::SYMBOUSS1D ||
                     m.id == ModelId::CL_SCALAR || m.id == ModelId::SW2D;
    if (flat_only && m.bottom && m.params.beta != 0.0)
        throw std::invalid_argument(to_string(m.id) + " requires a flat bottom");
    if (m.tension && (m.id == ModelId::CHGN1D || m.id == ModelId::CL_SCALAR))
        throw std::invalid_argument(to_string(m.id) + " has no surface tension term");
    if (m.id == ModelId::CL_SCALAR && m.cl_sign != 1 && m.cl_sign != -1)
        throw std::invalid_argument("cl_sign must be +1 or -1");
    if (m.id == ModelId::BOUSS1D && (m.family.theta1 < 0.0 || m.family.theta2 < 0.0))
        throw std::invalid_argument("theta1, theta2 must be >= 0");
}

State rhs(const ModelSpec& m, const State& s) {
    Params p = effective_params(m);
    switch (m.id) {
        case ModelId::SW1D: return sw1d_rhs(s, p, m.bottom_ptr());
        case ModelId::SW2D: return sw2d_rhs(s, p, m.solver);
        case ModelId::GN1D:
            if (m.bottom && p.beta != 0.0) return gn1d_rhs(s, p, m.bottom_ptr(), m.solver);
            return gn1d_flat_rhs(s, p, m.solver);
        case ModelId::CHGN1D: return chgn1d_rhs(s, p, chgn_coeffs(p.gamma, p.delta), m.solver);
        case ModelId::BOUSS1D: {
            auto ops = boussinesq_ops(p.gamma, p.delta, p.bo_inv, m.family.theta1, m.family.theta2, m.family.lambda1,
                                      m.family.lambda2);
            return boussinesq_rhs(s, p, ops);
        }
        case ModelId::SYMBOUSS1D: return sym_boussinesq_rhs(s, p, sym_boussinesq_ops(p.gamma, p.delta, p.bo_inv), m.solver);
        case ModelId::CL_SCALAR: {
            auto c = cl_coeffs(m.cl_variant, p.gamma, p.delta, m.cl_theta, m.cl_lambda);
            return scalar_state(cl_rhs(s.zeta, p, c, m.cl_sign));
        }
        case ModelId::GN2D: return gn2d_rhs(s, p, m.bottom_ptr(), m.solver);
    }
    throw std::invalid_argument("rhs: unknown model");
}

namespace {

// (1 − μθ₁∂x²)⁻¹(1 − μθ₂∂x²), the near-identity change of velocity variable.
Field family_transform(const Field& v, double mu, double theta1, double theta2, bool inverse) {
    if (theta1 == theta2) return v;
    const auto& g = v.grid();
    return fourier_multiplier(v, [&](Index ix, Index) {
        double k2 = g.wavenumber(0, ix) * g.wavenumber(0, ix);
        double r = (1.0 + mu * theta2 * k2) / (1.0 + mu * theta1 * k2);
        return inverse ? 1.0 / r : r;
    });
}

}  // namespace

State initial_state(const ModelSpec& m, const Field& zeta, const VecField& v) {
    Params p = effective_params(m);
    switch (m.id) {
        case ModelId::GN1D: {
            Field w = (m.bottom && p.beta != 0.0) ? gn1d_pack(zeta, v[0], p, m.bottom_ptr()) : gn1d_flat_pack(zeta, v[0], p);
            return make_state(zeta, std::move(w), VelocityRole::gn_momentum_w);
        }
        case ModelId::GN2D:
            return make_state(zeta, gn2d_pack(zeta, v, p, m.bottom_ptr(), m.solver), VelocityRole::gn_momentum_w);
        case ModelId::CL_SCALAR: return scalar_state(zeta);
        case ModelId::SW2D: return make_state(zeta, v, VelocityRole::shear_V);
        case ModelId::BOUSS1D:
            return make_state(zeta, family_transform(v[0], p.mu, m.family.theta1, m.family.theta2, false));
        default: return make_state(zeta, v[0]);
    }
}

VecField shear_velocity(const ModelSpec& m, const State& s) {
    Params p = effective_params(m);
    switch (m.id) {
        case ModelId::GN1D: {
            if (m.bottom && p.beta != 0.0)
                return VecField(std::vector<Field>{gn1d_unpack(s.zeta, s.v(), p, m.bottom_ptr(), m.solver)});
            return VecField(std::vector<Field>{gn1d_flat_unpack(s.zeta, s.v(), p, m.solver)});
        }
        case ModelId::GN2D: return gn2d_unpack(s.zeta, s.vel, p, m.bottom_ptr(), m.solver);
        case ModelId::CL_SCALAR: return VecField(std::vector<Field>{unidirectional_velocity(s.zeta, p)});
        case ModelId::BOUSS1D:
            return VecField(std::vector<Field>{family_transform(s.v(), p.mu, m.family.theta1, m.family.theta2, true)});
        default: return s.vel;
    }
}

Margins margins(const ModelSpec& m, const State& s) {
    Params p = effective_params(m);
    Margins out;
    if (m.id == ModelId::CL_SCALAR) {
        auto c = cl_coeffs(m.cl_variant, p.gamma, p.delta, m.cl_theta, m.cl_lambda);
        out.ellipticity = c.nu_t;
        return out;
    }
    auto d = depth_fields(s.zeta, p, m.bottom_ptr());
    out.min_depth = std::min(d.h1.min(), d.h2.min());
    if (out.min_depth <= 0.0) return out;
    switch (m.id) {
        case ModelId::SW1D: out.hyperbolicity = sw1d_hyperbolicity(s, p, m.bottom_ptr()); break;
        case ModelId::SW2D: {
            Field xi_r = (d.h1 + p.gamma * d.h2) / (1.0 + p.gamma / p.delta) - 1.0;
            out.contraction = 1.0 - xi_r.max_abs();
            if (out.contraction > 0.0) out.hyperbolicity = sw2d_hyperbolicity(s, p, m.solver);
            break;
        }
        case ModelId::CHGN1D: out.ellipticity = ellipticity_margin(s.zeta, chgn_coeffs(p.gamma, p.delta), p); break;
        case ModelId::SYMBOUSS1D: {
            auto ops = sym_boussinesq_ops(p.gamma, p.delta, p.bo_inv);
            out.mass = (ops.S0(1, 1) + p.epsilon * ops.s_coef * s.zeta).min();
            break;
        }
        case ModelId::GN2D: {
            double a1 = (p.epsilon * s.zeta).max_abs();
            double a2 = (p.delta * (p.epsilon * s.zeta - d.bb)).max_abs();
            out.contraction = 1.0 - std::max(a1, a2);
            break;
        }
        default: break;
    }
    return out;
}

void check_admissible(const ModelSpec& m, const State& s) {
    Params p = effective_params(m);
    if (m.id == ModelId::CL_SCALAR) {
        auto c = cl_coeffs(m.cl_variant, p.gamma, p.delta, m.cl_theta, m.cl_lambda);
        if (!c.admissible) throw AdmissibilityError("ν_t > 0 (scalar equation well-posed)", c.nu_t, 0.0);
        return;
    }
    auto d = depth_fields(s.zeta, p, m.bottom_ptr());
    check_depth(d);
    switch (m.id) {
        case ModelId::SW1D: {
            double h = sw1d_hyperbolicity(s, p, m.bottom_ptr());
            if (!(h > 0.0))
                throw AdmissibilityError("γ+δ−γε²(h₁+h₂)²v²/(h₁+γh₂)³ > 0 (SW hyperbolicity)", h, 0.0);
            break;
        }
        case ModelId::SW2D: {
            Field xi_r = (d.h1 + p.gamma * d.h2) / (1.0 + p.gamma / p.delta) - 1.0;
            if (!(xi_r.max_abs() < 1.0)) throw AdmissibilityError("|ξ|∞ < 1", 1.0 - xi_r.max_abs(), 0.0);
            double h = sw2d_hyperbolicity(s, p, m.solver);
            if (!(h > 0.0)) throw AdmissibilityError("γ+δ−γε²|V+(1−γ)𝔯V|²/(h₁+γh₂) > 0 (SW hyperbolicity)", h, 0.0);
            break;
        }
        case ModelId::CHGN1D: check_ellipticity(s.zeta, chgn_coeffs(p.gamma, p.delta), p); break;
        case ModelId::SYMBOUSS1D: {
            auto ops = sym_boussinesq_ops(p.gamma, p.delta, p.bo_inv);
            Field m11 = ops.S0(1, 1) + p.epsilon * ops.s_coef * s.zeta;
            if (!(m11.min() > 0.0))
                throw AdmissibilityError("S₀+εS[U] positive definite", m11.min(), node_location(m11.grid(), m11.argmin()));
            break;
        }
        case ModelId::GN2D: {
            Margins mg = margins(m, s);
            if (!(mg.contraction > 0.0)) throw AdmissibilityError("|ξ|∞ < 1", mg.contraction, 0.0);
            break;
        }
        default: break;
    }
}

Tendency model_tendency(const ModelSpec& m, const Field& zeta, const Field& v) {
    Params p = effective_params(m);
    switch (m.id) {
        case ModelId::SW1D: {
            auto r = sw1d_rhs(make_state(zeta, v), p, m.bottom_ptr());
            return {r.zeta, r.v()};
        }
        case ModelId::GN1D: return gn1d_tendency(zeta, v, p, m.bottom_ptr(), m.solver);
        case ModelId::CHGN1D: {
            auto r = chgn1d_rhs(make_state(zeta, v), p, chgn_coeffs(p.gamma, p.delta), m.solver);
            return {r.zeta, r.v()};
        }
        case ModelId::BOUSS1D: {
            auto s = initial_state(m, zeta, VecField(std::vector<Field>{v}));
            auto r = rhs(m, s);
            return {r.zeta, family_transform(r.v(), p.mu, m.family.theta1, m.family.theta2, true)};
        }
        case ModelId::SYMBOUSS1D: {
            auto r = sym_boussinesq_rhs(make_state(zeta, v), p, sym_boussinesq_ops(p.gamma, p.delta, p.bo_inv), m.solver);
            return {r.zeta, r.v()};
        }
        default: throw std::invalid_argument("model_tendency: " + to_string(m.id) + " is not a 1D two-field model");
    }
}

}  // namespace twolayer
