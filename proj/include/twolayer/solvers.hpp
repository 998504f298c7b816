#ifndef TWOLAYER_SOLVERS_HPP
#define TWOLAYER_SOLVERS_HPP

#include <cmath>
#include <string>

#include "twolayer/errors.hpp"

namespace twolayer {

struct SolverOptions {
    double neumann_tol = 1e-12;
    int neumann_max = 200;
    double cg_tol = 1e-11;
    int cg_max = 500;
    double unpack_tol = 1e-11;
    int unpack_max = 100;

    friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

struct IterationReport {
    int iterations = 0;
    double residual = 0.0;  // relative to |b|
};

// Preconditioned conjugate gradients for a symmetric positive definite A.
// Vec needs copy, +, -, scalar *, and dot(Vec, Vec) -> double.
template <typename Vec, typename ApplyA, typename ApplyPrec, typename Dot>
IterationReport pcg(ApplyA&& apply_a, ApplyPrec&& apply_prec, const Vec& b, Vec& x, Dot&& dot, double tol,
                    int max_iter, const std::string& name) {
    IterationReport rep;
    double bnorm = std::sqrt(dot(b, b));
    if (bnorm == 0.0) {
        x = b;
        return rep;
    }
    Vec r = b - apply_a(x);
    double rnorm = std::sqrt(dot(r, r));
    if (rnorm <= tol * bnorm) {
        rep.residual = rnorm / bnorm;
        return rep;
    }
    Vec z = apply_prec(r);
    Vec p = z;
    double rz = dot(r, z);
    for (int it = 1; it <= max_iter; ++it) {
        Vec ap = apply_a(p);
        double pap = dot(p, ap);
        if (!(pap > 0.0)) throw SolverError(name + " (operator not positive definite)", it, rnorm / bnorm);
        double alpha = rz / pap;
        x = x + alpha * p;
        r = r - alpha * ap;
        rnorm = std::sqrt(dot(r, r));
        rep.iterations = it;
        rep.residual = rnorm / bnorm;
        if (rnorm <= tol * bnorm) return rep;
        z = apply_prec(r);
        double rz_new = dot(r, z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    throw SolverError(name, max_iter, rep.residual);
}

// Preconditioned Richardson iteration x <- x + P(b - A x), stopped on the
// relative size of the update.
template <typename Vec, typename ApplyA, typename ApplyPrec, typename Norm>
IterationReport richardson(ApplyA&& apply_a, ApplyPrec&& apply_prec, const Vec& b, Vec& x, Norm&& norm, double tol,
                           int max_iter, const std::string& name) {
    IterationReport rep;
    double bnorm = norm(b);
    if (bnorm == 0.0) {
        x = b;
        return rep;
    }
    for (int it = 1; it <= max_iter; ++it) {
        Vec dx = apply_prec(b - apply_a(x));
        x = x + dx;
        rep.iterations = it;
        rep.residual = norm(dx) / bnorm;
        if (rep.residual <= tol) return rep;
    }
    throw SolverError(name, max_iter, rep.residual);
}

}  // namespace twolayer

#endif
