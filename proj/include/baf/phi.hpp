#pragma once

#include "baf/elliptic.hpp"
#include "baf/jet.hpp"
#include "baf/scalar.hpp"

namespace baf {

/// Parameters of Phi(x; nu) = sigma(nu - x) / (sigma(nu) sigma(x)) * exp(zeta(nu) x).
/// Degenerate lattices use the closed hyperbolic / rational forms, including the
/// distinguished infinite shift available on one_period lattices.
struct PhiParams {
    Lattice lattice;
    cplx nu{0.0};
    bool nu_infinite = false;
};

PhiParams phi_params(const Lattice& L, cplx nu);
PhiParams phi_params_infinite(const Lattice& L);

/// Phi value. A pole of Phi (x on the lattice) throws; x congruent to nu
/// returns exactly 0, which is a legitimate value.
cplx phi(cplx x, const PhiParams& P);

/// (ln Phi)'(x) = zeta(nu) - zeta(x) - zeta(nu - x) and its degenerate forms.
cplx phi_log_derivative(cplx x, const PhiParams& P);

/// d/dx Phi(x; nu), computed as Phi * (ln Phi)'.
cplx phi_prime(cplx x, const PhiParams& P);

/// Jet of Phi about x0; requires Phi regular and nonzero at x0.
CJet phi_jet(cplx x0, const PhiParams& P, int order);

/// Relative residual of Phi(x+y) (wp x - wp y) = Phi(x) Phi'(y) - Phi(y) Phi'(x).
real addition_residual(cplx x, cplx y, const PhiParams& P);

/// Relative residual of
///   c e^{gamma(x+y)} Phi(x+y; nu1+nu2)
///     = Phi(x+y;nu1) Phi(x;nu2) Phi(y;nu2) - Phi(x+y;nu2) Phi(x;nu1) Phi(y;nu1)
/// with c = wp(nu2) - wp(nu1) and gamma = zeta(nu1) + zeta(nu2) - zeta(nu1+nu2).
real three_term_residual(cplx x, cplx y, cplx nu1, cplx nu2, const Lattice& L);

/// Relative residual of
///   Phi(x+a; nu) = -e^{(zeta(a-nu)+zeta(nu)-zeta(a)) x} Phi(a;nu) Phi(x;nu-a) / Phi(-x;a).
real translation_residual(cplx x, cplx alpha, cplx nu, const Lattice& L);

} // namespace baf
