#include "baf/phi.hpp"

#include <cmath>
#include <stdexcept>

#include "baf/errors.hpp"

namespace baf {

namespace {

constexpr real kPoleRadius = 1e-12;

bool on_lattice(cplx z, const Lattice& L)
{
    if (L.degeneracy == Degeneracy::rational) return std::abs(z) <= kPoleRadius;
    const CellPoint cp = reduce_to_cell(z, L);
    return std::abs(cp.reduced) <= kPoleRadius * std::max(1.0, L.shortest_period);
}

cplx coth(cplx z) { return std::cosh(z) / std::sinh(z); }

} // namespace

PhiParams phi_params(const Lattice& L, cplx nu)
{
    if (on_lattice(nu, L))
        throw std::invalid_argument("phi_params: nu must not be a lattice point");
    return PhiParams{L, nu, false};
}

PhiParams phi_params_infinite(const Lattice& L)
{
    if (L.degeneracy != Degeneracy::one_period)
        throw std::invalid_argument("phi_params_infinite: infinite shift needs a one_period lattice");
    return PhiParams{L, cplx(0.0), true};
}

cplx phi(cplx x, const PhiParams& P)
{
    const Lattice& L = P.lattice;
    if (on_lattice(x, L)) throw PoleError("phi: pole at a lattice point");

    switch (L.degeneracy) {
    case Degeneracy::rational: {
        if (std::abs(x - P.nu) <= kPoleRadius * (1.0 + std::abs(P.nu))) return 0.0;
        return (1.0 / x - 1.0 / P.nu) * std::exp(x / P.nu);
    }
    case Degeneracy::one_period: {
        const cplx k = L.kappa;
        if (P.nu_infinite) return k / std::sinh(k * x);
        if (on_lattice(x - P.nu, L)) return 0.0;
        const cplx cn = coth(k * P.nu);
        return k * (coth(k * x) - cn) * std::exp(x * k * cn);
    }
    case Degeneracy::generic: {
        if (on_lattice(x - P.nu, L)) return 0.0;
        const cplx zn = zeta_fn(P.nu, L);
        return sigma(P.nu - x, L) / (sigma(P.nu, L) * sigma(x, L)) * std::exp(zn * x);
    }
    }
    return {};
}

cplx phi_log_derivative(cplx x, const PhiParams& P)
{
    const Lattice& L = P.lattice;
    if (on_lattice(x, L)) throw PoleError("phi_log_derivative: pole at a lattice point");

    switch (L.degeneracy) {
    case Degeneracy::rational:
        return 1.0 / P.nu - 1.0 / x - 1.0 / (P.nu - x);
    case Degeneracy::one_period: {
        const cplx k = L.kappa;
        if (P.nu_infinite) return -k * coth(k * x);
        return -k * (coth(k * (P.nu - x)) + coth(k * x) - coth(k * P.nu));
    }
    case Degeneracy::generic:
        return zeta_fn(P.nu, L) - zeta_fn(x, L) - zeta_fn(P.nu - x, L);
    }
    return {};
}

cplx phi_prime(cplx x, const PhiParams& P)
{
    return phi(x, P) * phi_log_derivative(x, P);
}

CJet phi_jet(cplx x0, const PhiParams& P, int order)
{
    const cplx v = phi(x0, P);
    if (v == cplx(0.0))
        throw std::invalid_argument("phi_jet: expansion about a zero of phi is not supported");
    if (order == 0) return CJet::constant(x0, v, 0);

    const Lattice& L = P.lattice;
    // Jet of (ln Phi)'(x0 + h) = zeta(nu) - zeta(x0+h) - zeta(nu - x0 - h) in h.
    CJet ld(x0, order - 1);
    if (P.nu_infinite) {
        // -kappa coth(kappa x) = -(zeta(x) + kappa^2 x / 3)
        const CJet zx = zeta_jet(x0, L, order - 1);
        CJet lin = CJet::variable(x0, order - 1);
        const cplx k2 = L.kappa * L.kappa;
        ld = -(zx + (k2 / 3.0) * lin);
    } else {
        const CJet zx = zeta_jet(x0, L, order - 1);
        const CJet znux = zeta_jet(P.nu - x0, L, order - 1); // jet in t = z - (nu - x0)
        // With z = nu - x0 - h we have t = -h: flip odd coefficients.
        CJet flipped(x0, order - 1);
        for (int k = 0; k <= order - 1; ++k)
            flipped.coeff(k) = (k % 2 == 0 ? 1.0 : -1.0) * znux.coeff(k);
        const cplx znu = zeta_fn(P.nu, L);
        ld = CJet::constant(x0, znu, order - 1) - zx - flipped;
    }
    return v * exponential(antidifferentiate(ld, cplx(0.0)));
}

real addition_residual(cplx x, cplx y, const PhiParams& P)
{
    const Lattice& L = P.lattice;
    const WpPair px = wp(x, L), py = wp(y, L);
    const cplx dp = px.p - py.p;
    if (std::abs(dp) <= 1e-10 * (1.0 + std::abs(px.p) + std::abs(py.p)))
        throw std::invalid_argument("addition_residual: wp(x) = wp(y) is degenerate");
    const cplx lhs = phi(x + y, P) * dp;
    const cplx rhs = phi(x, P) * phi_prime(y, P) - phi(y, P) * phi_prime(x, P);
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

real three_term_residual(cplx x, cplx y, cplx nu1, cplx nu2, const Lattice& L)
{
    const PhiParams p1 = phi_params(L, nu1);
    const PhiParams p2 = phi_params(L, nu2);
    const PhiParams p12 = phi_params(L, nu1 + nu2);
    const cplx c = wp(nu2, L).p - wp(nu1, L).p;
    const cplx gamma = zeta_fn(nu1, L) + zeta_fn(nu2, L) - zeta_fn(nu1 + nu2, L);
    const cplx lhs = c * std::exp(gamma * (x + y)) * phi(x + y, p12);
    const cplx rhs = phi(x + y, p1) * phi(x, p2) * phi(y, p2) -
                     phi(x + y, p2) * phi(x, p1) * phi(y, p1);
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

real translation_residual(cplx x, cplx alpha, cplx nu, const Lattice& L)
{
    const PhiParams pn = phi_params(L, nu);
    const PhiParams pna = phi_params(L, nu - alpha);
    const PhiParams pa = phi_params(L, alpha);
    const cplx expo = zeta_fn(alpha - nu, L) + zeta_fn(nu, L) - zeta_fn(alpha, L);
    const cplx lhs = phi(x + alpha, pn);
    const cplx rhs = -std::exp(expo * x) * phi(alpha, pn) * phi(x, pna) / phi(-x, pa);
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

} // namespace baf
