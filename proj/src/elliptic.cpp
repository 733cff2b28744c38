#include "baf/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "baf/errors.hpp"
#include "baf/jacobi.hpp"

namespace baf {

namespace {

constexpr real kPoleRadius = 1e-12;
constexpr real kDegeneracyRel = 1e-10;
constexpr int kMaxThetaTerms = 64;
constexpr int kLaurentTerms = 48; // c_2 .. c_49

struct Theta1Bundle {
    cplx t, tp, tpp, tppp; // theta_1 and its first three u-derivatives
};

// theta_1(u, q) = 2 sum_n (-1)^n q^{(n+1/2)^2} sin((2n+1)u), |q| < 1.
Theta1Bundle theta1_all(cplx u, cplx log_q)
{
    Theta1Bundle b{0.0, 0.0, 0.0, 0.0};
    const real im_u = std::abs(u.imag());
    real scale = 0.0;
    for (int n = 0; n < kMaxThetaTerms; ++n) {
        const real k = 2.0 * n + 1.0;
        const cplx En = std::exp(log_q * (n * (n + 1.0) + 0.25));
        const real sign = (n % 2 == 0) ? 1.0 : -1.0;
        const cplx s = std::sin(k * u), c = std::cos(k * u);
        b.t += sign * 2.0 * En * s;
        b.tp += sign * 2.0 * En * k * c;
        b.tpp += sign * -2.0 * En * k * k * s;
        b.tppp += sign * -2.0 * En * k * k * k * c;
        const real mag = std::abs(En) * std::exp(k * im_u) * (k * k * k + 1.0);
        scale = std::max(scale, mag);
        if (mag <= 1e-19 * scale && n >= 2) break;
    }
    return b;
}

// theta_2, theta_3, theta_4 at u = 0.
void theta_zeros(cplx log_q, cplx& t2, cplx& t3, cplx& t4)
{
    t2 = 0.0;
    t3 = 1.0;
    t4 = 1.0;
    for (int n = 0; n < kMaxThetaTerms; ++n) {
        const cplx En = std::exp(log_q * (n * (n + 1.0) + 0.25));
        t2 += 2.0 * En;
        if (std::abs(En) <= 1e-19 && n >= 2) break;
    }
    for (int n = 1; n < kMaxThetaTerms; ++n) {
        const cplx qn2 = std::exp(log_q * (static_cast<real>(n) * n));
        t3 += 2.0 * qn2;
        t4 += (n % 2 == 0 ? 2.0 : -2.0) * qn2;
        if (std::abs(qn2) <= 1e-19 && n >= 2) break;
    }
}

// Reduces the basis (w1, w2), Im(w2/w1) > 0, until tau = w2/w1 lies in the
// modular fundamental domain. Also tracks the inverse transform so that
// half-period quasi-period constants can be mapped back.
struct ReducedBasis {
    cplx w1, w2;
    // (orig1, orig2) = (d*w1 - b*w2, -c*w1 + a*w2) with (w1,w2) = M (orig1,orig2)
    long a = 1, b = 0, c = 0, d = 1;
};

ReducedBasis reduce_basis(cplx p1, cplx p2)
{
    ReducedBasis r{p1, p2};
    if (!(std::imag(p2 / p1) > 0.0))
        throw std::invalid_argument("lattice basis: Im(omega'/omega) must be positive");
    for (int iter = 0; iter < 64; ++iter) {
        const cplx tau = r.w2 / r.w1;
        const long k = std::lround(tau.real());
        if (k != 0) {
            r.w2 -= static_cast<real>(k) * r.w1;
            r.c -= k * r.a;
            r.d -= k * r.b;
            continue;
        }
        if (std::abs(tau) < 1.0 - 1e-15) {
            const cplx nw1 = r.w2, nw2 = -r.w1;
            r.w1 = nw1;
            r.w2 = nw2;
            const long na = r.c, nb = r.d, nc = -r.a, nd = -r.b;
            r.a = na; r.b = nb; r.c = nc; r.d = nd;
            continue;
        }
        break;
    }
    return r;
}

real shortest_vector(cplx w1, cplx w2)
{
    real s = std::abs(2.0 * w1);
    s = std::min(s, std::abs(2.0 * w2));
    s = std::min(s, std::abs(2.0 * (w1 + w2)));
    s = std::min(s, std::abs(2.0 * (w1 - w2)));
    return s;
}

// Real coordinates of z in the basis (2w1, 2w2).
void basis_coords(cplx z, cplx w1, cplx w2, real& alpha, real& beta)
{
    const real p1r = 2.0 * w1.real(), p1i = 2.0 * w1.imag();
    const real p2r = 2.0 * w2.real(), p2i = 2.0 * w2.imag();
    const real det = p1r * p2i - p2r * p1i;
    alpha = (p2i * z.real() - p2r * z.imag()) / det;
    beta = (-p1i * z.real() + p1r * z.imag()) / det;
}

// Three real roots of 4x^3 - g2 x - g3, descending. Requires Delta >= 0.
std::array<real, 3> real_cubic_roots(real g2, real g3)
{
    const real p = -g2 / 4.0, q = -g3 / 4.0;
    std::array<real, 3> e{};
    if (g2 == 0.0 && g3 == 0.0) return e;
    const real r = std::sqrt(-p / 3.0);
    real arg = 3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p);
    arg = std::clamp(arg, -1.0, 1.0);
    const real phi = std::acos(arg);
    for (int k = 0; k < 3; ++k)
        e[k] = 2.0 * r * std::cos(phi / 3.0 - 2.0 * pi * k / 3.0);
    std::sort(e.begin(), e.end(), std::greater<real>());
    return e;
}

void setup_laurent(Lattice& L)
{
    L.laurent_c.assign(kLaurentTerms, cplx(0.0));
    L.laurent_c[0] = L.g2 / 20.0; // c_2
    L.laurent_c[1] = L.g3 / 28.0; // c_3
    for (int k = 4; k < kLaurentTerms + 2; ++k) {
        cplx acc = 0.0;
        for (int m = 2; m <= k - 2; ++m)
            acc += L.laurent_c[m - 2] * L.laurent_c[k - m - 2];
        L.laurent_c[k - 2] = 3.0 * acc / ((2.0 * k + 1.0) * (k - 3.0));
    }
}

// Fills evaluation-basis data (q, eta1, eta2, shortest period) from (w1, w2).
void setup_eval_basis(Lattice& L, const ReducedBasis& rb)
{
    L.w1 = rb.w1;
    L.w2 = rb.w2;
    const cplx tau = L.w2 / L.w1;
    L.q = std::exp(imag_unit * pi * tau);
    const cplx log_q = imag_unit * pi * tau;
    const Theta1Bundle z0 = theta1_all(cplx(0.0), log_q);
    // z0.t is ~0 at u = 0; the derivative values carry the content.
    L.eta1 = -pi * pi * z0.tppp / (12.0 * L.w1 * z0.tp);
    L.eta2 = (L.eta1 * L.w2 - imag_unit * pi / 2.0) / L.w1;
    L.shortest_period = shortest_vector(L.w1, L.w2);
}

real degeneracy_scale(real g2, real g3)
{
    return std::max(std::abs(g2) * g2 * g2, g3 * g3);
}

cplx finite_half_period(const Lattice& L) { return imag_unit * pi / (2.0 * L.kappa); }

// Distance-normalized pole check plus reduction for the rank-1 lattice of a
// one_period class: lattice points are integer multiples of i*pi/kappa.
cplx reduce_one_period(cplx z, const Lattice& L, long& n)
{
    const cplx P = imag_unit * pi / L.kappa; // full period of sinh(kappa z)^2's square root lattice
    const real t = (z * std::conj(P)).real() / std::norm(P);
    n = std::lround(t);
    return z - static_cast<real>(n) * P;
}

} // namespace

Lattice lattice_from_invariants(real g2, real g3, LatticeRouting routing)
{
    if (!std::isfinite(g2) || !std::isfinite(g3))
        throw std::invalid_argument("lattice invariants must be finite");
    Lattice L;
    L.g2 = g2;
    L.g3 = g3;
    L.c2 = g2 / 20.0;
    L.c3 = g3 / 28.0;
    const real delta = g2 * g2 * g2 - 27.0 * g3 * g3;
    L.discriminant = delta;
    const real scale = degeneracy_scale(g2, g3);

    const bool degenerate = std::abs(delta) <= kDegeneracyRel * scale;
    if (degenerate && routing == LatticeRouting::auto_detect) {
        if (std::abs(g2) <= 1e-12 && std::abs(g3) <= 1e-12) {
            L.degeneracy = Degeneracy::rational;
            L.omega = cplx(inf(), 0.0);
            L.omega_p = cplx(0.0, inf());
            L.shortest_period = 1.0;
            return L;
        }
        L.degeneracy = Degeneracy::one_period;
        const cplx c = -1.5 * L.g3 / L.g2;
        L.kappa = std::sqrt(3.0 * c);
        const real cr = c.real();
        L.roots = {cplx(std::max(cr, -2.0 * cr)), cplx(cr > 0.0 ? cr : -2.0 * cr),
                   cplx(std::min(cr, -2.0 * cr))};
        const cplx fin = finite_half_period(L);
        if (std::abs(fin.imag()) >= std::abs(fin.real())) {
            L.omega = cplx(inf(), 0.0);
            L.omega_p = fin;
        } else {
            L.omega = fin;
            L.omega_p = cplx(0.0, inf());
        }
        L.shortest_period = pi / std::abs(L.kappa);
        setup_laurent(L);
        return L;
    }

    if (delta <= 0.0)
        throw std::invalid_argument("unsupported lattice class: need Delta > 0, Delta = 0 or g2 = g3 = 0");

    L.degeneracy = Degeneracy::generic;
    const auto e = real_cubic_roots(g2, g3);
    L.roots = {cplx(e[0]), cplx(e[1]), cplx(e[2])};
    const real a13 = std::sqrt(e[0] - e[2]);
    const real a12 = std::sqrt(std::max(e[0] - e[1], 0.0));
    const real a23 = std::sqrt(std::max(e[1] - e[2], 0.0));
    L.omega = pi / (2.0 * agm(a13, a12));
    L.omega_p = imag_unit * pi / (2.0 * agm(a13, a23));

    const ReducedBasis rb = reduce_basis(L.omega, L.omega_p);
    setup_eval_basis(L, rb);
    L.nome = std::exp(imag_unit * pi * L.omega_p / L.omega);
    // omega = d*w1 - b*w2 under the tracked transform, so zeta(omega) follows
    // from the quasi-period constants of the evaluation basis.
    L.eta = static_cast<real>(rb.d) * L.eta1 - static_cast<real>(rb.b) * L.eta2;
    setup_laurent(L);
    return L;
}

Lattice lattice_from_periods(cplx omega, cplx omega_p)
{
    if (!is_finite(omega) || !is_finite(omega_p))
        throw std::invalid_argument("lattice periods must be finite");
    const cplx tau_in = omega_p / omega;
    if (!(tau_in.imag() > 1e-12))
        throw std::invalid_argument("degenerate period ratio: Im(omega'/omega) must be positive");

    const ReducedBasis rb = reduce_basis(omega, omega_p);
    const cplx tau = rb.w2 / rb.w1;
    const cplx log_q = imag_unit * pi * tau;
    cplx t2, t3, t4;
    theta_zeros(log_q, t2, t3, t4);
    const cplx fac = pi * pi / (12.0 * rb.w1 * rb.w1);
    const cplx t2_4 = std::pow(t2, 4), t3_4 = std::pow(t3, 4), t4_4 = std::pow(t4, 4);
    const cplx e1 = fac * (t3_4 + t4_4);
    const cplx e2 = fac * (t2_4 - t4_4);
    const cplx e3 = -fac * (t2_4 + t3_4);
    const cplx g2 = 2.0 * (e1 * e1 + e2 * e2 + e3 * e3);
    const cplx g3 = 4.0 * e1 * e2 * e3;
    const real sc = std::max(std::abs(g2), std::abs(g3));
    if (std::abs(g2.imag()) > 1e-8 * (1.0 + sc) || std::abs(g3.imag()) > 1e-8 * (1.0 + sc))
        throw std::invalid_argument("unsupported lattice class: complex invariants");

    Lattice L = lattice_from_invariants(g2.real(), g3.real());
    // Keep the caller's basis as the public description of the lattice.
    L.omega = omega;
    L.omega_p = omega_p;
    L.nome = std::exp(imag_unit * pi * tau_in);
    L.eta = zeta_fn(omega, L);
    return L;
}

CellPoint reduce_to_cell(cplx z, const Lattice& L)
{
    CellPoint cp;
    switch (L.degeneracy) {
    case Degeneracy::generic: {
        real alpha, beta;
        basis_coords(z, L.w1, L.w2, alpha, beta);
        cp.m = std::lround(alpha);
        cp.n = std::lround(beta);
        cp.reduced = z - 2.0 * (static_cast<real>(cp.m) * L.w1 + static_cast<real>(cp.n) * L.w2);
        return cp;
    }
    case Degeneracy::one_period:
        cp.reduced = reduce_one_period(z, L, cp.m);
        return cp;
    case Degeneracy::rational:
        cp.reduced = z;
        return cp;
    }
    return cp;
}

namespace {

void require_off_lattice(cplx reduced, real scale, const char* fn)
{
    if (std::abs(reduced) <= kPoleRadius * std::max(1.0, scale))
        throw PoleError(std::string(fn) + ": argument is on (or within 1e-12 of) a lattice point");
}

// Laurent-series evaluation of wp, wp', zeta near the origin.
struct LaurentEval {
    cplx p, pp, zeta;
};

LaurentEval laurent_small(cplx z, const Lattice& L)
{
    LaurentEval r;
    const cplx z2 = z * z;
    cplx p = 0.0, pp = 0.0, zt = 0.0;
    cplx zpow = z2; // z^{2k-2} for k = 2
    for (int k = 2; k < kLaurentTerms + 2; ++k) {
        const cplx ck = L.laurent_c[k - 2];
        p += ck * zpow;
        pp += ck * (2.0 * k - 2.0) * zpow / z;
        zt += ck * zpow * z / (2.0 * k - 1.0);
        zpow *= z2;
    }
    r.p = 1.0 / z2 + p;
    r.pp = -2.0 / (z2 * z) + pp;
    r.zeta = 1.0 / z - zt;
    return r;
}

cplx laurent_sigma(cplx z, const Lattice& L)
{
    const cplx z2 = z * z;
    cplx acc = 0.0;
    cplx zpow = z2 * z2; // z^{2k} for k = 2
    for (int k = 2; k < kLaurentTerms + 2; ++k) {
        acc += L.laurent_c[k - 2] * zpow / (2.0 * k * (2.0 * k - 1.0));
        zpow *= z2;
    }
    return z * std::exp(-acc);
}

bool use_laurent(cplx reduced, const Lattice& L)
{
    return std::abs(reduced) <= 0.40 * L.shortest_period;
}

struct ThetaEval {
    Theta1Bundle b;
    cplx u;
    cplx du; // du/dz = pi/(2 w1)
};

ThetaEval theta_at(cplx reduced, const Lattice& L)
{
    ThetaEval te;
    te.du = pi / (2.0 * L.w1);
    te.u = reduced * te.du;
    te.b = theta1_all(te.u, imag_unit * pi * (L.w2 / L.w1));
    return te;
}

cplx sigma_hyperbolic(cplx z, const Lattice& L)
{
    return std::sinh(L.kappa * z) / L.kappa * std::exp(-L.kappa * L.kappa * z * z / 6.0);
}

} // namespace

cplx sigma(cplx z, const Lattice& L)
{
    switch (L.degeneracy) {
    case Degeneracy::rational:
        return z;
    case Degeneracy::one_period: {
        // Entire function; no pole guard needed.
        return sigma_hyperbolic(z, L);
    }
    case Degeneracy::generic: {
        const CellPoint cp = reduce_to_cell(z, L);
        cplx s0;
        if (std::abs(cp.reduced) <= kPoleRadius * L.shortest_period) {
            s0 = cp.reduced; // sigma ~ z near every lattice point, exact zero included
        } else if (use_laurent(cp.reduced, L)) {
            s0 = laurent_sigma(cp.reduced, L);
        } else {
            const ThetaEval te = theta_at(cp.reduced, L);
            const Theta1Bundle at0 = theta1_all(cplx(0.0), imag_unit * pi * (L.w2 / L.w1));
            s0 = 2.0 * L.w1 / pi * std::exp(L.eta1 * cp.reduced * cp.reduced / (2.0 * L.w1)) * te.b.t /
                 at0.tp;
        }
        if (cp.m == 0 && cp.n == 0) return s0;
        const real mn = static_cast<real>(cp.m) * static_cast<real>(cp.n);
        const real sign = (static_cast<long>(cp.m + cp.n + static_cast<long>(mn)) % 2 == 0) ? 1.0 : -1.0;
        const cplx eta_fac = 2.0 * (static_cast<real>(cp.m) * L.eta1 + static_cast<real>(cp.n) * L.eta2);
        const cplx mid = cp.reduced + static_cast<real>(cp.m) * L.w1 + static_cast<real>(cp.n) * L.w2;
        return sign * s0 * std::exp(eta_fac * mid);
    }
    }
    return {};
}

cplx zeta_fn(cplx z, const Lattice& L)
{
    switch (L.degeneracy) {
    case Degeneracy::rational:
        require_off_lattice(z, 1.0, "zeta");
        return 1.0 / z;
    case Degeneracy::one_period: {
        long n = 0;
        const cplx zr = reduce_one_period(z, L, n);
        require_off_lattice(zr, pi / std::abs(L.kappa), "zeta");
        const cplx k = L.kappa;
        return k * std::cosh(k * z) / std::sinh(k * z) - k * k * z / 3.0;
    }
    case Degeneracy::generic: {
        const CellPoint cp = reduce_to_cell(z, L);
        require_off_lattice(cp.reduced, L.shortest_period, "zeta");
        cplx z0;
        if (use_laurent(cp.reduced, L)) {
            z0 = laurent_small(cp.reduced, L).zeta;
        } else {
            const ThetaEval te = theta_at(cp.reduced, L);
            z0 = L.eta1 * cp.reduced / L.w1 + te.du * te.b.tp / te.b.t;
        }
        return z0 + 2.0 * (static_cast<real>(cp.m) * L.eta1 + static_cast<real>(cp.n) * L.eta2);
    }
    }
    return {};
}

WpPair wp(cplx z, const Lattice& L)
{
    switch (L.degeneracy) {
    case Degeneracy::rational: {
        require_off_lattice(z, 1.0, "wp");
        const cplx z2 = z * z;
        return {1.0 / z2, -2.0 / (z2 * z)};
    }
    case Degeneracy::one_period: {
        long n = 0;
        const cplx zr = reduce_one_period(z, L, n);
        require_off_lattice(zr, pi / std::abs(L.kappa), "wp");
        const cplx k = L.kappa, k2 = k * k;
        const cplx sh = std::sinh(k * z), ch = std::cosh(k * z);
        return {k2 / 3.0 + k2 / (sh * sh), -2.0 * k2 * k * ch / (sh * sh * sh)};
    }
    case Degeneracy::generic: {
        const CellPoint cp = reduce_to_cell(z, L);
        require_off_lattice(cp.reduced, L.shortest_period, "wp");
        if (use_laurent(cp.reduced, L)) {
            const LaurentEval le = laurent_small(cp.reduced, L);
            return {le.p, le.pp};
        }
        const ThetaEval te = theta_at(cp.reduced, L);
        const cplx r1 = te.b.tp / te.b.t;
        const cplx r2 = te.b.tpp / te.b.t;
        const cplx r3 = te.b.tppp / te.b.t;
        const cplx p = -L.eta1 / L.w1 - te.du * te.du * (r2 - r1 * r1);
        const cplx ppr = -te.du * te.du * te.du * (r3 - 3.0 * r2 * r1 + 2.0 * r1 * r1 * r1);
        return {p, ppr};
    }
    }
    return {};
}

CJet wp_jet(cplx z0, const Lattice& L, int order)
{
    if (order < 0) throw std::invalid_argument("wp_jet: order must be >= 0");
    const WpPair w = wp(z0, L); // throws on poles
    CJet j(z0, order);
    j.coeff(0) = w.p;
    if (order >= 1) j.coeff(1) = w.p_prime;
    for (int k = 0; k + 2 <= order; ++k) {
        cplx sq = 0.0;
        for (int i = 0; i <= k; ++i) sq += j.coeff(i) * j.coeff(k - i);
        cplx rhs = 6.0 * sq;
        if (k == 0) rhs -= 10.0 * L.c2;
        j.coeff(k + 2) = rhs / ((k + 1.0) * (k + 2.0));
    }
    return j;
}

CJet zeta_jet(cplx z0, const Lattice& L, int order)
{
    if (order < 0) throw std::invalid_argument("zeta_jet: order must be >= 0");
    const cplx z0v = zeta_fn(z0, L);
    if (order == 0) return CJet::constant(z0, z0v, 0);
    const CJet pj = wp_jet(z0, L, order - 1);
    return antidifferentiate(-pj, z0v);
}

cplx carlson_rf(cplx x, cplx y, cplx z)
{
    auto nudge = [](cplx v) {
        if (v.imag() == 0.0 && v.real() < 0.0) return v + cplx(0.0, 1e-14) * (1.0 + std::abs(v));
        return v;
    };
    x = nudge(x);
    y = nudge(y);
    z = nudge(z);
    cplx A = (x + y + z) / 3.0;
    real Q = 0.0;
    for (cplx v : {x, y, z}) Q = std::max(Q, std::abs(A - v));
    Q *= std::pow(3.0 * 1e-16, -1.0 / 8.0);
    for (int it = 0; it < 64 && Q > std::abs(A); ++it) {
        const cplx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        const cplx lam = sx * sy + sy * sz + sz * sx;
        x = (x + lam) * 0.25;
        y = (y + lam) * 0.25;
        z = (z + lam) * 0.25;
        A = (A + lam) * 0.25;
        Q *= 0.25;
    }
    const cplx Xr = 1.0 - x / A, Yr = 1.0 - y / A, Zr = -(Xr + Yr);
    const cplx E2 = Xr * Yr - Zr * Zr, E3 = Xr * Yr * Zr;
    return (1.0 - E2 / 10.0 + E3 / 14.0 + E2 * E2 / 24.0 - 3.0 * E2 * E3 / 44.0) / std::sqrt(A);
}

namespace {

// Maps nu into the cell [0, 2 omega) x [0, 2 omega') in the construction basis.
cplx positive_cell_rep(cplx nu, const Lattice& L)
{
    real a, b;
    basis_coords(nu, L.omega, L.omega_p, a, b);
    a -= std::floor(a);
    b -= std::floor(b);
    if (a > 1.0 - 1e-12) a = 0.0;
    if (b > 1.0 - 1e-12) b = 0.0;
    return 2.0 * (a * L.omega + b * L.omega_p);
}

cplx newton_wp(cplx p, const Lattice& L, cplx seed)
{
    cplx nu = seed;
    const real scale = 1.0 + std::abs(p);
    for (int it = 0; it < 64; ++it) {
        WpPair w;
        try {
            w = wp(nu, L);
        } catch (const PoleError&) {
            nu += 0.0137 * L.shortest_period * cplx(1.0, 0.7);
            continue;
        }
        if (std::abs(w.p_prime) < 1e-13 * scale) {
            nu += 0.0093 * L.shortest_period * cplx(0.6, 1.0);
            continue;
        }
        const cplx step = (w.p - p) / w.p_prime;
        nu -= step;
        if (std::abs(step) <= 1e-14 * (1.0 + std::abs(nu))) {
            const WpPair wf = wp(nu, L);
            if (std::abs(wf.p - p) <= 1e-10 * scale) return nu;
        }
    }
    throw ConvergenceError("wp_inverse: no convergence in 64 Newton steps");
}

} // namespace

cplx wp_inverse(cplx p, const Lattice& L, cplx wp_prime_target)
{
    const real tscale = 1.0 + std::pow(std::abs(p), 1.5);
    const bool target_zero = std::abs(wp_prime_target) <= 1e-8 * tscale;

    if (L.degeneracy == Degeneracy::rational) {
        cplx nu = 1.0 / std::sqrt(p);
        const cplx pp = -2.0 / (nu * nu * nu);
        if (!target_zero && std::abs(-pp - wp_prime_target) < std::abs(pp - wp_prime_target)) nu = -nu;
        if (target_zero && nu.imag() < 0.0) nu = -nu;
        return nu;
    }

    if (L.degeneracy == Degeneracy::one_period) {
        const cplx k = L.kappa, k2 = k * k;
        const cplx denom = p - k2 / 3.0;
        if (std::abs(denom) <= 1e-9 * (1.0 + std::abs(p)))
            throw std::invalid_argument("wp_inverse: value attained only in the infinite-shift limit");
        if (std::abs(p - L.roots[2]) <= 1e-9 * (1.0 + std::abs(p)) && target_zero)
            return finite_half_period(L);
        cplx s = std::sqrt(k2 / denom); // sinh(kappa nu)
        cplx nu = std::asinh(s) / k;
        nu = newton_wp(p, L, nu);
        long n = 0;
        nu = reduce_one_period(nu, L, n); // fold along the finite period
        const WpPair w = wp(nu, L);
        if (!target_zero &&
            std::abs(-w.p_prime - wp_prime_target) < std::abs(w.p_prime - wp_prime_target))
            nu = -nu;
        return nu;
    }

    // Generic lattice. Snap exact half-period targets first.
    const std::array<cplx, 3> hp{L.omega, L.omega + L.omega_p, L.omega_p};
    for (int i = 0; i < 3; ++i)
        if (std::abs(p - L.roots[i]) <= 1e-9 * (1.0 + std::abs(L.roots[i]))) return hp[i];

    cplx seed = carlson_rf(p - L.roots[0], p - L.roots[1], p - L.roots[2]);
    cplx nu;
    try {
        nu = newton_wp(p, L, seed);
    } catch (const ConvergenceError&) {
        real best = inf();
        cplx best_seed = seed;
        for (int i = 1; i < 12; ++i) {
            for (int j = 1; j < 12; ++j) {
                const cplx cand =
                    (i / 12.0) * 2.0 * L.omega + (j / 12.0) * 2.0 * L.omega_p;
                try {
                    const real err = std::abs(wp(cand, L).p - p);
                    if (err < best) {
                        best = err;
                        best_seed = cand;
                    }
                } catch (const PoleError&) {
                }
            }
        }
        nu = newton_wp(p, L, best_seed);
    }

    const cplx cand1 = positive_cell_rep(nu, L);
    const cplx cand2 = positive_cell_rep(-nu, L);
    const cplx pp1 = wp(cand1, L).p_prime;
    const cplx pp2 = wp(cand2, L).p_prime;
    if (!target_zero)
        return std::abs(pp1 - wp_prime_target) <= std::abs(pp2 - wp_prime_target) ? cand1 : cand2;

    // wp' target numerically zero: deterministic half-cell representative.
    auto canonical_rank = [&](cplx v) {
        real a, b;
        basis_coords(v, L.omega, L.omega_p, a, b);
        return std::make_pair(b > 0.5 + 1e-12, a > 0.5 + 1e-12);
    };
    return canonical_rank(cand1) <= canonical_rank(cand2) ? cand1 : cand2;
}

} // namespace baf
