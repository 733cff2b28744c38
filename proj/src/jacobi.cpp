#include "baf/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "baf/errors.hpp"

namespace baf {

real agm(real a, real b)
{
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("agm: arguments must be positive");
    for (int it = 0; it < 64; ++it) {
        if (std::abs(a - b) <= 1e-15 * a) return 0.5 * (a + b);
        const real an = 0.5 * (a + b);
        const real gn = std::sqrt(a * b);
        a = an;
        b = gn;
    }
    throw ConvergenceError("agm: no convergence");
}

real complete_K(real m)
{
    if (!(m >= 0.0) || m >= 1.0)
        throw std::invalid_argument("complete_K: need 0 <= m < 1");
    if (m == 0.0) return pi / 2.0;
    return pi / (2.0 * agm(1.0, std::sqrt(1.0 - m)));
}

namespace {

// Real-argument sn, cn, dn by the AGM chain with the backward phi recurrence.
void sncndn_real(real u, real m, real& sn, real& cn, real& dn)
{
    if (m == 0.0) {
        sn = std::sin(u);
        cn = std::cos(u);
        dn = 1.0;
        return;
    }
    const real K = complete_K(m);
    u -= 4.0 * K * std::round(u / (4.0 * K)); // keep 2^N a_N u moderate

    real a[32], c[32];
    a[0] = 1.0;
    c[0] = std::sqrt(m);
    real b = std::sqrt(1.0 - m);
    int N = 0;
    while (std::abs(c[N]) > 1e-16 * a[N] && N < 30) {
        ++N;
        a[N] = 0.5 * (a[N - 1] + b);
        c[N] = 0.5 * (a[N - 1] - b);
        b = std::sqrt(a[N - 1] * b);
    }
    real phi = std::ldexp(1.0, N) * a[N] * u;
    real phi_next = phi;
    for (int n = N; n >= 1; --n) {
        const real s = std::clamp(c[n] / a[n] * std::sin(phi), -1.0, 1.0);
        phi_next = phi;
        phi = 0.5 * (phi + std::asin(s));
    }
    sn = std::sin(phi);
    cn = std::cos(phi);
    dn = (N == 0) ? std::sqrt(1.0 - m * sn * sn) : cn / std::cos(phi_next - phi);
}

} // namespace

Sncndn jacobi_snc_dn(cplx x, real m)
{
    if (!(m >= 0.0) || m >= 1.0)
        throw std::invalid_argument("jacobi_snc_dn: need 0 <= m < 1");
    real s, c, d;
    sncndn_real(x.real(), m, s, c, d);
    if (x.imag() == 0.0) return {s, c, d};
    real s1, c1, d1;
    sncndn_real(x.imag(), 1.0 - m, s1, c1, d1);
    const real D = c1 * c1 + m * s * s * s1 * s1;
    if (std::abs(D) <= 1e-12)
        throw PoleError("jacobi_snc_dn: argument at a pole of sn/cn/dn");
    Sncndn r;
    r.sn = cplx(s * d1, c * d * s1 * c1) / D;
    r.cn = cplx(c * c1, -s * d * s1 * d1) / D;
    r.dn = cplx(d * c1 * d1, -m * s * c * s1) / D;
    return r;
}

std::array<CJet, 3> jacobi_jets(cplx x0, real m, int order)
{
    const Sncndn v = jacobi_snc_dn(x0, m);
    CJet s(x0, order), c(x0, order), d(x0, order);
    s.coeff(0) = v.sn;
    c.coeff(0) = v.cn;
    d.coeff(0) = v.dn;
    for (int k = 0; k + 1 <= order; ++k) {
        cplx cd = 0.0, sd = 0.0, sc = 0.0;
        for (int j = 0; j <= k; ++j) {
            cd += c.coeff(j) * d.coeff(k - j);
            sd += s.coeff(j) * d.coeff(k - j);
            sc += s.coeff(j) * c.coeff(k - j);
        }
        s.coeff(k + 1) = cd / (k + 1.0);
        c.coeff(k + 1) = -sd / (k + 1.0);
        d.coeff(k + 1) = -m * sc / (k + 1.0);
    }
    return {s, c, d};
}

JacobiParams lattice_from_m(real m)
{
    if (!(m > 0.0) || !(m < 1.0))
        throw std::invalid_argument("lattice_from_m: need 0 < m < 1");
    JacobiParams jp;
    jp.m = m;
    jp.K = complete_K(m);
    jp.K_prime = complete_K(1.0 - m);
    const real g2 = 4.0 / 3.0 * (1.0 - m + m * m);
    const real g3 = 4.0 / 27.0 * (m - 2.0) * (2.0 * m - 1.0) * (m + 1.0);
    jp.lattice = lattice_from_invariants(g2, g3);
    return jp;
}

} // namespace baf
