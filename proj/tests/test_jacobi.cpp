#include <doctest.h>

#include <cmath>

#include "baf/jacobi.hpp"
#include "baf/phi.hpp"
#include "support/fseries.hpp"
#include "support/testers.hpp"

using namespace baf;

TEST_SUITE_BEGIN("jacobi");

TEST_CASE("agm: fixed point, lemniscatic value, symmetry, domain")
{
    CHECK(agm(1.0, 1.0) == 1.0);

    // Four explicit iterations pin the expected value independently.
    real a = 1.0, b = 0.70710678;
    for (int i = 0; i < 4; ++i) {
        const real an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    CHECK(std::abs(agm(1.0, 0.70710678) - a) < 1e-12);
    CHECK(std::abs(agm(1.0, 0.70710678) - 0.847213) < 1e-6);

    baft::Rng rng(61);
    for (int i = 0; i < 10; ++i) {
        const real x = rng.uniform(0.1, 3.0), y = rng.uniform(0.1, 3.0);
        CHECK(agm(x, y) == agm(y, x));
    }
    CHECK_THROWS_AS(agm(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("complete_K: circular limit and AGM value")
{
    CHECK(complete_K(0.0) == pi / 2.0);
    CHECK(std::abs(complete_K(0.5) - 1.854075) < 1e-6);
    CHECK_THROWS_AS(complete_K(1.0), std::invalid_argument);
}

TEST_CASE("complete_K matches the half-period of the Jacobi lattice")
{
    for (const real m : {0.25, 0.5, 0.8}) {
        const JacobiParams jp = lattice_from_m(m);
        CHECK(std::abs(jp.lattice.omega.real() - jp.K) <= 1e-9 * jp.K);
        CHECK(std::abs(jp.lattice.omega_p - cplx(0.0, jp.K_prime)) <= 1e-9 * jp.K_prime);
    }
}

TEST_CASE("jacobi_snc_dn: circular degeneration at m = 0")
{
    const Sncndn v = jacobi_snc_dn(cplx(0.7), 0.0);
    CHECK(std::abs(v.sn - std::sin(0.7)) < 1e-12);
    CHECK(std::abs(v.cn - std::cos(0.7)) < 1e-12);
    CHECK(std::abs(v.dn - 1.0) < 1e-12);
}

TEST_CASE("jacobi_snc_dn: quarter period and algebraic identities")
{
    const real m = 0.5;
    const real K = complete_K(m);
    CHECK(std::abs(jacobi_snc_dn(cplx(K), m).sn - 1.0) < 1e-10);

    baft::Rng rng(67);
    for (const real mm : {0.25, 0.5, 0.8}) {
        for (int i = 0; i < 12; ++i) {
            const cplx x(rng.uniform(-1.5, 1.5), rng.uniform(-0.8, 0.8));
            const Sncndn v = jacobi_snc_dn(x, mm);
            CHECK(std::abs(v.sn * v.sn + v.cn * v.cn - 1.0) < 1e-10);
            CHECK(std::abs(v.dn * v.dn + mm * v.sn * v.sn - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("sn matches the reciprocal of phi at the imaginary half period")
{
    const real m = 0.5;
    const JacobiParams jp = lattice_from_m(m);
    const PhiParams P = phi_params(jp.lattice, cplx(0.0, jp.K_prime));
    const cplx lhs = jacobi_snc_dn(cplx(0.6), m).sn;
    const cplx rhs = 1.0 / phi(cplx(0.6), P);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(lhs)));
}

TEST_CASE("lattice_from_m at m = 1/2: invariants and periods")
{
    const JacobiParams jp = lattice_from_m(0.5);
    CHECK(std::abs(jp.lattice.g2 - cplx(1.0)) < 1e-12);
    CHECK(std::abs(jp.lattice.g3) < 1e-12);
    CHECK(std::abs(jp.lattice.roots[0] - cplx(0.5)) < 1e-12);
    CHECK(std::abs(jp.lattice.roots[2] - cplx(-0.5)) < 1e-12);
    CHECK(std::abs(jp.lattice.omega.real() - 1.854075) < 1e-6);
    CHECK(std::abs(jp.K - jp.K_prime) < 1e-12); // K(1/2) = K'(1/2)
    CHECK_THROWS_AS(lattice_from_m(1.2), std::invalid_argument);
}

TEST_CASE("sampled m keep a positive discriminant and the stated roots")
{
    for (const real m : {0.05, 0.25, 0.5, 0.8, 0.95}) {
        const JacobiParams jp = lattice_from_m(m);
        CHECK(jp.lattice.discriminant.real() > 0.0);
        CHECK(std::abs(jp.lattice.roots[0] - cplx((2.0 - m) / 3.0)) < 1e-10);
        CHECK(std::abs(jp.lattice.roots[1] - cplx((2.0 * m - 1.0) / 3.0)) < 1e-10);
        CHECK(std::abs(jp.lattice.roots[2] - cplx((-1.0 - m) / 3.0)) < 1e-10);
    }
}

TEST_CASE("phi at the three half-period shifts reproduces 1/sn, dn/sn, cn/sn")
{
    for (const real m : {0.25, 0.5, 0.8}) {
        const JacobiParams jp = lattice_from_m(m);
        const Lattice& L = jp.lattice;
        const PhiParams Pw3 = phi_params(L, cplx(0.0, jp.K_prime));
        const PhiParams Pw2 = phi_params(L, cplx(jp.K, jp.K_prime));
        const PhiParams Pw1 = phi_params(L, cplx(jp.K));
        for (real x = 0.2; x <= 1.2001; x += 0.25) {
            const Sncndn v = jacobi_snc_dn(cplx(x), m);
            const cplx a = phi(cplx(x), Pw3) - 1.0 / v.sn;
            const cplx b = phi(cplx(x), Pw2) - v.dn / v.sn;
            const cplx c = phi(cplx(x), Pw1) - v.cn / v.sn;
            CHECK(std::abs(a) <= 1e-9 * (1.0 + std::abs(1.0 / v.sn)));
            CHECK(std::abs(b) <= 1e-9 * (1.0 + std::abs(v.dn / v.sn)));
            CHECK(std::abs(c) <= 1e-9 * (1.0 + std::abs(v.cn / v.sn)));
        }
    }
}

TEST_CASE("jacobi_jets propagate the first-order system")
{
    const real m = 0.37;
    const auto [s, c, d] = jacobi_jets(cplx(0.41, 0.13), m, 9);
    const cplx h(1e-3, -4e-4);
    const Sncndn v = jacobi_snc_dn(cplx(0.41, 0.13) + h, m);
    CHECK(std::abs(s.evaluate(s.point() + h) - v.sn) < 1e-11);
    CHECK(std::abs(c.evaluate(c.point() + h) - v.cn) < 1e-11);
    CHECK(std::abs(d.evaluate(d.point() + h) - v.dn) < 1e-11);
}

TEST_CASE("Laurent data of the two addition-theorem quotients")
{
    // h = cn'/cn about 0 gives (F0, F2) = ((1-2m)/3, 2(1+14m-14m^2)/15);
    // h = sn'/sn (regularized as sn/sn') gives ((1+m)/3, 2(1-16m+m^2)/15).
    for (const real m : {0.25, 0.5, 0.8}) {
        const auto [s, c, d] = jacobi_jets(cplx(0.0), m, 9);
        (void)d;
        const CJet h_cn = differentiate(c) / c; // cn regular, cn(0) = 1
        const auto f1 = baft::laurent_F_oracle(h_cn);
        CHECK(std::abs(f1.F0 - cplx((1.0 - 2.0 * m) / 3.0)) < 1e-8);
        CHECK(std::abs(f1.F2 - cplx(2.0 * (1.0 + 14.0 * m - 14.0 * m * m) / 15.0)) < 1e-8);

        const CJet h_sn = s / differentiate(s); // Moebius flip of sn'/sn
        const auto f2 = baft::laurent_F_oracle(h_sn);
        CHECK(std::abs(f2.F0 - cplx((1.0 + m) / 3.0)) < 1e-8);
        CHECK(std::abs(f2.F2 - cplx(2.0 * (1.0 - 16.0 * m + m * m) / 15.0)) < 1e-8);
    }
}

TEST_SUITE_END();
