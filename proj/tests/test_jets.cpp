#include <doctest.h>

#include <cmath>

#include "baf/jet.hpp"
#include "support/testers.hpp"

using namespace baf;

namespace {

CJet jet_from(cplx x0, std::initializer_list<cplx> cs)
{
    CJet j(x0, static_cast<int>(cs.size()) - 1);
    int k = 0;
    for (cplx c : cs) j.coeff(k++) = c;
    return j;
}

// Independent series oracle: coefficients of sinh and cosh about 0.
CJet sinh_jet0(int order)
{
    CJet j(cplx(0.0), order);
    real fac = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fac *= k;
        if (k % 2 == 1) j.coeff(k) = 1.0 / fac;
    }
    return j;
}

CJet cosh_jet0(int order)
{
    CJet j(cplx(0.0), order);
    real fac = 1.0;
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fac *= k;
        if (k % 2 == 0) j.coeff(k) = 1.0 / fac;
    }
    return j;
}

CJet random_jet(baft::Rng& rng, cplx x0, int order)
{
    CJet j(x0, order);
    for (int k = 0; k <= order; ++k) j.coeff(k) = rng.disk(1.0);
    return j;
}

real coeff_dist(const CJet& a, const CJet& b)
{
    real m = 0.0;
    const int n = std::min(a.order(), b.order());
    for (int k = 0; k <= n; ++k) m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
    return m;
}

} // namespace

TEST_SUITE_BEGIN("jets");

TEST_CASE("multiply: (1+x)(1-x) truncates to 1 - x^2")
{
    const CJet a = jet_from(0.0, {1.0, 1.0, 0.0});
    const CJet b = jet_from(0.0, {1.0, -1.0, 0.0});
    const CJet p = a * b;
    CHECK(p.coeff(0) == cplx(1.0));
    CHECK(p.coeff(1) == cplx(0.0));
    CHECK(p.coeff(2) == cplx(-1.0));
}

TEST_CASE("multiply: identity jet is neutral")
{
    baft::Rng rng(11);
    const CJet j = random_jet(rng, cplx(0.3, -0.2), 6);
    const CJet one = CJet::constant(j.point(), 1.0, 6);
    CHECK(coeff_dist(j * one, j) == 0.0);
}

TEST_CASE("multiply: sinh * cosh = sinh(2x)/2 against the series oracle")
{
    const CJet p = sinh_jet0(4) * cosh_jet0(4);
    // (1/2) sinh(2x) = x + (2/3) x^3 + ...
    CHECK(std::abs(p.coeff(0)) < 1e-15);
    CHECK(std::abs(p.coeff(1) - 1.0) < 1e-15);
    CHECK(std::abs(p.coeff(2)) < 1e-15);
    CHECK(std::abs(p.coeff(3) - 2.0 / 3.0) < 1e-15);
    CHECK(std::abs(p.coeff(4)) < 1e-15);
}

TEST_CASE("multiply rejects mismatched expansion points")
{
    const CJet a = CJet::constant(0.0, 1.0, 2);
    const CJet b = CJet::constant(0.1, 1.0, 2);
    CHECK_THROWS_AS(multiply(a, b), std::invalid_argument);
}

TEST_CASE("reciprocal: geometric series of 1/(1+x^2)")
{
    const CJet r = reciprocal(jet_from(0.0, {1.0, 0.0, 1.0, 0.0, 0.0}));
    CHECK(std::abs(r.coeff(0) - 1.0) < 1e-15);
    CHECK(std::abs(r.coeff(2) + 1.0) < 1e-15);
    CHECK(std::abs(r.coeff(4) - 1.0) < 1e-15);
}

TEST_CASE("reciprocal of a constant")
{
    const CJet r = reciprocal(CJet::constant(0.0, 2.0, 3));
    CHECK(std::abs(r.coeff(0) - 0.5) < 1e-16);
    CHECK(std::abs(r.coeff(1)) == 0.0);
}

TEST_CASE("reciprocal of exp(x) is the series of exp(-x)")
{
    CJet e(cplx(0.0), 5);
    real fac = 1.0;
    for (int k = 0; k <= 5; ++k) {
        if (k > 0) fac *= k;
        e.coeff(k) = 1.0 / fac;
    }
    const CJet r = reciprocal(e);
    real fac2 = 1.0;
    for (int k = 0; k <= 5; ++k) {
        if (k > 0) fac2 *= k;
        CHECK(std::abs(r.coeff(k) - (k % 2 == 0 ? 1.0 : -1.0) / fac2) < 1e-15);
    }
}

TEST_CASE("reciprocal signals a pole for zero constant term")
{
    CHECK_THROWS_AS(reciprocal(jet_from(0.0, {0.0, 1.0})), PoleError);
}

TEST_CASE("exponential: exp of the zero jet and of x")
{
    const CJet z = CJet(cplx(0.0), 3);
    const CJet e0 = exponential(z);
    CHECK(e0.coeff(0) == cplx(1.0));
    CHECK(e0.coeff(1) == cplx(0.0));

    const CJet ex = exponential(CJet::variable(0.0, 3));
    CHECK(std::abs(ex.coeff(0) - 1.0) < 1e-16);
    CHECK(std::abs(ex.coeff(1) - 1.0) < 1e-16);
    CHECK(std::abs(ex.coeff(2) - 0.5) < 1e-16);
    CHECK(std::abs(ex.coeff(3) - 1.0 / 6.0) < 1e-16);
}

TEST_CASE("exponential composed with the log(1+x) series recovers 1 + x")
{
    CJet lg(cplx(0.0), 4);
    for (int k = 1; k <= 4; ++k) lg.coeff(k) = (k % 2 == 1 ? 1.0 : -1.0) / k;
    const CJet e = exponential(lg);
    CHECK(std::abs(e.coeff(0) - 1.0) < 1e-15);
    CHECK(std::abs(e.coeff(1) - 1.0) < 1e-15);
    CHECK(std::abs(e.coeff(2)) < 1e-15);
    CHECK(std::abs(e.coeff(3)) < 1e-15);
    CHECK(std::abs(e.coeff(4)) < 1e-15);
}

TEST_CASE("differentiate: polynomial, constant and the sinh series")
{
    const CJet d = differentiate(jet_from(0.0, {1.0, 1.0, 1.0}));
    CHECK(d.order() == 1);
    CHECK(d.coeff(0) == cplx(1.0));
    CHECK(d.coeff(1) == cplx(2.0));

    const CJet dc = differentiate(CJet::constant(0.0, 5.0, 4));
    for (int k = 0; k <= dc.order(); ++k) CHECK(dc.coeff(k) == cplx(0.0));

    CHECK(coeff_dist(differentiate(sinh_jet0(8)), cosh_jet0(7)) < 1e-15);

    CHECK_THROWS_AS(differentiate(CJet::constant(0.0, 1.0, 0)), std::invalid_argument);
}

TEST_CASE("derivative_value extracts k! c_k")
{
    const CJet j = jet_from(0.0, {1.0, 2.0, 3.0});
    CHECK(j.derivative_value(2) == cplx(6.0));
    CHECK(j.derivative_value(0) == cplx(1.0));
    CHECK_THROWS_AS(j.derivative_value(3), std::invalid_argument);

    // Oracle: d^3/dx^3 e^{2x} |_0 = 8.
    CJet e2(cplx(0.0), 5);
    real fac = 1.0, p2 = 1.0;
    for (int k = 0; k <= 5; ++k) {
        if (k > 0) {
            fac *= k;
            p2 *= 2.0;
        }
        e2.coeff(k) = p2 / fac;
    }
    CHECK(std::abs(e2.derivative_value(3) - 8.0) < 1e-14);
}

TEST_CASE("property: multiplication is associative coefficient-wise")
{
    baft::Rng rng(17);
    for (int rep = 0; rep < 40; ++rep) {
        const cplx x0 = rng.disk(0.5);
        const int n = 2 + static_cast<int>(rng.uniform(0.0, 7.0));
        const CJet a = random_jet(rng, x0, n);
        const CJet b = random_jet(rng, x0, n);
        const CJet c = random_jet(rng, x0, n);
        CHECK(coeff_dist(multiply(a, multiply(b, c)), multiply(multiply(a, b), c)) < 1e-13);
    }
}

TEST_CASE("property: reciprocal is an involution")
{
    baft::Rng rng(23);
    for (int rep = 0; rep < 40; ++rep) {
        CJet a = random_jet(rng, rng.disk(0.5), 8);
        a.coeff(0) += 2.0; // keep the constant term away from zero
        CHECK(coeff_dist(reciprocal(reciprocal(a)), a) < 1e-12);
    }
}

TEST_CASE("property: chain rule for exponential")
{
    baft::Rng rng(29);
    for (int rep = 0; rep < 40; ++rep) {
        const CJet a = random_jet(rng, rng.disk(0.5), 8);
        const CJet lhs = differentiate(exponential(a));
        const CJet rhs = multiply(differentiate(a), exponential(a));
        CHECK(coeff_dist(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("evaluate and antidifferentiate round out the toolkit")
{
    const CJet j = jet_from(1.0, {2.0, 3.0, 4.0});
    CHECK(std::abs(j.evaluate(1.1) - (2.0 + 0.3 + 0.04)) < 1e-15);
    const CJet a = antidifferentiate(j, cplx(7.0));
    CHECK(a.order() == 3);
    CHECK(a.coeff(0) == cplx(7.0));
    CHECK(coeff_dist(differentiate(a), j) == 0.0);
}

TEST_SUITE_END();
