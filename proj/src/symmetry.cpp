#include "baf/symmetry.hpp"

#include <cmath>
#include <stdexcept>

namespace baf {

namespace {

CJet exp_linear_jet(cplx rate, cplx x0, int order)
{
    return exponential(rate * CJet::variable(x0, order));
}

struct SplitMix {
    std::uint64_t state;
    std::uint64_t next()
    {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    real uniform() { return static_cast<real>(next() >> 11) * 0x1.0p-53; }
    real uniform(real lo, real hi) { return lo + (hi - lo) * uniform(); }
    cplx disk(real radius)
    {
        for (;;) {
            const real re = uniform(-1.0, 1.0), im = uniform(-1.0, 1.0);
            if (re * re + im * im <= 1.0) return radius * cplx(re, im);
        }
    }
};

} // namespace

std::vector<std::string> validate(const GroupElement& g)
{
    std::vector<std::string> violations;
    if (std::abs(g.lambda + g.lambda_p + g.lambda_pp) > 1e-12)
        violations.push_back("lambda sum: lambda + lambda' + lambda'' != 0");
    const cplx du = g.U.determinant(), dv = g.V.determinant();
    if (std::abs(du) < 1e-12) violations.push_back("U singular");
    if (std::abs(dv) < 1e-12) violations.push_back("V singular");
    if (std::abs(du - g.c * dv) > 1e-12 * (1.0 + std::abs(du)))
        violations.push_back("determinant constraint: det U != c det V");
    if (std::abs(g.c) < 1e-12) violations.push_back("c must be nonzero");
    return violations;
}

SolutionTuple act(const GroupElement& g, const SolutionTuple& s)
{
    if (const auto v = validate(g); !v.empty())
        throw std::invalid_argument("act: group element violates constraints: " + v.front());

    SolutionTuple base = s;
    if (g.invert) {
        SolutionTuple inv;
        const JetOracle phi1 = s.oracles[0];
        inv.oracles[0] = [phi1](cplx x, int order) { return reciprocal(phi1(x, order)); };
        inv.oracles[1] = s.oracles[3];
        inv.oracles[2] = s.oracles[4];
        inv.oracles[3] = s.oracles[1];
        inv.oracles[4] = s.oracles[2];
        base = inv;
    }

    SolutionTuple out;
    {
        const JetOracle phi1 = base.oracles[0];
        const cplx c = g.c, lam = g.lambda;
        out.oracles[0] = [phi1, c, lam](cplx x, int order) {
            return c * multiply(exp_linear_jet(lam, x, order), phi1(x, order));
        };
    }
    auto mixed = [](const JetOracle& top, const JetOracle& bot, cplx m0, cplx m1, cplx rate,
                    std::optional<JetOracle> gauge) -> JetOracle {
        return [top, bot, m0, m1, rate, gauge](cplx x, int order) {
            CJet j = m0 * top(x, order) + m1 * bot(x, order);
            j = multiply(j, exp_linear_jet(rate, x, order));
            if (gauge) j = multiply(j, (*gauge)(x, order));
            return j;
        };
    };
    out.oracles[1] = mixed(base.oracles[1], base.oracles[2], g.U(0, 0), g.U(0, 1), -g.lambda_p, g.gauge);
    out.oracles[2] = mixed(base.oracles[1], base.oracles[2], g.U(1, 0), g.U(1, 1), -g.lambda_p, g.gauge);
    out.oracles[3] = mixed(base.oracles[3], base.oracles[4], g.V(0, 0), g.V(0, 1), g.lambda_pp, g.gauge);
    out.oracles[4] = mixed(base.oracles[3], base.oracles[4], g.V(1, 0), g.V(1, 1), g.lambda_pp, g.gauge);
    return out;
}

real functional_residual(const SolutionTuple& s, cplx x, cplx y)
{
    const cplx p2x = s.value(2, x), p2y = s.value(2, y);
    const cplx p3x = s.value(3, x), p3y = s.value(3, y);
    const cplx p4x = s.value(4, x), p4y = s.value(4, y);
    const cplx p5x = s.value(5, x), p5y = s.value(5, y);
    const cplx det23 = p2x * p3y - p2y * p3x;
    const cplx det45 = p4x * p5y - p4y * p5x;
    const real den_scale = std::abs(p4x * p5y) + std::abs(p4y * p5x);
    if (std::abs(det45) <= 1e-12 * (1.0 + den_scale))
        throw std::domain_error("functional_residual: denominator determinant vanishes");
    const cplx lhs = s.value(1, x + y) * det45;
    return std::abs(lhs - det23) / (1.0 + std::abs(lhs));
}

JetOracle exp_affine_gauge(cplx a, cplx b)
{
    return [a, b](cplx x, int order) {
        const CJet lin = cplx(1.0) + b * CJet::variable(x, order);
        return multiply(exp_linear_jet(a, x, order), lin);
    };
}

GroupElement random_element(std::uint64_t seed, real magnitude_bound)
{
    if (!(magnitude_bound > 0.0))
        throw std::invalid_argument("random_element: magnitude bound must be positive");
    SplitMix rng{seed};
    GroupElement g;
    for (;;) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g.U(i, j) = rng.disk(1.0);
        if (std::abs(g.U.determinant()) >= 0.15) break;
    }
    for (;;) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g.V(i, j) = rng.disk(1.0);
        if (std::abs(g.V.determinant()) >= 0.15) break;
    }
    g.lambda = rng.disk(magnitude_bound);
    g.lambda_p = rng.disk(magnitude_bound);
    g.lambda_pp = -g.lambda - g.lambda_p;
    g.c = g.U.determinant() / g.V.determinant();
    const cplx a = rng.disk(magnitude_bound);
    cplx b;
    for (;;) {
        b = rng.disk(std::min(magnitude_bound, 0.3));
        if (std::abs(b) * 3.0 < 1.0) break; // zero of 1 + b x outside radius 3
    }
    g.gauge = exp_affine_gauge(a, b);
    return g;
}

GroupElement compose(const GroupElement& second, const GroupElement& first)
{
    if (second.invert || first.invert)
        throw std::invalid_argument("compose: only twist/mix/gauge elements compose here");
    GroupElement g;
    g.U = second.U * first.U;
    g.V = second.V * first.V;
    g.lambda = second.lambda + first.lambda;
    g.lambda_p = second.lambda_p + first.lambda_p;
    g.lambda_pp = second.lambda_pp + first.lambda_pp;
    g.c = second.c * first.c;
    if (second.gauge && first.gauge) {
        const JetOracle f2 = *second.gauge, f1 = *first.gauge;
        g.gauge = [f2, f1](cplx x, int order) { return multiply(f2(x, order), f1(x, order)); };
    } else if (second.gauge) {
        g.gauge = second.gauge;
    } else if (first.gauge) {
        g.gauge = first.gauge;
    }
    return g;
}

} // namespace baf
