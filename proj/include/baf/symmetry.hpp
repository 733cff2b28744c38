#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "baf/jet.hpp"
#include "baf/scalar.hpp"

namespace baf {

/// An analytic-function oracle: jets of the function at any requested point.
/// Oracles must be deterministic; repeated queries agree exactly.
using JetOracle = std::function<CJet(cplx, int)>;

/// Five analytic oracles phi_1 .. phi_5 forming a (candidate) solution of the
/// determinant-ratio functional equation. Indexing follows the equation.
struct SolutionTuple {
    std::array<JetOracle, 5> oracles;

    CJet jet(int i, cplx x, int order) const { return oracles[static_cast<size_t>(i - 1)](x, order); }
    cplx value(int i, cplx x) const { return jet(i, x, 0).value(); }
};

/// One symmetry of the functional equation: an optional inversion (1/phi_1
/// with the two pairs swapped), exponential twists with GL2 mixes, and an
/// optional common gauge factor on phi_2..phi_5. `act` applies them in that
/// order.
struct GroupElement {
    cplx c{1.0};
    cplx lambda{0.0}, lambda_p{0.0}, lambda_pp{0.0};
    Eigen::Matrix2cd U = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd V = Eigen::Matrix2cd::Identity();
    std::optional<JetOracle> gauge;
    bool invert = false;
};

/// Checks lambda + lambda' + lambda'' = 0 and det U = c det V (both to 1e-12),
/// plus nondegeneracy of U, V. Returns the list of violations (empty = ok).
std::vector<std::string> validate(const GroupElement& g);

SolutionTuple act(const GroupElement& g, const SolutionTuple& s);

/// Relative residual of phi_1(x+y) det[phi_4, phi_5] = det[phi_2, phi_3].
/// Throws std::domain_error when the denominator determinant vanishes.
real functional_residual(const SolutionTuple& s, cplx x, cplx y);

/// Gauge oracle f(x) = e^{a x} (1 + b x).
JetOracle exp_affine_gauge(cplx a, cplx b);

/// Reproducible pseudorandom element satisfying the constraints exactly.
/// The gauge is drawn zero-free on a disk of radius 3 about the origin.
GroupElement random_element(std::uint64_t seed, real magnitude_bound);

/// Composition of two twist/mix/gauge elements (no inversion on either side).
GroupElement compose(const GroupElement& second, const GroupElement& first);

} // namespace baf
