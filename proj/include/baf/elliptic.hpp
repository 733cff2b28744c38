#pragma once

#include <array>
#include <vector>

#include "baf/jet.hpp"
#include "baf/scalar.hpp"

namespace baf {

enum class Degeneracy { generic, one_period, rational };

enum class LatticeRouting { auto_detect, force_generic };

/// Elliptic data for real invariants with Delta >= 0 (plus the rational
/// g2 = g3 = 0 class). Immutable after construction; all evaluators are pure.
struct Lattice {
    cplx g2{0.0}, g3{0.0};
    cplx c2{0.0}, c3{0.0}; // g2/20, g3/28
    std::array<cplx, 3> roots{}; // e1 >= e2 >= e3 for real invariants
    cplx omega{0.0}, omega_p{0.0}; // half-periods (infinite entries when degenerate)
    cplx eta{0.0};  // zeta(omega), generic lattices only
    cplx nome{0.0}; // exp(i pi omega'/omega), 0 by convention when degenerate
    cplx discriminant{0.0}; // g2^3 - 27 g3^2
    Degeneracy degeneracy = Degeneracy::rational;
    cplx kappa{0.0}; // sqrt(3c), c = -(3/2) g3/g2; one_period lattices only

    // Evaluation basis: a reduced lattice basis (w1, w2) with Im(w2/w1) in the
    // modular fundamental domain, so the theta series in q converge fast even
    // when the construction basis is extremely elongated.
    cplx w1{0.0}, w2{0.0};
    cplx q{0.0};            // nome of the evaluation basis
    cplx eta1{0.0}, eta2{0.0}; // zeta(w1), zeta(w2)
    real shortest_period = 0.0; // length of the shortest nonzero lattice vector
    std::vector<cplx> laurent_c; // Laurent coefficients c_2, c_3, ... of wp
};

Lattice lattice_from_invariants(real g2, real g3,
                                LatticeRouting routing = LatticeRouting::auto_detect);
Lattice lattice_from_periods(cplx omega, cplx omega_p);

struct WpPair {
    cplx p;
    cplx p_prime;
};

struct CellPoint {
    cplx reduced; // z - 2m w1 - 2n w2, coordinates in [-1/2, 1/2)
    long m = 0, n = 0;
};

/// Reduces z modulo the period lattice (evaluation basis). Identity for
/// degenerate lattices with an infinite period direction handled separately.
CellPoint reduce_to_cell(cplx z, const Lattice& L);

cplx sigma(cplx z, const Lattice& L);
cplx zeta_fn(cplx z, const Lattice& L);
WpPair wp(cplx z, const Lattice& L);

/// Taylor jet of wp about z0, seeded by (wp, wp') and extended with the
/// recurrence coming from wp'' = 6 wp^2 - 10 c2.
CJet wp_jet(cplx z0, const Lattice& L, int order);

/// Jet of zeta about z0: zeta(z0) followed by the antiderivative of -wp.
CJet zeta_jet(cplx z0, const Lattice& L, int order);

/// Inverts wp(nu) = p inside the fundamental cell. The branch (wp is even) is
/// fixed by matching wp'(nu) against wp_prime_target; a target that is
/// numerically zero selects the representative with Im nu >= 0 and
/// Re nu in [0, omega].
cplx wp_inverse(cplx p, const Lattice& L, cplx wp_prime_target);

/// Carlson symmetric integral R_F via the duplication algorithm.
cplx carlson_rf(cplx x, cplx y, cplx z);

} // namespace baf
