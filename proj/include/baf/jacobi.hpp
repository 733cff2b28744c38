#pragma once

#include <array>

#include "baf/elliptic.hpp"
#include "baf/jet.hpp"
#include "baf/scalar.hpp"

namespace baf {

/// Arithmetic-geometric mean of two positive reals.
real agm(real a, real b);

/// Complete elliptic integral of the first kind in the parameter convention,
/// K(m) = pi / (2 agm(1, sqrt(1-m))), 0 <= m < 1.
real complete_K(real m);

struct Sncndn {
    cplx sn, cn, dn;
};

/// sn, cn, dn at complex argument via the descending Landen transformation
/// for the real/imaginary parts. Parameter convention throughout: sn(x|m).
Sncndn jacobi_snc_dn(cplx x, real m);

/// Jets of (sn, cn, dn) about x0, propagated through the first-order system
/// sn' = cn dn, cn' = -sn dn, dn' = -m sn cn.
std::array<CJet, 3> jacobi_jets(cplx x0, real m, int order);

struct JacobiParams {
    real m = 0.0;
    real K = 0.0;
    real K_prime = 0.0;
    Lattice lattice; // omega = K, omega' = i K'
};

JacobiParams lattice_from_m(real m);

} // namespace baf
