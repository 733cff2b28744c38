#pragma once

#include "baf/elliptic.hpp"
#include "baf/symmetry.hpp"

namespace baf {

/// The representative solution: phi_1 = Phi(.;nu1)/Phi(.;nu2),
/// (phi_2, phi_3) = (Phi(.;nu1), Phi'(.;nu1)), (phi_4, phi_5) likewise at nu2.
SolutionTuple canonical_tuple(const Lattice& L, cplx nu1, cplx nu2);

/// The three Jacobi addition theorems cast as solution tuples:
///   dn(x+y) = det[cn', cn] / det[sn', sn]
///   cn(x+y) = det[dn', dn] / det[m sn', sn]
///   sn(x+y) = det[1, sn^2] / det[sn', sn]
SolutionTuple jacobi_dn_tuple(real m);
SolutionTuple jacobi_cn_tuple(real m);
SolutionTuple jacobi_sn_tuple(real m);

} // namespace baf
