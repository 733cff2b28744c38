#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "baf/elliptic.hpp"
#include "baf/phi.hpp"
#include "baf/symmetry.hpp"

namespace baf {

struct FTriple {
    cplx F0{0.0}, F1{0.0}, F2{0.0};
};

/// Everything the identification pipeline recovers from local jets of a
/// solution tuple at a generic point x0. The shift parameters nu are those of
/// the x0-centred normal form: for a tuple built from shifts nu_k at the
/// origin they come out as nu_k - 2 x0 modulo the lattice, which is exactly
/// what the reconstruction identities below consume.
struct IdentificationResult {
    bool ok = false;
    std::string stage;   // failing pipeline stage when !ok
    std::string message; // human-readable reason when !ok

    cplx x0{0.0};
    std::array<cplx, 2> lambda{};
    std::array<FTriple, 2> F{};
    std::array<std::pair<cplx, cplx>, 2> invariants_k{}; // per-k (g2, g3)
    cplx g2{0.0}, g3{0.0};                               // reconciled
    Lattice lattice;
    Degeneracy degeneracy = Degeneracy::rational;
    std::array<cplx, 2> nu{};
    std::array<bool, 2> nu_infinite{false, false};
    std::vector<std::pair<cplx, cplx>> gauge_samples; // (x, f(x)), k-averaged

    real residual_phi1 = 0.0;  // phi_1 reconstruction, maxed over the x set
    real residual_pair1 = 0.0; // (phi_2, phi_3) reconstruction
    real residual_pair2 = 0.0; // (phi_4, phi_5) reconstruction
    real first_equality_residual = 0.0;
    real two_variable_residual = 0.0;
    real g2_k_diff = 0.0, g3_k_diff = 0.0; // cross-k invariant agreement
    real gauge_k_diff = 0.0;               // max |f_1 - f_2| / (1 + |f_1|)

    real max_residual() const;
};

/// Verifies regularity of phi_2..phi_5 at x0 and phi_1 at 2 x0, and that both
/// pairwise Wronskians are nonzero. Returns the failure reason, if any.
std::optional<std::string> check_generic(const SolutionTuple& s, cplx x0);

/// lambda_k from second-order jets of the pair (phi_2k, phi_2k+1) at x0.
cplx lambda_at(const SolutionTuple& s, int k, cplx x0);

/// The determinant formulas for the Laurent data (F0, F1, F2) of
/// h'(0) h'(x) / (h(x) - h(0))^2 - 1/x^2, from a jet of h of order >= 5.
FTriple f_coefficients(const CJet& h);

/// g2 = (5/3)(F2 + 6 F0^2), g3 = 6 F0^3 - F1^2 + (5/3) F0 F2.
std::pair<cplx, cplx> invariants_from_F(const FTriple& f);

struct NuResult {
    cplx nu{0.0};
    bool infinite = false;
};

/// Inverts F0 = -wp(nu) with the branch fixed by F1 = wp'(nu). On one_period
/// lattices a value matching the kappa^2/3 limit selects the infinite shift.
NuResult nu_from_F(cplx F0, cplx F1, const Lattice& L);

/// The common gauge function of the reconstruction, evaluated at x:
///   f(x) = e^{-lambda_k x} Phi(x; nu_k)
///          * det[phi_2k'(x0), phi_2k(x0); phi_2k+1'(x0), phi_2k+1(x0)]
///          / det[phi_2k(x+x0), phi_2k(x0); phi_2k+1(x+x0), phi_2k+1(x0)].
cplx gauge_f(const SolutionTuple& s, int k, cplx x0, cplx x, const IdentificationResult& R);

IdentificationResult identify(const SolutionTuple& s, cplx x0, real tol, int jet_order = 8);

/// Tries the fixed candidate list {0, 0.1, 0.23, 0.37} in order.
IdentificationResult identify_auto(const SolutionTuple& s, real tol, int jet_order = 8);

/// PhiParams for the recovered shift k (handles the infinite case).
PhiParams recovered_phi_params(const IdentificationResult& R, int k);

} // namespace baf
