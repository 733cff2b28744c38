#include "baf/tuples.hpp"

#include "baf/jacobi.hpp"
#include "baf/phi.hpp"

namespace baf {

namespace {

JetOracle phi_oracle(const PhiParams& P)
{
    return [P](cplx x, int order) { return phi_jet(x, P, order); };
}

JetOracle phi_prime_oracle(const PhiParams& P)
{
    return [P](cplx x, int order) { return differentiate(phi_jet(x, P, order + 1)); };
}

enum class JacobiPick { sn, cn, dn };

JetOracle jacobi_oracle(real m, JacobiPick which, int derivative = 0, cplx scale = 1.0)
{
    return [m, which, derivative, scale](cplx x, int order) {
        const auto jets = jacobi_jets(x, m, order + derivative);
        CJet j = jets[which == JacobiPick::sn ? 0 : which == JacobiPick::cn ? 1 : 2];
        for (int d = 0; d < derivative; ++d) j = differentiate(j);
        return scale * j;
    };
}

} // namespace

SolutionTuple canonical_tuple(const Lattice& L, cplx nu1, cplx nu2)
{
    const PhiParams P1 = phi_params(L, nu1);
    const PhiParams P2 = phi_params(L, nu2);
    SolutionTuple s;
    s.oracles[0] = [P1, P2](cplx x, int order) {
        return phi_jet(x, P1, order) / phi_jet(x, P2, order);
    };
    s.oracles[1] = phi_oracle(P1);
    s.oracles[2] = phi_prime_oracle(P1);
    s.oracles[3] = phi_oracle(P2);
    s.oracles[4] = phi_prime_oracle(P2);
    return s;
}

SolutionTuple jacobi_dn_tuple(real m)
{
    SolutionTuple s;
    s.oracles[0] = jacobi_oracle(m, JacobiPick::dn);
    s.oracles[1] = jacobi_oracle(m, JacobiPick::cn, 1);
    s.oracles[2] = jacobi_oracle(m, JacobiPick::cn);
    s.oracles[3] = jacobi_oracle(m, JacobiPick::sn, 1);
    s.oracles[4] = jacobi_oracle(m, JacobiPick::sn);
    return s;
}

SolutionTuple jacobi_cn_tuple(real m)
{
    SolutionTuple s;
    s.oracles[0] = jacobi_oracle(m, JacobiPick::cn);
    s.oracles[1] = jacobi_oracle(m, JacobiPick::dn, 1);
    s.oracles[2] = jacobi_oracle(m, JacobiPick::dn);
    s.oracles[3] = jacobi_oracle(m, JacobiPick::sn, 1, cplx(m)); // folds the 1/k^2 factor in
    s.oracles[4] = jacobi_oracle(m, JacobiPick::sn);
    return s;
}

SolutionTuple jacobi_sn_tuple(real m)
{
    SolutionTuple s;
    s.oracles[0] = jacobi_oracle(m, JacobiPick::sn);
    s.oracles[1] = [](cplx x, int order) { return CJet::constant(x, 1.0, order); };
    s.oracles[2] = [m](cplx x, int order) {
        const CJet sn = jacobi_jets(x, m, order)[0];
        return multiply(sn, sn);
    };
    s.oracles[3] = jacobi_oracle(m, JacobiPick::sn, 1);
    s.oracles[4] = jacobi_oracle(m, JacobiPick::sn);
    return s;
}

} // namespace baf
