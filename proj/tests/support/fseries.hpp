#pragma once

// Independent Laurent-data oracle: given a jet of h about its expansion point
// (h regular there with h'(0) != 0), expands
//     G(x) = h'(0) h'(x) / (h(x) - h(0))^2 - 1/x^2 = F0 + F1 x + (F2/2) x^2 + ...
// entirely with jet arithmetic. Used to cross-check the determinant formulas.

#include <stdexcept>

#include "baf/jet.hpp"

namespace baft {

struct FData {
    baf::cplx F0, F1, F2;
};

inline FData laurent_F_oracle(const baf::CJet& h)
{
    using baf::CJet;
    using baf::cplx;
    if (h.order() < 7) throw std::invalid_argument("laurent_F_oracle: need jet order >= 7");
    const int n = h.order();
    const cplx hp0 = h.coeff(1);
    if (hp0 == cplx(0.0)) throw std::invalid_argument("laurent_F_oracle: h'(0) vanishes");

    // u(x) = (h(x) - h(0)) / x, regular with u(0) = h'(0).
    CJet u(h.point(), n - 1);
    for (int k = 0; k <= n - 1; ++k) u.coeff(k) = h.coeff(k + 1);

    const CJet hp = differentiate(h);                       // order n-1
    const CJet w = hp0 * hp * reciprocal(u * u);            // = 1 + O(x^2)
    // G = (w - 1)/x^2.
    const cplx w0 = w.coeff(0) - 1.0;
    const cplx w1 = w.coeff(1);
    if (std::abs(w0) > 1e-9 * (1.0 + std::abs(hp0)) || std::abs(w1) > 1e-9 * (1.0 + std::abs(hp0)))
        throw std::runtime_error("laurent_F_oracle: leading terms fail to cancel");
    FData f;
    f.F0 = w.coeff(2);
    f.F1 = w.coeff(3);
    f.F2 = 2.0 * w.coeff(4);
    return f;
}

} // namespace baft
