#pragma once

#include <complex>
#include <limits>

namespace baf {

using real = double;
using cplx = std::complex<double>;

inline constexpr real pi = 3.14159265358979323846264338327950288;

inline constexpr cplx imag_unit{0.0, 1.0};

inline real inf() { return std::numeric_limits<real>::infinity(); }

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// |a - b| measured against 1 + max(|a|,|b|); the scale used by all residuals.
inline real rel_diff(cplx a, cplx b)
{
    return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

} // namespace baf
