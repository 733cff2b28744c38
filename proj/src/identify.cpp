#include "baf/identify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "baf/errors.hpp"

namespace baf {

namespace {

constexpr int kGaugeSampleCount = 5;
const cplx kGaugeXs[kGaugeSampleCount] = {
    {0.083, 0.021}, {0.131, -0.034}, {0.207, 0.013}, {0.341, 0.055}, {0.552, -0.041}};

constexpr int kReconCount = 7;
cplx recon_x(int j) { return (0.05 + 0.042 * j) * cplx(1.0, 0.23); }

const cplx kFirstEqXs[3] = {{0.09, 0.036}, {0.21, -0.063}, {0.33, 0.036}};
const cplx kTwoVarX{0.17, 0.05};
const cplx kTwoVarY{0.12, -0.07};

real rel(cplx got, cplx want)
{
    return std::abs(got - want) / (1.0 + std::abs(want));
}

// zeta(nu) - zeta(nu - x) degenerates to -kappa^2 x / 3 for the infinite shift.
cplx zeta_shift_term(const IdentificationResult& R, int k, cplx x)
{
    if (R.nu_infinite[static_cast<size_t>(k - 1)]) {
        const cplx k2 = R.lattice.kappa * R.lattice.kappa;
        return -k2 * x / 3.0;
    }
    const cplx nu = R.nu[static_cast<size_t>(k - 1)];
    return zeta_fn(nu, R.lattice) - zeta_fn(nu - x, R.lattice);
}

cplx wp_at_shift_minus(const IdentificationResult& R, int k, cplx arg)
{
    // wp(nu_k - arg); for the infinite shift the value is the kappa^2/3 limit.
    if (R.nu_infinite[static_cast<size_t>(k - 1)])
        return R.lattice.kappa * R.lattice.kappa / 3.0;
    return wp(R.nu[static_cast<size_t>(k - 1)] - arg, R.lattice).p;
}

} // namespace

real IdentificationResult::max_residual() const
{
    return std::max({residual_phi1, residual_pair1, residual_pair2, first_equality_residual,
                     two_variable_residual, g2_k_diff, g3_k_diff, gauge_k_diff});
}

std::optional<std::string> check_generic(const SolutionTuple& s, cplx x0)
{
    try {
        for (int i = 2; i <= 5; ++i) s.jet(i, x0, 2);
        s.jet(1, 2.0 * x0, 0);
    } catch (const std::exception& e) {
        return std::string("regularity: ") + e.what();
    }
    for (int k = 1; k <= 2; ++k) {
        const CJet a = s.jet(2 * k, x0, 1), b = s.jet(2 * k + 1, x0, 1);
        const cplx det = a.coeff(0) * b.coeff(1) - a.coeff(1) * b.coeff(0);
        const real n1 = std::hypot(std::abs(a.coeff(0)), std::abs(a.coeff(1)));
        const real n2 = std::hypot(std::abs(b.coeff(0)), std::abs(b.coeff(1)));
        if (std::abs(det) <= 1e-10 * n1 * n2)
            return "Wronskian k=" + std::to_string(k) + " zero";
    }
    return std::nullopt;
}

cplx lambda_at(const SolutionTuple& s, int k, cplx x0)
{
    if (k != 1 && k != 2) throw std::invalid_argument("lambda_at: k must be 1 or 2");
    const CJet a = s.jet(2 * k, x0, 2), b = s.jet(2 * k + 1, x0, 2);
    const cplx num = b.derivative_value(0) * a.derivative_value(2) -
                     a.derivative_value(0) * b.derivative_value(2);
    const cplx den = b.derivative_value(0) * a.derivative_value(1) -
                     a.derivative_value(0) * b.derivative_value(1);
    if (std::abs(den) <= 1e-12 * (1.0 + std::abs(num)))
        throw std::domain_error("lambda_at: Wronskian denominator vanishes (non-generic point)");
    return -0.5 * num / den;
}

FTriple f_coefficients(const CJet& h)
{
    if (h.order() < 5) throw std::invalid_argument("f_coefficients: jet order must be >= 5");
    const cplx c1 = h.coeff(1);
    if (c1 == cplx(0.0))
        throw std::domain_error("f_coefficients: h'(0) = 0 (non-generic point)");
    const cplx h1 = h.coeff(2) / c1;
    const cplx h2 = h.coeff(3) / c1;
    const cplx h3 = h.coeff(4) / c1;
    const cplx h4 = h.coeff(5) / c1;

    Eigen::Matrix2cd m2;
    m2 << h1, 1.0, h2, h1;
    Eigen::Matrix3cd m3;
    m3 << h1, 1.0, 0.0, h2, h1, 1.0, h3, h2, h1;
    Eigen::Matrix4cd m4;
    m4 << h1, 1.0, 0.0, 0.0, h2, h1, 1.0, 0.0, h3, h2, h1, 1.0, h4, h3, h2, h1;

    FTriple f;
    f.F0 = -m2.determinant();
    f.F1 = 2.0 * m3.determinant();
    f.F2 = -6.0 * m4.determinant();
    return f;
}

std::pair<cplx, cplx> invariants_from_F(const FTriple& f)
{
    const cplx g2 = 5.0 / 3.0 * (f.F2 + 6.0 * f.F0 * f.F0);
    const cplx g3 = 6.0 * f.F0 * f.F0 * f.F0 - f.F1 * f.F1 + 5.0 / 3.0 * f.F0 * f.F2;
    return {g2, g3};
}

NuResult nu_from_F(cplx F0, cplx F1, const Lattice& L)
{
    if (L.degeneracy == Degeneracy::one_period) {
        const cplx limit = L.kappa * L.kappa / 3.0;
        if (std::abs(-F0 - limit) <= 1e-8 * (1.0 + std::abs(limit))) return {cplx(0.0), true};
    }
    return {wp_inverse(-F0, L, F1), false};
}

PhiParams recovered_phi_params(const IdentificationResult& R, int k)
{
    if (R.nu_infinite[static_cast<size_t>(k - 1)]) return phi_params_infinite(R.lattice);
    return phi_params(R.lattice, R.nu[static_cast<size_t>(k - 1)]);
}

cplx gauge_f(const SolutionTuple& s, int k, cplx x0, cplx x, const IdentificationResult& R)
{
    const CJet a0 = s.jet(2 * k, x0, 1), b0 = s.jet(2 * k + 1, x0, 1);
    const cplx det_w = a0.derivative_value(1) * b0.value() - a0.value() * b0.derivative_value(1);
    const cplx ax = s.value(2 * k, x + x0), bx = s.value(2 * k + 1, x + x0);
    const cplx den = ax * b0.value() - a0.value() * bx;
    if (std::abs(den) <= 1e-12 * (1.0 + std::abs(ax * b0.value()) + std::abs(a0.value() * bx)))
        throw std::domain_error("gauge_f: denominator determinant vanishes");
    const cplx lam = R.lambda[static_cast<size_t>(k - 1)];
    const PhiParams P = recovered_phi_params(R, k);
    return std::exp(-lam * x) * phi(x, P) * det_w / den;
}

namespace {

struct PairData {
    CJet a, b; // jets of phi_2k, phi_2k+1 at x0
};

} // namespace

IdentificationResult identify(const SolutionTuple& s, cplx x0, real tol, int jet_order)
{
    if (!(tol > 0.0)) throw std::invalid_argument("identify: tol must be positive");
    if (jet_order < 6) throw std::invalid_argument("identify: jet order must be >= 6");

    IdentificationResult R;
    R.x0 = x0;

    if (auto why = check_generic(s, x0)) {
        R.stage = "genericity";
        R.message = *why;
        return R;
    }

    // lambda_k and the F data from the h-quotient jets.
    for (int k = 1; k <= 2; ++k) {
        CJet a = s.jet(2 * k, x0, jet_order);
        CJet b = s.jet(2 * k + 1, x0, jet_order);
        R.lambda[k - 1] = lambda_at(s, k, x0);
        // Use the Moebius representative of phi_2k/phi_2k+1 that is regular at x0.
        const CJet h = (std::abs(b.value()) >= std::abs(a.value())) ? a / b : b / a;
        try {
            R.F[k - 1] = f_coefficients(h);
        } catch (const std::exception& e) {
            R.stage = "laurent-data";
            R.message = e.what();
            return R;
        }
        R.invariants_k[k - 1] = invariants_from_F(R.F[k - 1]);
    }

    // Cross-k reconciliation of the invariants.
    const cplx g2a = 0.5 * (R.invariants_k[0].first + R.invariants_k[1].first);
    const cplx g3a = 0.5 * (R.invariants_k[0].second + R.invariants_k[1].second);
    R.g2 = g2a;
    R.g3 = g3a;
    R.g2_k_diff = std::abs(R.invariants_k[0].first - R.invariants_k[1].first) /
                  (1.0 + std::abs(g2a));
    R.g3_k_diff = std::abs(R.invariants_k[0].second - R.invariants_k[1].second) /
                  (1.0 + std::abs(g3a));
    if (R.g2_k_diff > tol || R.g3_k_diff > tol) {
        R.stage = "k-consistency";
        R.message = "per-pair invariants disagree beyond tolerance";
        return R;
    }
    if (std::abs(g2a.imag()) > 1e-6 * (1.0 + std::abs(g2a)) ||
        std::abs(g3a.imag()) > 1e-6 * (1.0 + std::abs(g3a))) {
        R.stage = "lattice";
        R.message = "recovered invariants are not real";
        return R;
    }

    try {
        R.lattice = lattice_from_invariants(g2a.real(), g3a.real());
    } catch (const std::exception& e) {
        R.stage = "lattice";
        R.message = e.what();
        return R;
    }
    R.degeneracy = R.lattice.degeneracy;

    for (int k = 1; k <= 2; ++k) {
        try {
            const NuResult nr = nu_from_F(R.F[k - 1].F0, R.F[k - 1].F1, R.lattice);
            R.nu[k - 1] = nr.nu;
            R.nu_infinite[k - 1] = nr.infinite;
        } catch (const std::exception& e) {
            R.stage = "nu-inversion";
            R.message = e.what();
            return R;
        }
    }

    // Gauge samples and their k-consistency.
    R.gauge_samples.clear();
    for (const cplx x : kGaugeXs) {
        try {
            const cplx f1 = gauge_f(s, 1, x0, x, R);
            const cplx f2 = gauge_f(s, 2, x0, x, R);
            R.gauge_k_diff = std::max(R.gauge_k_diff, std::abs(f1 - f2) / (1.0 + std::abs(f1)));
            R.gauge_samples.emplace_back(x, 0.5 * (f1 + f2));
        } catch (const std::domain_error&) {
            // skip points where the sample determinant degenerates
        }
    }
    if (R.gauge_samples.size() < 3) {
        R.stage = "gauge";
        R.message = "too few valid gauge sample points";
        return R;
    }
    if (R.gauge_k_diff > tol) {
        R.stage = "gauge";
        R.message = "gauge function differs between the two pairs";
        return R;
    }

    // Reconstruction residual (a): phi_1 against the ratio form.
    const cplx phi1_2x0 = s.value(1, 2.0 * x0);
    const PhiParams P1 = recovered_phi_params(R, 1);
    const PhiParams P2 = recovered_phi_params(R, 2);
    for (int j = 0; j < kReconCount; ++j) {
        const cplx x = recon_x(j);
        const cplx lhs = s.value(1, x + 2.0 * x0);
        const cplx rhs =
            phi1_2x0 * std::exp((R.lambda[1] - R.lambda[0]) * x) * phi(x, P1) / phi(x, P2);
        R.residual_phi1 = std::max(R.residual_phi1, rel(lhs, rhs));
    }

    // Reconstruction residual (b): both pairs from the matrix formula with the
    // recovered common gauge.
    for (int k = 1; k <= 2; ++k) {
        const CJet a0 = s.jet(2 * k, x0, 1), b0 = s.jet(2 * k + 1, x0, 1);
        Eigen::Matrix2cd M;
        M << a0.derivative_value(1), a0.value(), b0.derivative_value(1), b0.value();
        const cplx lam = R.lambda[k - 1];
        Eigen::Matrix2cd T;
        T << 1.0, 0.0, lam, -1.0;
        const PhiParams Pk = recovered_phi_params(R, k);
        real worst = 0.0;
        for (int j = 0; j < kReconCount; ++j) {
            const cplx x = recon_x(j);
            const cplx f = 0.5 * (gauge_f(s, 1, x0, x, R) + gauge_f(s, 2, x0, x, R));
            Eigen::Vector2cd pv;
            pv << phi(x, Pk), phi_prime(x, Pk);
            const Eigen::Vector2cd rhs = std::exp(-lam * x) / f * (M * (T * pv));
            worst = std::max(worst, rel(s.value(2 * k, x + x0), rhs(0)));
            worst = std::max(worst, rel(s.value(2 * k + 1, x + x0), rhs(1)));
        }
        (k == 1 ? R.residual_pair1 : R.residual_pair2) = worst;
    }

    // First-equality check: the y-derivative of the log determinant at y = 0
    // equals zeta(nu_k) - zeta(x) - zeta(nu_k - x) - lambda_k.
    for (int k = 1; k <= 2; ++k) {
        const CJet a0 = s.jet(2 * k, x0, 1), b0 = s.jet(2 * k + 1, x0, 1);
        for (const cplx x : kFirstEqXs) {
            const cplx ax = s.value(2 * k, x + x0), bx = s.value(2 * k + 1, x + x0);
            const cplx lhs = (ax * b0.derivative_value(1) - a0.derivative_value(1) * bx) /
                             (ax * b0.value() - a0.value() * bx);
            const cplx rhs =
                zeta_shift_term(R, k, x) - zeta_fn(x, R.lattice) - R.lambda[k - 1];
            R.first_equality_residual = std::max(R.first_equality_residual, rel(lhs, rhs));
        }
    }

    // Two-variable form of the same identity at one (x, y) pair.
    for (int k = 1; k <= 2; ++k) {
        const cplx x = kTwoVarX, y = kTwoVarY;
        const CJet ax = s.jet(2 * k, x + x0, 1), bx = s.jet(2 * k + 1, x + x0, 1);
        const CJet ay = s.jet(2 * k, y + x0, 1), by = s.jet(2 * k + 1, y + x0, 1);
        const cplx D = ax.value() * by.value() - ay.value() * bx.value();
        const cplx Dx = ax.derivative_value(1) * by.value() - ay.value() * bx.derivative_value(1);
        const cplx Dy = ax.value() * by.derivative_value(1) - ay.derivative_value(1) * bx.value();
        const cplx Dxy = ax.derivative_value(1) * by.derivative_value(1) -
                         ay.derivative_value(1) * bx.derivative_value(1);
        const cplx lhs = (Dxy * D - Dx * Dy) / (D * D);
        const WpPair wx = wp(x, R.lattice), wy = wp(y, R.lattice);
        const cplx rhs = wp(x + y, R.lattice).p - wp_at_shift_minus(R, k, x + y) +
                         wx.p_prime * wy.p_prime / ((wx.p - wy.p) * (wx.p - wy.p));
        R.two_variable_residual = std::max(R.two_variable_residual, rel(lhs, rhs));
    }

    R.ok = true;
    return R;
}

IdentificationResult identify_auto(const SolutionTuple& s, real tol, int jet_order)
{
    IdentificationResult last;
    for (const cplx x0 : {cplx(0.0), cplx(0.1), cplx(0.23), cplx(0.37)}) {
        last = identify(s, x0, tol, jet_order);
        if (last.ok) return last;
    }
    return last;
}

} // namespace baf
