#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <utility>

#include "baf/errors.hpp"
#include "baf/scalar.hpp"

namespace baf {

/// Truncated Taylor expansion sum_j c_j (x - x0)^j of an analytic function
/// about a fixed point x0. Jets are immutable values; every operation returns
/// a fresh jet truncated to the smaller order of its operands.
template <typename T>
class Jet {
public:
    using Coeffs = Eigen::Matrix<T, Eigen::Dynamic, 1>;

    Jet(T point, int order) : x0_(point), c_(Coeffs::Zero(order + 1))
    {
        if (order < 0) throw std::invalid_argument("jet order must be >= 0");
    }

    Jet(T point, Coeffs coeffs) : x0_(point), c_(std::move(coeffs))
    {
        if (c_.size() == 0) throw std::invalid_argument("jet needs at least one coefficient");
    }

    static Jet constant(T point, T value, int order)
    {
        Jet j(point, order);
        j.c_[0] = value;
        return j;
    }

    /// The identity function x, expanded about x0.
    static Jet variable(T point, int order)
    {
        Jet j(point, order);
        j.c_[0] = point;
        if (order >= 1) j.c_[1] = T(1);
        return j;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    T point() const { return x0_; }
    T value() const { return c_[0]; }
    T coeff(int k) const { return c_[k]; }
    T& coeff(int k) { return c_[k]; }
    const Coeffs& coeffs() const { return c_; }

    /// k! * c_k, i.e. the k-th derivative at the expansion point.
    T derivative_value(int k) const
    {
        if (k < 0 || k > order()) throw std::invalid_argument("derivative_value: k exceeds jet order");
        T fac(1);
        for (int i = 2; i <= k; ++i) fac *= T(i);
        return fac * c_[k];
    }

    /// Horner evaluation of the truncated polynomial at x.
    T evaluate(T x) const
    {
        const T h = x - x0_;
        T acc = c_[order()];
        for (int k = order() - 1; k >= 0; --k) acc = acc * h + c_[k];
        return acc;
    }

private:
    T x0_;
    Coeffs c_;
};

namespace detail {

template <typename T>
void check_same_point(const Jet<T>& a, const Jet<T>& b)
{
    if (a.point() != b.point())
        throw std::invalid_argument("jet arithmetic: mismatched expansion points");
}

} // namespace detail

template <typename T>
Jet<T> operator+(const Jet<T>& a, const Jet<T>& b)
{
    detail::check_same_point(a, b);
    const int n = std::min(a.order(), b.order());
    Jet<T> r(a.point(), n);
    for (int k = 0; k <= n; ++k) r.coeff(k) = a.coeff(k) + b.coeff(k);
    return r;
}

template <typename T>
Jet<T> operator-(const Jet<T>& a, const Jet<T>& b)
{
    detail::check_same_point(a, b);
    const int n = std::min(a.order(), b.order());
    Jet<T> r(a.point(), n);
    for (int k = 0; k <= n; ++k) r.coeff(k) = a.coeff(k) - b.coeff(k);
    return r;
}

template <typename T>
Jet<T> operator-(const Jet<T>& a)
{
    Jet<T> r(a.point(), a.order());
    for (int k = 0; k <= a.order(); ++k) r.coeff(k) = -a.coeff(k);
    return r;
}

template <typename T>
Jet<T> operator*(const Jet<T>& a, T s)
{
    Jet<T> r(a.point(), a.order());
    for (int k = 0; k <= a.order(); ++k) r.coeff(k) = a.coeff(k) * s;
    return r;
}

template <typename T>
Jet<T> operator*(T s, const Jet<T>& a) { return a * s; }

template <typename T>
Jet<T> operator+(const Jet<T>& a, T s)
{
    Jet<T> r = a;
    r.coeff(0) += s;
    return r;
}

template <typename T>
Jet<T> operator+(T s, const Jet<T>& a) { return a + s; }

template <typename T>
Jet<T> operator-(const Jet<T>& a, T s) { return a + (-s); }

/// Cauchy product truncated to the smaller operand order.
template <typename T>
Jet<T> multiply(const Jet<T>& a, const Jet<T>& b)
{
    detail::check_same_point(a, b);
    const int n = std::min(a.order(), b.order());
    Jet<T> r(a.point(), n);
    for (int k = 0; k <= n; ++k) {
        T acc(0);
        for (int j = 0; j <= k; ++j) acc += a.coeff(j) * b.coeff(k - j);
        r.coeff(k) = acc;
    }
    return r;
}

template <typename T>
Jet<T> operator*(const Jet<T>& a, const Jet<T>& b) { return multiply(a, b); }

/// Series inverse; requires a nonzero constant term.
template <typename T>
Jet<T> reciprocal(const Jet<T>& a)
{
    if (a.value() == T(0))
        throw PoleError("jet reciprocal: pole at expansion point");
    const int n = a.order();
    Jet<T> r(a.point(), n);
    const T inv0 = T(1) / a.value();
    r.coeff(0) = inv0;
    for (int k = 1; k <= n; ++k) {
        T acc(0);
        for (int j = 1; j <= k; ++j) acc += a.coeff(j) * r.coeff(k - j);
        r.coeff(k) = -inv0 * acc;
    }
    return r;
}

template <typename T>
Jet<T> operator/(const Jet<T>& a, const Jet<T>& b) { return multiply(a, reciprocal(b)); }

/// exp of a jet via the standard recurrence k e_k = sum_{j<=k} j a_j e_{k-j}.
template <typename T>
Jet<T> exponential(const Jet<T>& a)
{
    const int n = a.order();
    Jet<T> r(a.point(), n);
    using std::exp;
    r.coeff(0) = exp(a.value());
    for (int k = 1; k <= n; ++k) {
        T acc(0);
        for (int j = 1; j <= k; ++j) acc += T(j) * a.coeff(j) * r.coeff(k - j);
        r.coeff(k) = acc / T(k);
    }
    return r;
}

/// Termwise d/dx; the order drops by one.
template <typename T>
Jet<T> differentiate(const Jet<T>& a)
{
    if (a.order() < 1)
        throw std::invalid_argument("differentiate: order-0 jet");
    Jet<T> r(a.point(), a.order() - 1);
    for (int k = 0; k < a.order(); ++k) r.coeff(k) = T(k + 1) * a.coeff(k + 1);
    return r;
}

/// Termwise antiderivative with prescribed constant term; the order grows by one.
template <typename T>
Jet<T> antidifferentiate(const Jet<T>& a, T constant_term)
{
    Jet<T> r(a.point(), a.order() + 1);
    r.coeff(0) = constant_term;
    for (int k = 0; k <= a.order(); ++k) r.coeff(k + 1) = a.coeff(k) / T(k + 1);
    return r;
}

template <typename T>
T derivative_value(const Jet<T>& a, int k) { return a.derivative_value(k); }

using CJet = Jet<cplx>;

} // namespace baf
