#pragma once

// Closed-form inverses of the rational-exponent approximations. Setting
// L = ln(1 - y^2) turns erf_approx(x) = y into a quadratic in u = x^2,
//
//   (n2 - L d2) u^2 + (n1 - L d1) u - L d0 = 0,
//
// whose unique nonnegative root gives x = sqrt(u). The inversion is purely
// algebraic; an optional single Newton step ("polish") can shave the last
// ulps off the residual and is guarded so it never makes things worse.

#include <cmath>
#include <concepts>
#include <stdexcept>

#include "approx.hpp"

namespace erfx {

template <std::floating_point Real>
struct InverseResult {
    Real x;         // abscissa; nonnegative on the canonical branch (y >= 0, p >= 1/2)
    Real residual;  // |forward(x) - y| actually achieved
};

// Unique nonnegative root u of (n2 - L d2) u^2 + (n1 - L d1) u - L d0 = 0.
// For L < 0 the constant term is positive and, for any L reachable from
// y in (-1, 1), the leading coefficient is negative (L stays far above the
// exponent's infimum n2/d2), so the two roots have opposite signs and the
// selection is unambiguous. The quadratic is solved in the cancellation-free
// form q = -(b + sign(b) sqrt(disc))/2 with roots q/a and k/q.
template <std::floating_point Real>
Real invert_exponent(const RationalExponentCoeffs<Real>& c, Real L) {
    if (std::isnan(L) || L > Real(0))
        throw std::domain_error("invert_exponent: L must be <= 0 (the exponent is nonpositive)");
    if (L == Real(0)) return Real(0);  // continuous limit u(0) = 0
    if (std::isinf(L))
        throw std::domain_error("invert_exponent: L must be finite");
    if (c.d2 > Real(0) && L <= c.n2 / c.d2)
        throw std::domain_error("invert_exponent: L at or below the exponent's infimum n2/d2");

    const Real a = c.n2 - L * c.d2;
    const Real b = c.n1 - L * c.d1;
    const Real k = -L * c.d0;  // constant term of the quadratic; > 0 here

    if (a == Real(0)) {
        const Real u = -k / b;
        if (!(u >= Real(0)))
            throw std::logic_error("invert_exponent: no nonnegative root");
        return u;
    }

    const Real disc = b * b - 4 * a * k;
    if (disc < Real(0))
        throw std::logic_error("invert_exponent: negative discriminant");
    const Real q = -(b + std::copysign(std::sqrt(disc), b)) / 2;
    const Real r1 = q / a;
    const Real r2 = k / q;
    const bool ok1 = r1 >= Real(0);
    const bool ok2 = r2 >= Real(0);
    if (ok1 == ok2)
        throw std::logic_error("invert_exponent: expected exactly one nonnegative root");
    return ok1 ? r1 : r2;
}

namespace detail {

// ln(1 - y^2) for |y| < 1. log1p is accurate while y^2 is small; near
// |y| = 1 the factored product keeps the argument exact, since 1 - |y| is
// computed without rounding there.
template <std::floating_point Real>
Real log_one_minus_sq(Real y) {
    const Real ay = std::abs(y);
    if (ay * ay <= Real(0.5)) return std::log1p(-y * y);
    return std::log((Real(1) - ay) * (Real(1) + ay));
}

// one Newton step on forward(x) - target, kept only if it reduces the residual
template <std::floating_point Real, class Fwd, class Slope>
Real polish_step(Fwd&& forward, Slope&& slope, Real x, Real target) {
    const Real f0 = forward(x) - target;
    if (f0 == Real(0)) return x;
    const Real d = slope(x);
    if (!std::isfinite(d) || d == Real(0)) return x;
    const Real xn = x - f0 / d;
    if (!std::isfinite(xn)) return x;
    return std::abs(forward(xn) - target) < std::abs(f0) ? xn : x;
}

}  // namespace detail

// solves erf_approx(x) = y; odd in y (negative y maps to the negated abscissa)
template <std::floating_point Real>
InverseResult<Real> erf_approx_inv(Real y, bool polish = false) {
    if (!(y > Real(-1) && y < Real(1)))
        throw std::domain_error("erf_approx_inv: y must lie in (-1, 1)");
    const Real ay = std::abs(y);
    const Real L = detail::log_one_minus_sq(ay);
    Real x = std::sqrt(invert_exponent(erf_coeffs<Real>(), L));
    if (polish)
        x = detail::polish_step([](Real t) { return erf_approx(t); },
                                [](Real t) { return erf_approx_derivative(t); }, x, ay);
    const Real xs = std::copysign(x, y);
    return {xs, std::abs(erf_approx(xs) - y)};
}

// solves phi_approx(x) = p; p below 1/2 reflects through the median
template <std::floating_point Real>
InverseResult<Real> phi_approx_inv(Real p, bool polish = false) {
    if (!(p > Real(0) && p < Real(1)))
        throw std::domain_error("phi_approx_inv: p must lie in (0, 1)");
    if (p < Real(0.5)) {
        const InverseResult<Real> r = phi_approx_inv(Real(1) - p, polish);
        return {-r.x, std::abs(phi_approx(-r.x) - p)};
    }
    const Real m = 2 * p - 1;  // exact for p in [1/2, 1)
    const Real L = detail::log_one_minus_sq(m);
    Real x = std::sqrt(invert_exponent(phi_coeffs<Real>(), L));
    if (polish)
        x = detail::polish_step([](Real t) { return phi_approx(t); },
                                [](Real t) { return phi_approx_derivative(t); }, x, p);
    return {x, std::abs(phi_approx(x) - p)};
}

template <std::floating_point Real>
InverseResult<Real> erfc_approx_inv(Real y, bool polish = false) {
    if (!(y > Real(0) && y < Real(2)))
        throw std::domain_error("erfc_approx_inv: y must lie in (0, 2)");
    InverseResult<Real> r = erf_approx_inv(Real(1) - y, polish);
    r.residual = std::abs(erfc_approx(r.x) - y);
    return r;
}

template <std::floating_point Real>
InverseResult<Real> q_approx_inv(Real p, bool polish = false) {
    if (!(p > Real(0) && p < Real(1)))
        throw std::domain_error("q_approx_inv: p must lie in (0, 1)");
    InverseResult<Real> r = phi_approx_inv(Real(1) - p, polish);
    r.residual = std::abs(q_approx(r.x) - p);
    return r;
}

}  // namespace erfx
