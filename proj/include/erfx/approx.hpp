#pragma once

// Rational-exponent approximations of erf, erfc, the normal CDF Phi and the
// Gaussian tail Q. Each has the form sqrt(1 - e^{E(x)}) with E a rational
// function of x^2, which is what keeps the family invertible in closed form
// (see inverse.hpp). Complement values are produced by algebraically
// equivalent forms that avoid computing 1 - (something near 1), so erfc and Q
// stay strictly positive and fully accurate deep into the tail.

#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace erfx {

template <std::floating_point Real>
struct RationalExponentCoeffs {
    Real n1, n2;      // numerator coefficients of x^2, x^4
    Real d0, d1, d2;  // denominator coefficients of 1, x^2, x^4
};

template <std::floating_point Real = double>
constexpr RationalExponentCoeffs<Real> erf_coeffs() {
    return {Real(-1.2735457), Real(-0.1487936), Real(1), Real(0.1480931), Real(0.0005160)};
}

template <std::floating_point Real = double>
constexpr RationalExponentCoeffs<Real> phi_coeffs() {
    return {Real(-1.2735457), Real(-0.0743968), Real(2), Real(0.1480931), Real(0.0002580)};
}

template <std::floating_point Real = double>
constexpr RationalExponentCoeffs<Real> winitzki_coeffs() {
    return {Real(-4) / std::numbers::pi_v<Real>, Real(-0.147), Real(1), Real(0.147), Real(0)};
}

enum class Target { Erf, Erfc, Phi, Q };
enum class Variant { Improved, Winitzki, Clamped };

struct ApproxFunction {
    Target target = Target::Erf;
    Variant variant = Variant::Improved;
};

// E(x) = (n1 u + n2 u^2) / (d0 + d1 u + d2 u^2) with u = x^2; nonpositive and
// even in x for the built-in coefficient sets. Once u is large enough that
// the quartic terms could overflow, the quotient is evaluated in a form
// scaled by 1/u, which tends to the finite limit n2/d2 (or diverges to -inf
// when d2 = 0, which e^{E} then maps to zero).
template <std::floating_point Real>
Real exponent(const RationalExponentCoeffs<Real>& c, Real x) {
    if (!std::isfinite(x)) throw std::domain_error("exponent: x must be finite");
    const Real u = x * x;
    const Real big = std::sqrt(std::numeric_limits<Real>::max()) / 4;
    if (u > big) {
        if (std::isinf(u))
            return c.d2 > Real(0) ? c.n2 / c.d2 : -std::numeric_limits<Real>::infinity();
        return (c.n1 + c.n2 * u) / (c.d0 / u + c.d1 + c.d2 * u);
    }
    return (c.n1 + c.n2 * u) * u / (c.d0 + (c.d1 + c.d2 * u) * u);
}

// dE/dx, used by the inverse's Newton polish and to quantify how flat the
// forward map becomes near saturation
template <std::floating_point Real>
Real exponent_derivative(const RationalExponentCoeffs<Real>& c, Real x) {
    const Real u = x * x;
    const Real num = (c.n1 + c.n2 * u) * u;
    const Real den = c.d0 + (c.d1 + c.d2 * u) * u;
    const Real dnum = c.n1 + 2 * c.n2 * u;
    const Real dden = c.d1 + 2 * c.d2 * u;
    return 2 * x * (dnum * den - num * dden) / (den * den);
}

template <std::floating_point Real>
Real erf_approx(Real x) {
    const Real e = exponent(erf_coeffs<Real>(), x);
    const Real r = std::sqrt(-std::expm1(e));  // sqrt(1 - e^E) without forming 1 - t
    return std::copysign(r, x);                // exactly odd
}

template <std::floating_point Real>
Real erfc_approx(Real x) {
    if (x < Real(0)) return Real(1) + erf_approx(-x);
    const Real e = exponent(erf_coeffs<Real>(), x);
    const Real t = std::exp(e);  // in (0, 1]
    // t / (1 + r) = 1 - r, but stays strictly positive where the literal
    // subtraction would flush to zero (x beyond ~6.3). The root r is the
    // same expression erf_approx evaluates, so the pair shares one rounding;
    // deriving it from fl(1 - t) instead would cost ~t/(1-t) ulps near x = 0.
    const Real r = std::sqrt(-std::expm1(e));
    return t / (Real(1) + r);
}

template <std::floating_point Real>
Real q_approx(Real x);

template <std::floating_point Real>
Real phi_approx(Real x) {
    if (x < Real(0)) return q_approx(-x);
    const Real e = exponent(phi_coeffs<Real>(), x);
    return Real(0.5) + Real(0.5) * std::sqrt(-std::expm1(e));
}

template <std::floating_point Real>
Real q_approx(Real x) {
    if (x < Real(0)) return phi_approx(-x);
    const Real e = exponent(phi_coeffs<Real>(), x);
    const Real t = std::exp(e);
    return Real(0.5) * t / (Real(1) + std::sqrt(-std::expm1(e)));
}

template <std::floating_point Real>
Real winitzki_erf(Real x) {
    const Real r = std::sqrt(-std::expm1(exponent(winitzki_coeffs<Real>(), x)));
    return std::copysign(r, x);
}

template <std::floating_point Real>
Real winitzki_erfc(Real x) {
    if (x < Real(0)) return Real(1) + winitzki_erf(-x);
    const Real e = exponent(winitzki_coeffs<Real>(), x);
    const Real t = std::exp(e);
    return t / (Real(1) + std::sqrt(-std::expm1(e)));
}

// Saturation abscissae: beyond these the constant 1 (or 0) carries a smaller
// absolute error than the formula itself (certified by find_crossover).
inline constexpr double erf_saturation_x = 4.125;
inline constexpr double phi_saturation_x = 5.834;

template <std::floating_point Real>
Real clamped(Target target, Real x) {
    switch (target) {
        case Target::Erf:  return x >= Real(erf_saturation_x) ? Real(1) : erf_approx(x);
        case Target::Erfc: return x >= Real(erf_saturation_x) ? Real(0) : erfc_approx(x);
        case Target::Phi:  return x >= Real(phi_saturation_x) ? Real(1) : phi_approx(x);
        case Target::Q:    return x >= Real(phi_saturation_x) ? Real(0) : q_approx(x);
    }
    throw std::domain_error("clamped: unknown target");
}

template <std::floating_point Real>
Real evaluate(ApproxFunction f, Real x) {
    switch (f.variant) {
        case Variant::Improved:
            switch (f.target) {
                case Target::Erf:  return erf_approx(x);
                case Target::Erfc: return erfc_approx(x);
                case Target::Phi:  return phi_approx(x);
                case Target::Q:    return q_approx(x);
            }
            break;
        case Variant::Winitzki:
            switch (f.target) {
                case Target::Erf:  return winitzki_erf(x);
                case Target::Erfc: return winitzki_erfc(x);
                default:
                    throw std::domain_error("evaluate: the Winitzki form covers erf and erfc only");
            }
            break;
        case Variant::Clamped:
            return clamped(f.target, x);
    }
    throw std::domain_error("evaluate: unknown function selection");
}

// slope of erf_approx; even in x, positive, and decaying like e^{E} toward
// saturation (which is what makes inverting near y = 1 ill-conditioned)
template <std::floating_point Real>
Real erf_approx_derivative(Real x) {
    const auto c = erf_coeffs<Real>();
    const Real ax = std::abs(x);
    if (ax == Real(0)) return std::sqrt(-c.n1 / c.d0);
    const Real e = exponent(c, ax);
    const Real root = std::sqrt(-std::expm1(e));
    return -std::exp(e) * exponent_derivative(c, ax) / (2 * root);
}

template <std::floating_point Real>
Real phi_approx_derivative(Real x) {
    const auto c = phi_coeffs<Real>();
    const Real ax = std::abs(x);
    if (ax == Real(0)) return Real(0.5) * std::sqrt(-c.n1 / c.d0);
    const Real e = exponent(c, ax);
    const Real root = std::sqrt(-std::expm1(e));
    return -std::exp(e) * exponent_derivative(c, ax) / (4 * root);
}

}  // namespace erfx
