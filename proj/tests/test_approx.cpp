#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "erfx/approx.hpp"
#include "erfx/oracle.hpp"

using erfx::ApproxFunction;
using erfx::Target;
using erfx::Variant;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Exponent values frozen from a 50-digit evaluation of the rational form.
constexpr double kExpErfAt1 = -1.2383144970730251049;
constexpr double kExpErfAt2 = -4.6699661208060534225;
constexpr double kExpErfAt45 = -20.616183202402915095;
constexpr double kExpPhiAt1 = -0.62743119595302648622;

// Forward values frozen from the same evaluation.
constexpr double kErfA05 = 0.52050361597072320501;
constexpr double kErfA1 = 0.84269069819526629739;
constexpr double kErfA2 = 0.99530267403573176225;
constexpr double kErfA3 = 0.99997496845851265133;
constexpr double kPhiA05 = 0.6914721661966852219;
constexpr double kPhiA1 = 0.84133499538300784239;
constexpr double kPhiA2 = 0.97726110366874854438;
constexpr double kQA2 = 0.022738896331251455622;
constexpr double kWinA05 = 0.52044139322732406334;
constexpr double kWinA1 = 0.84267462518481446771;
constexpr double kWinA2 = 0.99538802615990436907;
}  // namespace

TEST_CASE("exponent matches frozen high-precision values") {
    const auto ce = erfx::erf_coeffs();
    const auto cp = erfx::phi_coeffs();
    CHECK_THAT(erfx::exponent(ce, 1.0), WithinRel(kExpErfAt1, 1e-15));
    CHECK_THAT(erfx::exponent(ce, 2.0), WithinRel(kExpErfAt2, 1e-15));
    CHECK_THAT(erfx::exponent(ce, 4.5), WithinRel(kExpErfAt45, 1e-15));
    CHECK_THAT(erfx::exponent(cp, 1.0), WithinRel(kExpPhiAt1, 1e-15));
    CHECK(erfx::exponent(ce, 4.5) < -12.0);
    // phi exponent is the erf exponent at x / sqrt(2)
    CHECK_THAT(erfx::exponent(cp, 2.0), WithinRel(erfx::exponent(ce, std::sqrt(2.0)), 1e-14));
}

TEST_CASE("exponent is zero at zero, even, and never positive") {
    const auto ce = erfx::erf_coeffs();
    const auto cp = erfx::phi_coeffs();
    const auto cw = erfx::winitzki_coeffs();
    CHECK(erfx::exponent(ce, 0.0) == 0.0);
    CHECK(erfx::exponent(cp, 0.0) == 0.0);
    CHECK(erfx::exponent(cw, 0.0) == 0.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = dist(rng);
        CHECK(erfx::exponent(ce, x) == erfx::exponent(ce, -x));
        CHECK(erfx::exponent(ce, x) <= 0.0);
        CHECK(erfx::exponent(cp, x) <= 0.0);
        CHECK(erfx::exponent(cw, x) <= 0.0);
    }
}

TEST_CASE("exponent rejects non-finite input") {
    const auto ce = erfx::erf_coeffs();
    CHECK_THROWS_AS(erfx::exponent(ce, std::numeric_limits<double>::quiet_NaN()),
                    std::domain_error);
    CHECK_THROWS_AS(erfx::exponent(ce, std::numeric_limits<double>::infinity()),
                    std::domain_error);
    CHECK_THROWS_AS(erfx::erf_approx(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("huge arguments hit the rational form's own limit without overflow") {
    const auto ce = erfx::erf_coeffs();
    const double limit = ce.n2 / ce.d2;  // -288.359...
    CHECK_THAT(erfx::exponent(ce, 1e200), WithinRel(limit, 1e-12));
    CHECK_THAT(erfx::exponent(ce, 1e120), WithinRel(limit, 1e-6));
    CHECK(erfx::erf_approx(1e200) == 1.0);
    CHECK(erfx::erf_approx(-1e200) == -1.0);
    const double tail = erfx::erfc_approx(1e200);
    CHECK(tail > 0.0);
    CHECK(tail < 1e-100);
    CHECK(erfx::winitzki_erfc(1e200) >= 0.0);  // winitzki d2 = 0: exponent diverges, tail underflows
}

TEST_CASE("forward values match frozen high-precision evaluations") {
    CHECK_THAT(erfx::erf_approx(0.5), WithinRel(kErfA05, 5e-15));
    CHECK_THAT(erfx::erf_approx(1.0), WithinRel(kErfA1, 5e-15));
    CHECK_THAT(erfx::erf_approx(2.0), WithinRel(kErfA2, 5e-15));
    CHECK_THAT(erfx::erf_approx(3.0), WithinRel(kErfA3, 5e-15));
    CHECK_THAT(erfx::phi_approx(0.5), WithinRel(kPhiA05, 5e-15));
    CHECK_THAT(erfx::phi_approx(1.0), WithinRel(kPhiA1, 5e-15));
    CHECK_THAT(erfx::phi_approx(2.0), WithinRel(kPhiA2, 5e-15));
    CHECK_THAT(erfx::q_approx(2.0), WithinRel(kQA2, 5e-15));
    CHECK_THAT(erfx::winitzki_erf(0.5), WithinRel(kWinA05, 5e-15));
    CHECK_THAT(erfx::winitzki_erf(1.0), WithinRel(kWinA1, 5e-15));
    CHECK_THAT(erfx::winitzki_erf(2.0), WithinRel(kWinA2, 5e-15));
}

TEST_CASE("winitzki stays within its published absolute bound") {
    double worst = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        const double x = 6.0 * double(i) / 10000.0;
        worst = std::max(worst, std::abs(erfx::winitzki_erf(x) - erfx::erf_ref(x)));
    }
    CHECK(worst < 1.25e-4);
    CHECK(worst > 1.0e-4);  // and the bound is nearly tight
}

TEST_CASE("erf forms are exactly odd") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = dist(rng);
        CHECK(erfx::erf_approx(-x) == -erfx::erf_approx(x));
        CHECK(erfx::winitzki_erf(-x) == -erfx::winitzki_erf(x));
    }
}

TEST_CASE("complement identities hold to a few rounding units") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dist(-8.0, 8.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = dist(rng);
        CHECK(std::abs(erfx::erfc_approx(x) + erfx::erf_approx(x) - 1.0) <= 4 * kEps);
        CHECK(std::abs(erfx::q_approx(x) + erfx::phi_approx(x) - 1.0) <= 4 * kEps);
        CHECK(std::abs(erfx::winitzki_erfc(x) + erfx::winitzki_erf(x) - 1.0) <= 4 * kEps);
    }
    // the reflection x < 0 is literal 1 + erf_approx(-x): exact complement
    CHECK(erfx::erfc_approx(-1.5) + erfx::erf_approx(-1.5) == 1.0);
}

TEST_CASE("phi is the rescaled erf form") {
    // phi(x) = 1/2 + 1/2 erf_approx(x / sqrt 2), compared at unit scale
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(0.0, 8.0);
    const double tol = 8 * 2.220446049250313e-16;
    for (int i = 0; i < 10000; ++i) {
        const double x = dist(rng);
        const double via_erf = 0.5 + 0.5 * erfx::erf_approx(x / std::sqrt(2.0));
        CHECK(std::abs(erfx::phi_approx(x) - via_erf) <= tol);
    }
}

TEST_CASE("ranges and monotonicity") {
    CHECK(erfx::erf_approx(0.0) == 0.0);
    double prev = 0.0;
    double first_violation = -1.0;  // dense scans checked manually, Catch overhead aside
    for (int i = 1; i <= 1000000; ++i) {
        const double x = 8.0 * double(i) / 1000000.0;
        const double v = erfx::erf_approx(x);
        if ((v < prev || v > 1.0) && first_violation < 0.0) first_violation = x;
        prev = v;
    }
    INFO("first non-monotone or out-of-range x: " << first_violation);
    CHECK(first_violation < 0.0);
    // strictly below 1 until the exponent sinks under the 2^-53 floor (x ~ 6.27)
    for (int i = 0; i <= 600; ++i) {
        const double x = 6.0 * double(i) / 600.0;
        CHECK(erfx::erf_approx(x) < 1.0);
    }
    CHECK(erfx::erf_approx(6.5) == 1.0);
    // strict increase holds on [0, 5] where increments clear quantization
    prev = erfx::erf_approx(0.0);
    first_violation = -1.0;
    for (int i = 1; i <= 100000; ++i) {
        const double x = 5.0 * double(i) / 100000.0;
        const double v = erfx::erf_approx(x);
        if (v <= prev && first_violation < 0.0) first_violation = x;
        prev = v;
    }
    INFO("first non-strict step at x = " << first_violation);
    CHECK(first_violation < 0.0);
    for (int i = 0; i <= 1000; ++i) {
        const double x = 8.0 * double(i) / 1000.0;
        const double p = erfx::phi_approx(x);
        CHECK(p >= 0.5);
        CHECK(p <= 1.0);
        const double q = erfx::q_approx(x);
        CHECK(q >= 0.0);
        CHECK(q <= 0.5);
    }
}

TEST_CASE("relative error near zero approaches the analytic limit") {
    // lim x->0 |erf_approx/erf - 1| = sqrt(-n1 pi / 4) - 1 for the improved set
    const double x = 1e-4;
    const double rel = std::abs(erfx::erf_approx(x) / erfx::erf_ref(x) - 1.0);
    CHECK_THAT(rel, WithinAbs(1.202196649749195e-4, 1e-6));
}

TEST_CASE("clamped variant saturates past the error crossover") {
    CHECK(erfx::clamped(Target::Erf, 10.0) == 1.0);
    CHECK(erfx::clamped(Target::Erf, 2.0) == erfx::erf_approx(2.0));
    CHECK(erfx::clamped(Target::Erfc, 10.0) == 0.0);
    CHECK(erfx::clamped(Target::Q, 6.0) == 0.0);
    CHECK(erfx::clamped(Target::Phi, 6.0) == 1.0);
    CHECK(erfx::clamped(Target::Phi, 2.0) == erfx::phi_approx(2.0));
    // saturation kicks in at the boundary itself
    CHECK(erfx::clamped(Target::Erf, erfx::erf_saturation_x) == 1.0);
    CHECK(erfx::clamped(Target::Phi, erfx::phi_saturation_x) == 1.0);
    CHECK(erfx::clamped(Target::Erf, -10.0) == -1.0);
    CHECK(erfx::clamped(Target::Erfc, -10.0) == 2.0);
}

TEST_CASE("evaluate dispatches to the named form") {
    CHECK(erfx::evaluate(ApproxFunction{Target::Erf, Variant::Improved}, 1.25) ==
          erfx::erf_approx(1.25));
    CHECK(erfx::evaluate(ApproxFunction{Target::Erfc, Variant::Improved}, 1.25) ==
          erfx::erfc_approx(1.25));
    CHECK(erfx::evaluate(ApproxFunction{Target::Phi, Variant::Improved}, 1.25) ==
          erfx::phi_approx(1.25));
    CHECK(erfx::evaluate(ApproxFunction{Target::Q, Variant::Improved}, 1.25) ==
          erfx::q_approx(1.25));
    CHECK(erfx::evaluate(ApproxFunction{Target::Erf, Variant::Winitzki}, 1.25) ==
          erfx::winitzki_erf(1.25));
    CHECK(erfx::evaluate(ApproxFunction{Target::Erfc, Variant::Winitzki}, 1.25) ==
          erfx::winitzki_erfc(1.25));
    CHECK(erfx::evaluate(ApproxFunction{Target::Erf, Variant::Clamped}, 5.0) == 1.0);
    CHECK_THROWS_AS(erfx::evaluate(ApproxFunction{Target::Phi, Variant::Winitzki}, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(erfx::evaluate(ApproxFunction{Target::Q, Variant::Winitzki}, 1.0),
                    std::domain_error);
}

TEST_CASE("tail behaviour past the crossover") {
    const auto ce = erfx::erf_coeffs();
    const double e12 = std::exp(-12.0);  // 6.1442123533282098e-06
    for (int i = 1; i <= 1000; ++i) {
        const double x = 4.0 + 36.0 * double(i) / 1000.0;
        CHECK(erfx::exponent(ce, x) < -12.0);
        const double tail = erfx::erfc_approx(x);
        CHECK(tail > 0.0);
        CHECK(tail < e12);
    }
    // below the 1.0 plateau the complement form agrees with literal 1 - erf
    for (int i = 0; i <= 100; ++i) {
        const double x = 4.0 + 2.0 * double(i) / 100.0;
        const double lit = 1.0 - erfx::erf_approx(x);
        CHECK(std::abs(lit - erfx::erfc_approx(x)) <= kEps);
    }
}

TEST_CASE("derivatives match central differences") {
    for (double x : {0.0, 0.3, 0.9, 1.7, 2.5}) {
        const double h = 1e-6;
        if (x > 0.0) {
            const double num = (erfx::erf_approx(x + h) - erfx::erf_approx(x - h)) / (2 * h);
            CHECK_THAT(erfx::erf_approx_derivative(x), WithinRel(num, 1e-6));
            const double nph = (erfx::phi_approx(x + h) - erfx::phi_approx(x - h)) / (2 * h);
            CHECK_THAT(erfx::phi_approx_derivative(x), WithinRel(nph, 1e-6));
        } else {
            CHECK_THAT(erfx::erf_approx_derivative(0.0),
                       WithinRel(std::sqrt(-erfx::erf_coeffs().n1 / erfx::erf_coeffs().d0), 1e-15));
        }
    }
}
