#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cswf/errors.hpp"
#include "cswf/gamma_special.hpp"
#include "cswf/theta.hpp"

using namespace cswf;

TEST_CASE("log_gamma at small arguments") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK(std::abs(log_gamma(0.5) - 0.5 * std::log(std::numbers::pi)) < 1e-14);
    CHECK(std::abs(log_gamma(5.0) - std::log(24.0)) < 1e-14);
    CHECK(std::abs(log_gamma(0.5).real() - 0.5723649429) < 1e-10);
}

TEST_CASE("log_gamma matches std::lgamma on the positive axis") {
    for (double x = 0.05; x < 900.0; x *= 1.37) {
        const double ref = std::lgamma(x);
        CAPTURE(x);
        CHECK(std::abs(log_gamma(x).real() - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
        CHECK(log_gamma(x).imag() == 0.0);
    }
}

TEST_CASE("log_gamma functional equation and principal branch") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    for (int i = 0; i < 200; ++i) {
        const cplx z(u(rng), u(rng));
        if (std::abs(z.imag()) < 0.5 && z.real() < 1.0) continue;
        // log Gamma(z+1) = log Gamma(z) + log z holds exactly on the principal branch
        // away from the negative real axis.
        const cplx lhs = log_gamma(z + 1.0);
        const cplx rhs = log_gamma(z) + std::log(z);
        CAPTURE(z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
    // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
    for (double y : {0.5, 3.0, 20.0, 200.0}) {
        CHECK(2.0 * log_gamma(cplx(0.5, y)).real() == doctest::Approx(std::log(std::numbers::pi / std::cosh(std::numbers::pi * y))).epsilon(1e-13));
    }
}

TEST_CASE("log_gamma poles") {
    for (double z : {0.0, -1.0, -2.0, -17.0}) CHECK_THROWS_AS(log_gamma(z), PoleError);
    CHECK_NOTHROW(log_gamma(cplx(-2.0, 1e-3)));
    CHECK_NOTHROW(log_gamma(-2.5));
}

TEST_CASE("tau branch") {
    CHECK(make_tau(0.0, 0.0).value == cplx(0.5));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-200.0, 200.0);
    for (int i = 0; i < 2000; ++i) {
        const cplx t(u(rng), u(rng));
        const cplx tau = make_tau(cplx(u(rng) / 100.0 + 2.0, u(rng) / 400.0), t).value;
        CHECK(std::arg(tau) > -std::numbers::pi / 2);
        CHECK(std::arg(tau) <= std::numbers::pi / 2);
    }
    // on the cut: t + (mu+1/2)^2 < 0 gives a positive imaginary tau
    const cplx tau = make_tau(0.0, -10.25).value;
    CHECK(tau.real() == 0.0);
    CHECK(tau.imag() == doctest::Approx(std::sqrt(10.0)));
}

TEST_CASE("closed form examples") {
    CHECK(theta_closed_form(0.0, 0.0) == cplx(0.0));
    CHECK(std::abs(theta_closed_form(0.0, 1.0) - std::cos(std::numbers::pi * std::sqrt(1.25)) / std::numbers::pi) < 1e-13);
    CHECK(std::abs(theta_closed_form(0.0, 1.0).real() - (-0.29667)) < 1e-5);
    CHECK(theta_closed_form(2.0, 6.0) == cplx(0.0));
}

TEST_CASE("reflection identity for mu = 0") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const cplx t = std::polar(50.0 * std::abs(u(rng)), std::numbers::pi * u(rng));
        const cplx expected = std::cos(std::numbers::pi * make_tau(0.0, t).value) / std::numbers::pi;
        CAPTURE(t);
        CHECK(std::abs(theta_closed_form(0.0, t) - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("recurrence agrees with the closed form at random complex t") {
    // |Theta| reaches ~1e9 at |t| = 50, so the error is measured relative to max(1, |Theta|).
    std::mt19937_64 rng(20240612);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const ThetaOptions opts{.accelerate = true};
    for (const cplx mu : {cplx(0.0), cplx(0.5), cplx(1.0), cplx(2.0), cplx(2.0, 0.05)}) {
        const ProblemParams params = ProblemParams::coulomb(mu, 0.0, 0.0);
        for (int i = 0; i < 20; ++i) {
            const cplx t = std::polar(50.0 * std::abs(u(rng)), std::numbers::pi * u(rng));
            const cplx reference = theta_closed_form(mu, t);
            const cplx value = evaluate_theta(params, t, opts).value;
            CAPTURE(mu);
            CAPTURE(t);
            CHECK(std::abs(value - reference) <= 1e-7 * std::max(1.0, std::abs(reference)));
        }
    }
}

TEST_CASE("theta_asymptotic examples") {
    CHECK(theta_asymptotic(0.0, 400.0) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
    CHECK(theta_asymptotic(0.0, -100.0) == doctest::Approx(std::exp(10.0 * std::numbers::pi) / (2.0 * std::numbers::pi)).epsilon(1e-14));
    CHECK(theta_asymptotic(1.0, 400.0) == doctest::Approx(-1.0 / (400.0 * std::numbers::pi)).epsilon(1e-12));
    CHECK_THROWS_AS(theta_asymptotic(0.0, -60000.0), Overflow);
}

TEST_CASE("asymptotic match within 15 percent at |t| = 400 and 1600") {
    // Positive t: the recurrence is evaluated in quad precision up to 400; at 1600
    // its partial sums exceed the quad range of exact cancellation, so the closed
    // form stands in for it.
    for (const double mu : {0.0, 1.0}) {
        const ProblemParams params = ProblemParams::coulomb(mu, 0.0, 0.0);
        for (const double t : {-400.0, -1600.0, 400.0, 1600.0}) {
            cplx value;
            if (t < 0.0) {
                value = evaluate_theta(params, t, {.accelerate = true}).value;
            } else if (t <= 400.0) {
                value = evaluate_theta(params, t, {.accelerate = true, .precision = Precision::quad}).value;
            } else {
                value = theta_closed_form(mu, t);
            }
            CAPTURE(mu);
            CAPTURE(t);
            CHECK(std::abs(value / theta_asymptotic(mu, t) - 1.0) <= 0.15);
        }
    }
}

TEST_CASE("legendre_eigenvalue and flammer_to_meixner") {
    CHECK(legendre_eigenvalue(0.0, 1) == cplx(2.0));
    CHECK(legendre_eigenvalue(2.0, 0) == cplx(6.0));
    CHECK(std::abs(legendre_eigenvalue(cplx(2.0, 0.05), 0) - cplx(5.9975, 0.25)) < 1e-15);
    CHECK(std::abs(flammer_to_meixner(0.42895710850, -25.0) - 25.42895710850) < 1e-13);
    CHECK(std::abs(flammer_to_meixner(30.910172248, -25.0) - 55.910172248) < 1e-13);
    CHECK(flammer_to_meixner(0.0, 0.0) == cplx(0.0));
}
