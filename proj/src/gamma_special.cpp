#include "cswf/gamma_special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "cswf/errors.hpp"

namespace cswf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStirlingStart = 15.0;

// B_{2n} / (2n (2n-1)) for n = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,        1.0 / 1260.0,     -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,   1.0 / 156.0,      -3617.0 / 122400.0,
};

cplx stirling(cplx z) {
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series = 0.0;
    for (auto it = kStirling.rbegin(); it != kStirling.rend(); ++it) series = series * inv2 + *it;
    series *= inv;
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

bool near_pole(cplx z, double tol) {
    if (std::abs(z.imag()) > tol || z.real() > tol) return false;
    return std::abs(z.real() - std::round(z.real())) <= tol;
}

}  // namespace

Tau make_tau(cplx mu, cplx t) {
    const cplx h = mu + 0.5;
    cplx tau = std::sqrt(t + h * h);
    if (tau.real() < 0.0 || (tau.real() == 0.0 && tau.imag() < 0.0)) tau = -tau;
    return {tau};
}

cplx log_gamma(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real())) throw PoleError(z);
    if (z.real() >= kStirlingStart) return stirling(z);
    // log Gamma(z) = log Gamma(z+n) - sum_{j<n} log(z+j); each log on its principal
    // branch, which keeps the result on the principal branch of log Gamma.
    const auto n = static_cast<int>(std::ceil(kStirlingStart - z.real()));
    cplx correction = 0.0;
    for (int j = 0; j < n; ++j) correction += std::log(z + static_cast<double>(j));
    return stirling(z + static_cast<double>(n)) - correction;
}

cplx theta_closed_form(cplx mu, cplx t) {
    const cplx tau = make_tau(mu, t).value;
    const cplx lower = mu + 0.5 - tau;
    const cplx upper = mu + 0.5 + tau;
    if (near_pole(lower, 1e-12) || near_pole(upper, 1e-12)) return 0.0;
    return std::exp(2.0 * log_gamma(mu + 1.0) - log_gamma(lower) - log_gamma(upper));
}

double theta_asymptotic(double mu, double t) {
    if (mu < 0.0) throw DomainError("theta_asymptotic: mu must be >= 0");
    if (t == 0.0) throw DomainError("theta_asymptotic: t must be nonzero");
    const double lg = 2.0 * std::lgamma(mu + 1.0);
    if (t > 0.0) return std::exp(lg - mu * std::log(t)) / kPi * std::cos((std::sqrt(t) - mu) * kPi);
    const double exponent = lg - mu * std::log(-t) + kPi * std::sqrt(-t);
    if (kPi * std::sqrt(-t) > 709.0 || exponent > 709.0) {
        throw Overflow("theta_asymptotic: exp(pi*sqrt|t|) overflows binary64 at t=" + std::to_string(t), 0);
    }
    return std::exp(exponent) / (2.0 * kPi);
}

cplx legendre_eigenvalue(cplx mu, int n) {
    if (n < 0) throw DomainError("legendre_eigenvalue: n must be >= 0");
    const cplx nu = static_cast<double>(n) + mu;
    return nu * (nu + 1.0);
}

cplx flammer_to_meixner(FlammerValue value, cplx gamma2) { return value.Lambda - gamma2; }

}  // namespace cswf
