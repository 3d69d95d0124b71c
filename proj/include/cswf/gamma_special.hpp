#pragma once

#include "cswf/precision.hpp"

namespace cswf {

/// tau = sqrt(t + (mu+1/2)^2) on the branch -pi/2 < arg(tau) <= pi/2.
struct Tau {
    cplx value;
};

Tau make_tau(cplx mu, cplx t);

/// Principal branch of log Gamma(z), analytic off (-inf, 0].
/// Throws PoleError for z in {0, -1, -2, ...}.
cplx log_gamma(cplx z);

/// Theta(t) for beta = gamma = 0:
///   Gamma(mu+1)^2 / (Gamma(mu+1/2-tau) Gamma(mu+1/2+tau)),
/// evaluated in log space. Returns exactly 0 when mu+1/2 +- tau lies within
/// 1e-12 of a Gamma pole.
cplx theta_closed_form(cplx mu, cplx t);

/// Leading-order large-|t| behavior of Theta for beta = gamma = 0 and real mu >= 0.
/// Meaningful for |t| >= 50; throws Overflow when the t < 0 branch exceeds binary64.
double theta_asymptotic(double mu, double t);

/// (n+mu)(n+mu+1): eigenvalue of the associated Legendre equation.
cplx legendre_eigenvalue(cplx mu, int n);

/// Eigenvalue in Flammer's normalization.
struct FlammerValue {
    cplx Lambda;
};

/// lambda = Lambda - gamma^2.
cplx flammer_to_meixner(FlammerValue value, cplx gamma2);
inline cplx flammer_to_meixner(cplx Lambda, cplx gamma2) { return flammer_to_meixner(FlammerValue{Lambda}, gamma2); }

}  // namespace cswf
