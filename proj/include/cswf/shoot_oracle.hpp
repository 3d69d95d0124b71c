#pragma once

#include <cstddef>
#include <vector>

#include "cswf/params.hpp"
#include "cswf/solver.hpp"

namespace cswf {

/// Two-sided shooting on the analytic-factor form
///   (1-x^2) psi'' - (2(mu+1)x + 2 alpha) psi' + (t + beta x + gamma^2 (1-x^2)) psi = 0,
/// w = (1+x)^((mu-alpha)/2) (1-x)^((mu+alpha)/2) psi. Shares nothing with the
/// recurrence code.
struct ShootConfig {
    /// Integration starts at -1+delta and 1-delta.
    double delta = 1e-3;
    /// Local error tolerance of the Dormand-Prince 5(4) pair.
    double step_tol = 1e-10;
    std::size_t max_steps = 200000;
};

struct ShootState {
    cplx psi;
    cplx dpsi;
};

/// Coefficients c_n of the regular solution psi = sum c_n (1+x)^n at x = -1, c_0 = 1.
/// Throws StartSingularity when a recursion denominator vanishes.
std::vector<cplx> frobenius_coefficients(const ProblemParams& params, cplx lambda, std::size_t n_terms);

/// psi and psi' of the regular solution at x = -1+s from the truncated series.
ShootState frobenius_start(const ProblemParams& params, cplx lambda, double s, std::size_t n_terms = 24);

struct Mismatch {
    /// psi_L psi_R' - psi_L' psi_R at x = 0.
    cplx raw;
    /// raw / ((|psi_L| + |psi_L'|)(|psi_R| + |psi_R'|)).
    cplx normalized;
    std::size_t steps = 0;
};

/// Wronskian of the left and right regular solutions at x = 0.
/// Throws IntegratorFailure, StartSingularity, DomainError for a bad config.
Mismatch shoot(const ProblemParams& params, cplx lambda, const ShootConfig& cfg = {});

/// Normalized Wronskian mismatch (zero exactly at eigenvalues).
cplx wronskian_mismatch(const ProblemParams& params, cplx lambda, const ShootConfig& cfg = {});

/// Secant iteration on the Wronskian from lambda_guess; residual = |normalized W|.
/// Throws NoConvergence, Stagnation.
Eigenvalue oracle_eigenvalue(const ProblemParams& params, cplx lambda_guess, const ShootConfig& cfg = {});

}  // namespace cswf
