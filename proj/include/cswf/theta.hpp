#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <vector>

#include "cswf/params.hpp"
#include "cswf/precision.hpp"

namespace cswf {

/// Scalars (a_k, b_k, w_k, Theta_k) of the recurrence at step k.
struct RecurrenceState {
    std::size_t k = 0;
    cplx a;
    cplx b;
    cplx w;
    cplx theta;
};

/// State at k = 0 for argument t.
RecurrenceState initial_state(const ProblemParams& params, cplx t);

/// Advances `state` by one step. Pure; works for both alpha == 0 and alpha != 0.
RecurrenceState theta_step(const RecurrenceState& state, const ProblemParams& params, cplx t);

/// Weight (beta+t)/(mu+alpha+1) that projects d_k onto Theta_k.
cplx theta_weight(const ProblemParams& params, cplx t);

struct ThetaOptions {
    double tol = 1e-13;
    std::size_t k_min = 16;
    std::size_t k_max = 20000;
    /// Absolute floor of the stopping rule: err is measured against max(scale, |Theta_k|).
    double scale = 1.0;
    /// Richardson extrapolation of the tail using the known k^-(Re(mu+alpha)+2) error order.
    bool accelerate = false;
    /// Keep w_0..w_k in the result (eigenfunction coefficients).
    bool record_w = false;
    Precision precision = Precision::binary64;
};

enum class ThetaStatus { converged, max_iterations, overflow };

struct ThetaEvaluation {
    cplx value;
    std::size_t k_used = 0;
    /// (|Theta_k - Theta_{k-1}| + |Theta_{k-1} - Theta_{k-2}|) / max(scale, |Theta_k|).
    double err_estimate = 0.0;
    bool converged = false;
    ThetaStatus status = ThetaStatus::max_iterations;
    /// Absolute error floor from cancellation: epsilon of the working format
    /// times the largest partial sum encountered.
    double rounding_floor = 0.0;
    std::vector<cplx> w_coeffs;
};

/// Iterates the recurrence under the stopping rule and reports the outcome in
/// `status` instead of throwing. Throws DomainError for invalid options only.
ThetaEvaluation evaluate_theta(const ProblemParams& params, cplx t, const ThetaOptions& opts = {});

/// As evaluate_theta, but throws NonConvergence / Overflow on failure.
ThetaEvaluation eval_theta(const ProblemParams& params, cplx t, const ThetaOptions& opts = {});

/// Theta at t = lambda - mu(mu+1).
ThetaEvaluation eval_theta_lambda(const ProblemParams& params, cplx lambda, const ThetaOptions& opts = {});

/// Partial sums Theta_0..Theta_{k_max} without a stopping rule.
std::vector<cplx> theta_partial_sums(const ProblemParams& params, cplx t, std::size_t k_max,
                                     Precision precision = Precision::binary64);

/// d_0..d_{k_max} from the 2x2 matrix form of the recurrence (alpha == 0 only).
std::vector<Eigen::Vector2cd> recurrence_vectors(const ProblemParams& params, cplx t, std::size_t k_max);

/// Projection vector (1, -(beta+t)/(mu+1)) for recurrence_vectors.
Eigen::Vector2cd projection_vector(const ProblemParams& params, cplx t);

}  // namespace cswf
