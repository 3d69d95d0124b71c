#pragma once

#include <cstddef>
#include <vector>

#include "cswf/params.hpp"

namespace cswf {

/// Eigenfunction as two endpoint expansions joined at switch_x.
///
/// left(x)  = (1+x)^exp_left (1-x)^-exp_right  sum w_left[k]  ((1+x)/2)^k
/// right(x) = (1-x)^exp_right (1+x)^-exp_left  sum w_right[k] ((1-x)/2)^k
/// w(x) = scale * left(x) for x <= switch_x, scale * c_match * right(x) otherwise.
struct EigenfunctionSeries {
    cplx lambda;
    std::vector<cplx> w_left;
    std::vector<cplx> w_right;
    cplx exp_left;
    cplx exp_right;
    cplx c_match;
    double switch_x = 0.0;
    /// Overall factor; 1 keeps the normalization w ~ (1+x)^exp_left at x = -1.
    cplx scale = 1.0;
};

/// Expansion coefficients at an eigenvalue. k_max = 0 picks 4x the number of
/// recurrence terms Theta needed at lambda (at least 64, at most 20000).
/// Throws NotAnEigenvalue when |Theta~(lambda)| > 1e-7 and MatchFailure when the
/// right expansion vanishes at 0 and at +-0.1.
EigenfunctionSeries series_coefficients(const ProblemParams& params, cplx lambda, std::size_t k_max = 0);

/// w(x) for -1 <= x <= 1; the endpoint values are the limits of the prefactors.
cplx evaluate(const EigenfunctionSeries& series, double x);
/// Left expansion alone (no c_match), for consistency checks.
cplx evaluate_left(const EigenfunctionSeries& series, double x);
/// c_match times the right expansion alone.
cplx evaluate_right(const EigenfunctionSeries& series, double x);

/// |d/dx[(1-x^2)w'] + (lambda + beta x + gamma^2(1-x^2) - (mu^2+alpha^2+2 alpha mu x)/(1-x^2)) w|
/// by 5-point central differences on one branch (the one x falls on).
/// Requires -1+2h < x < 1-2h.
double ode_residual(const ProblemParams& params, const EigenfunctionSeries& series, double x, double h = 1e-3);

/// max |w| on n uniform points of [lo, hi].
double max_abs(const EigenfunctionSeries& series, double lo, double hi, std::size_t n = 181);

/// Copy with scale chosen so that the integral of |w|^2 over [-1,1] is 1
/// (trapezoidal rule on 1001 points).
EigenfunctionSeries l2_normalized(const EigenfunctionSeries& series);

}  // namespace cswf
