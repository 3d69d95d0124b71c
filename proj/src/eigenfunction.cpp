#include "cswf/eigenfunction.hpp"

#include <algorithm>
#include <cmath>

#include "cswf/errors.hpp"
#include "cswf/theta.hpp"

namespace cswf {

namespace {

constexpr std::size_t kMaxTerms = 20000;

cplx horner(const std::vector<cplx>& w, double z) {
    cplx sum = 0.0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) sum = sum * z + *it;
    return sum;
}

/// u^p with the limit at u = 0 (0 for Re p > 0, 1 for p = 0).
cplx power(double u, cplx p) {
    if (u == 0.0) return p == cplx(0.0) ? cplx(1.0) : cplx(0.0);
    return std::exp(p * std::log(u));
}

cplx left_raw(const EigenfunctionSeries& s, double x) {
    const double up = 1.0 + x;
    const double down = 1.0 - x;
    return power(up, s.exp_left) * power(down, -s.exp_right) * horner(s.w_left, up / 2.0);
}

cplx right_raw(const EigenfunctionSeries& s, double x) {
    const double up = 1.0 + x;
    const double down = 1.0 - x;
    return power(down, s.exp_right) * power(up, -s.exp_left) * horner(s.w_right, down / 2.0);
}

std::vector<cplx> coefficients(const ProblemParams& params, cplx t, std::size_t k_max) {
    ThetaOptions opts;
    opts.k_min = k_max;
    opts.k_max = k_max;
    opts.record_w = true;
    opts.precision = Precision::quad;
    ThetaEvaluation ev = evaluate_theta(params, t, opts);
    if (ev.status == ThetaStatus::overflow) throw Overflow("eigenfunction coefficients overflowed", ev.k_used);
    return std::move(ev.w_coeffs);
}

void check_x(double x) {
    if (!(x >= -1.0 && x <= 1.0)) throw DomainError("eigenfunction: x must lie in [-1, 1]");
}

}  // namespace

EigenfunctionSeries series_coefficients(const ProblemParams& params, cplx lambda, std::size_t k_max) {
    const cplx t = params.t_of(lambda);
    ThetaOptions check;
    check.precision = Precision::quad;
    check.accelerate = true;
    const ThetaEvaluation at = evaluate_theta(params, t, check);
    const double residual = std::abs(at.value);
    if (at.status == ThetaStatus::overflow || !(residual <= 1e-7)) throw NotAnEigenvalue(residual);
    if (k_max == 0) k_max = std::clamp<std::size_t>(4 * at.k_used, 64, kMaxTerms);
    if (k_max < 16) throw DomainError("series_coefficients: k_max must be >= 16");

    EigenfunctionSeries s;
    s.lambda = lambda;
    s.exp_left = (params.mu() - params.alpha()) / 2.0;
    s.exp_right = (params.mu() + params.alpha()) / 2.0;
    s.w_left = coefficients(params, t, k_max);
    s.w_right = coefficients(params.reflected(), t, k_max);
    s.c_match = 0.0;
    for (const double x : {0.0, 0.1, -0.1}) {
        const cplx r = right_raw(s, x);
        if (std::abs(r) < 1e-14) continue;
        s.switch_x = x;
        s.c_match = left_raw(s, x) / r;
        return s;
    }
    throw MatchFailure("eigenfunction: right expansion vanishes at x = 0 and x = +-0.1");
}

cplx evaluate_left(const EigenfunctionSeries& series, double x) {
    check_x(x);
    return series.scale * left_raw(series, x);
}

cplx evaluate_right(const EigenfunctionSeries& series, double x) {
    check_x(x);
    return series.scale * series.c_match * right_raw(series, x);
}

cplx evaluate(const EigenfunctionSeries& series, double x) {
    return x <= series.switch_x ? evaluate_left(series, x) : evaluate_right(series, x);
}

double ode_residual(const ProblemParams& params, const EigenfunctionSeries& series, double x, double h) {
    if (!(h > 0.0)) throw DomainError("ode_residual: h must be positive");
    if (!(x > -1.0 + 2.0 * h && x < 1.0 - 2.0 * h)) {
        throw DomainError("ode_residual: need -1+2h < x < 1-2h");
    }
    const bool left = x <= series.switch_x;
    auto w = [&](double y) { return left ? evaluate_left(series, y) : evaluate_right(series, y); };
    const cplx wm2 = w(x - 2.0 * h), wm1 = w(x - h), w0 = w(x), wp1 = w(x + h), wp2 = w(x + 2.0 * h);
    const cplx d1 = (wm2 - 8.0 * wm1 + 8.0 * wp1 - wp2) / (12.0 * h);
    const cplx d2 = (-wm2 + 16.0 * wm1 - 30.0 * w0 + 16.0 * wp1 - wp2) / (12.0 * h * h);
    const double one_minus = 1.0 - x * x;
    const cplx mu = params.mu();
    const cplx alpha = params.alpha();
    const cplx potential = series.lambda + params.beta() * x + params.gamma2() * one_minus -
                           (mu * mu + alpha * alpha + 2.0 * alpha * mu * x) / one_minus;
    return std::abs(one_minus * d2 - 2.0 * x * d1 + potential * w0);
}

double max_abs(const EigenfunctionSeries& series, double lo, double hi, std::size_t n) {
    double out = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        out = std::max(out, std::abs(evaluate(series, x)));
    }
    return out;
}

EigenfunctionSeries l2_normalized(const EigenfunctionSeries& series) {
    constexpr std::size_t n = 1001;
    EigenfunctionSeries unit = series;
    unit.scale = 1.0;
    double integral = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        const double weight = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        integral += weight * std::norm(evaluate(unit, x));
    }
    integral *= 2.0 / static_cast<double>(n - 1);
    if (!(integral > 0.0) || !std::isfinite(integral)) throw NumericalError("l2_normalized: norm is not finite");
    unit.scale = 1.0 / std::sqrt(integral);
    return unit;
}

}  // namespace cswf
