#include "cswf/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cswf/detail/recurrence.hpp"
#include "cswf/errors.hpp"

namespace cswf {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_options(const ThetaOptions& opts) {
    if (!(opts.tol > 0.0)) throw DomainError("theta: tol must be positive");
    if (!(opts.scale > 0.0) || !std::isfinite(opts.scale)) throw DomainError("theta: scale must be positive");
    if (opts.k_min < 2) throw DomainError("theta: k_min must be >= 2");
    if (opts.k_max < opts.k_min) throw DomainError("theta: k_max must be >= k_min");
}

/// Removes the k^-q and k^-(q+1) tail terms by Richardson extrapolation over
/// Theta_m, Theta_2m, Theta_4m. Short runs, or runs whose early partial sums
/// are still far from the asymptotic regime, use the single-difference form.
cplx extrapolate(const std::vector<cplx>& history, double q, cplx last_increment) {
    const std::size_t k = history.size() - 1;
    const cplx simple = history[k] + last_increment * (static_cast<double>(k) / q);
    const std::size_t m = k / 4;
    if (m < 64) return simple;
    const double a = std::pow(2.0, q);
    const double b = 2.0 * a;
    const cplx coarse = (a * history[2 * m] - history[m]) / (a - 1.0);
    const cplx fine = (a * history[4 * m] - history[2 * m]) / (a - 1.0);
    const cplx twice = (b * fine - coarse) / (b - 1.0) + (history[k] - history[4 * m]);
    const double shift = std::abs(simple - history[k]);
    if (std::abs(twice - history[k]) > 10.0 * shift + 1e-300) return simple;
    return twice;
}

template <class R>
ThetaEvaluation run(const ProblemParams& params, cplx t, const ThetaOptions& opts, double eps) {
    const detail::RecurrenceCoeffs<R> coeffs(params, t);
    detail::State<R> s = detail::initial(coeffs);

    ThetaEvaluation out;
    if (opts.record_w) {
        out.w_coeffs.reserve(std::min<std::size_t>(opts.k_max + 1, 4096));
        out.w_coeffs.push_back(1.0);
    }
    std::vector<cplx> history;  // Theta_0..Theta_k, for extrapolation
    if (opts.accelerate) history.push_back(detail::narrow(s.theta));
    double peak = std::abs(detail::narrow(s.theta));
    double step_prev = 0.0;  // |Theta_{k-1} - Theta_{k-2}|
    cplx last_increment = 0.0;
    std::size_t k = 0;
    for (k = 1; k <= opts.k_max; ++k) {
        const detail::State<R> next = detail::advance(s, coeffs, k);
        const cplx increment = detail::narrow(next.theta - s.theta);
        const cplx value = detail::narrow(next.theta);
        s = next;
        if (!finite(value) || !finite(increment)) {
            out.status = ThetaStatus::overflow;
            out.k_used = k;
            out.value = value;
            out.converged = false;
            out.err_estimate = std::numeric_limits<double>::infinity();
            out.rounding_floor = std::numeric_limits<double>::infinity();
            return out;
        }
        if (opts.record_w) out.w_coeffs.push_back(detail::narrow(s.w));
        if (opts.accelerate) history.push_back(value);
        const double step = std::abs(increment);
        const double magnitude = std::abs(value);
        peak = std::max({peak, magnitude, std::abs(detail::narrow(s.a))});
        last_increment = increment;
        out.err_estimate = (step + step_prev) / std::max(opts.scale, magnitude);
        step_prev = step;
        if (k >= opts.k_min && out.err_estimate <= opts.tol) {
            out.converged = true;
            out.status = ThetaStatus::converged;
            break;
        }
    }
    out.k_used = std::min(k, opts.k_max);
    out.value = detail::narrow(s.theta);
    if (opts.accelerate) out.value = extrapolate(history, (params.mu() + params.alpha()).real() + 2.0, last_increment);
    out.rounding_floor = eps * peak;
    return out;
}

template <class R>
std::vector<cplx> partial_sums(const ProblemParams& params, cplx t, std::size_t k_max) {
    const detail::RecurrenceCoeffs<R> coeffs(params, t);
    detail::State<R> s = detail::initial(coeffs);
    std::vector<cplx> out;
    out.reserve(k_max + 1);
    out.push_back(detail::narrow(s.theta));
    for (std::size_t k = 1; k <= k_max; ++k) {
        s = detail::advance(s, coeffs, k);
        out.push_back(detail::narrow(s.theta));
    }
    return out;
}

}  // namespace

RecurrenceState initial_state(const ProblemParams& params, cplx t) {
    const detail::RecurrenceCoeffs<double> coeffs(params, t);
    const auto s = detail::initial(coeffs);
    return {0, s.a, s.b, s.w, s.theta};
}

RecurrenceState theta_step(const RecurrenceState& state, const ProblemParams& params, cplx t) {
    const detail::RecurrenceCoeffs<double> coeffs(params, t);
    const detail::State<double> s{state.a, state.b, state.w, state.theta};
    const auto n = detail::advance(s, coeffs, state.k + 1);
    return {state.k + 1, n.a, n.b, n.w, n.theta};
}

cplx theta_weight(const ProblemParams& params, cplx t) {
    return detail::RecurrenceCoeffs<double>(params, t).weight;
}

ThetaEvaluation evaluate_theta(const ProblemParams& params, cplx t, const ThetaOptions& opts) {
    check_options(opts);
    if (!finite(t)) throw DomainError("theta: t must be finite");
    const double eps = epsilon_of(opts.precision);
    switch (opts.precision) {
        case Precision::binary64:
            return run<double>(params, t, opts, eps);
        case Precision::extended:
            return run<long double>(params, t, opts, eps);
        case Precision::quad:
            return run<quad_real>(params, t, opts, eps);
    }
    return run<double>(params, t, opts, eps);
}

ThetaEvaluation eval_theta(const ProblemParams& params, cplx t, const ThetaOptions& opts) {
    ThetaEvaluation ev = evaluate_theta(params, t, opts);
    if (ev.status == ThetaStatus::overflow) throw Overflow(ev.k_used);
    if (!ev.converged) throw NonConvergence(opts.k_max, ev.err_estimate);
    return ev;
}

ThetaEvaluation eval_theta_lambda(const ProblemParams& params, cplx lambda, const ThetaOptions& opts) {
    return eval_theta(params, params.t_of(lambda), opts);
}

std::vector<cplx> theta_partial_sums(const ProblemParams& params, cplx t, std::size_t k_max,
                                     Precision precision) {
    switch (precision) {
        case Precision::binary64:
            return partial_sums<double>(params, t, k_max);
        case Precision::extended:
            return partial_sums<long double>(params, t, k_max);
        case Precision::quad:
            return partial_sums<quad_real>(params, t, k_max);
    }
    return {};
}

Eigen::Vector2cd projection_vector(const ProblemParams& params, cplx t) {
    const cplx mu = params.mu();
    return {1.0, -(params.beta() + t) / (mu + 1.0)};
}

std::vector<Eigen::Vector2cd> recurrence_vectors(const ProblemParams& params, cplx t, std::size_t k_max) {
    if (!params.is_coulomb()) throw DomainError("recurrence_vectors: only defined for alpha = 0");
    const cplx mu = params.mu();
    const cplx beta = params.beta();
    const cplx gamma2 = params.gamma2();

    std::vector<Eigen::Vector2cd> d;
    d.reserve(k_max + 1);
    Eigen::Vector2cd u((beta - t) / (mu + 1.0), 1.0);
    d.push_back(u);
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double kd = static_cast<double>(k);
        const cplx shifted = kd + mu + 1.0;
        Eigen::Matrix2cd on_d;
        on_d << 0.0, (t - beta) / kd - 2.0 * t / shifted,
                0.0, -(mu + 1.0) / kd;
        Eigen::Matrix2cd on_u;
        on_u << (t - beta) / (kd * shifted), 4.0 * gamma2 / shifted,
                -1.0 / kd, 0.0;
        u = on_d * d.back() - on_u * u;
        d.push_back(d.back() + u);
        if (!finite(d.back()(0)) || !finite(d.back()(1))) throw Overflow(k);
    }
    return d;
}

}  // namespace cswf
