#include "cswf/shoot_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cswf/errors.hpp"

namespace cswf {

namespace {

void check_config(const ShootConfig& cfg) {
    if (!(cfg.delta > 0.0 && cfg.delta <= 0.1)) throw DomainError("shoot: delta must satisfy 0 < delta <= 0.1");
    if (!(cfg.step_tol > 0.0)) throw DomainError("shoot: step_tol must be positive");
    if (cfg.max_steps == 0) throw DomainError("shoot: max_steps must be positive");
}

struct Ode {
    cplx two_mu1;  // 2(mu+1)
    cplx two_alpha;
    cplx t;
    cplx beta;
    cplx gamma2;

    ShootState rhs(double x, const ShootState& y) const {
        const double q = 1.0 - x * x;
        const cplx d2 = ((two_mu1 * x + two_alpha) * y.dpsi - (t + beta * x + gamma2 * q) * y.psi) / q;
        return {y.dpsi, d2};
    }
};

ShootState axpy(const ShootState& y, double h, std::initializer_list<std::pair<double, const ShootState*>> terms) {
    ShootState out = y;
    for (const auto& [c, k] : terms) {
        out.psi += h * c * k->psi;
        out.dpsi += h * c * k->dpsi;
    }
    return out;
}

/// Dormand-Prince 5(4) with local extrapolation from x0 to x1.
ShootState integrate(const Ode& ode, double x0, double x1, ShootState y, const ShootConfig& cfg, std::size_t& steps) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - b* (fifth minus fourth order weights)
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double direction = x1 > x0 ? 1.0 : -1.0;
    double x = x0;
    double h = direction * std::min(std::abs(x1 - x0), 1e-2 * cfg.delta + 1e-6);
    ShootState k1 = ode.rhs(x, y);
    while (direction * (x1 - x) > 0.0) {
        if (steps++ >= cfg.max_steps) {
            throw IntegratorFailure("shoot: exceeded max_steps=" + std::to_string(cfg.max_steps));
        }
        if (direction * (x + h - x1) > 0.0) h = x1 - x;
        const ShootState k2 = ode.rhs(x + c2 * h, axpy(y, h, {{a21, &k1}}));
        const ShootState k3 = ode.rhs(x + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
        const ShootState k4 = ode.rhs(x + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const ShootState k5 = ode.rhs(x + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const ShootState k6 =
            ode.rhs(x + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const ShootState next = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const ShootState k7 = ode.rhs(x + h, next);
        const ShootState err = axpy({0.0, 0.0}, h, {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &k7}});

        const double sc_psi = cfg.step_tol * (1.0 + std::max(std::abs(y.psi), std::abs(next.psi)));
        const double sc_dpsi = cfg.step_tol * (1.0 + std::max(std::abs(y.dpsi), std::abs(next.dpsi)));
        const double ratio =
            std::sqrt(0.5 * (std::norm(err.psi / sc_psi) + std::norm(err.dpsi / sc_dpsi)));
        if (!std::isfinite(ratio)) throw IntegratorFailure("shoot: non-finite solution");
        if (ratio <= 1.0) {
            x += h;
            y = next;
            k1 = k7;
        }
        const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
        h *= ratio <= 1.0 ? factor : std::min(factor, 1.0);
        if (std::abs(h) < 1e-14) throw IntegratorFailure("shoot: step size underflow");
    }
    return y;
}

}  // namespace

std::vector<cplx> frobenius_coefficients(const ProblemParams& params, cplx lambda, std::size_t n_terms) {
    const cplx mu = params.mu();
    const cplx alpha = params.alpha();
    const cplx beta = params.beta();
    const cplx gamma2 = params.gamma2();
    const cplx t = lambda - mu * (mu + 1.0);
    std::vector<cplx> c(std::max<std::size_t>(n_terms, 1), 0.0);
    c[0] = 1.0;
    for (std::size_t n = 0; n + 1 < c.size(); ++n) {
        const double nd = static_cast<double>(n);
        const cplx denom = 2.0 * (nd + 1.0) * (nd + mu + 1.0 - alpha);
        if (std::abs(denom) < 1e-300) throw StartSingularity("shoot: singular Frobenius recursion at the endpoint");
        cplx rhs = (nd * (nd + 2.0 * mu + 1.0) - (t - beta)) * c[n];
        if (n >= 1) rhs -= (beta + 2.0 * gamma2) * c[n - 1];
        if (n >= 2) rhs += gamma2 * c[n - 2];
        c[n + 1] = rhs / denom;
    }
    return c;
}

ShootState frobenius_start(const ProblemParams& params, cplx lambda, double s, std::size_t n_terms) {
    const std::vector<cplx> c = frobenius_coefficients(params, lambda, n_terms);
    ShootState out{0.0, 0.0};
    for (std::size_t n = c.size(); n-- > 0;) {
        out.psi = out.psi * s + c[n];
        if (n >= 1) out.dpsi = out.dpsi * s + static_cast<double>(n) * c[n];
    }
    return out;
}

Mismatch shoot(const ProblemParams& params, cplx lambda, const ShootConfig& cfg) {
    check_config(cfg);
    if (params.is_coulomb() && params.mu().real() + 1.0 <= 0.0) {
        throw StartSingularity("shoot: Re(mu+1) <= 0");
    }
    const cplx t = params.t_of(lambda);
    Mismatch out;

    const Ode left{2.0 * (params.mu() + 1.0), 2.0 * params.alpha(), t, params.beta(), params.gamma2()};
    const ShootState l = integrate(left, -1.0 + cfg.delta, 0.0, frobenius_start(params, lambda, cfg.delta), cfg,
                                   out.steps);

    // Mirror image: psi_R(x) = phi(-x), phi regular at -1 for (-alpha, -beta).
    const ProblemParams mirror = params.reflected();
    const Ode right{2.0 * (mirror.mu() + 1.0), 2.0 * mirror.alpha(), t, mirror.beta(), mirror.gamma2()};
    const ShootState r_m = integrate(right, -1.0 + cfg.delta, 0.0, frobenius_start(mirror, lambda, cfg.delta), cfg,
                                     out.steps);
    const ShootState r{r_m.psi, -r_m.dpsi};

    out.raw = l.psi * r.dpsi - l.dpsi * r.psi;
    const double norm = (std::abs(l.psi) + std::abs(l.dpsi)) * (std::abs(r.psi) + std::abs(r.dpsi));
    out.normalized = norm > 0.0 ? out.raw / norm : out.raw;
    return out;
}

cplx wronskian_mismatch(const ProblemParams& params, cplx lambda, const ShootConfig& cfg) {
    return shoot(params, lambda, cfg).normalized;
}

Eigenvalue oracle_eigenvalue(const ProblemParams& params, cplx lambda_guess, const ShootConfig& cfg) {
    constexpr int max_iter = 60;
    constexpr double tol = 1e-12;
    cplx x0 = lambda_guess;
    const double offset = 1e-3 * std::max(1.0, std::abs(lambda_guess));
    cplx x1 = lambda_guess + (lambda_guess.imag() == 0.0 && params.is_real() ? cplx(offset) : cplx(offset, offset));
    cplx f0 = shoot(params, x0, cfg).raw;
    cplx f1 = shoot(params, x1, cfg).raw;
    int it = 0;
    while (f1 != cplx(0.0)) {
        if (++it > max_iter) throw NoConvergence(max_iter, "shooting oracle");
        if (f1 == f0) throw Stagnation("shooting oracle: equal mismatches at both seeds; reseed");
        const cplx x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = shoot(params, x1, cfg).raw;
        if (std::abs(x1 - x0) <= tol * std::max(1.0, std::abs(x1))) break;
    }
    Eigenvalue out;
    out.lambda = x1;
    out.t = params.t_of(x1);
    out.residual = std::abs(shoot(params, x1, cfg).normalized);
    out.iterations = it;
    return out;
}

}  // namespace cswf
