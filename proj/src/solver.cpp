#include "cswf/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "cswf/errors.hpp"
#include "cswf/gamma_special.hpp"
#include "cswf/parallel.hpp"

namespace cswf {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double scale_of(cplx z) { return std::max(1.0, std::abs(z)); }

cplx theta_value(const ProblemParams& params, cplx t, const ThetaOptions& opts) {
    const ThetaEvaluation ev = evaluate_theta(params, t, opts);
    if (ev.status == ThetaStatus::overflow) throw Overflow(ev.k_used);
    return ev.value;
}

struct SecantOutcome {
    cplx x;
    cplx fx;
    int iterations = 0;
    /// |f'| estimated from the last secant step.
    double slope = 0.0;
};

/// f(x, slope) receives the current estimate of |f'| (0 while unknown).
/// done(x, fx, dx) decides convergence after each step.
template <class F, class Done>
SecantOutcome secant(F&& f, Done&& done, cplx x0, cplx x1, int max_iter, double slope = 0.0) {
    cplx f0 = f(x0, slope);
    if (f0 == cplx(0.0)) return {x0, f0, 0, slope};
    cplx f1 = f(x1, slope);
    if (f1 == cplx(0.0)) return {x1, f1, 0, slope};
    for (int it = 1; it <= max_iter; ++it) {
        if (f1 == f0) throw Stagnation("secant denominator vanished (theta(t0) == theta(t1)); reseed");
        slope = std::abs(f1 - f0) / std::abs(x1 - x0);
        const cplx x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!finite(x2)) throw Stagnation("secant step is not finite; reseed");
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1, slope);
        if (f1 == cplx(0.0) || done(x1, f1, std::abs(x1 - x0))) {
            if (x1 != x0 && f1 != f0) slope = std::abs(f1 - f0) / std::abs(x1 - x0);
            return {x1, f1, it, slope};
        }
    }
    throw NoConvergence(max_iter);
}

/// Illinois variant of regula falsi on a real bracket.
template <class F>
double illinois(F&& f, double a, double b, double fa, double fb, double tol, int max_iter) {
    int side = 0;
    for (int it = 0; it < max_iter; ++it) {
        const double c = (a * fb - b * fa) / (fb - fa);
        const double fc = f(c);
        if (fc == 0.0 || std::abs(b - a) <= tol * std::max(1.0, std::abs(c))) return c;
        if (fc * fb > 0.0) {
            b = c;
            fb = fc;
            if (side == -1) fa *= 0.5;
            side = -1;
        } else {
            a = c;
            fa = fc;
            if (side == +1) fb *= 0.5;
            side = +1;
        }
    }
    return (a * fb - b * fa) / (fb - fa);
}

/// Residual check at the accepted point. A steep Theta cannot be driven below
/// |Theta'| x (spacing of binary64 numbers at lambda); when the bound fails,
/// the slope is measured there and the test is relaxed to that floor.
Eigenvalue finish(const ProblemParams& params, cplx t, int iterations, const SolverOptions& opts) {
    const ThetaEvaluation ev = evaluate_theta(params, t, opts.theta);
    if (ev.status == ThetaStatus::overflow) throw Overflow(ev.k_used);
    Eigenvalue out;
    out.t = t;
    out.lambda = params.lambda_of(t);
    out.residual = std::abs(ev.value);
    out.iterations = iterations;
    out.k_used = ev.k_used;
    if (out.residual <= opts.residual_tol) return out;

    const double ulp = std::numeric_limits<double>::epsilon() * scale_of(out.lambda);
    const double h = 64.0 * ulp;
    const cplx above = theta_value(params, t + h, opts.theta);
    const cplx below = theta_value(params, t - h, opts.theta);
    const double slope = std::abs(above - below) / (2.0 * h);
    const bool straddles = (above.real() - ev.value.real()) * (below.real() - ev.value.real()) < 0.0 ||
                           (above.imag() - ev.value.imag()) * (below.imag() - ev.value.imag()) < 0.0;
    if (straddles && out.residual <= 4.0 * slope * ulp) return out;
    std::ostringstream os;
    os << "residual |theta| = " << out.residual << " exceeds " << opts.residual_tol << " at lambda = " << out.lambda;
    throw NoConvergence(iterations, os.str());
}

Eigenvalue refine_impl(const ProblemParams& params, cplx t0, cplx t1, const std::vector<cplx>& deflate,
                       double tol_t, const SolverOptions& opts) {
    if (t0 == t1) throw DomainError("refine_root: seeds must differ");
    // Where Theta is flat the tail must be cut finer than the default
    // absolute floor of 1: |Theta| error ~ tol x |Theta'|, i.e. ~tol in t.
    auto deflated = [&](const ThetaOptions& theta_opts) {
        return [&params, &deflate, theta_opts](cplx t, double slope) {
            ThetaOptions local = theta_opts;
            for (const cplx r : deflate) slope *= std::abs(t - r);
            const double scale = std::min(slope, 1.0);
            if (scale > 0.0 && std::isfinite(scale)) local.scale = scale;
            cplx v = theta_value(params, t, local);
            for (const cplx r : deflate) v /= (t - r);
            return v;
        };
    };
    int iterations = 0;
    double seed_slope = 0.0;
    cplx a = t0;
    cplx b = t1;
    // Cheap binary64 pass; its accuracy is limited by cancellation in the
    // recurrence, so it only supplies seeds for the polishing pass.
    if (opts.scan.precision != opts.theta.precision) {
        try {
            const double coarse_tol = std::max(tol_t, 1e-10);
            auto coarse_done = [coarse_tol](cplx x, cplx, double dx) { return dx <= coarse_tol * scale_of(x); };
            const SecantOutcome coarse = secant(deflated(opts.scan), coarse_done, t0, t1, opts.max_iter);
            iterations += coarse.iterations;
            seed_slope = coarse.slope;
            const double offset = 1e-7 * scale_of(coarse.x);
            a = coarse.x;
            b = coarse.x + (coarse.x.imag() == 0.0 && t0.imag() == 0.0 && t1.imag() == 0.0 ? cplx(offset)
                                                                                           : cplx(offset, offset));
        } catch (const NumericalError&) {
            a = t0;
            b = t1;
        }
    }
    // A steep Theta can still violate the residual bound after a step below
    // tol_t; keep iterating until the residual is met or dt reaches rounding.
    auto fine_done = [&](cplx x, cplx fx, double dx) {
        if (dx > tol_t * scale_of(x)) return false;
        double residual = std::abs(fx);
        for (const cplx r : deflate) residual *= std::abs(x - r);
        return residual <= 0.5 * opts.residual_tol || dx <= 8.0 * std::numeric_limits<double>::epsilon() * scale_of(x);
    };
    const SecantOutcome fine = secant(deflated(opts.theta), fine_done, a, b, opts.max_iter, seed_slope);
    iterations += fine.iterations;
    return finish(params, fine.x, iterations, opts);
}

std::vector<Eigenvalue> dedupe(std::vector<Eigenvalue> roots, double cluster_tol, bool* collided) {
    std::sort(roots.begin(), roots.end(), [](const Eigenvalue& x, const Eigenvalue& y) {
        if (x.lambda.real() != y.lambda.real()) return x.lambda.real() < y.lambda.real();
        return x.lambda.imag() < y.lambda.imag();
    });
    std::vector<Eigenvalue> out;
    for (const auto& r : roots) {
        const auto dup = std::find_if(out.begin(), out.end(), [&](const Eigenvalue& e) {
            return std::abs(e.lambda - r.lambda) <= cluster_tol;
        });
        if (dup == out.end()) {
            out.push_back(r);
        } else {
            if (collided) *collided = true;
            if (r.residual < dup->residual) *dup = r;
        }
    }
    return out;
}

/// Continuation of a set of roots along a one-parameter family of problems.
class Continuation {
public:
    using Family = std::function<ProblemParams(double)>;

    Continuation(Family family, double param_weight, double s0, std::vector<Eigenvalue> start,
                 bool real_spectrum, const SolverOptions& opts)
        : family_(std::move(family)),
          param_weight_(param_weight),
          real_spectrum_(real_spectrum),
          opts_(opts),
          s_(s0),
          current_(std::move(start)) {
        history_.resize(current_.size());
        for (std::size_t c = 0; c < current_.size(); ++c) history_[c].push_back({s0, current_[c].lambda});
    }

    void advance_to(double target) { advance(target, 0); }

    const std::vector<Eigenvalue>& current() const { return current_; }
    double position() const { return s_; }

private:
    struct Point {
        double s;
        cplx lambda;
    };

    void advance(double target, int depth) {
        std::vector<Eigenvalue> found;
        std::string why;
        if (try_step(target, found, why)) {
            commit(target, std::move(found));
            return;
        }
        if (depth >= opts_.max_subdivisions) {
            std::ostringstream os;
            os << "continuation lost the path between s=" << s_ << " and s=" << target << " (" << why
               << "); increase the number of steps";
            throw PathLoss(os.str());
        }
        const double mid = 0.5 * (s_ + target);
        advance(mid, depth + 1);
        advance(target, depth + 1);
    }

    cplx predict(std::size_t c, double target) const {
        const auto& h = history_[c];
        if (h.size() < 2) return h.back().lambda;
        const Point& p1 = h[h.size() - 2];
        const Point& p2 = h.back();
        return p2.lambda + (p2.lambda - p1.lambda) * ((target - p2.s) / (p2.s - p1.s));
    }

    bool try_step(double target, std::vector<Eigenvalue>& found, std::string& why) {
        const ProblemParams params = family_(target);
        const std::size_t n = current_.size();
        std::vector<cplx> predicted(n);
        std::vector<double> bound(n);
        const double param_move = param_weight_ * std::abs(target - s_);
        for (std::size_t c = 0; c < n; ++c) {
            predicted[c] = predict(c, target);
            bound[c] = opts_.jump_factor * std::max(std::abs(predicted[c] - current_[c].lambda), param_move);
        }
        std::vector<cplx> roots_t;
        found.clear();
        for (std::size_t c = 0; c < n; ++c) {
            const cplx t0 = params.t_of(predicted[c]);
            const double spread = std::max(0.05 * bound[c], 1e-6 * scale_of(t0));
            const cplx t1 = t0 + (real_spectrum_ ? cplx(spread) : cplx(spread, 0.5 * spread));
            try {
                Eigenvalue e = refine_impl(params, t0, t1, roots_t, opts_.tol_t, opts_);
                if (real_spectrum_) {
                    e.lambda = e.lambda.real();
                    e.t = params.t_of(e.lambda);
                }
                roots_t.push_back(e.t);
                found.push_back(e);
            } catch (const NumericalError& err) {
                why = err.what();
                return false;
            }
        }
        if (real_spectrum_) {
            // Real simple spectrum: labels follow the ordering.
            std::sort(found.begin(), found.end(),
                      [](const Eigenvalue& x, const Eigenvalue& y) { return x.lambda.real() < y.lambda.real(); });
        }
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t d = c + 1; d < n; ++d) {
                if (std::abs(found[c].lambda - found[d].lambda) <= opts_.cluster_tol) {
                    why = "two curves collapsed onto one root";
                    return false;
                }
            }
            if (std::abs(found[c].lambda - predicted[c]) > bound[c]) {
                std::ostringstream os;
                os << "root " << found[c].lambda << " outside jump bound " << bound[c] << " of prediction "
                   << predicted[c];
                why = os.str();
                return false;
            }
        }
        return true;
    }

    void commit(double target, std::vector<Eigenvalue> found) {
        for (std::size_t c = 0; c < found.size(); ++c) {
            found[c].index = current_[c].index;
            auto& h = history_[c];
            h.push_back({target, found[c].lambda});
            if (h.size() > 2) h.erase(h.begin());
        }
        current_ = std::move(found);
        s_ = target;
    }

    Family family_;
    double param_weight_;
    bool real_spectrum_;
    SolverOptions opts_;
    double s_;
    std::vector<Eigenvalue> current_;
    std::vector<std::vector<Point>> history_;
};

/// Settings for interior homotopy points, which only steer the next
/// prediction; the endpoint is polished with the caller's settings.
SolverOptions path_options(const SolverOptions& opts) {
    SolverOptions out = opts;
    out.theta.tol = std::max(opts.theta.tol, 1e-11);
    out.scan.tol = std::max(opts.scan.tol, 1e-11);
    out.theta.accelerate = false;
    out.tol_t = std::max(opts.tol_t, 1e-9);
    out.residual_tol = std::numeric_limits<double>::infinity();
    return out;
}

Eigenvalue legendre_start(const ProblemParams& params, int n, const SolverOptions& opts) {
    const cplx lambda = legendre_eigenvalue(params.mu(), n);
    Eigenvalue e;
    e.lambda = lambda;
    e.t = params.t_of(lambda);
    e.index = n;
    const ThetaEvaluation ev = evaluate_theta(params, e.t, opts.theta);
    e.residual = std::abs(ev.value);
    e.k_used = ev.k_used;
    return e;
}

/// Homotopy from (mu, alpha, 0, 0) to params for the contiguous labels [lo, hi].
std::vector<Eigenvalue> homotopy(const ProblemParams& params, int lo, int hi, int steps,
                                 const SolverOptions& opts) {
    const ProblemParams base(params.mu(), params.alpha(), 0.0, 0.0);
    std::vector<Eigenvalue> start;
    for (int n = lo; n <= hi; ++n) start.push_back(legendre_start(base, n, opts));
    if (params.beta() == cplx(0.0) && params.gamma2() == cplx(0.0)) return start;

    if (steps <= 0) steps = default_homotopy_steps(params);
    const cplx beta = params.beta();
    const cplx gamma2 = params.gamma2();
    auto family = [&params, beta, gamma2](double s) {
        return ProblemParams(params.mu(), params.alpha(), s * beta, s * gamma2);
    };
    // Intermediate points only steer the path; the endpoint is polished at full accuracy.
    Continuation path(family, std::abs(beta) + std::abs(gamma2), 0.0, std::move(start), params.is_real(),
                      path_options(opts));
    for (int j = 1; j <= steps; ++j) path.advance_to(static_cast<double>(j) / steps);
    std::vector<Eigenvalue> roots = path.current();
    std::vector<cplx> done;
    for (auto& r : roots) {
        const double offset = 1e-7 * scale_of(r.t);
        const cplx t1 = r.t + (params.is_real() ? cplx(offset) : cplx(offset, offset));
        Eigenvalue polished = refine_impl(params, r.t, t1, done, opts.tol_t, opts);
        if (params.is_real()) {
            polished.lambda = polished.lambda.real();
            polished.t = params.t_of(polished.lambda);
        }
        polished.index = r.index;
        polished.iterations += r.iterations;
        done.push_back(polished.t);
        r = polished;
    }
    return roots;
}

}  // namespace

Eigenvalue refine_root(const ProblemParams& params, cplx t0, cplx t1, double tol_t, const SolverOptions& opts) {
    return refine_impl(params, t0, t1, {}, tol_t, opts);
}

Eigenvalue refine_root_deflated(const ProblemParams& params, cplx t0, cplx t1, const std::vector<cplx>& deflate,
                                const SolverOptions& opts) {
    return refine_impl(params, t0, t1, deflate, opts.tol_t, opts);
}

ThetaEvaluation sample_theta(const ProblemParams& params, cplx t, const SolverOptions& opts) {
    ThetaOptions local = opts.scan;
    ThetaEvaluation ev = evaluate_theta(params, t, local);
    for (const Precision next : {Precision::extended, Precision::quad}) {
        if (ev.status != ThetaStatus::overflow && ev.rounding_floor <= 1e-3 * std::abs(ev.value)) break;
        if (epsilon_of(next) >= epsilon_of(local.precision)) continue;
        local.precision = next;
        ev = evaluate_theta(params, t, local);
    }
    return ev;
}

double residual_at(const ProblemParams& params, cplx lambda, const SolverOptions& opts) {
    return std::abs(theta_value(params, params.t_of(lambda), opts.theta));
}

int default_homotopy_steps(const ProblemParams& params) {
    const double size = std::max(std::abs(params.beta()), std::abs(params.gamma2()));
    return std::max(4, static_cast<int>(std::ceil(8.0 * std::sqrt(size))));
}

Eigenvalue solve_indexed(const ProblemParams& params, int n, int steps, const SolverOptions& opts) {
    if (n < 0) throw DomainError("solve_indexed: index must be >= 0");
    if (steps <= 0) steps = opts.steps > 0 ? opts.steps : default_homotopy_steps(params);
    // Neighbours ride along so that a close pair cannot swap labels.
    const int lo = std::max(0, n - 1);
    const auto roots = homotopy(params, lo, n + 1, steps, opts);
    Eigenvalue out = roots[static_cast<std::size_t>(n - lo)];
    out.index = n;
    return out;
}

Eigenvalue solve_near(const ProblemParams& params, cplx lambda_guess, const SolverOptions& opts) {
    const cplx t0 = params.t_of(lambda_guess);
    const double offset = 1e-3 * scale_of(t0);
    const cplx t1 = t0 + (params.is_real() && lambda_guess.imag() == 0.0 ? cplx(offset) : cplx(offset, offset));
    return refine_root(params, t0, t1, opts.tol_t, opts);
}

RealScan scan_real(const ProblemParams& params, double lambda_lo, double lambda_hi, int grid_n,
                   const SolverOptions& opts) {
    if (!params.is_real()) throw DomainError("scan_real: mu, alpha, beta and gamma2 must be real");
    if (!(lambda_lo < lambda_hi)) throw DomainError("scan_real: need lambda_lo < lambda_hi");
    if (grid_n < 2) throw DomainError("scan_real: grid must have at least 2 points");

    const auto n = static_cast<std::size_t>(grid_n);
    const double h = (lambda_hi - lambda_lo) / static_cast<double>(n - 1);
    std::vector<double> x(n);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = i + 1 == n ? lambda_hi : lambda_lo + h * static_cast<double>(i);
    parallel_for(n, [&](std::size_t i) {
        const ThetaEvaluation ev = sample_theta(params, params.t_of(x[i]), opts);
        f[i] = ev.status == ThetaStatus::overflow ? std::nan("") : ev.value.real();
    });

    RealScan out;
    std::vector<Eigenvalue> roots;
    auto note = [&out](const std::string& msg) { out.diagnostics.push_back(msg); };
    auto in_range = [&](double lam, double lo, double hi) { return lam >= lo - 1e-9 && lam <= hi + 1e-9; };

    for (std::size_t i = 0; i < n; ++i) {
        if (f[i] != 0.0) continue;
        roots.push_back(finish(params, params.t_of(x[i]), 0, opts));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(f[i] * f[i + 1] < 0.0)) continue;
        const double a = x[i];
        const double b = x[i + 1];
        try {
            Eigenvalue e = refine_root(params, params.t_of(a), params.t_of(b), opts.tol_t, opts);
            if (!in_range(e.lambda.real(), a, b)) {
                auto g = [&](double lam) { return theta_value(params, params.t_of(lam), opts.scan).real(); };
                const double lam = illinois(g, a, b, f[i], f[i + 1], 1e-10, 200);
                const double dt = 1e-7 * scale_of(lam);
                e = refine_root(params, params.t_of(lam), params.t_of(lam) + dt, opts.tol_t, opts);
            }
            e.lambda = e.lambda.real();
            e.t = params.t_of(e.lambda);
            roots.push_back(e);
        } catch (const NumericalError& err) {
            note(std::string("bracket [") + std::to_string(a) + ", " + std::to_string(b) + "]: " + err.what());
        }
    }
    // A same-sign local minimum of |Theta~| may hide two roots inside one cell.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double fl = f[i - 1], fm = f[i], fr = f[i + 1];
        if (!(fl * fm > 0.0 && fm * fr > 0.0)) continue;
        if (!(std::abs(fm) < std::abs(fl) && std::abs(fm) < std::abs(fr))) continue;
        const double curvature = (fl - 2.0 * fm + fr) / (2.0 * h * h);
        const double slope = (fr - fl) / (2.0 * h);
        if (curvature == 0.0) continue;
        const double vertex = x[i] - slope / (2.0 * curvature);
        const double minimum = fm - slope * slope / (4.0 * curvature);
        const cplx half_gap = std::sqrt(cplx(-minimum / curvature));
        const cplx seed = cplx(vertex) + half_gap + cplx(0.0, 1e-3 * h);
        try {
            const double spread = std::max(std::abs(half_gap), 1e-4 * h);
            Eigenvalue first = refine_root(params, params.t_of(seed), params.t_of(seed + cplx(0.3 * spread, 0.2 * spread)),
                                           opts.tol_t, opts);
            if (std::abs(first.lambda.imag()) > 1e-8 * scale_of(first.lambda)) continue;
            const double r1 = first.lambda.real();
            if (!in_range(r1, x[i - 1], x[i + 1])) continue;
            const double dt = 1e-9 * scale_of(r1);
            first = refine_root(params, params.t_of(r1), params.t_of(r1) + dt, opts.tol_t, opts);
            first.lambda = first.lambda.real();
            first.t = params.t_of(first.lambda);
            const double mirror = 2.0 * vertex - r1;
            const double gap = std::max(std::abs(mirror - r1), 1e-9 * scale_of(r1));
            Eigenvalue second = refine_root_deflated(params, params.t_of(mirror), params.t_of(mirror + 0.25 * gap),
                                                     {first.t}, opts);
            if (std::abs(second.lambda.imag()) > 1e-8 * scale_of(second.lambda)) continue;
            second.lambda = second.lambda.real();
            second.t = params.t_of(second.lambda);
            if (!in_range(second.lambda.real(), x[i - 1], x[i + 1])) continue;
            roots.push_back(first);
            roots.push_back(second);
            out.shared_cell_warning = true;
            std::ostringstream os;
            os << "close pair resolved near lambda=" << vertex << ": " << first.lambda.real() << ", "
               << second.lambda.real();
            note(os.str());
        } catch (const NumericalError&) {
            // no real root pair behind this dip
        }
    }
    bool collided = false;
    out.eigenvalues = dedupe(std::move(roots), opts.cluster_tol, &collided);
    std::erase_if(out.eigenvalues, [&](const Eigenvalue& e) { return !in_range(e.lambda.real(), lambda_lo, lambda_hi); });
    if (collided) out.shared_cell_warning = true;
    return out;
}

ComplexScan scan_complex(const ProblemParams& params, std::pair<double, double> re_range,
                         std::pair<double, double> im_range, int n_re, int n_im, const SolverOptions& opts) {
    if (!(re_range.first < re_range.second) || !(im_range.first < im_range.second)) {
        throw DomainError("scan_complex: ranges must be increasing");
    }
    if (n_re < 2 || n_im < 2) throw DomainError("scan_complex: grid must be at least 2x2");
    const auto nr = static_cast<std::size_t>(n_re);
    const auto ni = static_cast<std::size_t>(n_im);
    const double hr = (re_range.second - re_range.first) / static_cast<double>(nr - 1);
    const double hi = (im_range.second - im_range.first) / static_cast<double>(ni - 1);
    auto point = [&](std::size_t i, std::size_t j) {
        return cplx(re_range.first + hr * static_cast<double>(j), im_range.first + hi * static_cast<double>(i));
    };
    std::vector<cplx> v(nr * ni);
    parallel_for(v.size(), [&](std::size_t idx) {
        const std::size_t i = idx / nr;
        const std::size_t j = idx % nr;
        const ThetaEvaluation ev = sample_theta(params, params.t_of(point(i, j)), opts);
        v[idx] = ev.status == ThetaStatus::overflow ? cplx(std::nan(""), std::nan("")) : ev.value;
    });

    auto changes_sign = [](double a, double b, double c, double d) {
        const double lo = std::min({a, b, c, d});
        const double hi = std::max({a, b, c, d});
        return lo <= 0.0 && hi >= 0.0 && !(lo == 0.0 && hi == 0.0);
    };

    ComplexScan out;
    std::vector<Eigenvalue> roots;
    for (std::size_t i = 0; i + 1 < ni; ++i) {
        for (std::size_t j = 0; j + 1 < nr; ++j) {
            const cplx c00 = v[i * nr + j], c01 = v[i * nr + j + 1];
            const cplx c10 = v[(i + 1) * nr + j], c11 = v[(i + 1) * nr + j + 1];
            if (!finite(c00) || !finite(c01) || !finite(c10) || !finite(c11)) continue;
            if (!changes_sign(c00.real(), c01.real(), c10.real(), c11.real())) continue;
            if (!changes_sign(c00.imag(), c01.imag(), c10.imag(), c11.imag())) continue;
            ++out.flagged_cells;
            const cplx z0 = point(i, j);
            const cplx z1 = point(i + 1, j + 1);
            try {
                const Eigenvalue e = refine_root(params, params.t_of(z0), params.t_of(z1), opts.tol_t, opts);
                const bool inside = e.lambda.real() >= re_range.first - hr && e.lambda.real() <= re_range.second + hr &&
                                    e.lambda.imag() >= im_range.first - hi && e.lambda.imag() <= im_range.second + hi;
                if (inside) roots.push_back(e);
            } catch (const NumericalError& err) {
                std::ostringstream os;
                os << "cell at " << z0 << ": " << err.what();
                out.diagnostics.push_back(os.str());
            }
        }
    }
    out.eigenvalues = dedupe(std::move(roots), opts.cluster_tol, nullptr);
    std::erase_if(out.eigenvalues, [&](const Eigenvalue& e) {
        return e.lambda.real() < re_range.first || e.lambda.real() > re_range.second ||
               e.lambda.imag() < im_range.first || e.lambda.imag() > im_range.second;
    });
    return out;
}

const char* to_string(TrackedParameter p) { return p == TrackedParameter::beta ? "beta" : "gamma2"; }

std::vector<TrackCurve> track_parameter(const ProblemParams& params, TrackedParameter which, double from,
                                        double to, double step, const std::vector<int>& indices,
                                        const SolverOptions& opts) {
    if (!(step > 0.0)) throw DomainError("track_parameter: step must be positive");
    if (indices.empty()) throw DomainError("track_parameter: no indices requested");
    if (*std::min_element(indices.begin(), indices.end()) < 0) throw DomainError("track_parameter: negative index");
    auto at = [&params, which](double value) {
        return which == TrackedParameter::beta ? params.with_beta(value) : params.with_gamma2(value);
    };
    const bool real_spectrum = at(from).is_real();

    const int lo = std::max(0, *std::min_element(indices.begin(), indices.end()) - 1);
    const int hi = *std::max_element(indices.begin(), indices.end()) + 1;
    const ProblemParams start_params = at(from);
    int steps = opts.steps > 0 ? opts.steps : default_homotopy_steps(start_params);
    std::vector<Eigenvalue> start = homotopy(start_params, lo, hi, steps, opts);
    for (int n = lo; n <= hi; ++n) start[static_cast<std::size_t>(n - lo)].index = n;

    std::vector<double> samples{from};
    const double direction = to >= from ? 1.0 : -1.0;
    const auto count = static_cast<long>(std::floor(std::abs(to - from) / step + 1e-9));
    for (long j = 1; j <= count; ++j) samples.push_back(from + direction * step * static_cast<double>(j));
    if (std::abs(samples.back() - to) > 1e-9 * std::max(1.0, std::abs(to))) samples.push_back(to);

    std::vector<TrackCurve> curves;
    for (int idx : indices) curves.push_back({which, idx, {}});
    auto record = [&](double value, const std::vector<Eigenvalue>& roots) {
        for (auto& curve : curves) {
            curve.samples.push_back({value, roots[static_cast<std::size_t>(curve.index - lo)]});
        }
    };
    record(from, start);

    Continuation path(at, 1.0, from, std::move(start), real_spectrum, opts);
    for (std::size_t j = 1; j < samples.size(); ++j) {
        path.advance_to(samples[j]);
        record(samples[j], path.current());
    }
    return curves;
}

}  // namespace cswf
