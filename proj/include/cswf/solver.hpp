#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cswf/params.hpp"
#include "cswf/theta.hpp"

namespace cswf {

/// A located zero of Theta~(lambda).
struct Eigenvalue {
    cplx lambda;
    cplx t;
    /// |Theta(t)| recomputed at the accepted point.
    double residual = 0.0;
    /// Continuation label n of the Legendre endpoint (n+mu)(n+mu+1), when known.
    std::optional<int> index;
    int iterations = 0;
    std::size_t k_used = 0;
};

struct SolverOptions {
    /// Recurrence settings for root polishing and residual checks. During the
    /// secant iteration `scale` is replaced by the current |Theta'| estimate.
    ThetaOptions theta{.tol = 1e-13, .k_min = 16, .k_max = 20000, .accelerate = true, .precision = Precision::quad};
    /// Recurrence settings for grid sampling and the binary64 pre-iteration.
    ThetaOptions scan{.tol = 1e-13, .k_min = 16, .k_max = 20000, .precision = Precision::binary64};
    double tol_t = 1e-11;
    int max_iter = 60;
    double residual_tol = 1e-8;
    /// Roots closer than this (in lambda) are one root.
    double cluster_tol = 1e-7;
    /// Continuation: reject roots farther than jump_factor x the predicted move.
    double jump_factor = 3.0;
    /// Continuation: how often a rejected step may be halved before PathLoss.
    int max_subdivisions = 10;
    /// Homotopy increments; 0 selects max(4, ceil(8 sqrt(max(|beta|, |gamma^2|)))).
    int steps = 0;
};

/// Complex secant iteration on Theta(t) seeded with t0, t1. Converges when
/// |dt| <= tol_t max(1, |t|). Throws Stagnation, NoConvergence.
Eigenvalue refine_root(const ProblemParams& params, cplx t0, cplx t1, double tol_t,
                       const SolverOptions& opts = {});
/// As refine_root with every root in `deflate` divided out of Theta first.
Eigenvalue refine_root_deflated(const ProblemParams& params, cplx t0, cplx t1,
                                const std::vector<cplx>& deflate, const SolverOptions& opts = {});

/// Theta for grid sampling: evaluated with opts.scan, and repeated in
/// extended and then quad precision while the rounding floor exceeds 1e-3 |Theta|.
ThetaEvaluation sample_theta(const ProblemParams& params, cplx t, const SolverOptions& opts = {});

/// Recomputes |Theta~(lambda)| at the polishing precision.
double residual_at(const ProblemParams& params, cplx lambda, const SolverOptions& opts = {});

int default_homotopy_steps(const ProblemParams& params);

/// Eigenvalue with continuation index n: start at (n+mu)(n+mu+1) for
/// beta = gamma^2 = 0 and scale (beta, gamma^2) to their targets. steps <= 0
/// uses the default rule. Throws PathLoss.
Eigenvalue solve_indexed(const ProblemParams& params, int n, int steps = 0, const SolverOptions& opts = {});

/// Eigenvalue nearest a guess (two-point secant seeded at guess and guess+delta).
Eigenvalue solve_near(const ProblemParams& params, cplx lambda_guess, const SolverOptions& opts = {});

struct RealScan {
    std::vector<Eigenvalue> eigenvalues;
    /// Set when two roots were resolved inside one grid cell or refined roots collided.
    bool shared_cell_warning = false;
    std::vector<std::string> diagnostics;
};

/// All real eigenvalues in [lambda_lo, lambda_hi]: sign-change brackets on a
/// uniform grid of grid_n points, plus same-sign dips of |Theta~| probed for
/// hidden root pairs. Requires real mu, alpha, beta, gamma^2.
RealScan scan_real(const ProblemParams& params, double lambda_lo, double lambda_hi, int grid_n,
                   const SolverOptions& opts = {});

struct ComplexScan {
    std::vector<Eigenvalue> eigenvalues;
    std::size_t flagged_cells = 0;
    std::vector<std::string> diagnostics;
};

/// Zeros in the rectangle re_range x im_range, grid points n_re x n_im:
/// cells where both Re and Im of Theta~ change sign are polished with refine_root.
ComplexScan scan_complex(const ProblemParams& params, std::pair<double, double> re_range,
                         std::pair<double, double> im_range, int n_re, int n_im,
                         const SolverOptions& opts = {});

enum class TrackedParameter { beta, gamma2 };

const char* to_string(TrackedParameter p);

struct TrackSample {
    double parameter;
    Eigenvalue eigenvalue;
};

struct TrackCurve {
    TrackedParameter parameter_name;
    int index;
    std::vector<TrackSample> samples;
};

/// Follows eigenvalues with the given continuation indices while `which`
/// moves from `from` to `to` in increments of `step`. Throws PathLoss.
std::vector<TrackCurve> track_parameter(const ProblemParams& params, TrackedParameter which, double from,
                                        double to, double step, const std::vector<int>& indices,
                                        const SolverOptions& opts = {});

}  // namespace cswf
