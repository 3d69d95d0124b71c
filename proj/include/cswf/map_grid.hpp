#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <utility>
#include <vector>

#include "cswf/params.hpp"
#include "cswf/solver.hpp"

namespace cswf {

/// Piece of a zero curve of Re Theta~ in (second axis, lambda) coordinates.
struct Segment {
    double s0, lambda0;
    double s1, lambda1;
};

/// Theta~ sampled over (second parameter, lambda).
struct MapGrid {
    TrackedParameter swept = TrackedParameter::gamma2;
    std::vector<double> lambda_axis;
    std::vector<double> second_axis;
    /// values(i, j) at (second_axis[i], lambda_axis[j]); NaN where the recurrence failed.
    Eigen::MatrixXcd values;
    /// Zero curves; empty unless mu, alpha and the fixed parameter are real.
    std::vector<Segment> zero_segments;
};

struct MapOptions {
    /// Only the sign pattern matters, so the stopping rule is looser than for roots.
    ThetaOptions theta{.tol = 1e-8, .k_min = 16, .k_max = 20000, .precision = Precision::binary64};
    /// Move each crossing on a lambda edge onto the exact zero of that grid
    /// line instead of the linear interpolant.
    bool refine_crossings = false;
};

/// Fills the grid (parallel over cells) and extracts the zero set by marching
/// squares. `params` supplies mu, alpha and the parameter that is not swept.
/// Requires at least 16 points per axis and increasing ranges.
MapGrid build_map(const ProblemParams& params, TrackedParameter swept, std::pair<double, double> lambda_range,
                  std::pair<double, double> second_range, int n_lambda, int n_second, const MapOptions& opts = {});

/// lambda values where zero segments cross second_axis == s, ascending.
std::vector<double> intercepts(const MapGrid& grid, double s);

/// Columns: second axis, lambda, Re, Im.
void write_values_csv(const MapGrid& grid, std::ostream& out);
/// Columns: s0, lambda0, s1, lambda1.
void write_segments_csv(const MapGrid& grid, std::ostream& out);

}  // namespace cswf
