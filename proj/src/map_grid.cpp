#include "cswf/map_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "cswf/errors.hpp"
#include "cswf/format.hpp"
#include "cswf/parallel.hpp"

namespace cswf {

namespace {

std::vector<double> axis(std::pair<double, double> range, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            i + 1 == n ? range.second : range.first + (range.second - range.first) * i / (n - 1.0);
    }
    return out;
}

ProblemParams at(const ProblemParams& base, TrackedParameter swept, double s) {
    return swept == TrackedParameter::beta ? base.with_beta(s) : base.with_gamma2(s);
}

struct Point {
    double s;
    double lambda;
};

/// Zero of f on the lambda edge [a, b] at fixed s (f(a), f(b) of opposite sign).
double refine_on_edge(const ProblemParams& p, double a, double b, double fa, double fb, const SolverOptions& opts) {
    for (int it = 0; it < 100 && std::abs(b - a) > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
        const double c = (a * fb - b * fa) / (fb - fa);
        const double m = std::clamp(c, std::min(a, b), std::max(a, b));
        const double fm = sample_theta(p, p.t_of(m), opts).value.real();
        if (fm == 0.0) return m;
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
            fb *= 0.5;
        } else {
            b = m;
            fb = fm;
            fa *= 0.5;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

MapGrid build_map(const ProblemParams& params, TrackedParameter swept, std::pair<double, double> lambda_range,
                  std::pair<double, double> second_range, int n_lambda, int n_second, const MapOptions& opts) {
    if (n_lambda < 16 || n_second < 16) throw DomainError("build_map: grid must be at least 16x16");
    if (!(lambda_range.first < lambda_range.second) || !(second_range.first < second_range.second)) {
        throw DomainError("build_map: ranges must be increasing");
    }
    MapGrid grid;
    grid.swept = swept;
    grid.lambda_axis = axis(lambda_range, n_lambda);
    grid.second_axis = axis(second_range, n_second);
    const auto nl = static_cast<std::size_t>(n_lambda);
    const auto ns = static_cast<std::size_t>(n_second);
    grid.values.resize(n_second, n_lambda);

    SolverOptions sample_opts;
    sample_opts.scan = opts.theta;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    parallel_for(nl * ns, [&](std::size_t idx) {
        const std::size_t i = idx / nl;
        const std::size_t j = idx % nl;
        const ProblemParams p = at(params, swept, grid.second_axis[i]);
        const ThetaEvaluation ev = sample_theta(p, p.t_of(grid.lambda_axis[j]), sample_opts);
        grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            ev.converged ? ev.value : cplx(nan, nan);
    });

    const bool real_inputs = params.mu().imag() == 0.0 && params.alpha().imag() == 0.0 &&
                             (swept == TrackedParameter::beta ? params.gamma2() : params.beta()).imag() == 0.0;
    if (!real_inputs) return grid;

    auto f = [&](std::size_t i, std::size_t j) {
        return grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).real();
    };
    // Crossing on the edge between two grid nodes; lambda edges can be refined.
    auto crossing = [&](std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1) {
        const double f0 = f(i0, j0);
        const double f1 = f(i1, j1);
        const double w = f0 / (f0 - f1);
        Point p{grid.second_axis[i0] + w * (grid.second_axis[i1] - grid.second_axis[i0]),
                grid.lambda_axis[j0] + w * (grid.lambda_axis[j1] - grid.lambda_axis[j0])};
        if (opts.refine_crossings && i0 == i1) {
            p.lambda = refine_on_edge(at(params, swept, p.s), grid.lambda_axis[j0], grid.lambda_axis[j1], f0, f1,
                                      sample_opts);
        }
        return p;
    };
    auto emit = [&](Point a, Point b) { grid.zero_segments.push_back({a.s, a.lambda, b.s, b.lambda}); };

    for (std::size_t i = 0; i + 1 < ns; ++i) {
        for (std::size_t j = 0; j + 1 < nl; ++j) {
            const double v00 = f(i, j), v01 = f(i, j + 1), v11 = f(i + 1, j + 1), v10 = f(i + 1, j);
            if (!std::isfinite(v00) || !std::isfinite(v01) || !std::isfinite(v11) || !std::isfinite(v10)) continue;
            // corners counter-clockwise: (i,j) (i,j+1) (i+1,j+1) (i+1,j)
            const int code = (v00 > 0.0 ? 1 : 0) | (v01 > 0.0 ? 2 : 0) | (v11 > 0.0 ? 4 : 0) | (v10 > 0.0 ? 8 : 0);
            if (code == 0 || code == 15) continue;
            auto bottom = [&] { return crossing(i, j, i, j + 1); };         // v00-v01
            auto right = [&] { return crossing(i, j + 1, i + 1, j + 1); };  // v01-v11
            auto top = [&] { return crossing(i + 1, j, i + 1, j + 1); };    // v10-v11
            auto left = [&] { return crossing(i, j, i + 1, j); };           // v00-v10
            switch (code) {
                case 1: case 14: emit(left(), bottom()); break;
                case 2: case 13: emit(bottom(), right()); break;
                case 3: case 12: emit(left(), right()); break;
                case 4: case 11: emit(right(), top()); break;
                case 6: case 9: emit(bottom(), top()); break;
                case 7: case 8: emit(left(), top()); break;
                case 5: case 10: {
                    // saddle: the centre value decides which corners connect
                    const double centre = 0.25 * (v00 + v01 + v11 + v10);
                    const bool joined = (centre > 0.0) == (code == 5);
                    if (joined) {
                        emit(left(), top());
                        emit(bottom(), right());
                    } else {
                        emit(left(), bottom());
                        emit(right(), top());
                    }
                    break;
                }
                default: break;
            }
        }
    }
    return grid;
}

std::vector<double> intercepts(const MapGrid& grid, double s) {
    std::vector<double> out;
    for (const Segment& seg : grid.zero_segments) {
        const double lo = std::min(seg.s0, seg.s1);
        const double hi = std::max(seg.s0, seg.s1);
        if (s < lo || s > hi) continue;
        if (seg.s0 == seg.s1) {
            out.push_back(0.5 * (seg.lambda0 + seg.lambda1));
            continue;
        }
        const double w = (s - seg.s0) / (seg.s1 - seg.s0);
        out.push_back(seg.lambda0 + w * (seg.lambda1 - seg.lambda0));
    }
    std::sort(out.begin(), out.end());
    // a crossing exactly on a shared cell edge is reported by both cells
    out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              out.end());
    return out;
}

void write_values_csv(const MapGrid& grid, std::ostream& out) {
    out << to_string(grid.swept) << ",lambda,re,im\n";
    for (std::size_t i = 0; i < grid.second_axis.size(); ++i) {
        for (std::size_t j = 0; j < grid.lambda_axis.size(); ++j) {
            const cplx v = grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            out << format_real(grid.second_axis[i]) << ',' << format_real(grid.lambda_axis[j]) << ','
                << format_sci(v.real()) << ',' << format_sci(v.imag()) << '\n';
        }
    }
}

void write_segments_csv(const MapGrid& grid, std::ostream& out) {
    out << "s0,lambda0,s1,lambda1\n";
    for (const Segment& seg : grid.zero_segments) {
        out << format_real(seg.s0) << ',' << format_real(seg.lambda0) << ',' << format_real(seg.s1) << ','
            << format_real(seg.lambda1) << '\n';
    }
}

}  // namespace cswf
