#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cswf/gamma_special.hpp"
#include "cswf/map_grid.hpp"
#include "cswf/solver.hpp"

using namespace cswf;

namespace {

double nearest(const std::vector<double>& xs, double x) {
    double best = INFINITY;
    for (double v : xs) best = std::min(best, std::abs(v - x));
    return best;
}

void check_legendre_intercepts(double mu) {
    const MapGrid grid = build_map(ProblemParams::coulomb(mu, 0.0, 0.0), TrackedParameter::gamma2, {-40.0, 120.0},
                                   {-80.0, 80.0}, 160, 160);
    const double cell = grid.lambda_axis[1] - grid.lambda_axis[0];
    const auto hits = intercepts(grid, 0.0);
    int expected = 0;
    for (int n = 0;; ++n) {
        const double lambda = legendre_eigenvalue(mu, n).real();
        if (lambda > 120.0) break;
        ++expected;
        CAPTURE(n);
        CHECK(nearest(hits, lambda) <= cell);
    }
    CHECK(hits.size() == static_cast<std::size_t>(expected));
}

}  // namespace

TEST_CASE("grid shape and axes") {
    const MapGrid grid = build_map(ProblemParams::coulomb(0.0, 0.0, 0.0), TrackedParameter::gamma2, {0.0, 10.0},
                                   {-5.0, 5.0}, 21, 16);
    CHECK(grid.lambda_axis.size() == 21);
    CHECK(grid.second_axis.size() == 16);
    CHECK(grid.values.rows() == 16);
    CHECK(grid.values.cols() == 21);
    CHECK(grid.lambda_axis.front() == 0.0);
    CHECK(grid.lambda_axis.back() == 10.0);
    CHECK(grid.second_axis.front() == -5.0);
    CHECK(grid.second_axis.back() == 5.0);
}

TEST_CASE("Legendre intercepts on the gamma2 = 0 line, mu = 0") { check_legendre_intercepts(0.0); }

TEST_CASE("Legendre intercepts on the gamma2 = 0 line, mu = 1") { check_legendre_intercepts(1.0); }

TEST_CASE("zero curves follow the tracked eigenvalues in beta") {
    const ProblemParams base = ProblemParams::coulomb(1.0, 0.0, -100.0);
    MapOptions opts;
    opts.refine_crossings = true;
    const MapGrid grid = build_map(base, TrackedParameter::beta, {-150.0, 150.0}, {0.0, 90.0}, 481, 181, opts);
    const auto curves = track_parameter(base, TrackedParameter::beta, 4.5, 90.0, 4.5, {0, 1, 2, 3, 4, 5});
    for (const TrackCurve& c : curves) {
        for (const TrackSample& s : c.samples) {
            CAPTURE(c.index);
            CAPTURE(s.parameter);
            CHECK(nearest(intercepts(grid, s.parameter), s.eigenvalue.lambda.real()) < 1e-4);
        }
    }
}

TEST_CASE("complex parameters give values but no zero curves") {
    const MapGrid grid = build_map(ProblemParams::coulomb(cplx(2.0, 0.05), 0.0, 0.0), TrackedParameter::gamma2,
                                   {0.0, 40.0}, {-30.0, 0.0}, 16, 16);
    CHECK(grid.zero_segments.empty());
    CHECK(std::isfinite(std::abs(grid.values(3, 3))));
}

TEST_CASE("CSV writers") {
    const MapGrid grid = build_map(ProblemParams::coulomb(0.0, 0.0, 0.0), TrackedParameter::gamma2, {-1.0, 7.0},
                                   {-1.0, 1.0}, 16, 16);
    std::ostringstream values, segments;
    write_values_csv(grid, values);
    write_segments_csv(grid, segments);
    const std::string text = values.str();
    CHECK(text.rfind("gamma2,lambda,re,im\n", 0) == 0);
    CHECK(segments.str().rfind("s0,lambda0,s1,lambda1\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 16 * 16);
    CHECK(text.find('\r') == std::string::npos);
}
