// Acceptance checks 1-8: one PASS/FAIL line each, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cswf/eigenfunction.hpp"
#include "cswf/errors.hpp"
#include "cswf/gamma_special.hpp"
#include "cswf/map_grid.hpp"
#include "cswf/shoot_oracle.hpp"
#include "cswf/solver.hpp"
#include "cswf/theta.hpp"

using namespace cswf;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

const ProblemParams ref_real = ProblemParams::coulomb(2.0, 0.0, -25.0);
const ProblemParams ref_complex = ProblemParams::coulomb(cplx(2.0, 0.05), 0.0, -25.0);
const ProblemParams gswe(2.0, 0.5, -1.0, 4.0);

constexpr std::array<double, 5> kReal{25.4289571085, 27.1098058160, 35.5123673338, 44.3843905254, 55.9101722480};
const std::array<cplx, 5> kComplex{cplx(25.4290583061, 0.3844748370), cplx(27.1087295464, 0.4786514091),
                                   cplx(35.5086680718, 0.4658209197), cplx(44.3817462437, 0.5879425852),
                                   cplx(55.9074629810, 0.6802438797)};
// Literature values in Flammer normalization, Lambda = lambda + gamma^2; the second
// entry circulates with a slipped decimal point as 21.098058160.
constexpr std::array<double, 5> kFlammer{0.42895710850, 2.1098058160, 10.512367333, 19.384390525, 30.910172248};
constexpr std::array<double, 4> kGswe{2.472312, 9.211599, 17.539555, 27.700922};

// Shared between criteria.
std::vector<double> real_found;
std::vector<cplx> complex_found;
std::vector<cplx> gswe_found;

std::vector<double> sorted_real(const std::vector<Eigenvalue>& v) {
    std::vector<double> out;
    for (const auto& e : v) out.push_back(e.lambda.real());
    std::sort(out.begin(), out.end());
    return out;
}

Outcome criterion1() {
    Outcome o;
    const auto start = Clock::now();
    real_found = sorted_real(scan_real(ref_real, 20.0, 60.0, 400).eigenvalues);
    double worst = 0.0;
    if (real_found.size() != kReal.size()) {
        o.pass = false;
        o.detail = "scan found " + std::to_string(real_found.size()) + " eigenvalues; ";
    } else {
        for (std::size_t n = 0; n < kReal.size(); ++n) worst = std::max(worst, std::abs(real_found[n] - kReal[n]));
    }
    for (std::size_t n = 0; n < kReal.size(); ++n) {
        worst = std::max(worst, std::abs(solve_indexed(ref_real, static_cast<int>(n)).lambda - kReal[n]));
    }
    const double elapsed = seconds_since(start);
    o.pass = o.pass && worst <= 1e-9 && elapsed < 5.0;
    o.detail += "max |error| " + fmt("%.2e", worst) + " (scan and indexed), " + fmt("%.2f", elapsed) + " s";
    return o;
}

Outcome criterion2() {
    Outcome o;
    const auto start = Clock::now();
    const ComplexScan scan = scan_complex(ref_complex, {0.0, 60.0}, {-15.0, 15.0}, 240, 120);
    const double elapsed = seconds_since(start);
    complex_found.clear();
    for (const auto& e : scan.eigenvalues) complex_found.push_back(e.lambda);
    double worst = 0.0;
    for (const cplx ref : kComplex) {
        double best = INFINITY;
        for (const cplx z : complex_found) best = std::min(best, std::abs(z - ref));
        worst = std::max(worst, best);
    }
    o.pass = complex_found.size() == kComplex.size() && worst <= 1e-8 && elapsed < 60.0;
    o.detail = std::to_string(complex_found.size()) + " zeros, max |error| " + fmt("%.2e", worst) + ", " +
               fmt("%.1f", elapsed) + " s";
    return o;
}

Outcome criterion3() {
    Outcome o;
    if (real_found.size() != kFlammer.size()) return {false, "criterion 1 eigenvalues unavailable"};
    double worst = 0.0;
    for (std::size_t n = 0; n < kFlammer.size(); ++n) {
        worst = std::max(worst, std::abs(flammer_to_meixner(kFlammer[n], -25.0) - real_found[n]));
    }
    o.pass = worst <= 1e-8;
    o.detail = "max |Lambda + 25 - lambda| " + fmt("%.2e", worst) + " (row 2 read as 2.1098058160)";
    return o;
}

Outcome criterion4() {
    Outcome o;
    const auto start = Clock::now();
    double worst = 0.0;
    gswe_found.clear();
    for (std::size_t n = 0; n < kGswe.size(); ++n) {
        gswe_found.push_back(solve_indexed(gswe, static_cast<int>(n)).lambda);
        worst = std::max(worst, std::abs(gswe_found.back() - kGswe[n]));
    }
    o.pass = worst <= 1e-6;
    o.detail = "max |error| " + fmt("%.2e", worst) + ", " + fmt("%.2f", seconds_since(start)) + " s";
    return o;
}

Outcome criterion5() {
    Outcome o;
    double worst_solve = 0.0;
    double worst_closed = 0.0;
    int at_k_max = 0;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> uniform(-50.0, 50.0);
    const ThetaOptions opts{.accelerate = true};
    for (const cplx mu : {cplx(0.0), cplx(0.5), cplx(1.0), cplx(2.0), cplx(2.0, 0.05)}) {
        const ProblemParams params = ProblemParams::coulomb(mu, 0.0, 0.0);
        for (int n = 0; n <= 5; ++n) {
            // indexed solves start on the exact value here, so the secant is checked too
            const cplx exact = legendre_eigenvalue(mu, n);
            worst_solve = std::max(worst_solve, std::abs(solve_indexed(params, n).lambda - exact));
            worst_solve = std::max(worst_solve, std::abs(solve_near(params, exact + 0.25).lambda - exact));
        }
        for (int drawn = 0; drawn < 20;) {
            const double t = uniform(rng);
            bool near_zero = false;
            for (int n = 0; n < 12; ++n) {
                near_zero = near_zero || std::abs(t - params.t_of(legendre_eigenvalue(mu, n))) < 0.05;
            }
            if (near_zero) continue;
            ++drawn;
            const cplx ref = theta_closed_form(mu, t);
            // The stopping rule rarely fires for mu = 0 (k^-2 tail), so the value at k_max
            // is taken as is. |Theta| grows to ~1e9 on this interval, beyond what an
            // absolute 1e-7 can resolve in binary64, hence max(1, |Theta|).
            const ThetaEvaluation ev = evaluate_theta(params, t, opts);
            if (!ev.converged) ++at_k_max;
            const double err = std::abs(ev.value - ref) / std::max(1.0, std::abs(ref));
            worst_closed = std::max(worst_closed, err);
        }
    }
    o.pass = worst_solve <= 1e-10 && worst_closed <= 1e-7;
    o.detail = "eigenvalues (indexed and secant) max |error| " + fmt("%.2e", worst_solve) + ", closed form max error " +
               fmt("%.2e", worst_closed) + " relative to max(1,|Theta|) (" + std::to_string(at_k_max) +
               " of 100 evaluations ran to k_max)";
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::ostringstream d;
    const double t = 1.0;
    for (const double mu : {0.5, 1.0, 2.0}) {
        const ProblemParams params = ProblemParams::coulomb(mu, 0.0, 0.0);
        const auto sums = theta_partial_sums(params, t, 512, Precision::quad);
        const cplx exact = theta_closed_form(mu, t);
        const double expected = std::pow(2.0, -(mu + 2.0));
        d << "mu=" << mu << ":";
        for (const std::size_t k : {64u, 128u, 256u}) {
            const double ratio = std::abs(sums[2 * k] - exact) / std::abs(sums[k] - exact);
            const bool ok = ratio >= 0.5 * expected && ratio <= 2.0 * expected;
            o.pass = o.pass && ok;
            d << ' ' << fmt("%.3f", ratio / expected);
        }
        d << "; ";
    }
    o.detail = "ratio / 2^-(mu+2) " + d.str() + "bounds [0.5, 2]";
    return o;
}

Outcome criterion7() {
    Outcome o;
    struct Case {
        const ProblemParams* params;
        cplx lambda;
    };
    std::vector<Case> cases;
    for (const double l : real_found) cases.push_back({&ref_real, l});
    for (const cplx l : complex_found) cases.push_back({&ref_complex, l});
    for (const cplx l : gswe_found) cases.push_back({&gswe, l});
    if (cases.size() != 14) return {false, "eigenvalues from criteria 1, 2, 4 unavailable"};
    double worst_oracle = 0.0;
    double worst_residual = 0.0;
    for (const Case& c : cases) {
        try {
            const Eigenvalue e = oracle_eigenvalue(*c.params, c.lambda + 0.01);
            worst_oracle = std::max(worst_oracle, std::abs(e.lambda - c.lambda));
        } catch (const Error&) {
            worst_oracle = INFINITY;
        }
        const EigenfunctionSeries s = series_coefficients(*c.params, c.lambda);
        const double scale = max_abs(s, -1.0, 1.0, 401);
        for (int i = 1; i <= 50; ++i) {
            const double x = -0.98 + 1.96 * (i - 1) / 49.0;
            worst_residual = std::max(worst_residual, ode_residual(*c.params, s, x) / scale);
        }
    }
    o.pass = worst_oracle <= 1e-6 && worst_residual <= 1e-4;
    o.detail = std::to_string(cases.size()) + " eigenvalues, oracle max |difference| " + fmt("%.2e", worst_oracle) +
               ", max scaled ODE residual " + fmt("%.2e", worst_residual);
    return o;
}

double nearest(const std::vector<double>& xs, double x) {
    double best = INFINITY;
    for (double v : xs) best = std::min(best, std::abs(v - x));
    return best;
}

Outcome criterion8() {
    Outcome o;
    std::ostringstream d;

    const auto plus = sorted_real(scan_real(ProblemParams::coulomb(1.0, 30.0, -100.0), -100.0, 200.0, 600).eigenvalues);
    const auto minus = sorted_real(scan_real(ProblemParams::coulomb(1.0, -30.0, -100.0), -100.0, 200.0, 600).eigenvalues);
    double sym = plus.size() == minus.size() && !plus.empty() ? 0.0 : INFINITY;
    for (std::size_t i = 0; std::isfinite(sym) && i < plus.size(); ++i) sym = std::max(sym, std::abs(plus[i] - minus[i]));
    o.pass = sym <= 1e-9;
    d << "+-beta: " << plus.size() << " vs " << minus.size() << " eigenvalues, max diff " << fmt("%.2e", sym);

    for (const double mu : {0.0, 1.0}) {
        const MapGrid grid = build_map(ProblemParams::coulomb(mu, 0.0, 0.0), TrackedParameter::gamma2, {-40.0, 120.0},
                                       {-80.0, 80.0}, 160, 160);
        const double cell = grid.lambda_axis[1] - grid.lambda_axis[0];
        const auto hits = intercepts(grid, 0.0);
        double worst = 0.0;
        int expected = 0;
        for (int n = 0; legendre_eigenvalue(mu, n).real() <= 120.0; ++n, ++expected) {
            worst = std::max(worst, nearest(hits, legendre_eigenvalue(mu, n).real()));
        }
        const bool ok = worst <= cell && hits.size() == static_cast<std::size_t>(expected);
        o.pass = o.pass && ok;
        d << "; map mu=" << mu << ": " << hits.size() << " intercepts, worst " << fmt("%.3f", worst) << " (cell "
          << fmt("%.3f", cell) << ")";
    }

    const auto curves = track_parameter(ProblemParams::coulomb(1.0, 0.0, -100.0), TrackedParameter::beta, 0.0, 90.0,
                                        0.5, {0, 1, 2, 3, 4, 5});
    double min_gap = INFINITY;
    for (std::size_t j = 0; j < curves.front().samples.size(); ++j) {
        for (std::size_t a = 0; a < curves.size(); ++a) {
            for (std::size_t b = a + 1; b < curves.size(); ++b) {
                min_gap = std::min(min_gap, std::abs(curves[a].samples[j].eigenvalue.lambda -
                                                     curves[b].samples[j].eigenvalue.lambda));
            }
        }
    }
    o.pass = o.pass && min_gap >= 1e-6;
    d << "; track beta 0..90: min gap " << fmt("%.3e", min_gap);
    o.detail = d.str();
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
        {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8}};
    int failures = 0;
    for (const auto& [id, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
