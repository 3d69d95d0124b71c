#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "cswf/eigenfunction.hpp"
#include "cswf/errors.hpp"
#include "cswf/format.hpp"
#include "cswf/map_grid.hpp"
#include "cswf/params.hpp"
#include "cswf/solver.hpp"
#include "cswf/theta.hpp"
#include "cswf/verify.hpp"

namespace cswf::cli {

namespace {

using json = nlohmann::ordered_json;

const char* name_of(Subcommand s) {
    switch (s) {
        case Subcommand::theta: return "theta";
        case Subcommand::solve: return "solve";
        case Subcommand::scan: return "scan";
        case Subcommand::map: return "map";
        case Subcommand::track: return "track";
        case Subcommand::wavefunction: return "wavefunction";
        case Subcommand::verify: return "verify";
    }
    return "?";
}

OutputFormat default_format(Subcommand s) {
    switch (s) {
        case Subcommand::map:
        case Subcommand::wavefunction:
        case Subcommand::verify:
            return OutputFormat::csv;
        default:
            return OutputFormat::json;
    }
}

/// Numbers are emitted with 12 significant digits so output is stable.
json jnum(double x) {
    if (!std::isfinite(x)) return nullptr;
    return std::stod(format_real(x));
}

json jcplx(cplx z) { return {{"re", jnum(z.real())}, {"im", jnum(z.imag())}}; }

json eigen_json(const Eigenvalue& e) {
    return {{"lambda", jcplx(e.lambda)},
            {"t", jcplx(e.t)},
            {"residual", jnum(e.residual)},
            {"index", e.index ? json(*e.index) : json(nullptr)},
            {"iterations", e.iterations},
            {"k_used", e.k_used}};
}

json request_json(const CommandRequest& r) {
    json j{{"subcommand", name_of(r.subcommand)},
           {"mu", format_complex(r.mu)},
           {"alpha", format_complex(r.alpha)},
           {"beta", format_complex(r.beta)},
           {"gamma2", format_complex(r.gamma2)}};
    if (r.tol) j["tol"] = *r.tol;
    if (r.kmax) j["kmax"] = *r.kmax;
    if (r.grid) j["grid"] = *r.grid;
    if (r.steps) j["steps"] = *r.steps;
    if (r.lambda) j["lambda"] = format_complex(*r.lambda);
    if (r.t) j["t"] = format_complex(*r.t);
    if (r.index) j["index"] = *r.index;
    if (r.guess) j["guess"] = format_complex(*r.guess);
    switch (r.subcommand) {
        case Subcommand::theta:
            j["precision"] = to_string(r.precision);
            j["accelerate"] = r.accelerate;
            break;
        case Subcommand::scan:
            if (r.range) j["range"] = {r.range->first, r.range->second};
            if (r.im_range) j["im_range"] = {r.im_range->first, r.im_range->second};
            break;
        case Subcommand::map:
            j["sweep"] = r.sweep;
            j["lambda_range"] = {r.lambda_range.first, r.lambda_range.second};
            j["sweep_range"] = {r.sweep_range.first, r.sweep_range.second};
            j["refine"] = r.refine;
            break;
        case Subcommand::track:
            j["parameter"] = r.parameter;
            j["from"] = r.from;
            j["to"] = r.to;
            j["step"] = r.step;
            j["indices"] = r.indices;
            break;
        case Subcommand::wavefunction:
            j["points"] = r.points;
            j["normalize"] = r.normalize;
            break;
        case Subcommand::verify:
            j["suite"] = r.suite;
            break;
        default:
            break;
    }
    return j;
}

ProblemParams params_of(const CommandRequest& r) { return {r.mu, r.alpha, r.beta, r.gamma2}; }

SolverOptions solver_options(const CommandRequest& r) {
    SolverOptions opts;
    if (r.tol) {
        opts.theta.tol = *r.tol;
        opts.scan.tol = *r.tol;
    }
    if (r.kmax) {
        opts.theta.k_max = *r.kmax;
        opts.scan.k_max = *r.kmax;
    }
    if (r.steps) opts.steps = *r.steps;
    return opts;
}

void eigen_csv_header(std::ostream& out) { out << "index,lambda_re,lambda_im,t_re,t_im,residual,iterations,k_used\n"; }

void eigen_csv_row(std::ostream& out, const Eigenvalue& e) {
    out << (e.index ? std::to_string(*e.index) : std::string()) << ',' << format_real(e.lambda.real()) << ','
        << format_real(e.lambda.imag()) << ',' << format_real(e.t.real()) << ',' << format_real(e.t.imag()) << ','
        << format_sci(e.residual) << ',' << e.iterations << ',' << e.k_used << '\n';
}

/// Output of one subcommand: a JSON results value or CSV text, plus diagnostics.
struct Artifact {
    json results;
    std::string csv;
    std::vector<std::string> diagnostics;
    int exit = exit_code::ok;
};

const char* status_name(ThetaStatus s) {
    switch (s) {
        case ThetaStatus::converged: return "converged";
        case ThetaStatus::max_iterations: return "max_iterations";
        case ThetaStatus::overflow: return "overflow";
    }
    return "?";
}

Artifact do_theta(const CommandRequest& r) {
    if (r.lambda.has_value() == r.t.has_value()) throw UsageError("theta: give exactly one of --lambda, --t");
    const ProblemParams params = params_of(r);
    ThetaOptions opts;
    if (r.tol) opts.tol = *r.tol;
    if (r.kmax) opts.k_max = *r.kmax;
    opts.accelerate = r.accelerate;
    opts.precision = r.precision;
    const cplx t = r.t ? *r.t : params.t_of(*r.lambda);
    const ThetaEvaluation ev = eval_theta(params, t, opts);
    Artifact a;
    a.results = {{"lambda", jcplx(params.lambda_of(t))},
                 {"t", jcplx(t)},
                 {"value", jcplx(ev.value)},
                 {"abs", jnum(std::abs(ev.value))},
                 {"k_used", ev.k_used},
                 {"err_estimate", jnum(ev.err_estimate)},
                 {"rounding_floor", jnum(ev.rounding_floor)},
                 {"converged", ev.converged},
                 {"status", status_name(ev.status)}};
    std::ostringstream csv;
    csv << "lambda_re,lambda_im,t_re,t_im,value_re,value_im,k_used,err_estimate\n"
        << format_real(params.lambda_of(t).real()) << ',' << format_real(params.lambda_of(t).imag()) << ','
        << format_real(t.real()) << ',' << format_real(t.imag()) << ',' << format_sci(ev.value.real()) << ','
        << format_sci(ev.value.imag()) << ',' << ev.k_used << ',' << format_sci(ev.err_estimate) << '\n';
    a.csv = csv.str();
    return a;
}

Eigenvalue locate(const CommandRequest& r, const ProblemParams& params, const SolverOptions& opts) {
    if (r.index.has_value() == r.guess.has_value()) throw UsageError("give exactly one of --index, --guess");
    if (r.index) return solve_indexed(params, *r.index, r.steps.value_or(0), opts);
    return solve_near(params, *r.guess, opts);
}

Artifact do_solve(const CommandRequest& r) {
    const ProblemParams params = params_of(r);
    const Eigenvalue e = locate(r, params, solver_options(r));
    Artifact a;
    a.results = json::array({eigen_json(e)});
    std::ostringstream csv;
    eigen_csv_header(csv);
    eigen_csv_row(csv, e);
    a.csv = csv.str();
    return a;
}

Artifact do_scan(const CommandRequest& r) {
    if (!r.range) throw UsageError("scan: --range is required");
    const ProblemParams params = params_of(r);
    const SolverOptions opts = solver_options(r);
    Artifact a;
    std::vector<Eigenvalue> found;
    if (r.im_range) {
        const ComplexScan scan = scan_complex(params, *r.range, *r.im_range, r.grid.value_or(240),
                                              r.grid_im.value_or(120), opts);
        found = scan.eigenvalues;
        a.diagnostics = scan.diagnostics;
        a.diagnostics.push_back("flagged cells: " + std::to_string(scan.flagged_cells));
    } else {
        const RealScan scan = scan_real(params, r.range->first, r.range->second, r.grid.value_or(400), opts);
        found = scan.eigenvalues;
        a.diagnostics = scan.diagnostics;
        if (scan.shared_cell_warning) a.diagnostics.push_back("warning: two roots shared one grid cell");
    }
    a.results = json::array();
    std::ostringstream csv;
    eigen_csv_header(csv);
    for (const auto& e : found) {
        a.results.push_back(eigen_json(e));
        eigen_csv_row(csv, e);
    }
    a.csv = csv.str();
    return a;
}

TrackedParameter tracked(const std::string& name, const char* flag) {
    if (name == "beta") return TrackedParameter::beta;
    if (name == "gamma2") return TrackedParameter::gamma2;
    throw UsageError(std::string(flag) + ": expected beta or gamma2, got '" + name + "'");
}

Artifact do_map(const CommandRequest& r) {
    const TrackedParameter swept = tracked(r.sweep, "--sweep");
    MapOptions opts;
    if (r.tol) opts.theta.tol = *r.tol;
    if (r.kmax) opts.theta.k_max = *r.kmax;
    opts.refine_crossings = r.refine;
    const int n = r.grid.value_or(160);
    const MapGrid grid =
        build_map(params_of(r), swept, r.lambda_range, r.sweep_range, n, r.grid_sweep.value_or(n), opts);
    Artifact a;
    std::ostringstream csv;
    write_values_csv(grid, csv);
    a.csv = csv.str();
    json values = json::array();
    for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < grid.values.cols(); ++j) row.push_back({jnum(grid.values(i, j).real()), jnum(grid.values(i, j).imag())});
        values.push_back(row);
    }
    json segments = json::array();
    for (const Segment& s : grid.zero_segments) segments.push_back({jnum(s.s0), jnum(s.lambda0), jnum(s.s1), jnum(s.lambda1)});
    json lambda_axis = json::array();
    for (double x : grid.lambda_axis) lambda_axis.push_back(jnum(x));
    json second_axis = json::array();
    for (double x : grid.second_axis) second_axis.push_back(jnum(x));
    a.results = {{"lambda_axis", lambda_axis}, {"second_axis", second_axis}, {"values", values}, {"zero_segments", segments}};
    if (r.segments_path) {
        std::ofstream seg(*r.segments_path, std::ios::binary);
        if (!seg) throw DomainError("cannot open " + *r.segments_path + " for writing");
        write_segments_csv(grid, seg);
    }
    a.diagnostics.push_back("zero segments: " + std::to_string(grid.zero_segments.size()));
    return a;
}

Artifact do_track(const CommandRequest& r) {
    const TrackedParameter which = tracked(r.parameter, "--param");
    const auto curves = track_parameter(params_of(r), which, r.from, r.to, r.step, r.indices, solver_options(r));
    Artifact a;
    a.results = json::array();
    std::ostringstream csv;
    csv << to_string(which) << ",index,lambda_re,lambda_im,residual\n";
    for (const TrackCurve& c : curves) {
        json samples = json::array();
        for (const TrackSample& s : c.samples) {
            samples.push_back({{to_string(which), jnum(s.parameter)}, {"eigenvalue", eigen_json(s.eigenvalue)}});
        }
        a.results.push_back({{"parameter_name", to_string(which)}, {"index", c.index}, {"samples", samples}});
    }
    // rows ordered by parameter value, then index
    if (!curves.empty()) {
        for (std::size_t j = 0; j < curves.front().samples.size(); ++j) {
            for (const TrackCurve& c : curves) {
                const TrackSample& s = c.samples[j];
                csv << format_real(s.parameter) << ',' << c.index << ',' << format_real(s.eigenvalue.lambda.real())
                    << ',' << format_real(s.eigenvalue.lambda.imag()) << ',' << format_sci(s.eigenvalue.residual)
                    << '\n';
            }
        }
    }
    a.csv = csv.str();
    return a;
}

Artifact do_wavefunction(const CommandRequest& r) {
    if (r.points < 2) throw UsageError("--points: need at least 2 points");
    const ProblemParams params = params_of(r);
    cplx lambda;
    if (r.lambda) {
        if (r.index || r.guess) throw UsageError("wavefunction: give one of --lambda, --index, --guess");
        lambda = *r.lambda;
    } else {
        lambda = locate(r, params, solver_options(r)).lambda;
    }
    EigenfunctionSeries series = series_coefficients(params, lambda, r.kmax.value_or(0));
    if (r.normalize) series = l2_normalized(series);
    Artifact a;
    std::ostringstream csv;
    csv << "x,re,im\n";
    json points = json::array();
    for (int i = 0; i < r.points; ++i) {
        const double x = i + 1 == r.points ? 1.0 : -1.0 + 2.0 * i / (r.points - 1.0);
        const cplx w = evaluate(series, x);
        csv << format_real(x) << ',' << format_sci(w.real()) << ',' << format_sci(w.imag()) << '\n';
        points.push_back({{"x", jnum(x)}, {"w", jcplx(w)}});
    }
    a.csv = csv.str();
    a.results = {{"lambda", jcplx(lambda)},
                 {"c_match", jcplx(series.c_match)},
                 {"switch_x", series.switch_x},
                 {"terms", series.w_left.size()},
                 {"points", points}};
    return a;
}

Artifact do_verify(const CommandRequest& r) {
    const std::vector<VerifyRow> rows = run_verify(r.suite);
    Artifact a;
    a.results = json::array();
    std::ostringstream csv;
    csv << "suite,label,value,reference,error,tolerance,status\n";
    for (const VerifyRow& v : rows) {
        const char* status = v.pass ? "PASS" : "FAIL";
        csv << v.suite << ',' << v.label << ',' << format_complex(v.value) << ',' << format_complex(v.reference)
            << ',' << format_sci(v.error) << ',' << format_sci(v.tolerance) << ',' << status << '\n';
        a.results.push_back({{"suite", v.suite},
                             {"label", v.label},
                             {"value", jcplx(v.value)},
                             {"reference", jcplx(v.reference)},
                             {"error", jnum(v.error)},
                             {"tolerance", jnum(v.tolerance)},
                             {"status", status}});
        if (!v.pass) a.exit = exit_code::verify_failed;
    }
    a.csv = csv.str();
    return a;
}

Artifact dispatch(const CommandRequest& r) {
    switch (r.subcommand) {
        case Subcommand::theta: return do_theta(r);
        case Subcommand::solve: return do_solve(r);
        case Subcommand::scan: return do_scan(r);
        case Subcommand::map: return do_map(r);
        case Subcommand::track: return do_track(r);
        case Subcommand::wavefunction: return do_wavefunction(r);
        case Subcommand::verify: return do_verify(r);
    }
    throw UsageError("unknown subcommand");
}

void emit(const CommandRequest& r, const Artifact& a, std::ostream& out) {
    std::ostringstream text;
    if (r.format == OutputFormat::csv) {
        text << a.csv;
    } else {
        const json doc{{"request", request_json(r)}, {"results", a.results}, {"diagnostics", a.diagnostics}};
        text << doc.dump(2) << '\n';
    }
    if (r.out_path) {
        std::ofstream file(*r.out_path, std::ios::binary);
        if (!file) throw DomainError("cannot open " + *r.out_path + " for writing");
        file << text.str();
    } else {
        out << text.str();
    }
}

/// Complex-valued flag stored as text until parsing is complete.
struct ComplexFlag {
    std::string text;
    const char* flag;
};

cplx to_complex(const ComplexFlag& f) {
    try {
        return parse_complex(f.text);
    } catch (const DomainError& e) {
        throw UsageError(std::string(f.flag) + ": " + e.what());
    }
}

}  // namespace

std::optional<CommandRequest> parse_request(int argc, const char* const* argv, std::ostream& out) {
    CommandRequest r;
    CLI::App app{"Eigenvalues and eigenfunctions of spheroidal wave equations", "cswf"};
    app.require_subcommand(1);

    std::string format;
    app.add_option("--tol", r.tol, "recurrence stopping tolerance");
    app.add_option("--kmax", r.kmax, "maximum recurrence steps");
    app.add_option("--grid", r.grid, "grid points (scan, map)");
    app.add_option("--steps", r.steps, "homotopy increments");
    app.add_option("--out", r.out_path, "write the artifact to this file");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    ComplexFlag mu{"0", "--mu"}, alpha{"0", "--alpha"}, beta{"0", "--beta"}, gamma2{"0", "--gamma2"};
    std::optional<std::string> lambda, t, guess;
    auto add_params = [&](CLI::App* sub) {
        sub->fallthrough();
        sub->add_option("--mu", mu.text, "order mu (complex, e.g. 2+0.05i)");
        sub->add_option("--alpha", alpha.text, "alpha (0 for the Coulomb equation)");
        sub->add_option("--beta", beta.text, "beta");
        sub->add_option("--gamma2", gamma2.text, "gamma^2");
    };

    CLI::App* theta = app.add_subcommand("theta", "evaluate Theta at lambda or t");
    add_params(theta);
    theta->add_option("--lambda", lambda);
    theta->add_option("--t", t);
    theta->add_flag("--accelerate", r.accelerate, "extrapolate the recurrence tail");
    std::string precision = "binary64";
    theta->add_option("--precision", precision)->check(CLI::IsMember({"binary64", "extended", "quad"}));

    CLI::App* solve = app.add_subcommand("solve", "eigenvalue by index (homotopy) or near a guess");
    add_params(solve);
    solve->add_option("--index", r.index)->check(CLI::NonNegativeNumber);
    solve->add_option("--guess", guess);

    CLI::App* scan = app.add_subcommand("scan", "all eigenvalues in a real interval or complex rectangle");
    add_params(scan);
    scan->add_option("--range", r.range, "real interval, or real part range with --im-range");
    scan->add_option("--im-range", r.im_range, "imaginary part range (complex scan)");
    scan->add_option("--grid-im", r.grid_im, "grid points along the imaginary axis");

    CLI::App* map = app.add_subcommand("map", "Theta over (parameter, lambda) with zero curves");
    add_params(map);
    map->add_option("--sweep", r.sweep, "swept parameter: gamma2 or beta");
    map->add_option("--lambda-range", r.lambda_range);
    map->add_option("--sweep-range", r.sweep_range);
    map->add_option("--grid-sweep", r.grid_sweep, "grid points along the swept axis (default --grid)");
    map->add_flag("--refine", r.refine, "solve for zero crossings on lambda edges");
    map->add_option("--segments", r.segments_path, "write zero segments CSV here");

    CLI::App* track = app.add_subcommand("track", "follow eigenvalues while beta or gamma2 varies");
    add_params(track);
    track->add_option("--param", r.parameter, "beta or gamma2");
    track->add_option("--from", r.from)->required();
    track->add_option("--to", r.to)->required();
    track->add_option("--step", r.step);
    track->add_option("--indices", r.indices)->delimiter(',');

    CLI::App* wave = app.add_subcommand("wavefunction", "sample the eigenfunction on [-1, 1]");
    add_params(wave);
    wave->add_option("--lambda", lambda);
    wave->add_option("--index", r.index)->check(CLI::NonNegativeNumber);
    wave->add_option("--guess", guess);
    wave->add_option("--points", r.points);
    wave->add_flag("--normalize", r.normalize, "unit L2 norm");

    CLI::App* verify = app.add_subcommand("verify", "reference-value suites");
    verify->fallthrough();
    verify->add_option("--suite", r.suite, "table1, table2, legendre, gswe-fig7, asymptotics or all");

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    const std::vector<std::pair<CLI::App*, Subcommand>> subs{
        {theta, Subcommand::theta}, {solve, Subcommand::solve},         {scan, Subcommand::scan},
        {map, Subcommand::map},     {track, Subcommand::track},         {wave, Subcommand::wavefunction},
        {verify, Subcommand::verify}};
    for (const auto& [app_ptr, sub] : subs) {
        if (app_ptr->parsed()) r.subcommand = sub;
    }
    r.mu = to_complex(mu);
    r.alpha = to_complex(alpha);
    r.beta = to_complex(beta);
    r.gamma2 = to_complex(gamma2);
    if (lambda) r.lambda = to_complex({*lambda, "--lambda"});
    if (t) r.t = to_complex({*t, "--t"});
    if (guess) r.guess = to_complex({*guess, "--guess"});
    r.precision = precision == "quad" ? Precision::quad
                  : precision == "extended" ? Precision::extended
                                            : Precision::binary64;
    r.format = format.empty() ? default_format(r.subcommand)
                              : (format == "csv" ? OutputFormat::csv : OutputFormat::json);
    if (r.tol && !(*r.tol > 0.0)) throw UsageError("--tol: must be positive");
    if (r.grid && *r.grid < 2) throw UsageError("--grid: must be at least 2");
    if (r.steps && *r.steps < 1) throw UsageError("--steps: must be at least 1");
    if (!(r.step > 0.0)) throw UsageError("--step: must be positive");
    return r;
}

int run(const CommandRequest& request, std::ostream& out, std::ostream& err) {
    try {
        const Artifact a = dispatch(request);
        emit(request, a, out);
        if (a.exit == exit_code::verify_failed) err << "verify: at least one check failed\n";
        return a.exit;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return exit_code::domain;
    } catch (const Error& e) {
        err << "numerical error: " << e.what() << '\n';
        return exit_code::numerical;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::optional<CommandRequest> request;
    try {
        request = parse_request(argc, argv, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }
    if (!request) return exit_code::ok;
    return run(*request, out, err);
}

}  // namespace cswf::cli
