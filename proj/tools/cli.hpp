#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cswf/precision.hpp"

namespace cswf::cli {

enum class Subcommand { theta, solve, scan, map, track, wavefunction, verify };
enum class OutputFormat { json, csv };

namespace exit_code {
constexpr int ok = 0;
constexpr int domain = 1;
constexpr int numerical = 2;
constexpr int verify_failed = 3;
constexpr int usage = 64;
}  // namespace exit_code

/// Bad command line; the message names the offending flag.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommandRequest {
    Subcommand subcommand = Subcommand::theta;
    cplx mu = 0.0;
    cplx alpha = 0.0;
    cplx beta = 0.0;
    cplx gamma2 = 0.0;

    // global
    std::optional<double> tol;
    std::optional<std::size_t> kmax;
    std::optional<int> grid;
    std::optional<int> steps;
    std::optional<std::string> out_path;
    OutputFormat format = OutputFormat::json;

    // theta / wavefunction / solve
    std::optional<cplx> lambda;
    std::optional<cplx> t;
    bool accelerate = false;
    Precision precision = Precision::binary64;
    std::optional<int> index;
    std::optional<cplx> guess;

    // scan: real interval, or a rectangle when im_range is set
    std::optional<std::pair<double, double>> range;
    std::optional<std::pair<double, double>> im_range;
    std::optional<int> grid_im;

    // map
    std::string sweep = "gamma2";
    std::pair<double, double> lambda_range{-40.0, 120.0};
    std::pair<double, double> sweep_range{-80.0, 80.0};
    std::optional<int> grid_sweep;
    bool refine = false;
    std::optional<std::string> segments_path;

    // track
    std::string parameter = "beta";
    double from = 0.0;
    double to = 0.0;
    double step = 1.0;
    std::vector<int> indices{0};

    // wavefunction
    int points = 201;
    bool normalize = false;

    // verify
    std::string suite = "all";
};

/// Parses argv (argv[0] is the program name). Throws UsageError.
/// Returns nullopt when help was printed to `out`.
std::optional<CommandRequest> parse_request(int argc, const char* const* argv, std::ostream& out);

/// Executes a request, writing the artifact to out_path or `out` and one-line
/// diagnostics to `err`. Returns the process exit code.
int run(const CommandRequest& request, std::ostream& out, std::ostream& err);

/// parse_request + run with usage errors mapped to exit_code::usage.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cswf::cli
