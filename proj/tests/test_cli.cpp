#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "cswf/format.hpp"

using namespace cswf;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "cswf");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

cplx read_complex(const json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

}  // namespace

TEST_CASE("theta at a known eigenvalue") {
    const Outcome r = invoke({"theta", "--mu", "2", "--beta", "0", "--gamma2", "-25", "--lambda", "25.4289571085"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc.contains("request"));
    CHECK(doc.contains("diagnostics"));
    CHECK(std::abs(read_complex(doc["results"]["value"])) < 1e-8);
}

TEST_CASE("solve by index") {
    const Outcome r = invoke({"solve", "--mu", "0", "--beta", "0", "--gamma2", "0", "--index", "3"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(read_complex(doc["results"][0]["lambda"]) == cplx(12.0));
}

TEST_CASE("verify table1 prints PASS rows") {
    const Outcome r = invoke({"verify", "--suite", "table1"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "suite,label,value,reference,error,tolerance,status");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(line.size() > 5);
        CHECK(line.substr(line.size() - 5) == ",PASS");
    }
    CHECK(rows == 10);
}

TEST_CASE("solve output fed back into theta is a zero") {
    const Outcome s = invoke({"solve", "--mu", "2+0.05i", "--gamma2", "-25", "--index", "2", "--format", "csv"});
    REQUIRE(s.code == 0);
    std::istringstream lines(s.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    std::vector<std::string> cells;
    std::stringstream fields(row);
    for (std::string c; std::getline(fields, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() >= 3);
    const std::string lambda = format_complex(cplx(std::stod(cells[1]), std::stod(cells[2])));
    const Outcome t = invoke({"theta", "--mu", "2+0.05i", "--gamma2", "-25", "--lambda", lambda});
    REQUIRE(t.code == 0);
    CHECK(std::abs(read_complex(json::parse(t.out)["results"]["value"])) <= 1e-8);
}

TEST_CASE("usage errors name the flag") {
    const Outcome a = invoke({"solve", "--mu", "2x", "--index", "1"});
    CHECK(a.code == cli::exit_code::usage);
    CHECK(a.err.find("--mu") != std::string::npos);
    CHECK(std::count(a.err.begin(), a.err.end(), '\n') == 1);

    const Outcome b = invoke({"theta", "--mu", "1", "--bogus", "3"});
    CHECK(b.code == cli::exit_code::usage);
    CHECK(b.err.find("--bogus") != std::string::npos);

    const Outcome c = invoke({"theta", "--mu", "1", "--lambda", "2", "--format", "xml"});
    CHECK(c.code == cli::exit_code::usage);
    CHECK(c.err.find("--format") != std::string::npos);

    CHECK(invoke({}).code == cli::exit_code::usage);
}

TEST_CASE("domain and numerical errors map to exit codes 1 and 2") {
    const Outcome d = invoke({"scan", "--mu", "2+0.05i", "--gamma2", "-25", "--range", "20", "60"});
    CHECK(d.code == cli::exit_code::domain);
    const Outcome n = invoke({"theta", "--mu", "0", "--t", "1", "--tol", "1e-15", "--kmax", "50"});
    CHECK(n.code == cli::exit_code::numerical);
}

TEST_CASE("CSV output is deterministic with LF line endings") {
    const std::vector<std::string> args{"map", "--mu", "1", "--grid", "24", "--lambda-range", "-5", "30",
                                        "--sweep-range", "-20", "20"};
    const Outcome a = invoke(args);
    const Outcome b = invoke(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("gamma2,lambda,re,im\n", 0) == 0);
    CHECK(a.out.find('\r') == std::string::npos);

    const std::vector<std::string> scan{"scan", "--mu", "2", "--gamma2", "-25", "--range", "20", "60", "--format", "csv"};
    CHECK(invoke(scan).out == invoke(scan).out);
}

TEST_CASE("--out writes the artifact to a file") {
    const auto path = std::filesystem::temp_directory_path() / "cswf_cli_out_test.csv";
    const Outcome r = invoke({"wavefunction", "--mu", "0", "--lambda", "2", "--points", "3", "--out", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == "x,re,im\n-1,1.00000000000e+00,0.00000000000e+00\n0,0.00000000000e+00,0.00000000000e+00\n"
                        "1,-1.00000000000e+00,0.00000000000e+00\n");
    std::filesystem::remove(path);
}

TEST_CASE("track emits one row per parameter value and index") {
    const Outcome r = invoke({"track", "--mu", "0", "--param", "gamma2", "--from", "0", "--to", "0", "--indices", "2",
                              "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "gamma2,index,lambda_re,lambda_im,residual\n0,2,6,0,0.00000000000e+00\n");
}
