// End-to-end CLI coverage: every subcommand driven in-process through run_cli
// with captured streams, asserting the JSON/CSV records and the exit-code
// contract (0 ok, 1 ambiguous tie, 2 usage/domain, 3 resource cap).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nearcurve/cli.hpp"

using nlohmann::json;

namespace {

struct CliRun {
    int code = -1;
    std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.emplace_back("nearcurve");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(full.size());
    for (auto& s : full) argv.push_back(s.data());

    std::ostringstream cap_out, cap_err;
    auto* old_out = std::cout.rdbuf(cap_out.rdbuf());
    auto* old_err = std::cerr.rdbuf(cap_err.rdbuf());
    CliRun r;
    try {
        r.code = nearcurve::run_cli(static_cast<int>(argv.size()), argv.data());
    } catch (...) {
        std::cout.rdbuf(old_out);
        std::cerr.rdbuf(old_err);
        throw;
    }
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    r.out = cap_out.str();
    r.err = cap_err.str();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const char* kParabola = "parabola:a=1,b=0,c=0";

} // namespace

TEST_CASE("count emits one self-describing JSON line") {
    auto r = run({"count", "--curve", kParabola, "--interval", "1,2", "--Q", "100",
                  "--delta", "1/1000000000", "--mode", "reduced"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("{\"tool\":\"count\",\"version\":", 0) == 0);
    CHECK(r.out.back() == '\n');
    json rec = json::parse(r.out);
    CHECK(rec["count"] == 33);
    CHECK(rec["Q"] == 100);
    CHECK(rec["delta"] == "1/1000000000");
    CHECK(rec["mode"] == "reduced");
    CHECK(rec["exact_path"] == true);
    CHECK(rec["ties"] == 0);
    std::string config = rec["config"];
    CHECK(config.find("count --curve parabola:a=1,b=0,c=0") != std::string::npos);
    CHECK(config.find("--Q 100") != std::string::npos);
}

TEST_CASE("count --list includes the leading near-points") {
    auto r = run({"count", "--curve", kParabola, "--interval", "1,2", "--Q", "30",
                  "--delta", "1/5", "--list", "4"});
    CHECK(r.code == 0);
    json rec = json::parse(r.out);
    REQUIRE(rec["points"].size() == 4);
    CHECK(rec["points"][0]["a"] == 1);
    CHECK(rec["points"][0]["b"] == 1);
    CHECK(rec["points"][0]["q"] == 1);
    CHECK(rec["points"][0]["distance"] == 0.0);
}

TEST_CASE("usage and domain problems exit 2") {
    CHECK(run({"count", "--curve", kParabola, "--interval", "1,2", "--Q", "100",
               "--delta", "3/5"})
              .code == 2); // delta outside (0, 1/2]
    CHECK(run({"count", "--curve", "parabola:a=0", "--interval", "1,2", "--Q", "10",
               "--delta", "1/5"})
              .code == 2); // flat parabola rejected
    CHECK(run({"count", "--curve", kParabola, "--interval", "1,2", "--Q", "10",
               "--delta", "1/5", "--bogus"})
              .code == 2); // unknown flag
    CHECK(run({}).code == 2);                   // a subcommand is required
    CHECK(run({"count"}).code == 2);            // missing required options
    CHECK(run({"--help"}).code == 0);
    auto r = run({"count", "--curve", kParabola, "--interval", "1,2", "--Q", "100",
                  "--delta", "3/5"});
    CHECK(r.err.find("delta") != std::string::npos);
}

TEST_CASE("resource caps exit 3") {
    CHECK(run({"count", "--curve", kParabola, "--interval", "1,2", "--Q", "100",
               "--delta", "1e-50"})
              .code == 3); // literal beyond 128-bit range
}

TEST_CASE("dual subcommand reports band, evaluations, and involution residual") {
    auto r = run({"dual", "--curve", kParabola, "--interval", "1,2", "--y", "3"});
    CHECK(r.code == 0);
    json rec = json::parse(r.out);
    CHECK(rec["domain"][0].get<double>() == doctest::Approx(2.0));
    CHECK(rec["domain"][1].get<double>() == doctest::Approx(4.0));
    CHECK(rec["curvature_band"][0].get<double>() == doctest::Approx(0.5));
    CHECK(rec["curvature_band"][1].get<double>() == doctest::Approx(0.5));
    REQUIRE(rec["evals"].size() == 1);
    CHECK(rec["evals"][0]["fstar"].get<double>() == doctest::Approx(2.25));
    CHECK(rec["evals"][0]["fstar_d1"].get<double>() == doctest::Approx(1.5));
    CHECK(rec["evals"][0]["fstar_d2"].get<double>() == doctest::Approx(0.5));
    CHECK(rec["double_dual_residual"].get<double>() < 1e-8);
}

TEST_CASE("oscint compares quadrature against the stationary-phase value") {
    auto r = run({"oscint", "--curve", kParabola, "--interval", "1,2", "--k", "2",
                  "--j", "6", "--q", "100", "--method", "both"});
    CHECK(r.code == 0);
    json rec = json::parse(r.out);
    CHECK(rec["x0"].get<double>() == doctest::Approx(1.5));
    CHECK(rec["sp_re"].get<double>() == doctest::Approx(0.03535533905932738).epsilon(1e-10));
    CHECK(rec["sp_im"].get<double>() == doctest::Approx(0.03535533905932738).epsilon(1e-10));
    CHECK(rec["abs_diff"].get<double>() < 0.01);

    // No interior critical point: j/k outside the derivative range.
    CHECK(run({"oscint", "--curve", kParabola, "--interval", "1,2", "--k", "1", "--j",
               "10", "--q", "30", "--method", "stationary"})
              .code == 2);
}

TEST_CASE("expsum with the truncated expansion comparison") {
    auto r = run({"expsum", "--curve", kParabola, "--interval", "0,1", "--k", "1",
                  "--q", "2", "--poisson"});
    CHECK(r.code == 0);
    json rec = json::parse(r.out);
    CHECK(rec["terms"] == 3);
    CHECK(rec["sum_re"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rec["j_first"] == -1);
    CHECK(rec["j_last"] == 3);
    CHECK(rec["abs_diff"].get<double>() <= 2.0 * std::log(2.0 + 2.0));
}

TEST_CASE("et-bound: the measured discrepancy never beats its bound") {
    auto r = run({"et-bound", "--source", "sqrt2", "--N", "2000", "--K", "50",
                  "--alpha", "0.1", "--beta", "0.3"});
    CHECK(r.code == 0);
    json rec = json::parse(r.out);
    CHECK(rec["N"] == 2000);
    CHECK(rec["dominated"] == true);
    CHECK(std::abs(rec["discrepancy"].get<double>()) <= rec["bound"].get<double>());
}

TEST_CASE("discrepancy subcommand reports the doubled star surrogate") {
    auto r = run({"discrepancy", "--source", "sqrt2", "--N", "100"});
    CHECK(r.code == 0);
    json rec = json::parse(r.out);
    CHECK(rec["star"].get<double>() > 0.0);
    CHECK(rec["D_surrogate"].get<double>() ==
          doctest::Approx(2.0 * rec["star"].get<double>()));
}

TEST_CASE("sweep writes CSV (and SVG) artifacts") {
    std::string csv_path = "/tmp/nearcurve_test_sweep.csv";
    std::string svg_path = "/tmp/nearcurve_test_sweep.svg";
    std::remove(csv_path.c_str());
    std::remove(svg_path.c_str());
    auto r = run({"sweep", "--experiment", "asymptotic", "--curve", kParabola,
                  "--interval", "1,2", "--Q-list", "20,40,80", "--delta", "1/5",
                  "--mode", "raw", "--out", csv_path, "--plot", svg_path});
    CHECK(r.code == 0);
    CHECK(r.out.empty()); // everything went to the files
    std::string csv = slurp(csv_path);
    CHECK(csv.rfind("Q,delta,mode,count,main_term,ratio,abs_error,wall_ms", 0) == 0);
    CHECK(csv.find("\n20,") != std::string::npos);
    CHECK(csv.find("\n80,") != std::string::npos);
    std::string svg = slurp(svg_path);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("abs_error") != std::string::npos);
    std::remove(csv_path.c_str());
    std::remove(svg_path.c_str());

    auto floor = run({"sweep", "--experiment", "floor", "--curve", "fermat3",
                      "--interval", "1/5,4/5", "--Q-list", "50,100", "--delta-list",
                      "1/100000000"});
    CHECK(floor.code == 0);
    CHECK(floor.out.rfind("Q,delta,count,on_curve_count", 0) == 0);
    CHECK(floor.out.find("\n50,") != std::string::npos);

    CHECK(run({"sweep", "--experiment", "nonsense", "--curve", kParabola,
               "--interval", "1,2"})
              .code == 2);
    CHECK(run({"sweep", "--experiment", "asymptotic", "--curve", kParabola,
               "--interval", "1,2", "--Q-list", "20,40", "--delta", "1/5", "--out",
               "/nonexistent-dir/x.csv"})
              .code == 2);
}

TEST_CASE("verify runs a filtered acceptance criterion") {
    auto r = run({"verify", "--quick", "--only", "fresnel"});
    CHECK(r.code == 0);
    json rec = json::parse(r.out);
    CHECK(rec["criterion"] == "c12-fresnel");
    CHECK(rec["pass"] == true);
    CHECK(r.err.find("1/1 criteria passed") != std::string::npos);

    CHECK(run({"verify", "--only", "zzz-no-such"}).code == 2);
}

TEST_CASE("counts agree across explicit thread settings") {
    auto one = run({"--threads", "1", "count", "--curve", kParabola, "--interval",
                    "1,2", "--Q", "150", "--delta", "1/7"});
    auto eight = run({"--threads", "8", "count", "--curve", kParabola, "--interval",
                      "1,2", "--Q", "150", "--delta", "1/7"});
    REQUIRE(one.code == 0);
    REQUIRE(eight.code == 0);
    json a = json::parse(one.out), b = json::parse(eight.out);
    CHECK(a["count"] == b["count"]);
    CHECK(a["main_term"] == b["main_term"]);
    CHECK(a["ratio"] == b["ratio"]);
}
