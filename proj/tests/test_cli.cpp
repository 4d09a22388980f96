// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "kp/cli.hpp"
#include "kp/io.hpp"

using namespace kp;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result kp_run(std::vector<std::string> args) {
    args.insert(args.begin(), "kp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("kp_test_" + name)).string();
}

const std::string kGr24 = "1,0,-1,-2;0,1,3,1";
const std::string kKappa4 = "-3,-1,0.3,2";
const std::string kKappa9 = "-4.06,-3.66,-2.45,-0.51,-0.05,1.52,2.64,2.89,3.47";

}  // namespace

TEST_CASE("asymptotics of the (4,9) derangement") {
    const Result r = kp_run({"asymptotics", "--pi", "6,7,1,2,8,3,9,4,5", "--kappa", kKappa9});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["top"] == Json::parse("[[7,9],[5,8],[2,7],[1,6]]"));
    CHECK(j["bottom"] == Json::parse("[[1,3],[2,4],[3,6],[4,8],[5,9]]"));
    CHECK(j["left_region"] == "1257");
}

TEST_CASE("necklace round trip through the CLI") {
    const Result r = kp_run({"necklace", "--pi", "6,7,1,2,8,3,9,4,5"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["necklace"][0] == Json::parse("[1,2,5,7]"));
    CHECK(j["necklace"][8] == Json::parse("[1,2,5,9]"));
    const Result back =
        kp_run({"necklace", "--necklace", "1257,2357,3457,4567,5678,6789,1789,1289,1259"});
    REQUIRE(back.code == 0);
    CHECK(Json::parse(back.out)["derangement"] == Json::parse("[6,7,1,2,8,3,9,4,5]"));
}

TEST_CASE("one-soliton plot is a single vertical line") {
    const std::string svg = temp_path("one.svg");
    const Result r = kp_run({"plot", "--rows", "1,1", "--kappa", "-1,1", "--time", "0", "--out", svg});
    REQUIRE(r.code == 0);
    const std::string text = read_file(svg);
    std::size_t lines = 0;
    for (std::size_t p = 0; (p = text.find("<polyline", p)) != std::string::npos; ++p) ++lines;
    CHECK(lines == 1);
    CHECK(text.find("points=\"320,616 320,24\"") != std::string::npos);
}

TEST_CASE("plot, invert and verify the TP Gr(2,4) example") {
    const std::string plot = temp_path("plot.json");
    const std::string matrix = temp_path("matrix.json");
    REQUIRE(kp_run({"plot", "--rows", kGr24, "--kappa", kKappa4, "--time", "-8", "--json", plot}).code == 0);
    const Result inv = kp_run({"invert", "--plot", plot, "--kappa", kKappa4, "--time", "-8", "--out", matrix});
    REQUIRE(inv.code == 0);
    const Json report = Json::parse(inv.out);
    CHECK(report["tier"] == 1);
    CHECK(report["unique"] == true);
    const GrassmannPoint back = point_from_json(Json::parse(read_file(matrix)));
    CHECK(max_ratio_error(GrassmannPoint::from_rows({{1, 0, -1, -2}, {0, 1, 3, 1}}), back) <= 1e-6);

    const Result v = kp_run({"verify", "--rows", kGr24, "--kappa", kKappa4, "--time", "-8"});
    CHECK(v.code == 0);
    CHECK(v.out.find("FAIL") == std::string::npos);
    CHECK(v.out.find("all checks passed") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
    const std::vector<std::string> args{"verify", "--rows", kGr24, "--kappa", kKappa4};
    CHECK(kp_run(args).out == kp_run(args).out);
    const std::vector<std::string> plot{"plot", "--rows", kGr24, "--kappa", kKappa4, "--time", "-3", "--json",
                                        temp_path("det.json")};
    kp_run(plot);
    const std::string first = read_file(temp_path("det.json"));
    kp_run(plot);
    CHECK(read_file(temp_path("det.json")) == first);
}

TEST_CASE("triangulate and le2plabic") {
    const Result t = kp_run({"triangulate", "--n", "6", "--diagonals", "1-3,1-4,1-5"});
    REQUIRE(t.code == 0);
    const Json j = Json::parse(t.out);
    CHECK(j["trip_permutation"] == Json::parse("[5,6,1,2,3,4]"));
    CHECK(j["bounded_regions"] == Json::parse(R"(["13","14","15"])"));
    CHECK(j["reduced_heuristic"] == true);
    const Result f = kp_run({"triangulate", "--n", "6", "--diagonals", "1-3,1-4,1-5", "--flip", "1-4"});
    CHECK(Json::parse(f.out)["triangulation"]["diagonals"] == Json::parse("[[1,3],[1,5],[3,5]]"));

    const Result le = kp_run({"le2plabic", "--le", "++/++", "--n", "4"});
    REQUIRE(le.code == 0);
    CHECK(Json::parse(le.out)["trip_permutation"] == Json::parse("[3,4,1,2]"));
}

TEST_CASE("exit codes and error reports") {
    const Result bad_kappa = kp_run({"verify", "--rows", kGr24, "--kappa", "-3,-1,0,2"});
    CHECK(bad_kappa.code == 1);
    CHECK(Json::parse(bad_kappa.err)["error"] == "NotGeneric");
    CHECK(kp_run({"asymptotics", "--pi", "2,1", "--kappa", "1,0"}).code == 1);
    CHECK(kp_run({"triangulate", "--n", "6", "--diagonals", "1-3,1-4,1-5", "--flip", "2-4"}).code == 1);
    CHECK(kp_run({"plot", "--kappa", "1,2"}).code == 2);
    CHECK(kp_run({"plot", "--rows", "1,x", "--kappa", "1,2"}).code == 2);
    CHECK(kp_run({"nonsense"}).code == 2);
    CHECK(kp_run({"invert", "--plot", temp_path("missing.json"), "--kappa", "1,2"}).code == 2);
}

TEST_CASE("KP_TOL widens the zero band") {
    // D_23 = 1e-7 against a largest minor of 1: nonzero at the default tolerance.
    const std::vector<std::string> args{"necklace", "--rows", "1,0,-1e-7,-1;0,1,1,1"};
    const Result strict = kp_run(args);
    REQUIRE(strict.code == 0);
    CHECK(Json::parse(strict.out)["bases"] == 6);
    setenv("KP_TOL", "1e-6", 1);
    const Result loose = kp_run(args);
    unsetenv("KP_TOL");
    REQUIRE(loose.code == 0);
    CHECK(Json::parse(loose.out)["bases"] == 5);
    CHECK(kp_run({"necklace", "--rows", "1,0,-1e-7,-1;0,1,1,1", "--tol", "1e-6"}).out == loose.out);
}
