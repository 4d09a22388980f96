// SPDX-License-Identifier: Apache-2.0
// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "kp/cli.hpp"
#include "kp/error.hpp"
#include "kp/inverse.hpp"
#include "kp/io.hpp"
#include "kp/le_to_plabic.hpp"
#include "kp/triangulation.hpp"

using namespace kp;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

KappaParams generic_kappa(int n, int k) {
    std::vector<double> kv;
    for (int i = 0; i < n; ++i) kv.push_back(-2.71 + 1.13 * i + 0.07 * i * i);
    return validate_kappa(kv, k);
}

std::string cli(std::vector<std::string> args, int* code = nullptr) {
    args.insert(args.begin(), "kp");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int c = run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (code) *code = c;
    return out.str() + err.str();
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// Contour plots collected by the criteria that compute them.
struct CorpusPlot {
    GrassmannPoint point;
    KappaParams kappa;
    ContourPlot plot;
};
std::vector<CorpusPlot> corpus;

Outcome ac1() {
    const std::string kappa = "-4.06,-3.66,-2.45,-0.51,-0.05,1.52,2.64,2.89,3.47";
    int code = 0;
    const Json j = Json::parse(cli({"asymptotics", "--pi", "6,7,1,2,8,3,9,4,5", "--kappa", kappa}, &code));
    const bool top = j["top"] == Json::parse("[[7,9],[5,8],[2,7],[1,6]]");
    const bool bottom = j["bottom"] == Json::parse("[[1,3],[2,4],[3,6],[4,8],[5,9]]");
    const bool left = j["left_region"] == "1257";
    return {code == 0 && top && bottom && left, "top " + j["top"].dump() + ", bottom " + j["bottom"].dump() +
                                                    ", x<<0 " + j["left_region"].get<std::string>()};
}

Outcome ac2() {
    const Derangement pi({6, 7, 1, 2, 8, 3, 9, 4, 5});
    std::vector<Subset> expected;
    for (const char* s : {"1257", "2357", "3457", "4567", "5678", "6789", "1789", "1289", "1259"})
        expected.push_back(Subset::parse(s));
    const GrassmannNecklace neck = necklace_from_derangement(pi);
    const bool forward = neck.subsets() == expected;
    const bool back = derangement_from_necklace(GrassmannNecklace(9, expected)) == pi;
    return {forward && back, std::string("necklace ") + (forward ? "matches" : "differs") + ", inverse map " +
                                 (back ? "recovers pi" : "fails")};
}

Outcome ac3() {
    std::mt19937_64 rng(101);
    int cases = 0, good = 0;
    std::string first_bad;
    for (int n = 2; n <= 6; ++n) {
        for (int k = 1; k <= std::min(3, n - 1); ++k) {
            const KappaParams kappa = generic_kappa(n, k);
            for (const LeDiagram& le : enumerate_le_diagrams(k, n)) {
                if (!le.all_plus()) continue;
                const GeneralizedPlabicGraph gm = build_g_minus(le);
                for (int s = 0; s < 5; ++s) {
                    ++cases;
                    try {
                        const GrassmannPoint a = random_cell_point(le, rng, 1.0);
                        const AutoTime at = auto_t_negative(tropical_field(a, kappa));
                        if (label_isomorphic(at.graph.graph, gm)) ++good;
                        else if (first_bad.empty()) first_bad = le.to_string();
                        corpus.push_back({a, kappa, at.plot});
                    } catch (const Error& e) {
                        if (first_bad.empty()) first_bad = le.to_string() + ": " + e.what();
                    }
                }
            }
        }
    }
    return {good == cases, std::to_string(good) + "/" + std::to_string(cases) + " label-isomorphic to G_-(L)" +
                               (first_bad.empty() ? "" : "; first failure " + first_bad)};
}

Outcome ac4() {
    int cases = 0, good = 0;
    for (int n = 2; n <= 7; ++n)
        for (int k = 1; k <= std::min(3, n - 1); ++k)
            for (const LeDiagram& le : enumerate_le_diagrams(k, n)) {
                ++cases;
                good += trips(build_g_minus(le)).permutation == derangement_of(le).one_line();
            }
    return {good == cases, std::to_string(good) + "/" + std::to_string(cases) + " irreducible Le-diagrams"};
}

Outcome ac5() {
    std::mt19937_64 rng(202);
    std::vector<LeDiagram> cells;
    for (int n = 2; n <= 6; ++n)
        for (int k = 1; k <= std::min(3, n - 1); ++k)
            for (const LeDiagram& le : enumerate_le_diagrams(k, n)) cells.push_back(le);
    std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
    int good = 0;
    std::string first_bad;
    for (int s = 0; s < 100; ++s) {
        const LeDiagram& le = cells[pick(rng)];
        try {
            const KappaParams kappa = generic_kappa(le.n(), le.k());
            const GrassmannPoint a = random_cell_point(le, rng, 1.0);
            const ContourPlot cp = contour_plot(tropical_field(a, kappa), 0.0);
            if (read_derangement(cp) == derangement_of(le)) ++good;
            else if (first_bad.empty()) first_bad = le.to_string();
            corpus.push_back({a, kappa, cp});
        } catch (const Error& e) {
            if (first_bad.empty()) first_bad = le.to_string() + ": " + e.what();
        }
    }
    return {good == 100, std::to_string(good) + "/100 derangements read from t = 0 plots" +
                             (first_bad.empty() ? "" : "; first failure " + first_bad)};
}

Outcome ac6() {
    std::mt19937_64 rng(303);
    double line = 0, slope = 0, balance = 0, sandwich = -INFINITY;
    bool adjacency = true;
    for (const CorpusPlot& c : corpus) {
        const TropicalField f = tropical_field(c.point, c.kappa);
        const InvariantReport rep = check_invariants(c.plot, f);
        adjacency = adjacency && rep.adjacency;
        line = std::max(line, rep.line_residual);
        slope = std::max(slope, rep.slope_residual);
        balance = std::max(balance, rep.balance_residual);
        const BBox& b = c.plot.bbox;
        std::uniform_real_distribution<double> ux(b.xmin, b.xmax), uy(b.ymin, b.ymax);
        const double log_m = std::log(static_cast<double>(f.terms.size()));
        for (int s = 0; s < 1000; ++s) {
            const double x = ux(rng), y = uy(rng);
            const double fa = f.max_value(x, y, c.plot.time);
            const double lt = log_tau(c.point, c.kappa, x, y, c.plot.time).log_abs;
            const double slack = 1e-12 * std::max(1.0, std::abs(fa));
            sandwich = std::max({sandwich, fa - lt - slack, lt - fa - log_m - slack});
        }
    }
    const bool pass = adjacency && line <= 1e-9 && slope <= 1e-9 && balance <= 1e-9 && sandwich <= 0.0;
    return {pass, std::to_string(corpus.size()) + " plots; adjacency " + (adjacency ? "ok" : "violated") +
                      ", line " + fmt("%.2e", line) + ", slope " + fmt("%.2e", slope) + ", balance " +
                      fmt("%.2e", balance) + ", sandwich excess " + fmt("%.2e", std::max(sandwich, 0.0))};
}

Outcome ac7() {
    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> ux(-5.0, 5.0), ut(-1.0, 1.0);
    std::vector<std::pair<GrassmannPoint, KappaParams>> points{
        {GrassmannPoint::from_rows({{1, 0, -1, -2}, {0, 1, 3, 1}}), validate_kappa(std::vector<double>{-3, -1, 0.3, 2}, 2)}};
    for (const auto& [le, n] : {std::pair{"++\n++", 4}, std::pair{"+++\n+++", 5}, std::pair{"++\n++\n++", 5}}) {
        const LeDiagram d = LeDiagram::parse(le, n);
        points.emplace_back(random_cell_point(d, rng, 1.0), generic_kappa(d.n(), d.k()));
    }
    const double h = 1e-4;
    double worst = 0;
    for (int s = 0; s < 1000; ++s) {
        const auto& [a, kp] = points[s % points.size()];
        const double x = ux(rng), y = ux(rng), t = ut(rng);
        auto L = [&](double xx) { return log_tau(a, kp, xx, y, t).log_abs; };
        const double fd = 2 * (L(x + h) - 2 * L(x) + L(x - h)) / (h * h);
        worst = std::max(worst, std::abs(fd - kp_u(a, kp, x, y, t)));
    }
    // One soliton with kappa = (-1, 1): u = (k2 - k1)^2 / 2 * sech^2(...), crest 2 at x = -t.
    const GrassmannPoint one = GrassmannPoint::from_rows({{1, 1}});
    const KappaParams k12 = validate_kappa(std::vector<double>{-1, 1}, 1);
    double crest = 0;
    for (double t : {-1.0, 0.0, 0.5}) crest = std::max(crest, std::abs(kp_u(one, k12, -t, 0.3, t) - 2.0));
    double profile = 0;
    for (double x : {-2.0, -0.5, 0.7, 3.0}) {
        const double expect = 2.0 / std::pow(std::cosh(x), 2);
        profile = std::max(profile, std::abs(kp_u(one, k12, x, 0.0, 0.0) - expect));
    }
    return {worst <= 1e-4 && crest <= 1e-8 && profile <= 1e-8,
            "FD vs analytic u " + fmt("%.2e", worst) + " at 1000 points; crest error " + fmt("%.2e", crest) +
                ", sech^2 profile error " + fmt("%.2e", profile)};
}

Outcome ac8() {
    bool pass = true;
    const auto all = enumerate_triangulations(6);
    int good = 0;
    for (const Triangulation& t : all) {
        const GeneralizedPlabicGraph g = psi(t);
        const FaceLabeling lab = label(g);
        std::set<int> outer(lab.faces.boundary_face.begin(), lab.faces.boundary_face.end());
        std::set<Subset> bounded, diagonals;
        for (int f = 0; f < lab.faces.face_count; ++f)
            if (!outer.count(f)) bounded.insert(lab.region_labels[f]);
        for (auto [a, b] : t.diagonals()) diagonals.insert(Subset::of({a, b}));
        good += trips(g).permutation == std::vector<int>{5, 6, 1, 2, 3, 4} && bounded == diagonals &&
                reduced_heuristic(g).pass;
    }
    pass = pass && all.size() == 14 && good == 14;
    bool regular = true;
    std::vector<std::set<std::size_t>> adj(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (const Diagonal& d : all[i].diagonals())
            adj[i].insert(std::find(all.begin(), all.end(), flip(all[i], d)) - all.begin());
        regular = regular && adj[i].size() == 3 && !adj[i].count(all.size());
    }
    std::set<std::size_t> seen{0};
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : adj[v])
            if (w < all.size() && seen.insert(w).second) stack.push_back(w);
    }
    const bool connected = seen.size() == all.size();
    std::mt19937_64 rng(505);
    const LeDiagram top = LeDiagram::parse("++++\n++++", 6);
    int relations = 0, hold = 0;
    for (int s = 0; s < 100; ++s) {
        const GrassmannPoint p = random_cell_point(top, rng, 1.0);
        for (int a = 1; a <= 6; ++a)
            for (int b = a + 1; b <= 6; ++b)
                for (int c = b + 1; c <= 6; ++c)
                    for (int d = c + 1; d <= 6; ++d) {
                        ++relations;
                        hold += exchange_check(p, a, b, c, d, 1e-10);
                    }
    }
    pass = pass && regular && connected && hold == relations;
    return {pass, std::to_string(good) + "/14 Psi(T) checks; flip graph " + (regular ? "3-regular" : "irregular") +
                      (connected ? ", connected" : ", disconnected") + "; exchange " + std::to_string(hold) + "/" +
                      std::to_string(relations)};
}

Outcome ac9() {
    std::mt19937_64 rng(606);
    double worst = 0;
    int cases = 0, failures = 0;
    auto attempt = [&](const GrassmannPoint& a, const KappaParams& kp, const ContourPlot& cp) {
        ++cases;
        try {
            const Reconstruction r = reconstruct(solve_logs(offsets_to_ratios(observe(cp), kp)), read_derangement(cp));
            worst = std::max(worst, max_ratio_error(a, r.point));
        } catch (const Error&) {
            ++failures;
        }
    };
    for (const auto& [k, n] : {std::pair{2, 4}, std::pair{2, 5}, std::pair{3, 5}}) {
        std::string rows;
        for (int r = 0; r < k; ++r) rows += std::string(n - k, '+') + (r + 1 < k ? "\n" : "");
        const LeDiagram top = LeDiagram::parse(rows, n);
        const KappaParams kp = generic_kappa(n, k);
        for (int s = 0; s < 10; ++s) {
            const GrassmannPoint a = random_cell_point(top, rng, 1.0);
            attempt(a, kp, auto_t_negative(tropical_field(a, kp)).plot);
        }
    }
    int x_free = 0, skipped = 0;
    const LeDiagram top24 = LeDiagram::parse("++\n++", 4);
    const KappaParams kp = generic_kappa(4, 2);
    for (int s = 0; s < 10; ++s) {
        const GrassmannPoint a = random_cell_point(top24, rng, 1.0);
        for (double t : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
            const ContourPlot cp = contour_plot(tropical_field(a, kp), t);
            bool has_x = false;
            for (const auto& v : cp.vertices) has_x = has_x || v.cls == VertexClass::XCrossing;
            if (has_x) {
                ++skipped;
                continue;
            }
            ++x_free;
            attempt(a, kp, cp);
        }
    }
    return {failures == 0 && worst <= 1e-6,
            std::to_string(cases) + " reconstructions (" + std::to_string(x_free) + " at t in {-2..2}, " +
                std::to_string(skipped) + " plots with X-crossings skipped); max ratio error " + fmt("%.2e", worst) +
                (failures ? "; " + std::to_string(failures) + " errors" : "")};
}

Outcome ac10() {
    const std::vector<std::string> args{"verify", "--rows", "1,0,-1,-2;0,1,3,1", "--kappa", "-3,-1,0.3,2", "--time",
                                        "-8"};
    int c1 = 0, c2 = 0, c3 = 0;
    const std::string a = cli(args, &c1);
    const std::string b = cli(args, &c2);
    const std::string c = cli({"verify", "--rows", "1,0,-1,-2;0,1,3,1", "--kappa", "-3,-1,0.3,2"}, &c3);
    const std::string d = cli({"verify", "--rows", "1,0,-1,-2;0,1,3,1", "--kappa", "-3,-1,0.3,2"});
    return {a == b && c == d && c1 == 0 && c3 == 0,
            std::string("verify reports ") + (a == b && c == d ? "byte-identical" : "differ") + " across runs (" +
                std::to_string(a.size()) + " bytes), exit " + std::to_string(c1)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1  asymptotics of (6,7,1,2,8,3,9,4,5)", ac1},          {"AC2  necklace of (6,7,1,2,8,3,9,4,5)", ac2},
        {"AC3  t<<0 graph is G_-(L)", ac3},          {"AC4  trip permutation of G_-(L)", ac4},
        {"AC5  derangement from asymptotics", ac5},  {"AC6  geometric invariants", ac6},
        {"AC7  KP solution checks", ac7},            {"AC8  triangulations", ac8},
        {"AC9  inverse round trip", ac9},            {"AC10 determinism", ac10},
    };
    const double limits[] = {1, 1, 60, 60, 1e9, 1e9, 1e9, 1e9, 120, 1e9};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > limits[i]) {
            o.pass = false;
            o.detail += "; over the time limit";
        }
        failed += !o.pass;
        std::printf("%s %-42s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), o.detail.c_str(),
                    secs);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
