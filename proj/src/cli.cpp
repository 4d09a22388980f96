// SPDX-License-Identifier: Apache-2.0
#include "kp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "kp/error.hpp"
#include "kp/inverse.hpp"
#include "kp/io.hpp"
#include "kp/le_to_plabic.hpp"
#include "kp/triangulation.hpp"

namespace kp {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        const auto a = cur.find_first_not_of(" \t");
        const auto b = cur.find_last_not_of(" \t");
        out.push_back(a == std::string::npos ? "" : cur.substr(a, b - a + 1));
    }
    return out;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorCode::ParseError, "not a number: '" + s + "'");
    return v;
}

int parse_int(const std::string& s) {
    const double v = parse_double(s);
    if (v != std::floor(v)) throw Error(ErrorCode::ParseError, "not an integer: '" + s + "'");
    return static_cast<int>(v);
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& part : split(s, ',')) out.push_back(parse_double(part));
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (const auto& part : split(s, ',')) out.push_back(parse_int(part));
    return out;
}

Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, what + ": " + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

const char* positivity_name(Positivity p) {
    switch (p) {
        case Positivity::TP: return "TP";
        case Positivity::TNN: return "TNN";
        case Positivity::Neither: return "neither";
    }
    return "neither";
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// "1-3,1-4" -> diagonals.
std::vector<Diagonal> parse_diagonals(const std::string& s) {
    std::vector<Diagonal> out;
    if (s.empty()) return out;
    for (const auto& part : split(s, ',')) {
        const auto ends = split(part, '-');
        if (ends.size() != 2) throw Error(ErrorCode::ParseError, "diagonal '" + part + "' is not of the form i-j");
        out.emplace_back(parse_int(ends[0]), parse_int(ends[1]));
    }
    return out;
}

// Le-diagram rows separated by newlines, '/' or the two characters "\n".
LeDiagram parse_le(std::string text, int n) {
    for (std::size_t p; (p = text.find("\\n")) != std::string::npos;) text.replace(p, 2, "\n");
    for (char& c : text)
        if (c == '/') c = '\n';
    return LeDiagram::parse(text, n);
}

struct Options {
    std::string matrix_file;
    std::string rows;
    std::string kappa;
    std::optional<double> time;
    bool auto_t = false;
    std::string bbox;
    std::string out;
    std::string json_out;
    std::string pi;
    std::string necklace;
    int n = 0;
    std::string le;
    std::string le_file;
    std::string svg;
    std::string diagonals;
    std::string tri_file;
    std::string flip;
    bool realize = false;
    std::string plot_file;
    double cycle_tol = 1e-6;
    bool table = false;
    std::optional<double> tol;
};

class Runner {
public:
    Runner(const Options& o, double tol, std::ostream& out) : o_(o), tol_(tol), out_(out) {}

    GrassmannPoint matrix() const {
        if (!o_.rows.empty()) {
            std::vector<std::vector<double>> rows;
            for (const auto& r : split(o_.rows, ';')) rows.push_back(parse_doubles(r));
            return GrassmannPoint::from_rows(rows);
        }
        if (o_.matrix_file.empty()) throw Error(ErrorCode::ParseError, "a matrix is required (--matrix or --rows)");
        return point_from_json(parse_json(read_file(o_.matrix_file), o_.matrix_file));
    }

    KappaParams kappa(int k) const {
        if (o_.kappa.empty()) throw Error(ErrorCode::ParseError, "--kappa is required");
        const std::vector<double> v = parse_doubles(o_.kappa);
        return validate_kappa(v, k);
    }

    void emit(const Json& j) const {
        if (!o_.json_out.empty()) write_file(o_.json_out, dump(j));
        out_ << dump(j);
    }

    int plot() const {
        const GrassmannPoint a = matrix();
        const KappaParams kp = kappa(a.k());
        const TropicalField field = tropical_field(a, kp, tol_);
        std::optional<BBox> box;
        if (!o_.bbox.empty()) {
            const auto b = parse_doubles(o_.bbox);
            if (b.size() != 4) throw Error(ErrorCode::ParseError, "--bbox needs xmin,xmax,ymin,ymax");
            box = BBox{b[0], b[1], b[2], b[3]};
        }
        ContourPlot cp;
        if (o_.auto_t || !o_.time) {
            cp = auto_t_negative(field).plot;
            if (box) cp = contour_plot(field, cp.time, box);
        } else {
            cp = contour_plot(field, *o_.time, box);
        }
        if (!o_.out.empty()) write_file(o_.out, contour_svg(cp));
        const Json j = to_json(cp);
        if (!o_.json_out.empty()) write_file(o_.json_out, dump(j));
        int black = 0, white = 0, cross = 0;
        for (const auto& v : cp.vertices) {
            black += v.cls == VertexClass::Black;
            white += v.cls == VertexClass::White;
            cross += v.cls == VertexClass::XCrossing;
        }
        Json summary{{"time", round12(cp.time)}, {"generic", cp.generic},      {"regions", cp.regions.size()},
                     {"edges", cp.edges.size()}, {"black", black},            {"white", white},
                     {"x_crossings", cross},     {"phase_shifts", cp.phase_shifts.size()}, {"issues", cp.issues}};
        if (cp.generic) summary["derangement"] = to_json(read_derangement(cp));
        out_ << dump(summary);
        return 0;
    }

    Derangement derangement_input() const {
        if (!o_.pi.empty()) return Derangement(parse_ints(o_.pi));
        const GrassmannPoint a = matrix();
        return derangement_from_necklace(necklace_from_matroid(classify(a, tol_).matroid));
    }

    int asymptotics() const {
        const Derangement d = derangement_input();
        const KappaParams kp = kappa(d.k());
        const Asymptotics as = predict_asymptotics(d, kp);
        if (o_.table) {
            auto row = [&](const char* name, const std::vector<std::pair<int, int>>& v, bool top) {
                out_ << name;
                for (auto [a, b] : v) out_ << " [" << a << ',' << b << "]";
                out_ << (top ? "   (left to right, decreasing kappa_i+kappa_j)\n"
                             : "   (left to right, increasing kappa_i+kappa_j)\n");
            };
            out_ << "pi      " << d.to_string() << "\n";
            row("top    ", as.top, true);
            row("bottom ", as.bottom, false);
            out_ << "x<<0    " << as.left_region.to_string(d.n()) << "\n";
            if (!o_.json_out.empty()) {
                Json j{{"derangement", to_json(d)}, {"k", d.k()}, {"n", d.n()}};
                j.update(to_json(as, d.n()));
                write_file(o_.json_out, dump(j));
            }
            return 0;
        }
        Json j{{"derangement", to_json(d)}, {"k", d.k()}, {"n", d.n()}};
        j.update(to_json(as, d.n()));
        emit(j);
        return 0;
    }

    int necklace() const {
        Json j = Json::object();
        Derangement d({2, 1});
        if (!o_.necklace.empty()) {
            std::vector<Subset> subsets;
            for (const auto& s : split(o_.necklace, ',')) subsets.push_back(Subset::parse(s));
            const int n = o_.n ? o_.n : static_cast<int>(subsets.size());
            const GrassmannNecklace neck(n, subsets);
            d = derangement_from_necklace(neck);
            j["necklace"] = to_json(neck);
        } else if (!o_.pi.empty()) {
            d = Derangement(parse_ints(o_.pi));
            j["necklace"] = to_json(necklace_from_derangement(d));
        } else {
            const GrassmannPoint a = matrix();
            const Classification c = classify(a, tol_);
            const GrassmannNecklace neck = necklace_from_matroid(c.matroid);
            d = derangement_from_necklace(neck);
            j["positivity"] = positivity_name(c.positivity);
            j["irreducible"] = is_irreducible(a, tol_);
            j["bases"] = c.matroid.bases.size();
            j["necklace"] = to_json(neck);
        }
        j["derangement"] = to_json(d);
        j["k"] = d.k();
        j["n"] = d.n();
        j["excedances"] = d.excedance_positions().elements();
        j["tp_schubert"] = is_tp_schubert(d);
        j["le_diagram"] = lediagram_from_derangement(d, d.k(), d.n()).to_string();
        emit(j);
        return 0;
    }

    LeDiagram le_input() const {
        if (!o_.le_file.empty()) return parse_le(read_file(o_.le_file), o_.n);
        if (!o_.le.empty()) return parse_le(o_.le, o_.n);
        const Derangement d = derangement_input();
        return lediagram_from_derangement(d, d.k(), d.n());
    }

    int le2plabic() const {
        const LeDiagram le = le_input();
        const GeneralizedPlabicGraph g = build_g_minus(le);
        Json j{{"le_diagram", le.to_string()},
               {"k", le.k()},
               {"n", le.n()},
               {"derangement", to_json(derangement_of(le))},
               {"trip_permutation", trips(g).permutation},
               {"graph", to_json(g)}};
        if (!o_.kappa.empty()) j["t_negative_graph"] = to_json(predict_graph_t_neg(le, kappa(le.k())));
        if (!o_.svg.empty()) write_file(o_.svg, pipe_grid_svg(le));
        if (!o_.out.empty()) write_file(o_.out, graph_svg(g));
        emit(j);
        return 0;
    }

    int triangulate() const {
        Triangulation t = !o_.tri_file.empty()
                              ? triangulation_from_json(parse_json(read_file(o_.tri_file), o_.tri_file))
                              : Triangulation(o_.n, parse_diagonals(o_.diagonals));
        if (!o_.flip.empty()) {
            const auto d = parse_diagonals(o_.flip);
            if (d.size() != 1) throw Error(ErrorCode::ParseError, "--flip takes one diagonal");
            t = flip(t, d.front());
        }
        const GeneralizedPlabicGraph g = psi(t);
        const FaceLabeling lab = label(g);
        std::vector<bool> outer(lab.faces.face_count, false);
        for (int f : lab.faces.boundary_face) outer[f] = true;
        Json bounded = Json::array();
        for (int f = 0; f < lab.faces.face_count; ++f)
            if (!outer[f]) bounded.push_back(lab.region_labels[f].to_string(t.n()));
        std::sort(bounded.begin(), bounded.end());
        const HeuristicResult h = reduced_heuristic(g);
        Json j{{"triangulation", to_json(t)},
               {"trip_permutation", trips(g).permutation},
               {"bounded_regions", bounded},
               {"reduced_heuristic", h.pass},
               {"graph", to_json(g)}};
        if (o_.realize) {
            const auto r = find_realization(t, kappa(2));
            if (r) {
                j["realization"] = Json{{"time", round12(r->t)}, {"matrix", to_json(r->point)}};
            } else {
                j["realization"] = nullptr;
            }
        }
        if (!o_.out.empty()) write_file(o_.out, graph_svg(g));
        emit(j);
        return 0;
    }

    int invert() const {
        if (o_.plot_file.empty()) throw Error(ErrorCode::ParseError, "--plot is required");
        const Json pj = parse_json(read_file(o_.plot_file), o_.plot_file);
        const int k = pj.value("k", 0);
        ContourPlot cp = contour_from_json(pj, kappa(k));
        if (o_.time) cp.time = *o_.time;
        const KappaParams& kp = cp.kappa;
        const LogPlueckerSystem sys = offsets_to_ratios(observe(cp), kp, o_.cycle_tol);
        const LogSolution sol = solve_logs(sys);
        const Derangement d = o_.pi.empty() ? read_derangement(cp) : Derangement(parse_ints(o_.pi));
        const Reconstruction r = reconstruct(sol, d);
        Json logs = Json::object();
        for (const auto& [s, v] : sol.logs) logs[s.to_string(cp.n)] = round12(v);
        Json j{{"time", round12(cp.time)},
               {"derangement", to_json(d)},
               {"anchor", sol.anchor.to_string(cp.n)},
               {"log_pluecker", logs},
               {"cycle_residual", round12(sys.cycle_residual)},
               {"lsq_residual", round12(sol.residual)}};
        j.update(to_json(r));
        j["unique"] = r.tier == 1 || r.jacobian_rank == r.cell_dimension;
        if (!o_.out.empty()) write_file(o_.out, dump(to_json(r.point)));
        out_ << dump(j);
        if (!o_.json_out.empty()) write_file(o_.json_out, dump(j));
        return 0;
    }

    int verify() const {
        const GrassmannPoint a = matrix();
        const KappaParams kp = kappa(a.k());
        const Classification c = classify(a, tol_);
        const GrassmannNecklace neck = necklace_from_matroid(c.matroid);
        const Derangement d = derangement_from_necklace(neck);
        const TropicalField field = tropical_field(a, kp, tol_);
        const AutoTime at = auto_t_negative(field);
        const ContourPlot cp = o_.time ? contour_plot(field, *o_.time) : at.plot;
        const SolitonGraph sg = soliton_graph(cp);

        Json checks = Json::array();
        bool all = true;
        auto record = [&](const std::string& name, bool pass, const std::string& detail) {
            all = all && pass;
            checks.push_back(Json{{"check", name}, {"pass", pass}, {"detail", detail}});
        };
        record("tnn", c.positivity != Positivity::Neither, positivity_name(c.positivity));

        const Derangement read = read_derangement(at.plot);
        record("derangement", read == d, "read " + read.to_string() + ", cell " + d.to_string());
        bool neck_ok = false;
        std::string neck_detail;
        try {
            neck_ok = necklace_check(at.plot) == neck;
            neck_detail = neck_ok ? "unbounded regions match" : "unbounded regions differ";
        } catch (const Error& e) {
            neck_ok = e.code() == ErrorCode::NotASchubertCell && !is_tp_schubert(d);
            neck_detail = neck_ok ? "not a TP Schubert cell (skipped)" : e.what();
        }
        record("necklace", neck_ok, neck_detail);

        const InvariantReport inv = check_invariants(cp, field);
        record("adjacency", inv.adjacency, "one-element label change across every edge");
        record("line_position", inv.line_residual <= 1e-9, fmt("%.3e", inv.line_residual));
        record("slope", inv.slope_residual <= 1e-9, fmt("%.3e", inv.slope_residual));
        record("balancing", inv.balance_residual <= 1e-9, fmt("%.3e", inv.balance_residual));

        const auto perm = trips(sg.graph).permutation;
        record("trip_permutation", perm == d.one_line(), Derangement(perm).to_string());

        const LeDiagram le = lediagram_from_derangement(d, d.k(), d.n());
        const bool same = label_isomorphic(resolve_crossings(at.graph.graph.normalized()),
                                           resolve_crossings(predict_graph_t_neg(le, kp).normalized()));
        record("t_negative_graph", same, "t = " + fmt("%g", at.t));

        // Sandwich bound at fixed sample points.
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> ux(cp.bbox.xmin, cp.bbox.xmax), uy(cp.bbox.ymin, cp.bbox.ymax);
        const double log_m = std::log(static_cast<double>(field.terms.size()));
        double worst = -INFINITY;
        for (int s = 0; s < 1000; ++s) {
            const double x = ux(rng), y = uy(rng);
            const double f = field.max_value(x, y, cp.time);
            const double lt = log_tau(a, kp, x, y, cp.time).log_abs;
            const double scale = 1e-12 * std::max(1.0, std::abs(f));
            worst = std::max({worst, f - lt - scale, lt - f - log_m - scale});
        }
        record("sandwich", worst <= 0.0, fmt("%.3e", std::max(worst, 0.0)));

        double ratio = INFINITY;
        std::string inv_detail;
        try {
            const Reconstruction r = reconstruct(solve_logs(offsets_to_ratios(observe(cp), kp)), d);
            ratio = max_ratio_error(a, r.point);
            inv_detail = "tier " + std::to_string(r.tier) + ", max ratio error " + fmt("%.3e", ratio);
        } catch (const Error& e) {
            inv_detail = std::string(error_name(e.code())) + ": " + e.what();
        }
        record("inverse_round_trip", ratio <= 1e-6, inv_detail);

        for (const Json& ch : checks) {
            char line[160];
            std::snprintf(line, sizeof line, "%-20s %-5s %s\n", ch["check"].get<std::string>().c_str(),
                          ch["pass"].get<bool>() ? "PASS" : "FAIL", ch["detail"].get<std::string>().c_str());
            out_ << line;
        }
        out_ << (all ? "all checks passed\n" : "some checks failed\n");
        if (!o_.json_out.empty()) {
            write_file(o_.json_out, dump(Json{{"time", round12(cp.time)}, {"checks", checks}, {"pass", all}}));
        }
        return all ? 0 : 3;
    }

private:
    const Options& o_;
    double tol_;
    std::ostream& out_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"KP line-soliton tools for the totally non-negative Grassmannian", "kp"};
    app.require_subcommand(1, 1);
    Options o;
    double time_value = 0.0;
    double tol_value = 0.0;

    auto common = [&](CLI::App* s) {
        s->add_option("--kappa", o.kappa, "comma-separated increasing kappa_1..kappa_n");
        s->add_option("--tol", tol_value, "relative zero tolerance for Pluecker coordinates (default KP_TOL or 1e-9)");
        s->add_option("--json", o.json_out, "write the JSON report to this file");
    };
    auto matrix_opts = [&](CLI::App* s) {
        s->add_option("--matrix", o.matrix_file, "matrix JSON {k, n, rows}");
        s->add_option("--rows", o.rows, "matrix rows inline, e.g. \"1,0,-1,-2;0,1,3,1\"");
    };

    auto* plot = app.add_subcommand("plot", "contour plot of the tropical approximation");
    matrix_opts(plot);
    common(plot);
    auto* plot_time = plot->add_option("--time", time_value, "time t (default: automatic t << 0)");
    plot->add_flag("--auto-t", o.auto_t, "choose t << 0 automatically");
    plot->add_option("--bbox", o.bbox, "xmin,xmax,ymin,ymax");
    plot->add_option("--out", o.out, "SVG output");

    auto* asym = app.add_subcommand("asymptotics", "unbounded line-solitons predicted from the derangement");
    asym->add_option("--pi", o.pi, "derangement in one-line notation");
    matrix_opts(asym);
    common(asym);
    asym->add_flag("--table", o.table, "print a text table instead of JSON");

    auto* neck = app.add_subcommand("necklace", "Grassmann necklace, derangement and Le-diagram");
    neck->add_option("--pi", o.pi, "derangement in one-line notation");
    neck->add_option("--necklace", o.necklace, "necklace as comma-separated subsets, e.g. 12,23,34,14");
    neck->add_option("--n", o.n, "n when it cannot be inferred");
    matrix_opts(neck);
    common(neck);

    auto* le = app.add_subcommand("le2plabic", "plabic graph G_-(L) of a Le-diagram");
    le->add_option("--le", o.le, "Le-diagram rows of + and 0, separated by '/' or newlines");
    le->add_option("--le-file", o.le_file, "file with the Le-diagram text");
    le->add_option("--pi", o.pi, "derangement instead of a Le-diagram");
    le->add_option("--n", o.n, "n (default: k + length of the first row)");
    common(le);
    le->add_option("--svg", o.svg, "SVG of the pipe dream");
    le->add_option("--out", o.out, "SVG of the graph");

    auto* tri = app.add_subcommand("triangulate", "soliton graph of a polygon triangulation");
    tri->add_option("--n", o.n, "number of polygon vertices");
    tri->add_option("--diagonals", o.diagonals, "diagonals, e.g. 1-3,1-4,1-5");
    tri->add_option("--triangulation", o.tri_file, "triangulation JSON {n, diagonals}");
    tri->add_option("--flip", o.flip, "flip this diagonal first");
    tri->add_flag("--realize", o.realize, "search for a matrix and time whose soliton graph is Psi(T)");
    common(tri);
    tri->add_option("--out", o.out, "SVG of the graph");

    auto* inv = app.add_subcommand("invert", "reconstruct the matrix from a contour plot");
    inv->add_option("--plot", o.plot_file, "contour JSON written by `kp plot --json`");
    auto* inv_time = inv->add_option("--time", time_value, "override the time stored in the plot");
    inv->add_option("--pi", o.pi, "cell derangement (default: read from the plot)");
    inv->add_option("--cycle-tol", o.cycle_tol, "allowed cycle mismatch of the ratio equations");
    common(inv);
    inv->add_option("--out", o.out, "matrix JSON output");

    auto* ver = app.add_subcommand("verify", "cross-validation checks for one matrix");
    matrix_opts(ver);
    common(ver);
    auto* ver_time = ver->add_option("--time", time_value, "time of the checked plot (default: automatic t << 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        double tol = kDefaultTol;
        if (const char* env = std::getenv("KP_TOL"); env && *env) tol = parse_double(env);
        CLI::App* sub = app.get_subcommands().front();
        if (sub->count("--tol")) tol = tol_value;
        if (!(tol > 0 && tol < 1)) throw Error(ErrorCode::ParseError, "tolerance must lie in (0, 1)");
        for (CLI::Option* opt : {plot_time, inv_time, ver_time})
            if (opt->count()) o.time = time_value;

        const Runner r(o, tol, out);
        const std::string name = sub->get_name();
        if (name == "plot") return r.plot();
        if (name == "asymptotics") return r.asymptotics();
        if (name == "necklace") return r.necklace();
        if (name == "le2plabic") return r.le2plabic();
        if (name == "triangulate") return r.triangulate();
        if (name == "invert") return r.invert();
        return r.verify();
    } catch (const Error& e) {
        err << dump(Json{{"error", error_name(e.code())}, {"message", e.what()}});
        return e.code() == ErrorCode::ParseError ? 2 : 1;
    } catch (const nlohmann::json::exception& e) {
        err << dump(Json{{"error", "ParseError"}, {"message", e.what()}});
        return 2;
    }
}

}  // namespace kp
