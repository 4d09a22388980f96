// SPDX-License-Identifier: Apache-2.0
#include "kp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kp/error.hpp"

namespace kp {

namespace {

Json pt(Point2 p) { return Json::array({round12(p.x), round12(p.y)}); }

Point2 pt_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", std::abs(x) < 5e-7 ? 0.0 : x);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else out += c;
    }
    return out;
}

const char* class_name(VertexClass c) {
    switch (c) {
        case VertexClass::Black: return "black";
        case VertexClass::White: return "white";
        case VertexClass::XCrossing: return "x-crossing";
        case VertexClass::Degenerate: return "degenerate";
        case VertexClass::Exit: return "exit";
    }
    return "degenerate";
}

VertexClass class_from(const std::string& s) {
    if (s == "black") return VertexClass::Black;
    if (s == "white") return VertexClass::White;
    if (s == "x-crossing") return VertexClass::XCrossing;
    if (s == "exit") return VertexClass::Exit;
    if (s == "degenerate") return VertexClass::Degenerate;
    throw Error(ErrorCode::ParseError, "unknown vertex class '" + s + "'");
}

const char* kind_name(VertexKind k) {
    switch (k) {
        case VertexKind::Boundary: return "boundary";
        case VertexKind::Black: return "black";
        case VertexKind::White: return "white";
        case VertexKind::Crossing: return "crossing";
    }
    return "black";
}

std::vector<int> elements_of(const Json& j) {
    if (j.is_string()) return Subset::parse(j.get<std::string>()).elements();
    return j.get<std::vector<int>>();
}

Subset subset_from(const Json& j) {
    const std::vector<int> e = elements_of(j);
    return Subset::of(std::span<const int>(e));
}

// Maps plot coordinates onto a fixed canvas with y pointing up.
struct Canvas {
    BBox box;
    double size = 640.0;
    double margin = 24.0;
    double scale() const {
        return (size - 2 * margin) / std::max(box.xmax - box.xmin, box.ymax - box.ymin);
    }
    double X(double x) const { return margin + (x - box.xmin) * scale(); }
    double Y(double y) const { return size - margin - (y - box.ymin) * scale(); }
};

}  // namespace

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

Json to_json(const GrassmannPoint& p) {
    Json rows = Json::array();
    for (int r = 1; r <= p.k(); ++r) {
        Json row = Json::array();
        for (int c = 1; c <= p.n(); ++c) row.push_back(round12(p.entry(r, c)));
        rows.push_back(row);
    }
    return Json{{"k", p.k()}, {"n", p.n()}, {"rows", rows}};
}

GrassmannPoint point_from_json(const Json& j) {
    try {
        const auto rows = j.at("rows").get<std::vector<std::vector<double>>>();
        GrassmannPoint p = GrassmannPoint::from_rows(rows);
        if ((j.contains("k") && j.at("k").get<int>() != p.k()) || (j.contains("n") && j.at("n").get<int>() != p.n())) {
            throw Error(ErrorCode::ParseError, "matrix dimensions disagree with k and n");
        }
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("matrix JSON: ") + e.what());
    }
}

Json to_json(const PlueckerVector& pl) {
    Json out = Json::object();
    for (std::size_t i = 0; i < pl.subsets().size(); ++i) {
        out[pl.subsets()[i].to_string(pl.n())] = round12(pl.values()[i]);
    }
    return out;
}

Json to_json(const GrassmannNecklace& neck) {
    Json out = Json::array();
    for (Subset s : neck.subsets()) out.push_back(s.elements());
    return out;
}

GrassmannNecklace necklace_from_json(const Json& j, int n) {
    std::vector<Subset> subsets;
    for (const Json& s : j) subsets.push_back(subset_from(s));
    return GrassmannNecklace(n, std::move(subsets));
}

Json to_json(const Derangement& d) { return Json(d.one_line()); }

Derangement derangement_from_json(const Json& j) { return Derangement(j.get<std::vector<int>>()); }

Json to_json(const Asymptotics& as, int n) {
    auto pairs = [](const std::vector<std::pair<int, int>>& v) {
        Json out = Json::array();
        for (auto [a, b] : v) out.push_back({a, b});
        return out;
    };
    Json regions = Json::array();
    for (Subset s : as.unbounded_regions) regions.push_back(s.to_string(n));
    return Json{{"top", pairs(as.top)},
                {"bottom", pairs(as.bottom)},
                {"left_region", as.left_region.to_string(n)},
                {"unbounded_regions", regions}};
}

Json to_json(const GeneralizedPlabicGraph& g) {
    Json vertices = Json::array();
    Json crossings = Json::array();
    for (int v = 0; v < static_cast<int>(g.vertices().size()); ++v) {
        const auto& x = g.vertex(v);
        Json jv{{"id", v}, {"color", kind_name(x.kind)}};
        if (x.kind == VertexKind::Boundary) jv["label"] = x.label;
        jv["pos"] = pt(x.pos);
        jv["rotation"] = x.rotation;
        vertices.push_back(jv);
        if (x.kind == VertexKind::Crossing && x.rotation.size() == 4) {
            crossings.push_back(Json{{"id", v},
                                     {"pairs", Json::array({Json::array({x.rotation[0], x.rotation[2]}),
                                                            Json::array({x.rotation[1], x.rotation[3]})})}});
        }
    }
    Json edges = Json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
    return Json{{"vertices", vertices}, {"edges", edges}, {"crossings", crossings}, {"boundary", g.boundary_order()}};
}

Json to_json(const Triangulation& t) {
    Json d = Json::array();
    for (auto [a, b] : t.diagonals()) d.push_back({a, b});
    return Json{{"n", t.n()}, {"diagonals", d}};
}

Triangulation triangulation_from_json(const Json& j) {
    try {
        std::vector<Diagonal> d;
        for (const Json& p : j.at("diagonals")) d.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        return Triangulation(j.at("n").get<int>(), std::move(d));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("triangulation JSON: ") + e.what());
    }
}

Json to_json(const ContourPlot& cp) {
    Json kappa = Json::array();
    for (double k : cp.kappa.values()) kappa.push_back(round12(k));
    Json regions = Json::array();
    for (const auto& r : cp.regions) {
        Json poly = Json::array();
        for (Point2 p : r.polygon) poly.push_back(pt(p));
        regions.push_back(Json{{"basis", r.basis.to_string(cp.n)}, {"polygon", poly}});
    }
    Json edges = Json::array();
    for (const auto& e : cp.edges) {
        const bool ray =
            cp.vertices[e.v0].cls == VertexClass::Exit || cp.vertices[e.v1].cls == VertexClass::Exit;
        edges.push_back(Json{{"type", {e.i, e.j}},
                             {"I", e.I.to_string(cp.n)},
                             {"J", e.J.to_string(cp.n)},
                             {"v0", e.v0},
                             {"v1", e.v1},
                             {"p0", pt(e.p0)},
                             {"p1", pt(e.p1)},
                             {"ray", ray}});
    }
    Json vertices = Json::array();
    for (const auto& v : cp.vertices) {
        vertices.push_back(Json{{"pos", pt(v.pos)}, {"class", class_name(v.cls)}, {"edges", v.edges}});
    }
    Json shifts = Json::array();
    for (const auto& [p, q] : cp.phase_shifts) shifts.push_back({pt(p), pt(q)});
    return Json{{"time", round12(cp.time)},
                {"k", cp.k},
                {"n", cp.n},
                {"kappa", kappa},
                {"bbox",
                 {{"xmin", round12(cp.bbox.xmin)},
                  {"xmax", round12(cp.bbox.xmax)},
                  {"ymin", round12(cp.bbox.ymin)},
                  {"ymax", round12(cp.bbox.ymax)}}},
                {"generic", cp.generic},
                {"regions", regions},
                {"edges", edges},
                {"vertices", vertices},
                {"phase_shifts", shifts},
                {"issues", cp.issues}};
}

ContourPlot contour_from_json(const Json& j, const KappaParams& kappa) {
    try {
        ContourPlot cp;
        cp.time = j.at("time").get<double>();
        cp.k = j.at("k").get<int>();
        cp.n = j.at("n").get<int>();
        if (cp.n != kappa.n() || cp.k != kappa.k()) {
            throw Error(ErrorCode::ParseError, "plot is for Gr(" + std::to_string(cp.k) + "," + std::to_string(cp.n) +
                                                   ") but kappa has a different shape");
        }
        cp.kappa = kappa;
        const Json& b = j.at("bbox");
        cp.bbox = {b.at("xmin").get<double>(), b.at("xmax").get<double>(), b.at("ymin").get<double>(),
                   b.at("ymax").get<double>()};
        cp.generic = j.value("generic", true);
        for (const Json& r : j.at("regions")) {
            ContourRegion region{subset_from(r.at("basis")), {}};
            for (const Json& p : r.at("polygon")) region.polygon.push_back(pt_from(p));
            cp.regions.push_back(std::move(region));
        }
        for (const Json& v : j.at("vertices")) {
            cp.vertices.push_back(
                ContourVertex{pt_from(v.at("pos")), class_from(v.at("class").get<std::string>()), v.at("edges").get<std::vector<int>>()});
        }
        const int nv = static_cast<int>(cp.vertices.size());
        for (const Json& e : j.at("edges")) {
            ContourEdge ce;
            ce.i = e.at("type").at(0).get<int>();
            ce.j = e.at("type").at(1).get<int>();
            ce.I = subset_from(e.at("I"));
            ce.J = subset_from(e.at("J"));
            ce.v0 = e.at("v0").get<int>();
            ce.v1 = e.at("v1").get<int>();
            if (ce.v0 < 0 || ce.v0 >= nv || ce.v1 < 0 || ce.v1 >= nv) {
                throw Error(ErrorCode::ParseError, "edge refers to a missing vertex");
            }
            ce.p0 = e.contains("p0") ? pt_from(e.at("p0")) : cp.vertices[ce.v0].pos;
            ce.p1 = e.contains("p1") ? pt_from(e.at("p1")) : cp.vertices[ce.v1].pos;
            cp.edges.push_back(ce);
        }
        for (const auto& v : cp.vertices)
            for (int e : v.edges)
                if (e < 0 || e >= static_cast<int>(cp.edges.size())) throw Error(ErrorCode::ParseError, "vertex refers to a missing edge");
        if (j.contains("phase_shifts"))
            for (const Json& s : j.at("phase_shifts")) cp.phase_shifts.emplace_back(pt_from(s.at(0)), pt_from(s.at(1)));
        if (j.contains("issues")) cp.issues = j.at("issues").get<std::vector<std::string>>();
        return cp;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("contour JSON: ") + e.what());
    }
}

Json to_json(const Reconstruction& r) {
    Json missing = Json::array();
    for (Subset s : r.missing) missing.push_back(s.to_string(r.point.n()));
    return Json{{"matrix", to_json(r.point)},
                {"tier", r.tier},
                {"log_residual", round12(r.residual)},
                {"missing_chamber_minors", missing},
                {"jacobian_rank", r.jacobian_rank},
                {"cell_dimension", r.cell_dimension}};
}

std::string contour_svg(const ContourPlot& cp) {
    const Canvas c{cp.bbox};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(c.size) << "\" height=\"" << num(c.size)
       << "\" viewBox=\"0 0 " << num(c.size) << ' ' << num(c.size) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& r : cp.regions) {
        const unsigned hue = (r.basis.mask() * 2654435761U) % 360U;
        os << "<polygon fill=\"hsl(" << hue << ",55%,90%)\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < r.polygon.size(); ++i)
            os << (i ? " " : "") << num(c.X(r.polygon[i].x)) << ',' << num(c.Y(r.polygon[i].y));
        os << "\"/>\n";
    }
    for (const auto& e : cp.edges) {
        os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"" << num(c.X(e.p0.x)) << ','
           << num(c.Y(e.p0.y)) << ' ' << num(c.X(e.p1.x)) << ',' << num(c.Y(e.p1.y)) << "\"/>\n";
    }
    for (const auto& [p, q] : cp.phase_shifts) {
        os << "<polyline fill=\"none\" stroke=\"gray\" stroke-dasharray=\"2,2\" points=\"" << num(c.X(p.x)) << ','
           << num(c.Y(p.y)) << ' ' << num(c.X(q.x)) << ',' << num(c.Y(q.y)) << "\"/>\n";
    }
    for (const auto& e : cp.edges) {
        const double mx = (e.p0.x + e.p1.x) / 2, my = (e.p0.y + e.p1.y) / 2;
        os << "<text x=\"" << num(c.X(mx)) << "\" y=\"" << num(c.Y(my)) << "\" font-family=\"sans-serif\" font-size=\"9\" fill=\"#a00\">["
           << e.i << ',' << e.j << "]</text>\n";
    }
    for (const auto& v : cp.vertices) {
        if (v.cls == VertexClass::Exit) continue;
        const char* fill = v.cls == VertexClass::White ? "white" : v.cls == VertexClass::Black ? "black" : "gray";
        os << "<circle cx=\"" << num(c.X(v.pos.x)) << "\" cy=\"" << num(c.Y(v.pos.y)) << "\" r=\"3\" fill=\"" << fill
           << "\" stroke=\"black\"/>\n";
    }
    for (const auto& r : cp.regions) {
        double cx = 0, cy = 0;
        for (Point2 p : r.polygon) {
            cx += p.x;
            cy += p.y;
        }
        cx /= static_cast<double>(r.polygon.size());
        cy /= static_cast<double>(r.polygon.size());
        os << "<text x=\"" << num(c.X(cx)) << "\" y=\"" << num(c.Y(cy))
           << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << r.basis.to_string(cp.n)
           << "</text>\n";
    }
    os << "<text x=\"" << num(c.margin) << "\" y=\"14\" font-family=\"sans-serif\" font-size=\"11\">"
       << xml_escape("t = " + num(cp.time)) << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string graph_svg(const GeneralizedPlabicGraph& g) {
    BBox box{INFINITY, -INFINITY, INFINITY, -INFINITY};
    for (const auto& v : g.vertices()) {
        box.xmin = std::min(box.xmin, v.pos.x);
        box.xmax = std::max(box.xmax, v.pos.x);
        box.ymin = std::min(box.ymin, v.pos.y);
        box.ymax = std::max(box.ymax, v.pos.y);
    }
    if (g.vertices().empty()) box = BBox{};
    const double pad = 0.1 * std::max({box.xmax - box.xmin, box.ymax - box.ymin, 1.0});
    box = {box.xmin - pad, box.xmax + pad, box.ymin - pad, box.ymax + pad};
    const Canvas c{box};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(c.size) << "\" height=\"" << num(c.size)
       << "\" viewBox=\"0 0 " << num(c.size) << ' ' << num(c.size) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& e : g.edges()) {
        const Point2 p = g.vertex(e.u).pos, q = g.vertex(e.v).pos;
        os << "<line x1=\"" << num(c.X(p.x)) << "\" y1=\"" << num(c.Y(p.y)) << "\" x2=\"" << num(c.X(q.x))
           << "\" y2=\"" << num(c.Y(q.y)) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
    for (const auto& v : g.vertices()) {
        const std::string x = num(c.X(v.pos.x)), y = num(c.Y(v.pos.y));
        switch (v.kind) {
            case VertexKind::Boundary:
                os << "<text x=\"" << x << "\" y=\"" << y
                   << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" dy=\"-4\">" << v.label
                   << "</text>\n";
                break;
            case VertexKind::Crossing:
                os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2\" fill=\"gray\"/>\n";
                break;
            default:
                os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"5\" fill=\""
                   << (v.kind == VertexKind::Black ? "black" : "white") << "\" stroke=\"black\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    out << text;
}

}  // namespace kp
