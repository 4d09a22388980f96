// SPDX-License-Identifier: Apache-2.0
#include "kp/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "kp/error.hpp"

namespace kp {

namespace {

double phase(const KappaParams& kappa, Subset s, double x, double y, double t) {
    return kappa.power_sum(s, 1) * x + kappa.power_sum(s, 2) * y + kappa.power_sum(s, 3) * t;
}

bool one_swap(Subset a, Subset b) { return (a - b).size() == 1 && (b - a).size() == 1; }

}  // namespace

LogValue log_tau(const GrassmannPoint& point, const KappaParams& kappa, double x, double y, double t) {
    const auto& pl = point.pluecker();
    std::vector<double> expo;
    std::vector<int> sign;
    for (std::size_t m = 0; m < pl.subsets().size(); ++m) {
        const double d = pl.values()[m];
        if (d == 0.0) continue;
        const Subset s = pl.subsets()[m];
        expo.push_back(std::log(std::abs(d) * kappa.vandermonde(s)) + phase(kappa, s, x, y, t));
        sign.push_back(d > 0 ? 1 : -1);
    }
    if (expo.empty()) throw Error(ErrorCode::EmptyMatroid, "all Pluecker coordinates vanish");
    const double top = *std::max_element(expo.begin(), expo.end());
    double sum = 0.0;
    for (std::size_t m = 0; m < expo.size(); ++m) sum += sign[m] * std::exp(expo[m] - top);
    return {top + std::log(std::abs(sum)), sum >= 0 ? 1 : -1};
}

double tau(const GrassmannPoint& point, const KappaParams& kappa, double x, double y, double t) {
    const LogValue v = log_tau(point, kappa, x, y, t);
    return v.sign * std::exp(v.log_abs);
}

double kp_u(const GrassmannPoint& point, const KappaParams& kappa, double x, double y, double t) {
    const auto& pl = point.pluecker();
    std::vector<double> expo;
    std::vector<double> coef;
    std::vector<double> p;
    for (std::size_t m = 0; m < pl.subsets().size(); ++m) {
        const double d = pl.values()[m];
        if (d == 0.0) continue;
        const Subset s = pl.subsets()[m];
        expo.push_back(phase(kappa, s, x, y, t));
        coef.push_back(d * kappa.vandermonde(s));
        p.push_back(kappa.power_sum(s, 1));
    }
    if (expo.empty()) throw Error(ErrorCode::EmptyMatroid, "all Pluecker coordinates vanish");
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < expo.size(); ++m) top = std::max(top, expo[m] + std::log(std::abs(coef[m])));
    // u = 2 (tau'' tau - tau'^2) / tau^2 = 2 * weighted variance of sum(kappa).
    double w_sum = 0.0;
    double wp = 0.0;
    std::vector<double> w(expo.size());
    for (std::size_t m = 0; m < expo.size(); ++m) {
        w[m] = (coef[m] > 0 ? 1.0 : -1.0) * std::exp(expo[m] + std::log(std::abs(coef[m])) - top);
        w_sum += w[m];
        wp += w[m] * p[m];
    }
    const double mean = wp / w_sum;
    double var = 0.0;
    for (std::size_t m = 0; m < expo.size(); ++m) var += w[m] * (p[m] - mean) * (p[m] - mean);
    return 2.0 * var / w_sum;
}

double TropicalField::max_value(double x, double y, double t) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& term : terms) best = std::max(best, term(x, y, t));
    return best;
}

int TropicalField::dominant(double x, double y, double t) const {
    int best = -1;
    double value = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < static_cast<int>(terms.size()); ++m) {
        const double v = terms[m](x, y, t);
        if (v > value) {
            value = v;
            best = m;
        }
    }
    return best;
}

TropicalField tropical_field(const GrassmannPoint& point, const KappaParams& kappa, double tol) {
    if (kappa.n() != point.n()) throw Error(ErrorCode::InvalidArgument, "kappa length differs from n");
    const Classification cls = classify(point, tol);
    if (cls.positivity == Positivity::Neither) {
        throw Error(ErrorCode::InvalidArgument, "tropical field needs a totally non-negative point");
    }
    if (cls.matroid.bases.empty()) throw Error(ErrorCode::EmptyMatroid, "no basis");
    TropicalField field;
    field.k = point.k();
    field.n = point.n();
    field.kappa = kappa;
    for (Subset s : cls.matroid.bases) {
        const double d = cls.sign * point.pluecker()[s];
        field.terms.push_back(TropicalTerm{s, std::log(d * kappa.vandermonde(s)), kappa.power_sum(s, 1),
                                           kappa.power_sum(s, 2), kappa.power_sum(s, 3)});
    }
    const double scale = std::max(1.0, std::abs(kappa.values().front()) + std::abs(kappa.values().back()));
    for (std::size_t a = 0; a < field.terms.size(); ++a) {
        for (std::size_t b = a + 1; b < field.terms.size(); ++b) {
            const auto& u = field.terms[a];
            const auto& v = field.terms[b];
            if (std::abs(u.cx - v.cx) <= 1e-12 * scale && std::abs(u.cy - v.cy) <= 1e-12 * scale * scale) {
                throw Error(ErrorCode::NotGeneric, "two exponentials share their x and y rates");
            }
        }
    }
    return field;
}

double BBox::diameter() const { return std::hypot(xmax - xmin, ymax - ymin); }

double BBox::perimeter_param(Point2 p) const {
    const double w = xmax - xmin;
    const double h = ymax - ymin;
    const double d_bottom = std::abs(p.y - ymin);
    const double d_right = std::abs(p.x - xmax);
    const double d_top = std::abs(p.y - ymax);
    const double d_left = std::abs(p.x - xmin);
    const double m = std::min({d_bottom, d_right, d_top, d_left});
    if (m == d_bottom) return std::clamp(p.x - xmin, 0.0, w);
    if (m == d_right) return w + std::clamp(p.y - ymin, 0.0, h);
    if (m == d_top) return w + h + std::clamp(xmax - p.x, 0.0, w);
    return 2 * w + h + std::clamp(ymax - p.y, 0.0, h);
}

Point2 BBox::perimeter_point(double s) const {
    const double w = xmax - xmin;
    const double h = ymax - ymin;
    s = std::fmod(std::fmod(s, 2 * (w + h)) + 2 * (w + h), 2 * (w + h));
    if (s <= w) return {xmin + s, ymin};
    if (s <= w + h) return {xmax, ymin + (s - w)};
    if (s <= 2 * w + h) return {xmax - (s - w - h), ymax};
    return {xmin, ymax - (s - 2 * w - h)};
}

namespace {

struct PlanarTerm {
    double c;
    double p;
    double q;
};

std::vector<PlanarTerm> planar_terms(const TropicalField& field, double t) {
    std::vector<PlanarTerm> out;
    for (const auto& term : field.terms) out.push_back({term.c0 + term.ct * t, term.cx, term.cy});
    return out;
}

double planar_max(const std::vector<PlanarTerm>& terms, double x, double y) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& term : terms) best = std::max(best, term.c + term.p * x + term.q * y);
    return best;
}

}  // namespace

BBox auto_bbox(const TropicalField& field, double t) {
    const auto terms = planar_terms(field, t);
    const int count = static_cast<int>(terms.size());
    std::vector<std::vector<int>> adjacent(count);
    for (int a = 0; a < count; ++a)
        for (int b = 0; b < count; ++b)
            if (a != b && one_swap(field.terms[a].basis, field.terms[b].basis)) adjacent[a].push_back(b);

    std::vector<Point2> points;
    auto on_top = [&](int a, double x, double y) {
        const double v = terms[a].c + terms[a].p * x + terms[a].q * y;
        return v >= planar_max(terms, x, y) - 1e-9 * (1.0 + std::abs(v));
    };
    // Every vertex of the plot is a triple point of a region and two neighbors.
    for (int a = 0; a < count; ++a) {
        const auto& adj = adjacent[a];
        for (std::size_t i = 0; i < adj.size(); ++i) {
            for (std::size_t j = i + 1; j < adj.size(); ++j) {
                const PlanarTerm& u = terms[a];
                const PlanarTerm& v = terms[adj[i]];
                const PlanarTerm& w = terms[adj[j]];
                const double a11 = u.p - v.p, a12 = u.q - v.q, b1 = v.c - u.c;
                const double a21 = u.p - w.p, a22 = u.q - w.q, b2 = w.c - u.c;
                const double det = a11 * a22 - a12 * a21;
                if (std::abs(det) < 1e-14 * (std::abs(a11 * a22) + std::abs(a12 * a21) + 1e-300)) continue;
                const double x = (b1 * a22 - a12 * b2) / det;
                const double y = (a11 * b2 - b1 * a21) / det;
                if (std::isfinite(x) && std::isfinite(y) && on_top(a, x, y)) points.push_back({x, y});
            }
        }
    }
    if (points.empty()) {
        // No vertices: parallel line-solitons only. Use their points at y = 0.
        for (int a = 0; a < count; ++a) {
            for (int b : adjacent[a]) {
                const double x = (terms[a].c - terms[b].c) / (terms[b].p - terms[a].p);
                if (std::isfinite(x) && on_top(a, x, 0.0)) points.push_back({x, 0.0});
            }
        }
    }
    if (points.empty()) points.push_back({0.0, 0.0});
    BBox box{points[0].x, points[0].x, points[0].y, points[0].y};
    for (const Point2& p : points) {
        box.xmin = std::min(box.xmin, p.x);
        box.xmax = std::max(box.xmax, p.x);
        box.ymin = std::min(box.ymin, p.y);
        box.ymax = std::max(box.ymax, p.y);
    }
    const double wx = 0.2 * (box.xmax - box.xmin) + 1.0;
    const double wy = 0.2 * (box.ymax - box.ymin) + 1.0;
    return {box.xmin - wx, box.xmax + wx, box.ymin - wy, box.ymax + wy};
}

namespace {

// Convex polygon; src[i] is the term whose constraint supports the edge
// from pts[i] to pts[i+1] (negative: box side).
struct Cell {
    std::vector<Point2> pts;
    std::vector<int> src;
};

Cell clip(const Cell& cell, double a, double b, double c, int src) {
    Cell out;
    const std::size_t m = cell.pts.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Point2 p = cell.pts[i];
        const Point2 q = cell.pts[(i + 1) % m];
        const double fp = a * p.x + b * p.y + c;
        const double fq = a * q.x + b * q.y + c;
        auto cut = [&] {
            const double s = fp / (fp - fq);
            return Point2{p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)};
        };
        if (fp >= 0) {
            out.pts.push_back(p);
            out.src.push_back(cell.src[i]);
            if (fq < 0) {
                out.pts.push_back(cut());
                out.src.push_back(src);
            }
        } else if (fq >= 0) {
            out.pts.push_back(cut());
            out.src.push_back(cell.src[i]);
        }
    }
    return out;
}

void drop_duplicates(Cell& cell, double tol) {
    bool changed = true;
    while (changed && cell.pts.size() > 1) {
        changed = false;
        const std::size_t m = cell.pts.size();
        for (std::size_t i = 0; i < m; ++i) {
            const Point2 p = cell.pts[i];
            const Point2 q = cell.pts[(i + 1) % m];
            if (std::hypot(p.x - q.x, p.y - q.y) <= tol) {
                cell.pts.erase(cell.pts.begin() + static_cast<long>(i));
                cell.src.erase(cell.src.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
}

double area(const std::vector<Point2>& pts) {
    double a = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point2 p = pts[i];
        const Point2 q = pts[(i + 1) % pts.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return a / 2;
}

struct Line {
    double s;  // x + s y = r
    double r;
};

Line soliton_line(const TropicalField& field, const ContourEdge& e, double t) {
    const KappaParams& kp = field.kappa;
    const auto find = [&](Subset b) {
        for (const auto& term : field.terms)
            if (term.basis == b) return term.c0;
        throw Error(ErrorCode::InvalidArgument, "basis missing from the field");
    };
    const double ki = kp[e.i];
    const double kj = kp[e.j];
    return {ki + kj, (find(e.I) - find(e.J)) / (kj - ki) - (ki * ki + ki * kj + kj * kj) * t};
}

}  // namespace

Subset ContourPlot::left_of(int edge, int from) const {
    const ContourEdge& e = edges[edge];
    const Point2 a = e.end_at(from);
    const Point2 b = e.far_from(from);
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double s = kappa[e.i] + kappa[e.j];
    return (-dy + s * dx) > 0 ? e.J : e.I;
}

ContourPlot contour_plot(const TropicalField& field, double t, std::optional<BBox> box) {
    ContourPlot cp;
    cp.time = t;
    cp.k = field.k;
    cp.n = field.n;
    cp.kappa = field.kappa;
    cp.bbox = box ? *box : auto_bbox(field, t);
    const BBox& bb = cp.bbox;
    const double diam = bb.diameter();
    const double dup_tol = 1e-12 * diam;
    const double cluster_tol = 1e-7 * diam;

    const auto terms = planar_terms(field, t);
    const int count = static_cast<int>(terms.size());
    std::vector<Cell> cells(count);
    for (int a = 0; a < count; ++a) {
        Cell cell{{{bb.xmin, bb.ymin}, {bb.xmax, bb.ymin}, {bb.xmax, bb.ymax}, {bb.xmin, bb.ymax}}, {-1, -2, -3, -4}};
        for (int b = 0; b < count && cell.pts.size() >= 3; ++b) {
            if (b == a) continue;
            cell = clip(cell, terms[a].p - terms[b].p, terms[a].q - terms[b].q, terms[a].c - terms[b].c, b);
            drop_duplicates(cell, dup_tol);
        }
        if (cell.pts.size() < 3 || area(cell.pts) <= 1e-14 * diam * diam) cell.pts.clear();
        cells[a] = std::move(cell);
        if (!cells[a].pts.empty()) cp.regions.push_back({field.terms[a].basis, cells[a].pts});
    }

    // Shared boundary segments, one per pair of regions.
    struct Segment {
        int a;
        int b;
        Point2 p;
        Point2 q;
    };
    std::map<std::pair<int, int>, Segment> segments;
    for (int a = 0; a < count; ++a) {
        const Cell& cell = cells[a];
        for (std::size_t i = 0; i < cell.pts.size(); ++i) {
            const int b = cell.src[i];
            if (b < 0) continue;
            const Point2 p = cell.pts[i];
            const Point2 q = cell.pts[(i + 1) % cell.pts.size()];
            if (std::hypot(p.x - q.x, p.y - q.y) <= cluster_tol) continue;
            segments.emplace(std::pair{std::min(a, b), std::max(a, b)}, Segment{a, b, p, q});
        }
    }

    // Cluster endpoints into vertices.
    std::vector<Point2> centers;
    auto cluster_of = [&](Point2 p) {
        for (std::size_t c = 0; c < centers.size(); ++c)
            if (std::hypot(p.x - centers[c].x, p.y - centers[c].y) <= cluster_tol) return static_cast<int>(c);
        centers.push_back(p);
        return static_cast<int>(centers.size()) - 1;
    };
    std::vector<int> vertex_of_cluster;
    std::vector<std::pair<int, int>> shift_clusters;
    for (const auto& [key, seg] : segments) {
        const Subset A = field.terms[seg.a].basis;
        const Subset B = field.terms[seg.b].basis;
        ContourEdge e;
        if (one_swap(A, B)) {
            const int x = (A - B).elements().front();
            const int y = (B - A).elements().front();
            e.i = std::min(x, y);
            e.j = std::max(x, y);
            e.I = x < y ? A : B;
            e.J = x < y ? B : A;
        } else if ((A - B).size() == 2) {
            shift_clusters.emplace_back(cluster_of(seg.p), cluster_of(seg.q));
            cp.phase_shifts.emplace_back(seg.p, seg.q);
            continue;
        } else {
            cp.generic = false;
            cp.issues.push_back("regions " + A.to_string(cp.n) + " and " + B.to_string(cp.n) +
                                " are adjacent but differ in more than two indices");
            continue;
        }
        const int c0 = cluster_of(seg.p);
        const int c1 = cluster_of(seg.q);
        if (c0 == c1) continue;
        vertex_of_cluster.resize(centers.size(), -1);
        for (int c : {c0, c1}) {
            if (vertex_of_cluster[c] < 0) {
                vertex_of_cluster[c] = static_cast<int>(cp.vertices.size());
                cp.vertices.push_back(ContourVertex{centers[c], VertexClass::Degenerate, {}});
            }
        }
        e.v0 = vertex_of_cluster[c0];
        e.v1 = vertex_of_cluster[c1];
        cp.vertices[e.v0].edges.push_back(static_cast<int>(cp.edges.size()));
        cp.vertices[e.v1].edges.push_back(static_cast<int>(cp.edges.size()));
        cp.edges.push_back(e);
    }

    // Refine positions from the soliton lines, then classify.
    auto on_box = [&](Point2 p) {
        return std::abs(p.x - bb.xmin) <= cluster_tol || std::abs(p.x - bb.xmax) <= cluster_tol ||
               std::abs(p.y - bb.ymin) <= cluster_tol || std::abs(p.y - bb.ymax) <= cluster_tol;
    };
    for (auto& v : cp.vertices) {
        std::vector<Line> lines;
        for (int e : v.edges) lines.push_back(soliton_line(field, cp.edges[e], t));
        if (on_box(v.pos)) {
            v.cls = v.edges.size() == 1 ? VertexClass::Exit : VertexClass::Degenerate;
            const Line& l = lines.front();
            const double d_lr = std::min(std::abs(v.pos.x - bb.xmin), std::abs(v.pos.x - bb.xmax));
            const double d_tb = std::min(std::abs(v.pos.y - bb.ymin), std::abs(v.pos.y - bb.ymax));
            if (d_tb <= d_lr) {
                v.pos.y = std::abs(v.pos.y - bb.ymin) < std::abs(v.pos.y - bb.ymax) ? bb.ymin : bb.ymax;
                v.pos.x = l.r - l.s * v.pos.y;
            } else if (std::abs(l.s) > 1e-300) {
                v.pos.x = std::abs(v.pos.x - bb.xmin) < std::abs(v.pos.x - bb.xmax) ? bb.xmin : bb.xmax;
                v.pos.y = (l.r - v.pos.x) / l.s;
            }
            continue;
        }
        double s1 = 0, s2 = 0, r0 = 0, r1 = 0;
        for (const Line& l : lines) {
            s1 += l.s;
            s2 += l.s * l.s;
            r0 += l.r;
            r1 += l.s * l.r;
        }
        const double m = static_cast<double>(lines.size());
        const double det = m * s2 - s1 * s1;
        if (std::abs(det) > 1e-12 * m * std::max(1.0, s2)) {
            v.pos.x = (r0 * s2 - s1 * r1) / det;
            v.pos.y = (m * r1 - s1 * r0) / det;
        }
    }
    for (auto& e : cp.edges) {
        e.p0 = cp.vertices[e.v0].pos;
        e.p1 = cp.vertices[e.v1].pos;
    }

    // Collapse each phase-shift segment into one vertex at its midpoint.
    vertex_of_cluster.resize(centers.size(), -1);
    std::vector<int> merged_into(cp.vertices.size());
    for (std::size_t v = 0; v < merged_into.size(); ++v) merged_into[v] = static_cast<int>(v);
    auto root = [&](int v) {
        while (merged_into[v] != v) v = merged_into[v];
        return v;
    };
    // Only a segment whose ends each carry the two pieces of one line is a
    // split X-crossing; anything else is left in place and reported.
    std::vector<std::size_t> degree_before;
    for (const auto& v : cp.vertices) degree_before.push_back(v.edges.size());
    for (const auto& [c0, c1] : shift_clusters) {
        const int a = vertex_of_cluster[c0] < 0 ? -1 : root(vertex_of_cluster[c0]);
        const int b = vertex_of_cluster[c1] < 0 ? -1 : root(vertex_of_cluster[c1]);
        if (a < 0 || b < 0 || a == b) continue;
        if (degree_before[vertex_of_cluster[c0]] != 2 || degree_before[vertex_of_cluster[c1]] != 2) {
            cp.generic = false;
            cp.issues.push_back("phase-shift segment does not separate two crossing solitons");
            continue;
        }
        auto& va = cp.vertices[a];
        auto& vb = cp.vertices[b];
        va.pos = {(va.pos.x + vb.pos.x) / 2, (va.pos.y + vb.pos.y) / 2};
        for (int e : vb.edges) {
            auto& ed = cp.edges[e];
            if (ed.v0 == b) ed.v0 = a;
            if (ed.v1 == b) ed.v1 = a;
            va.edges.push_back(e);
        }
        vb.edges.clear();
        merged_into[b] = a;
    }
    if (!shift_clusters.empty()) {
        std::vector<int> new_id(cp.vertices.size(), -1);
        std::vector<ContourVertex> kept;
        for (std::size_t v = 0; v < cp.vertices.size(); ++v) {
            if (merged_into[v] != static_cast<int>(v)) continue;
            new_id[v] = static_cast<int>(kept.size());
            kept.push_back(std::move(cp.vertices[v]));
        }
        cp.vertices = std::move(kept);
        for (auto& e : cp.edges) {
            e.v0 = new_id[e.v0];
            e.v1 = new_id[e.v1];
        }
    }

    for (auto& v : cp.vertices) {
        if (v.cls == VertexClass::Exit) continue;
        if (on_box(v.pos) && v.edges.size() != 1) {
            cp.generic = false;
            cp.issues.push_back("several solitons leave the box at one point");
            continue;
        }
        const int self = static_cast<int>(&v - cp.vertices.data());
        auto direction = [&](int e) {
            const ContourEdge& ed = cp.edges[e];
            const Point2 p = ed.end_at(self);
            const Point2 q = ed.far_from(self);
            const double dx = q.x - p.x;
            const double dy = q.y - p.y;
            const double len = std::hypot(dx, dy);
            return Point2{dx / len, dy / len};
        };
        if (v.edges.size() == 3) {
            int down = 0;
            for (int e : v.edges) down += direction(e).y < 0 ? 1 : 0;
            v.cls = down == 1 ? VertexClass::Black : down == 2 ? VertexClass::White : VertexClass::Degenerate;
        } else if (v.edges.size() == 4) {
            bool paired = true;
            for (int e : v.edges) {
                int partners = 0;
                for (int f : v.edges) {
                    if (f == e) continue;
                    const Point2 a = direction(e);
                    const Point2 b = direction(f);
                    const bool same_type = cp.edges[e].i == cp.edges[f].i && cp.edges[e].j == cp.edges[f].j;
                    if (same_type && a.x * b.x + a.y * b.y < -1.0 + 1e-9) ++partners;
                }
                paired = paired && partners == 1;
            }
            v.cls = paired ? VertexClass::XCrossing : VertexClass::Degenerate;
        }
        if (v.cls == VertexClass::Degenerate) {
            cp.generic = false;
            cp.issues.push_back("vertex of degree " + std::to_string(v.edges.size()) + " at (" +
                                std::to_string(v.pos.x) + ", " + std::to_string(v.pos.y) +
                                ") is neither trivalent nor an X-crossing");
        }
    }
    return cp;
}

namespace {

struct Exit {
    int vertex;
    int edge;
    bool top;
    int label;
    double param;
};

// Exits in counterclockwise order starting just after the x << 0 region.
std::vector<Exit> ordered_exits(const ContourPlot& cp) {
    std::vector<Exit> exits;
    for (int v = 0; v < static_cast<int>(cp.vertices.size()); ++v) {
        if (cp.vertices[v].cls != VertexClass::Exit) continue;
        const int e = cp.vertices[v].edges.front();
        const ContourEdge& ed = cp.edges[e];
        const int o = ed.v0 == v ? ed.v1 : ed.v0;
        const bool top = cp.vertices[v].pos.y > cp.vertices[o].pos.y;
        exits.push_back({v, e, top, top ? ed.j : ed.i, cp.bbox.perimeter_param(cp.vertices[v].pos)});
    }
    std::sort(exits.begin(), exits.end(), [](const Exit& a, const Exit& b) { return a.param < b.param; });
    const std::size_t m = exits.size();
    for (std::size_t p = 0; p < m; ++p) {
        if (!exits[p].top && exits[(p + m - 1) % m].top) {
            std::rotate(exits.begin(), exits.begin() + static_cast<long>(p), exits.end());
            break;
        }
    }
    return exits;
}

}  // namespace

SolitonGraph soliton_graph(const ContourPlot& cp) {
    if (!cp.generic) {
        throw Error(ErrorCode::NonGenericInput,
                    "contour plot is not generic" + (cp.issues.empty() ? std::string() : ": " + cp.issues.front()));
    }
    SolitonGraph sg;
    const std::vector<Exit> exits = ordered_exits(cp);
    std::vector<int> exit_label(cp.vertices.size(), 0);
    std::vector<bool> used(cp.n + 1, false);
    for (const Exit& x : exits) {
        if (x.label < 1 || x.label > cp.n || used[x.label]) {
            throw Error(ErrorCode::MalformedPlot, "unbounded solitons do not induce a boundary labeling");
        }
        used[x.label] = true;
        exit_label[x.vertex] = x.label;
    }
    if (static_cast<int>(exits.size()) != cp.n) {
        throw Error(ErrorCode::MalformedPlot, "expected " + std::to_string(cp.n) + " unbounded solitons, found " +
                                                  std::to_string(exits.size()));
    }

    std::vector<int> gv(cp.vertices.size());
    for (int v = 0; v < static_cast<int>(cp.vertices.size()); ++v) {
        const auto& cv = cp.vertices[v];
        VertexKind kind = VertexKind::Crossing;
        switch (cv.cls) {
            case VertexClass::Black: kind = VertexKind::Black; break;
            case VertexClass::White: kind = VertexKind::White; break;
            case VertexClass::XCrossing: kind = VertexKind::Crossing; break;
            case VertexClass::Exit: kind = VertexKind::Boundary; break;
            case VertexClass::Degenerate: throw Error(ErrorCode::NonGenericInput, "degenerate vertex");
        }
        gv[v] = sg.graph.add_vertex(kind, cv.pos, exit_label[v]);
        sg.contour_vertex.push_back(v);
    }
    for (const ContourEdge& e : cp.edges) {
        sg.graph.add_edge(gv[e.v0], gv[e.v1]);
        sg.edge_types.emplace_back(e.i, e.j);
    }
    sg.graph.sort_rotations();
    std::vector<int> order;
    for (const Exit& x : exits) order.push_back(gv[x.vertex]);
    sg.graph.set_boundary_order(std::move(order));

    sg.faces = faces(sg.graph);
    for (const auto& darts : sg.faces.face_darts) {
        const Dart d = darts.front();
        sg.region_labels.push_back(cp.left_of(d.edge, sg.contour_vertex[sg.graph.tail(d)]));
    }
    return sg;
}

GeneralizedPlabicGraph plabic_from_soliton_graph(const SolitonGraph& c) { return c.graph; }

Asymptotics predict_asymptotics(const Derangement& d, const KappaParams& kappa) {
    const int n = d.n();
    if (kappa.n() != n) throw Error(ErrorCode::InvalidArgument, "kappa length differs from n");
    Asymptotics out;
    std::vector<int> exc;
    std::vector<int> non;
    for (int i = 1; i <= n; ++i) (d(i) > i ? exc : non).push_back(i);
    auto sum = [&](int i) { return kappa[i] + kappa[d(i)]; };
    std::sort(exc.begin(), exc.end(), [&](int a, int b) { return sum(a) > sum(b); });
    std::sort(non.begin(), non.end(), [&](int a, int b) { return sum(a) < sum(b); });
    const double scale = std::max(1.0, std::abs(kappa.values().front()) + std::abs(kappa.values().back()));
    for (const auto* list : {&exc, &non}) {
        for (std::size_t m = 1; m < list->size(); ++m) {
            if (std::abs(sum((*list)[m]) - sum((*list)[m - 1])) <= 1e-9 * scale) {
                throw Error(ErrorCode::NotGeneric, "two unbounded solitons have the same slope");
            }
        }
    }
    for (int i : exc) out.top.emplace_back(i, d(i));
    for (int j : non) out.bottom.emplace_back(d(j), j);
    out.left_region = d.excedance_positions();
    Subset r = out.left_region;
    out.unbounded_regions.push_back(r);
    auto step = [&](std::pair<int, int> ab) {
        r = Subset::from_mask(r.mask() ^ Subset::of({ab.first, ab.second}).mask());
        out.unbounded_regions.push_back(r);
    };
    for (const auto& ab : out.bottom) step(ab);
    for (auto it = out.top.rbegin(); it != out.top.rend(); ++it) step(*it);
    out.unbounded_regions.pop_back();
    return out;
}

Asymptotics observed_asymptotics(const ContourPlot& cp) {
    const std::vector<Exit> exits = ordered_exits(cp);
    Asymptotics out;
    for (const Exit& x : exits) {
        const auto& e = cp.edges[x.edge];
        (x.top ? out.top : out.bottom).emplace_back(e.i, e.j);
    }
    std::reverse(out.top.begin(), out.top.end());
    if (exits.empty()) {
        if (!cp.regions.empty()) out.left_region = cp.regions.front().basis;
        out.unbounded_regions.push_back(out.left_region);
        return out;
    }
    auto inner = [&](const Exit& x) {
        const auto& e = cp.edges[x.edge];
        return e.v0 == x.vertex ? e.v1 : e.v0;
    };
    out.left_region = cp.left_of(exits.front().edge, exits.front().vertex);
    out.unbounded_regions.push_back(out.left_region);
    for (std::size_t m = 0; m + 1 < exits.size(); ++m) {
        out.unbounded_regions.push_back(cp.left_of(exits[m].edge, inner(exits[m])));
    }
    return out;
}

Derangement read_derangement(const ContourPlot& cp) {
    const Asymptotics a = observed_asymptotics(cp);
    if (static_cast<int>(a.top.size()) != cp.k || static_cast<int>(a.bottom.size()) != cp.n - cp.k) {
        throw Error(ErrorCode::MalformedPlot, "found " + std::to_string(a.top.size()) + " top and " +
                                                  std::to_string(a.bottom.size()) + " bottom solitons");
    }
    std::vector<int> pi(cp.n, 0);
    for (auto [i, j] : a.top) pi[i - 1] = j;
    for (auto [i, j] : a.bottom) pi[j - 1] = i;
    try {
        return Derangement(std::move(pi));
    } catch (const Error& e) {
        throw Error(ErrorCode::MalformedPlot, std::string("unbounded solitons do not form a derangement: ") + e.what());
    }
}

GrassmannNecklace necklace_check(const ContourPlot& cp) {
    const Derangement pi = read_derangement(cp);
    if (!is_tp_schubert(pi)) throw Error(ErrorCode::NotASchubertCell, "cell " + pi.to_string() + " is not TP Schubert");
    const Asymptotics a = observed_asymptotics(cp);
    try {
        GrassmannNecklace neck(cp.n, a.unbounded_regions);
        if (derangement_from_necklace(neck) != pi) {
            throw Error(ErrorCode::NecklaceViolation, "necklace of the unbounded regions has another derangement");
        }
        return neck;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NecklaceViolation) throw;
        throw Error(ErrorCode::NecklaceViolation, std::string("unbounded regions are not a necklace: ") + e.what());
    }
}

AutoTime auto_t_negative(const TropicalField& field, double limit) {
    std::optional<SolitonGraph> previous;
    for (double t = -1.0; -t <= limit; t *= 2.0) {
        ContourPlot cp = contour_plot(field, t);
        if (!cp.generic) {
            previous.reset();
            continue;
        }
        SolitonGraph sg = soliton_graph(cp);
        if (previous && label_isomorphic(previous->graph, sg.graph)) return {t, std::move(cp), std::move(sg)};
        previous = std::move(sg);
    }
    throw Error(ErrorCode::NoConvergence, "soliton graph did not stabilize for t >= -" + std::to_string(limit));
}

InvariantReport check_invariants(const ContourPlot& cp, const TropicalField& field) {
    InvariantReport rep;
    const KappaParams& kp = cp.kappa;
    for (const ContourEdge& e : cp.edges) {
        const bool adjacent = (e.I - e.J) == Subset::of({e.i}) && (e.J - e.I) == Subset::of({e.j});
        rep.adjacency = rep.adjacency && adjacent;
        const Line l = soliton_line(field, e, cp.time);
        const Point2 p = e.p0;
        const Point2 q = e.p1;
        for (Point2 z : {p, q}) {
            const double scale = std::max({1.0, std::abs(z.x), std::abs(z.y)});
            rep.line_residual = std::max(rep.line_residual, std::abs(z.x + l.s * z.y - l.r) / std::hypot(1.0, l.s) / scale);
        }
        const double s = kp[e.i] + kp[e.j];
        rep.slope_residual = std::max(rep.slope_residual, std::abs(-(q.x - p.x) / (q.y - p.y) - s));
    }
    for (int v = 0; v < static_cast<int>(cp.vertices.size()); ++v) {
        const auto& cv = cp.vertices[v];
        if (cv.cls == VertexClass::XCrossing) ++rep.crossings;
        if (cv.cls != VertexClass::Black && cv.cls != VertexClass::White) continue;
        ++rep.trivalent;
        double bx = 0.0;
        double by = 0.0;
        for (int e : cv.edges) {
            const ContourEdge& ed = cp.edges[e];
            const Point2 p = ed.end_at(v);
            const Point2 q = ed.far_from(v);
            const double dx = q.x - p.x;
            const double dy = q.y - p.y;
            const double w = kp[ed.j] - kp[ed.i];
            bx += w * dx / std::abs(dy);
            by += w * dy / std::abs(dy);
        }
        rep.balance_residual = std::max(rep.balance_residual, std::hypot(bx, by));
    }
    return rep;
}

}  // namespace kp
