// SPDX-License-Identifier: Apache-2.0
#include "kp/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "kp/error.hpp"
#include "kp/soliton.hpp"

namespace kp {

namespace {

Diagonal normalize(Diagonal d) { return d.first < d.second ? d : Diagonal{d.second, d.first}; }

bool is_side(int n, int a, int b) {
    const auto [lo, hi] = normalize({a, b});
    return hi - lo == 1 || (lo == 1 && hi == n);
}

}  // namespace

bool crosses(Diagonal a, Diagonal b) {
    a = normalize(a);
    b = normalize(b);
    const bool b1_inside = a.first < b.first && b.first < a.second;
    const bool b2_inside = a.first < b.second && b.second < a.second;
    const bool shares = a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second;
    return !shares && b1_inside != b2_inside;
}

Triangulation::Triangulation(int n, std::vector<Diagonal> diagonals) : n_(n), diagonals_(std::move(diagonals)) {
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "polygon needs at least three vertices");
    for (auto& d : diagonals_) {
        d = normalize(d);
        if (d.first < 1 || d.second > n || d.first == d.second || is_side(n, d.first, d.second)) {
            throw Error(ErrorCode::InvalidArgument, "not a diagonal: " + std::to_string(d.first) + "-" +
                                                        std::to_string(d.second));
        }
    }
    std::sort(diagonals_.begin(), diagonals_.end());
    if (std::adjacent_find(diagonals_.begin(), diagonals_.end()) != diagonals_.end()) {
        throw Error(ErrorCode::InvalidArgument, "repeated diagonal");
    }
    if (static_cast<int>(diagonals_.size()) != n - 3) {
        throw Error(ErrorCode::InvalidArgument, "a triangulation of an n-gon has n-3 diagonals");
    }
    for (std::size_t i = 0; i < diagonals_.size(); ++i)
        for (std::size_t j = i + 1; j < diagonals_.size(); ++j)
            if (crosses(diagonals_[i], diagonals_[j])) throw Error(ErrorCode::InvalidArgument, "diagonals cross");
}

bool Triangulation::contains(Diagonal d) const {
    return std::binary_search(diagonals_.begin(), diagonals_.end(), normalize(d));
}

std::vector<std::array<int, 3>> Triangulation::triangles() const {
    auto joined = [&](int a, int b) { return is_side(n_, a, b) || contains({a, b}); };
    std::vector<std::array<int, 3>> out;
    for (int a = 1; a <= n_; ++a)
        for (int b = a + 1; b <= n_; ++b)
            for (int c = b + 1; c <= n_; ++c)
                if (joined(a, b) && joined(b, c) && joined(a, c)) out.push_back({a, b, c});
    return out;
}

Triangulation flip(const Triangulation& t, Diagonal d) {
    d = normalize(d);
    if (!t.contains(d)) {
        throw Error(ErrorCode::NotADiagonal,
                    std::to_string(d.first) + "-" + std::to_string(d.second) + " is not a diagonal of the triangulation");
    }
    std::vector<int> apex;
    for (const auto& tri : t.triangles()) {
        const bool has_a = std::find(tri.begin(), tri.end(), d.first) != tri.end();
        const bool has_c = std::find(tri.begin(), tri.end(), d.second) != tri.end();
        if (!has_a || !has_c) continue;
        for (int v : tri)
            if (v != d.first && v != d.second) apex.push_back(v);
    }
    std::vector<Diagonal> diagonals;
    for (const Diagonal& e : t.diagonals())
        if (e != d) diagonals.push_back(e);
    diagonals.push_back(normalize({apex.at(0), apex.at(1)}));
    return Triangulation(t.n(), std::move(diagonals));
}

std::vector<Triangulation> enumerate_triangulations(int n) {
    // Triangulations of the sub-polygon i..j as lists of diagonals.
    std::map<std::pair<int, int>, std::vector<std::vector<Diagonal>>> memo;
    std::function<const std::vector<std::vector<Diagonal>>&(int, int)> sub = [&](int i, int j)
        -> const std::vector<std::vector<Diagonal>>& {
        if (auto it = memo.find({i, j}); it != memo.end()) return it->second;
        std::vector<std::vector<Diagonal>> out;
        if (j - i < 2) {
            out.emplace_back();
        } else {
            for (int m = i + 1; m < j; ++m) {
                for (const auto& left : sub(i, m)) {
                    for (const auto& right : sub(m, j)) {
                        std::vector<Diagonal> ds = left;
                        ds.insert(ds.end(), right.begin(), right.end());
                        if (m - i >= 2) ds.push_back({i, m});
                        if (j - m >= 2) ds.push_back({m, j});
                        out.push_back(std::move(ds));
                    }
                }
            }
        }
        return memo.emplace(std::pair{i, j}, std::move(out)).first->second;
    };
    std::vector<Triangulation> out;
    for (const auto& ds : sub(1, n)) {
        std::vector<Diagonal> clean;
        for (Diagonal d : ds)
            if (!is_side(n, d.first, d.second)) clean.push_back(d);
        out.emplace_back(n, std::move(clean));
    }
    std::sort(out.begin(), out.end(), [](const Triangulation& a, const Triangulation& b) {
        return a.diagonals() < b.diagonals();
    });
    return out;
}

GeneralizedPlabicGraph psi(const Triangulation& t) {
    const int n = t.n();
    auto corner = [&](int i, double radius) {
        const double a = 2.0 * std::numbers::pi * (i - 1) / n;
        return Point2{radius * std::cos(a), radius * std::sin(a)};
    };
    std::vector<bool> on_diagonal(n + 1, false);
    for (const auto& [a, b] : t.diagonals()) on_diagonal[a] = on_diagonal[b] = true;

    GeneralizedPlabicGraph g;
    std::vector<int> polygon_vertex(n + 1, -1);
    for (int i = 1; i <= n; ++i)
        if (on_diagonal[i]) polygon_vertex[i] = g.add_vertex(VertexKind::White, corner(i, 1.0));
    // Ray endpoints; the vertex that carries the ray from polygon vertex i.
    std::vector<int> ray_source(n + 1, -1);
    for (int i = 1; i <= n; ++i) ray_source[i] = polygon_vertex[i];

    for (const auto& tri : t.triangles()) {
        Point2 c{0, 0};
        for (int v : tri) {
            c.x += corner(v, 1.0).x / 3;
            c.y += corner(v, 1.0).y / 3;
        }
        const int center = g.add_vertex(VertexKind::Black, c);
        for (int v : tri) {
            if (on_diagonal[v] || n == 3) {
                if (polygon_vertex[v] < 0) polygon_vertex[v] = g.add_vertex(VertexKind::Black, corner(v, 1.0));
                g.add_edge(center, polygon_vertex[v]);
                if (n == 3) ray_source[v] = polygon_vertex[v];
            } else {
                // Black ear tip merges into the black triangle vertex.
                ray_source[v] = center;
            }
        }
    }
    std::vector<int> boundary(n + 1);
    for (int i = 1; i <= n; ++i) {
        boundary[i] = g.add_vertex(VertexKind::Boundary, corner(i, 2.0), cyclic(i - 1, n));
        g.add_edge(ray_source[i], boundary[i]);
    }
    g.sort_rotations();
    std::vector<int> order;
    for (int i = 1; i <= n; ++i) order.push_back(boundary[i]);
    g.set_boundary_order(order);

    // Split white vertices of degree > 3 into a trivalent fan.
    const int count = static_cast<int>(g.vertices().size());
    for (int v = 0; v < count; ++v) {
        if (g.vertex(v).kind != VertexKind::White || g.degree(v) <= 3) continue;
        const std::vector<int> rot = g.vertex(v).rotation;
        const int d = static_cast<int>(rot.size());
        // v keeps rot[0], rot[1] and a link to the next fan vertex, and so on.
        int current = v;
        g.vertex(v).rotation = {rot[0], rot[1]};
        for (int m = 2; m < d - 1; ++m) {
            const Point2 p = g.vertex(v).pos;
            const Point2 q = g.vertex(g.other(rot[m], v)).pos;
            const int next = g.add_vertex(VertexKind::White, {p.x + 0.15 * (q.x - p.x), p.y + 0.15 * (q.y - p.y)});
            const int link = g.add_edge(current, next);
            // add_edge appended link to both rotations; place it after the kept edges.
            g.move_edge_end(rot[m], v, next);
            if (m == d - 2) g.move_edge_end(rot[m + 1], v, next);
            auto& nr = g.vertex(next).rotation;
            // next: [link, rot[m], (rot[m+1] or nothing)] in counterclockwise order.
            std::vector<int> fixed{link};
            for (int e : nr)
                if (e != link) fixed.push_back(e);
            nr = fixed;
            current = next;
        }
    }
    return g;
}

bool exchange_check(const GrassmannPoint& point, int a, int b, int c, int d, double rel_tol) {
    if (point.k() != 2) throw Error(ErrorCode::InvalidArgument, "exchange relation is for Gr(2,n)");
    const auto& pl = point.pluecker();
    auto D = [&](int i, int j) { return pl[Subset::of({i, j})]; };
    const double lhs = D(a, c) * D(b, d);
    const double rhs = D(a, b) * D(c, d) + D(a, d) * D(b, c);
    return std::abs(lhs - rhs) <= rel_tol * std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

GrassmannPoint point_from_cluster(const Triangulation& t, double diagonal_value) {
    return point_from_cluster(t, std::vector<double>(t.diagonals().size(), diagonal_value));
}

GrassmannPoint point_from_cluster(const Triangulation& t, const std::vector<double>& diagonal_values,
                                  const std::vector<double>& side_values) {
    const int n = t.n();
    if (diagonal_values.size() != t.diagonals().size() || (!side_values.empty() && side_values.size() != std::size_t(n))) {
        throw Error(ErrorCode::InvalidArgument, "cluster size mismatch");
    }
    std::map<std::pair<int, int>, double> known;
    for (int i = 1; i <= n; ++i) known[normalize({i, cyclic(i + 1, n)})] = side_values.empty() ? 1.0 : side_values[i - 1];
    for (std::size_t i = 0; i < diagonal_values.size(); ++i) known[t.diagonals()[i]] = diagonal_values[i];
    for (const auto& [key, value] : known)
        if (!(value > 0)) throw Error(ErrorCode::InvalidArgument, "cluster coordinates must be positive");
    auto get = [&](int i, int j) -> const double* {
        auto it = known.find(normalize({i, j}));
        return it == known.end() ? nullptr : &it->second;
    };
    const std::size_t total = static_cast<std::size_t>(n) * (n - 1) / 2;
    while (known.size() < total) {
        bool progress = false;
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                for (int c = b + 1; c <= n; ++c)
                    for (int d = c + 1; d <= n; ++d) {
                        // D_bd = (D_ab D_cd + D_ad D_bc) / D_ac and symmetrically for D_ac.
                        const double *ab = get(a, b), *cd = get(c, d), *ad = get(a, d), *bc = get(b, c);
                        if (!ab || !cd || !ad || !bc) continue;
                        const double *ac = get(a, c), *bd = get(b, d);
                        if (ac && !bd) {
                            known[{b, d}] = (*ab * *cd + *ad * *bc) / *ac;
                            progress = true;
                        } else if (bd && !ac) {
                            known[{a, c}] = (*ab * *cd + *ad * *bc) / *bd;
                            progress = true;
                        }
                    }
        if (!progress) throw Error(ErrorCode::InvalidArgument, "cluster does not determine all coordinates");
    }
    // Row-reduced representative with pivots {1, 2}.
    const double d12 = known.at({1, 2});
    std::vector<double> a(2 * static_cast<std::size_t>(n), 0.0);
    a[0] = 1.0;
    a[n + 1] = 1.0;
    for (int j = 3; j <= n; ++j) {
        a[j - 1] = -known.at({2, j}) / d12;
        a[n + j - 1] = known.at({1, j}) / d12;
    }
    return GrassmannPoint(2, n, std::move(a));
}

std::optional<Realization> find_realization(const Triangulation& tri, const KappaParams& kappa, int random_trials,
                                            unsigned seed) {
    const GeneralizedPlabicGraph target = psi(tri);
    auto scan = [&](const std::vector<double>& diag, const std::vector<double>& side) -> std::optional<Realization> {
        try {
            const GrassmannPoint a = point_from_cluster(tri, diag, side);
            const TropicalField field = tropical_field(a, kappa);
            for (double t = -10.0; t <= 10.0; t += 0.5) {
                const ContourPlot cp = contour_plot(field, t);
                if (!cp.generic) continue;
                bool has_x = false;
                for (const auto& v : cp.vertices) has_x = has_x || v.cls == VertexClass::XCrossing;
                if (has_x) continue;
                if (label_isomorphic(soliton_graph(cp).graph, target, true)) return Realization{a, t, diag, side};
            }
        } catch (const Error&) {
            // Candidates too close to the zero band or non-generic are skipped.
        }
        return std::nullopt;
    };
    const std::size_t m = tri.diagonals().size();
    for (double lv = 0.0; lv <= 6.0; lv += 0.5)
        if (auto r = scan(std::vector<double>(m, std::exp(lv)), {})) return r;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> diag_log(0.0, 6.0), side_log(-2.0, 2.0);
    for (int trial = 0; trial < random_trials; ++trial) {
        std::vector<double> diag(m), side(tri.n());
        for (double& d : diag) d = std::exp(diag_log(rng));
        for (double& s : side) s = std::exp(side_log(rng));
        if (auto r = scan(diag, side)) return r;
    }
    return std::nullopt;
}

}  // namespace kp
