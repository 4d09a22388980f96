// SPDX-License-Identifier: Apache-2.0
#include "kp/le_to_plabic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "kp/error.hpp"

namespace kp {

namespace {

// Color of the vertex placed on the northeast arc of an elbow; the southwest
// arc gets the other color. Fixed by requiring trip permutation = pi(L).
constexpr VertexKind kNorthEastArc = VertexKind::White;
constexpr VertexKind kSouthWestArc = VertexKind::Black;

enum class Heading { West, North };

struct Start {
    int r;
    int c;
    Heading heading;
};

// Tile where the pipe entering at southeast label i begins.
Start pipe_start(const LeDiagram& le, int i) {
    for (int r = 1; r <= le.k(); ++r) {
        if (le.row_label(r) == i) return {r, le.row_length(r), Heading::West};
    }
    for (int c = 1; c <= le.n() - le.k(); ++c) {
        if (le.column_label(c) == i) return {le.column_length(c), c, Heading::North};
    }
    throw Error(ErrorCode::InvalidArgument, "label outside the southeast border");
}

}  // namespace

PipeGrid pipe_grid(const LeDiagram& le) {
    PipeGrid grid;
    grid.k = le.k();
    grid.n = le.n();
    grid.elbow.resize(le.k());
    for (int r = 1; r <= le.k(); ++r) {
        for (int c = 1; c <= le.row_length(r); ++c) grid.elbow[r - 1].push_back(le.plus(r, c));
    }
    for (int i = 1; i <= le.n(); ++i) {
        auto [r, c, heading] = pipe_start(le, i);
        std::vector<std::pair<int, int>> path;
        while (r >= 1 && c >= 1) {
            path.emplace_back(r, c);
            if (le.plus(r, c)) heading = heading == Heading::West ? Heading::North : Heading::West;
            if (heading == Heading::West) {
                --c;
            } else {
                --r;
            }
        }
        grid.destination.push_back(r == 0 ? le.column_label(c) : le.row_label(r));
        grid.paths.push_back(std::move(path));
    }
    return grid;
}

Derangement derangement_of(const LeDiagram& le) {
    const PipeGrid grid = pipe_grid(le);
    std::vector<int> pi(le.n());
    for (int i = 1; i <= le.n(); ++i) pi[grid.destination[i - 1] - 1] = i;
    return Derangement(std::move(pi));
}

GeneralizedPlabicGraph build_g_minus(const LeDiagram& le) {
    if (!le.irreducible()) throw Error(ErrorCode::NotIrreducible, "G_-(L) needs an irreducible Le-diagram");
    const int k = le.k();
    const int n = le.n();
    const PipeGrid grid = pipe_grid(le);

    struct Node {
        VertexKind kind;
        Point2 pos;
        int label = 0;
    };
    struct Link {
        int u;
        int v;
        bool alive = true;
    };
    std::vector<Node> nodes;
    std::vector<Link> links;
    std::map<std::pair<int, int>, int> by_position;  // keyed by 4x coordinates
    auto node_at = [&](double x, double y, VertexKind kind) {
        const std::pair<int, int> key{static_cast<int>(std::lround(4 * x)), static_cast<int>(std::lround(4 * y))};
        if (auto it = by_position.find(key); it != by_position.end()) return it->second;
        nodes.push_back(Node{kind, {x, y}});
        by_position.emplace(key, static_cast<int>(nodes.size()) - 1);
        return static_cast<int>(nodes.size()) - 1;
    };
    auto link = [&](int u, int v) {
        links.push_back(Link{u, v});
        return static_cast<int>(links.size()) - 1;
    };

    // Per tile: edges reaching the east, north, west and south midpoints.
    struct TileEdges {
        int east, north, west, south;
    };
    std::vector<std::vector<TileEdges>> tiles(k + 1, std::vector<TileEdges>(n - k + 1));
    for (int r = 1; r <= k; ++r) {
        for (int c = 1; c <= le.row_length(r); ++c) {
            // Tile (r, c) covers x in [c-1, c], y in [-r, -r+1].
            const double cx = c - 0.5;
            const double cy = -r + 0.5;
            const int east = node_at(c, cy, VertexKind::White);
            const int north = node_at(cx, -r + 1, VertexKind::White);
            const int west = node_at(c - 1, cy, VertexKind::White);
            const int south = node_at(cx, -r, VertexKind::White);
            TileEdges& t = tiles[r][c];
            if (le.plus(r, c)) {
                const int ne = node_at(c - 0.25, -r + 0.75, kNorthEastArc);
                const int sw = node_at(c - 0.75, -r + 0.25, kSouthWestArc);
                t = {link(ne, east), link(ne, north), link(sw, west), link(sw, south)};
                link(ne, sw);
            } else {
                const int x = node_at(cx, cy, VertexKind::Crossing);
                t = {link(x, east), link(x, north), link(x, west), link(x, south)};
            }
        }
    }

    // Erase the straight lead-in of every southeast pipe up to its first elbow.
    for (int i = 1; i <= n; ++i) {
        auto [r, c, heading] = pipe_start(le, i);
        while (r >= 1 && c >= 1) {
            TileEdges& t = tiles[r][c];
            if (heading == Heading::West) {
                links[t.east].alive = false;
                if (le.plus(r, c)) break;
                links[t.west].alive = false;
                --c;
            } else {
                links[t.south].alive = false;
                if (le.plus(r, c)) break;
                links[t.north].alive = false;
                --r;
            }
        }
    }

    // Northwest midpoints become boundary vertices labeled by their pipe.
    std::vector<int> boundary_nodes;
    for (int c = n - k; c >= 1; --c) boundary_nodes.push_back(node_at(c - 0.5, 0, VertexKind::White));
    for (int r = 1; r <= k; ++r) boundary_nodes.push_back(node_at(0, -r + 0.5, VertexKind::White));
    for (int i = 1; i <= n; ++i) {
        const int j = grid.destination[i - 1];
        int node = -1;
        for (int c = 1; c <= n - k && node < 0; ++c)
            if (le.column_label(c) == j) node = node_at(c - 0.5, 0, VertexKind::White);
        for (int r = 1; r <= k && node < 0; ++r)
            if (le.row_label(r) == j) node = node_at(0, -r + 0.5, VertexKind::White);
        nodes[node].kind = VertexKind::Boundary;
        nodes[node].label = i;
    }

    std::vector<int> degree(nodes.size(), 0);
    for (const Link& l : links) {
        if (!l.alive) continue;
        ++degree[l.u];
        ++degree[l.v];
    }
    GeneralizedPlabicGraph g;
    std::vector<int> id(nodes.size(), -1);
    for (int v = 0; v < static_cast<int>(nodes.size()); ++v) {
        if (degree[v] == 0) continue;
        id[v] = g.add_vertex(nodes[v].kind, nodes[v].pos, nodes[v].label);
    }
    for (const Link& l : links)
        if (l.alive) g.add_edge(id[l.u], id[l.v]);
    g.sort_rotations();
    std::vector<int> order;
    for (int v : boundary_nodes) order.push_back(id[v]);
    g.set_boundary_order(std::move(order));
    return g.normalized(false);
}

std::vector<int> asymptotic_boundary_order(const Derangement& d, const KappaParams& kappa) {
    const int n = d.n();
    std::vector<int> bottom;
    std::vector<int> top;
    for (int j = 1; j <= n; ++j) (d(j) > j ? top : bottom).push_back(j);
    auto pair_sum = [&](int j) { return kappa[j] + kappa[d(j)]; };
    auto by_sum = [&](int a, int b) { return pair_sum(a) < pair_sum(b); };
    std::sort(bottom.begin(), bottom.end(), by_sum);
    std::sort(top.begin(), top.end(), by_sum);
    std::vector<int> out;
    for (int j : bottom) out.push_back(d(j));
    for (int i : top) out.push_back(d(i));
    return out;
}

GeneralizedPlabicGraph predict_graph_t_neg(const LeDiagram& le, const KappaParams& kappa) {
    GeneralizedPlabicGraph g = build_g_minus(le);
    if (le.all_plus()) return g;
    if (kappa.n() != le.n()) throw Error(ErrorCode::InvalidArgument, "kappa has the wrong length");

    const std::vector<int> target = asymptotic_boundary_order(derangement_of(le), kappa);
    std::vector<int> rank(le.n() + 1);
    for (std::size_t p = 0; p < target.size(); ++p) rank[target[p]] = static_cast<int>(p);

    // Boundary read counterclockwise from the southeast gap, which faces the
    // x << 0 region. Adjacent inversions are removed by X-crossings.
    std::vector<int> order = g.boundary_order();
    const int n = static_cast<int>(order.size());
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (int p = 0; p + 1 < n; ++p) {
            const int b1 = order[p];
            const int b2 = order[p + 1];
            if (rank[g.vertex(b1).label] < rank[g.vertex(b2).label]) continue;
            const int e1 = g.vertex(b1).rotation.front();
            const int e2 = g.vertex(b2).rotation.front();
            const int u1 = g.other(e1, b1);
            const int u2 = g.other(e2, b2);
            if (u1 == b2 || u2 == b1) throw Error(ErrorCode::InvalidArgument, "cannot cross adjacent boundary vertices");
            const Point2 p1 = g.vertex(b1).pos;
            const Point2 p2 = g.vertex(b2).pos;
            const int x = g.add_vertex(VertexKind::Crossing, {(p1.x + p2.x) / 2, (p1.y + p2.y) / 2});
            g.move_edge_end(e1, b1, x);
            g.move_edge_end(e2, b2, x);
            const int f1 = g.add_edge(x, b1);
            const int f2 = g.add_edge(x, b2);
            g.vertex(x).rotation = {f2, f1, e2, e1};
            g.vertex(b1).pos = p2;
            g.vertex(b2).pos = p1;
            std::swap(order[p], order[p + 1]);
            swapped = true;
        }
    }
    g.set_boundary_order(std::move(order));
    return g;
}

std::string pipe_grid_svg(const LeDiagram& le) {
    const PipeGrid grid = pipe_grid(le);
    const int k = le.k();
    const int w = le.n() - k;
    constexpr int s = 40;
    constexpr int m = 30;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (w * s + 2 * m) << "\" height=\""
        << (k * s + 2 * m) << "\">\n";
    out << "<g fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n";
    for (int r = 1; r <= k; ++r) {
        for (int c = 1; c <= le.row_length(r); ++c) {
            const int x0 = m + (c - 1) * s;
            const int y0 = m + (r - 1) * s;
            out << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << s << "\" height=\"" << s
                << "\" stroke=\"#bbbbbb\"/>\n";
            const int h = s / 2;
            if (grid.elbow[r - 1][c - 1]) {
                out << "<path d=\"M " << x0 + s << ' ' << y0 + h << " A " << h << ' ' << h << " 0 0 1 " << x0 + h << ' '
                    << y0 << "\"/>\n";
                out << "<path d=\"M " << x0 << ' ' << y0 + h << " A " << h << ' ' << h << " 0 0 1 " << x0 + h << ' '
                    << y0 + s << "\"/>\n";
            } else {
                out << "<line x1=\"" << x0 << "\" y1=\"" << y0 + h << "\" x2=\"" << x0 + s << "\" y2=\"" << y0 + h
                    << "\"/>\n";
                out << "<line x1=\"" << x0 + h << "\" y1=\"" << y0 << "\" x2=\"" << x0 + h << "\" y2=\"" << y0 + s
                    << "\"/>\n";
            }
        }
    }
    out << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n";
    for (int r = 1; r <= k; ++r) {
        const int y = m + (r - 1) * s + s / 2 + 4;
        out << "<text x=\"" << m + le.row_length(r) * s + 10 << "\" y=\"" << y << "\">" << le.row_label(r) << "</text>\n";
    }
    for (int c = 1; c <= w; ++c) {
        const int x = m + (c - 1) * s + s / 2;
        out << "<text x=\"" << x << "\" y=\"" << m + le.column_length(c) * s + 16 << "\">" << le.column_label(c)
            << "</text>\n";
    }
    for (int i = 1; i <= le.n(); ++i) {
        const int j = grid.destination[i - 1];
        for (int r = 1; r <= k; ++r)
            if (le.row_label(r) == j) out << "<text x=\"" << m - 12 << "\" y=\"" << m + (r - 1) * s + s / 2 + 4 << "\">" << i << "</text>\n";
        for (int c = 1; c <= w; ++c)
            if (le.column_label(c) == j) out << "<text x=\"" << m + (c - 1) * s + s / 2 << "\" y=\"" << m - 8 << "\">" << i << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

LeDiagram lediagram_from_derangement(const Derangement& d, int k, int n) {
    if (d.n() != n || d.k() != k) throw Error(ErrorCode::NotFound, "derangement does not have k excedances in [n]");
    const std::vector<int> e = d.excedance_positions().elements();
    std::vector<std::vector<bool>> rows(k);
    for (int r = 1; r <= k; ++r) {
        const int len = n - k + r - e[r - 1];
        if (len < 0 || len > n - k) throw Error(ErrorCode::NotFound, "excedances do not fit the rectangle");
        rows[r - 1].assign(len, true);
    }
    const LeDiagram shape(k, n, rows);

    // Reverse pipe tracing: the pipe leaving northwest step j must reach the
    // southeast step pi(j). Tiles are filled row by row from the top left.
    std::vector<std::vector<int>> from_north(k + 2, std::vector<int>(n - k + 2, 0));
    std::vector<std::vector<int>> from_west(k + 2, std::vector<int>(n - k + 2, 0));
    for (int c = 1; c <= n - k; ++c) from_north[1][c] = shape.column_label(c);
    for (int r = 1; r <= k; ++r) from_west[r][1] = shape.row_label(r);

    std::vector<std::pair<int, int>> cells;
    for (int r = 1; r <= k; ++r)
        for (int c = 1; c <= shape.row_length(r); ++c) cells.emplace_back(r, c);

    std::vector<LeDiagram> found;
    std::function<void(std::size_t)> fill = [&](std::size_t idx) {
        if (!found.empty()) return;
        if (idx == cells.size()) {
            LeDiagram candidate(k, n, rows);
            if (candidate.irreducible() && derangement_of(candidate) == d &&
                trips(build_g_minus(candidate)).permutation == d.one_line()) {
                found.push_back(std::move(candidate));
            }
            return;
        }
        const auto [r, c] = cells[idx];
        for (bool plus : {true, false}) {
            if (!plus) {
                bool above = false;
                for (int q = 1; q < r; ++q) above = above || rows[q - 1][c - 1];
                bool left = false;
                for (int q = 1; q < c; ++q) left = left || rows[r - 1][q - 1];
                if (above && left) continue;
            }
            const int north = from_north[r][c];
            const int west = from_west[r][c];
            const int east = plus ? north : west;
            const int south = plus ? west : north;
            if (c == shape.row_length(r) && d(east) != shape.row_label(r)) continue;
            if (r == shape.column_length(c) && d(south) != shape.column_label(c)) continue;
            rows[r - 1][c - 1] = plus;
            from_west[r][c + 1] = east;
            from_north[r + 1][c] = south;
            fill(idx + 1);
            if (!found.empty()) return;
        }
        rows[r - 1][c - 1] = true;
    };
    fill(0);
    if (found.empty()) throw Error(ErrorCode::NotFound, "no Le-diagram with derangement " + d.to_string());
    return found.front();
}

}  // namespace kp
