// SPDX-License-Identifier: Apache-2.0
#include "kp/plabic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>

#include "kp/error.hpp"

namespace kp {

int GeneralizedPlabicGraph::add_vertex(VertexKind kind, Point2 pos, int label) {
    vertices_.push_back(PlabicVertex{kind, label, pos, {}});
    const int id = static_cast<int>(vertices_.size()) - 1;
    if (kind == VertexKind::Boundary) boundary_.push_back(id);
    return id;
}

int GeneralizedPlabicGraph::add_edge(int u, int v) {
    edges_.push_back(PlabicEdge{u, v});
    const int id = static_cast<int>(edges_.size()) - 1;
    vertices_[u].rotation.push_back(id);
    vertices_[v].rotation.push_back(id);
    return id;
}

void GeneralizedPlabicGraph::sort_rotations() {
    for (int v = 0; v < static_cast<int>(vertices_.size()); ++v) {
        auto& rot = vertices_[v].rotation;
        const Point2 p = vertices_[v].pos;
        auto angle = [&](int e) {
            const Point2 q = vertices_[other(e, v)].pos;
            return std::atan2(q.y - p.y, q.x - p.x);
        };
        std::stable_sort(rot.begin(), rot.end(), [&](int a, int b) { return angle(a) < angle(b); });
    }
}

void GeneralizedPlabicGraph::sort_boundary(Point2 center, double start_angle) {
    auto key = [&](int v) {
        const Point2 p = vertices_[v].pos;
        double a = std::atan2(p.y - center.y, p.x - center.x) - start_angle;
        a = std::fmod(a + 4.0 * std::numbers::pi, 2.0 * std::numbers::pi);
        return a;
    };
    std::stable_sort(boundary_.begin(), boundary_.end(), [&](int a, int b) { return key(a) < key(b); });
}

int GeneralizedPlabicGraph::boundary_vertex(int label) const {
    for (int v : boundary_)
        if (vertices_[v].label == label) return v;
    throw Error(ErrorCode::InvalidArgument, "no boundary vertex labeled " + std::to_string(label));
}

bool GeneralizedPlabicGraph::has_crossings() const {
    return std::any_of(vertices_.begin(), vertices_.end(),
                       [](const PlabicVertex& v) { return v.kind == VertexKind::Crossing; });
}

void GeneralizedPlabicGraph::replace_in_rotation(int v, int old_edge, int new_edge) {
    auto& rot = vertices_[v].rotation;
    auto it = std::find(rot.begin(), rot.end(), old_edge);
    if (it == rot.end()) throw Error(ErrorCode::InvalidArgument, "edge not incident to vertex");
    *it = new_edge;
}

void GeneralizedPlabicGraph::move_edge_end(int e, int from, int to) {
    auto& ed = edges_[e];
    if (ed.u == from) {
        ed.u = to;
    } else if (ed.v == from) {
        ed.v = to;
    } else {
        throw Error(ErrorCode::InvalidArgument, "edge not incident to vertex");
    }
    auto& rot = vertices_[from].rotation;
    rot.erase(std::remove(rot.begin(), rot.end(), e), rot.end());
    vertices_[to].rotation.push_back(e);
}

void GeneralizedPlabicGraph::validate() const {
    std::vector<bool> labels(boundary_.size() + 1, false);
    int boundary_seen = 0;
    for (int v = 0; v < static_cast<int>(vertices_.size()); ++v) {
        const auto& vx = vertices_[v];
        if (vx.kind == VertexKind::Boundary) {
            ++boundary_seen;
            if (degree(v) != 1) throw Error(ErrorCode::InvalidArgument, "boundary vertex must have degree 1");
            if (vx.label < 1 || vx.label > static_cast<int>(boundary_.size()) || labels[vx.label]) {
                throw Error(ErrorCode::InvalidArgument, "boundary labels must be a permutation of [n]");
            }
            labels[vx.label] = true;
        } else if (vx.kind == VertexKind::Crossing) {
            if (degree(v) != 4) throw Error(ErrorCode::InvalidArgument, "crossing must have degree 4");
        } else if (degree(v) < 1) {
            throw Error(ErrorCode::InvalidArgument, "isolated internal vertex");
        }
    }
    if (boundary_seen != static_cast<int>(boundary_.size())) {
        throw Error(ErrorCode::InvalidArgument, "boundary order does not list every boundary vertex");
    }
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        if (edges_[e].u == edges_[e].v) throw Error(ErrorCode::InvalidArgument, "loops are not supported");
        for (int v : {edges_[e].u, edges_[e].v}) {
            const auto& rot = vertices_[v].rotation;
            if (std::count(rot.begin(), rot.end(), e) != 1) {
                throw Error(ErrorCode::InvalidArgument, "rotation system inconsistent with edge list");
            }
        }
    }
    // Every component must reach the boundary (direct-sum cells give several).
    std::vector<bool> seen(vertices_.size(), false);
    std::deque<int> queue(boundary_.begin(), boundary_.end());
    for (int b : boundary_) seen[b] = true;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int e : vertices_[v].rotation) {
            const int w = other(e, v);
            if (!seen[w]) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw Error(ErrorCode::InvalidArgument, "a component does not touch the boundary");
    }
}

GeneralizedPlabicGraph GeneralizedPlabicGraph::normalized(bool contract_unicolored) const {
    GeneralizedPlabicGraph g = *this;
    std::vector<bool> vertex_alive(g.vertices_.size(), true);
    std::vector<bool> edge_alive(g.edges_.size(), true);
    auto internal = [&](int v) { return g.vertices_[v].kind != VertexKind::Boundary; };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < static_cast<int>(g.vertices_.size()); ++v) {
            if (!vertex_alive[v] || !internal(v) || g.degree(v) != 2) continue;
            const int e1 = g.vertices_[v].rotation[0];
            const int e2 = g.vertices_[v].rotation[1];
            const int a = g.other(e1, v);
            const int b = g.other(e2, v);
            if (a == v || b == v || a == b) continue;
            auto& ed = g.edges_[e1];
            (ed.u == v ? ed.u : ed.v) = b;
            g.replace_in_rotation(b, e2, e1);
            g.vertices_[v].rotation.clear();
            vertex_alive[v] = false;
            edge_alive[e2] = false;
            changed = true;
        }
        if (!contract_unicolored) continue;
        for (int e = 0; e < static_cast<int>(g.edges_.size()); ++e) {
            if (!edge_alive[e]) continue;
            const int u = g.edges_[e].u;
            const int v = g.edges_[e].v;
            const VertexKind ku = g.vertices_[u].kind;
            if (u == v || ku != g.vertices_[v].kind || (ku != VertexKind::Black && ku != VertexKind::White)) continue;
            int parallel = 0;
            for (int f : g.vertices_[u].rotation)
                if (g.other(f, u) == v) ++parallel;
            if (parallel != 1) continue;

            auto from = [](const std::vector<int>& rot, int start) {
                std::vector<int> out;
                const auto it = std::find(rot.begin(), rot.end(), start);
                const std::size_t i0 = static_cast<std::size_t>(it - rot.begin());
                for (std::size_t t = 1; t < rot.size(); ++t) out.push_back(rot[(i0 + t) % rot.size()]);
                return out;
            };
            std::vector<int> merged = from(g.vertices_[u].rotation, e);
            const std::vector<int> tail = from(g.vertices_[v].rotation, e);
            merged.insert(merged.end(), tail.begin(), tail.end());
            for (int f : tail) {
                auto& ed = g.edges_[f];
                (ed.u == v ? ed.u : ed.v) = u;
            }
            g.vertices_[u].rotation = std::move(merged);
            g.vertices_[v].rotation.clear();
            vertex_alive[v] = false;
            edge_alive[e] = false;
            changed = true;
        }
    }

    GeneralizedPlabicGraph out;
    std::vector<int> vmap(g.vertices_.size(), -1);
    std::vector<int> emap(g.edges_.size(), -1);
    for (int v = 0; v < static_cast<int>(g.vertices_.size()); ++v) {
        if (!vertex_alive[v]) continue;
        vmap[v] = static_cast<int>(out.vertices_.size());
        out.vertices_.push_back(PlabicVertex{g.vertices_[v].kind, g.vertices_[v].label, g.vertices_[v].pos, {}});
    }
    for (int e = 0; e < static_cast<int>(g.edges_.size()); ++e) {
        if (!edge_alive[e]) continue;
        emap[e] = static_cast<int>(out.edges_.size());
        out.edges_.push_back(PlabicEdge{vmap[g.edges_[e].u], vmap[g.edges_[e].v]});
    }
    for (int v = 0; v < static_cast<int>(g.vertices_.size()); ++v) {
        if (!vertex_alive[v]) continue;
        for (int e : g.vertices_[v].rotation) out.vertices_[vmap[v]].rotation.push_back(emap[e]);
    }
    for (int b : g.boundary_) out.boundary_.push_back(vmap[b]);
    return out;
}

namespace {

int rotation_index(const GeneralizedPlabicGraph& g, int v, int e) {
    const auto& rot = g.vertex(v).rotation;
    const auto it = std::find(rot.begin(), rot.end(), e);
    if (it == rot.end()) throw Error(ErrorCode::StuckTrip, "rotation system misses an incident edge");
    return static_cast<int>(it - rot.begin());
}

Dart leave(const GeneralizedPlabicGraph& g, int v, int e) { return Dart{e, g.edge(e).u == v}; }

Dart next_on_road(const GeneralizedPlabicGraph& g, Dart d) {
    const int v = g.head(d);
    const int deg = g.degree(v);
    const int idx = rotation_index(g, v, d.edge);
    int step = 0;
    switch (g.vertex(v).kind) {
        case VertexKind::Black: step = 1; break;
        case VertexKind::White: step = deg - 1; break;
        case VertexKind::Crossing:
            if (deg != 4) throw Error(ErrorCode::StuckTrip, "crossing vertex without degree 4");
            step = 2;
            break;
        case VertexKind::Boundary: throw Error(ErrorCode::StuckTrip, "trip continued past the boundary");
    }
    if (deg == 2) step = 1;
    return leave(g, v, g.vertex(v).rotation[(idx + step) % deg]);
}

}  // namespace

TripDecomposition trips(const GeneralizedPlabicGraph& g) {
    const int n = g.boundary_count();
    TripDecomposition out;
    out.trips.resize(n);
    out.permutation.assign(n, 0);
    const std::size_t limit = 2 * g.edges().size() + 2;
    for (int b : g.boundary_order()) {
        const int label = g.vertex(b).label;
        if (label < 1 || label > n) throw Error(ErrorCode::StuckTrip, "boundary label out of range");
        if (g.degree(b) != 1) throw Error(ErrorCode::StuckTrip, "boundary vertex must have degree 1");
        Trip trip;
        trip.start = label;
        Dart d = leave(g, b, g.vertex(b).rotation.front());
        trip.darts.push_back(d);
        while (g.vertex(g.head(d)).kind != VertexKind::Boundary) {
            d = next_on_road(g, d);
            trip.darts.push_back(d);
            if (trip.darts.size() > limit) throw Error(ErrorCode::StuckTrip, "trip does not reach the boundary");
        }
        trip.end = g.vertex(g.head(d)).label;
        out.permutation[label - 1] = trip.end;
        out.trips[label - 1] = std::move(trip);
    }
    return out;
}

FaceStructure faces(const GeneralizedPlabicGraph& g) {
    const int n = g.boundary_count();
    const int real_edges = static_cast<int>(g.edges().size());
    if (n == 1) throw Error(ErrorCode::InvalidArgument, "face structure needs at least two boundary vertices");

    // Augmented embedding: arc i joins boundary_order[i] to boundary_order[i+1].
    std::vector<PlabicEdge> edges = g.edges();
    std::vector<std::vector<int>> rot(g.vertices().size());
    for (int v = 0; v < static_cast<int>(g.vertices().size()); ++v) rot[v] = g.vertex(v).rotation;
    const auto& order = g.boundary_order();
    for (int i = 0; i < n; ++i) edges.push_back(PlabicEdge{order[i], order[(i + 1) % n]});
    for (int i = 0; i < n; ++i) {
        const int b = order[i];
        const int real = g.vertex(b).rotation.front();
        rot[b] = {real_edges + i, real, real_edges + (i + n - 1) % n};
    }

    const int total = static_cast<int>(edges.size());
    std::vector<int> face(2 * total, -1);
    auto head = [&](Dart d) { return d.forward ? edges[d.edge].v : edges[d.edge].u; };
    std::vector<std::vector<Dart>> cycles;
    for (int start = 0; start < 2 * total; ++start) {
        if (face[start] >= 0) continue;
        const int id = static_cast<int>(cycles.size());
        cycles.emplace_back();
        Dart d{start / 2, start % 2 == 0};
        while (face[d.index()] < 0) {
            face[d.index()] = id;
            cycles[id].push_back(d);
            const int v = head(d);
            const auto& r = rot[v];
            const int idx = static_cast<int>(std::find(r.begin(), r.end(), d.edge) - r.begin());
            const int e = r[(idx + static_cast<int>(r.size()) - 1) % r.size()];
            d = Dart{e, edges[e].u == v};
        }
    }

    int outer = -1;
    for (int id = 0; id < static_cast<int>(cycles.size()) && n > 0; ++id) {
        const bool all_reversed_arcs = std::all_of(cycles[id].begin(), cycles[id].end(), [&](Dart d) {
            return d.edge >= real_edges && !d.forward;
        });
        if (all_reversed_arcs) outer = id;
    }

    FaceStructure out;
    std::vector<int> renumber(cycles.size(), -1);
    for (int id = 0; id < static_cast<int>(cycles.size()); ++id) {
        if (id == outer) continue;
        renumber[id] = out.face_count++;
        out.face_darts.emplace_back();
        for (Dart d : cycles[id])
            if (d.edge < real_edges) out.face_darts.back().push_back(d);
    }
    out.left_face.resize(2 * real_edges);
    for (int i = 0; i < 2 * real_edges; ++i) out.left_face[i] = renumber[face[i]];
    for (int i = 0; i < n; ++i) out.boundary_face.push_back(renumber[face[Dart{real_edges + i, true}.index()]]);
    return out;
}

FaceLabeling label(const GeneralizedPlabicGraph& g) { return label(g, trips(g)); }

FaceLabeling label(const GeneralizedPlabicGraph& g, const TripDecomposition& t) {
    FaceLabeling out;
    out.faces = faces(g);
    const int nfaces = out.faces.face_count;
    const int nedges = static_cast<int>(g.edges().size());
    out.edge_labels.assign(nedges, Subset{});
    out.region_labels.assign(nfaces, Subset{});

    for (const Trip& trip : t.trips) {
        std::vector<bool> on_trip(nedges, false);
        for (Dart d : trip.darts) {
            on_trip[d.edge] = true;
            out.edge_labels[d.edge] = out.edge_labels[d.edge].with(trip.start);
        }
        // 1 = left of the trip, 2 = right of it.
        std::vector<int> side(nfaces, 0);
        std::deque<int> queue;
        auto mark = [&](int f, int s) {
            if (f < 0) return;
            if (side[f] == 0) {
                side[f] = s;
                queue.push_back(f);
            } else if (side[f] != s) {
                throw Error(ErrorCode::InconsistentLabels,
                            "a face lies on both sides of trip " + std::to_string(trip.start));
            }
        };
        for (Dart d : trip.darts) {
            mark(out.faces.left_face[d.index()], 1);
            mark(out.faces.left_face[d.reversed().index()], 2);
        }
        while (!queue.empty()) {
            const int f = queue.front();
            queue.pop_front();
            for (Dart d : out.faces.face_darts[f]) {
                if (on_trip[d.edge]) continue;
                mark(out.faces.left_face[d.reversed().index()], side[f]);
            }
        }
        for (int f = 0; f < nfaces; ++f) {
            if (side[f] == 0) {
                throw Error(ErrorCode::InconsistentLabels, "face not separated by trip " + std::to_string(trip.start));
            }
            if (side[f] == 1) out.region_labels[f] = out.region_labels[f].with(trip.start);
        }
    }
    for (int f = 1; f < nfaces; ++f) {
        if (out.region_labels[f].size() != out.region_labels[0].size()) {
            throw Error(ErrorCode::InconsistentLabels, "region labels have different cardinalities");
        }
    }
    return out;
}

HeuristicResult reduced_heuristic(const GeneralizedPlabicGraph& g) {
    if (g.has_crossings()) throw Error(ErrorCode::InvalidArgument, "reducedness heuristics need a graph without crossings");
    const TripDecomposition t = trips(g);
    const int nedges = static_cast<int>(g.edges().size());

    std::vector<bool> used(2 * nedges, false);
    for (const Trip& trip : t.trips)
        for (Dart d : trip.darts) used[d.index()] = true;
    for (int i = 0; i < 2 * nedges; ++i) {
        if (!used[i]) return {false, "closed trip through edge " + std::to_string(i / 2)};
    }

    // position[i][e]: step at which T_i crosses e, or -1.
    std::vector<std::vector<int>> position(t.trips.size(), std::vector<int>(nedges, -1));
    for (std::size_t i = 0; i < t.trips.size(); ++i) {
        const auto& darts = t.trips[i].darts;
        for (std::size_t s = 0; s < darts.size(); ++s) {
            if (position[i][darts[s].edge] >= 0) {
                return {false, "trip " + std::to_string(i + 1) + " uses edge " + std::to_string(darts[s].edge) + " twice"};
            }
            position[i][darts[s].edge] = static_cast<int>(s);
        }
    }
    for (std::size_t i = 0; i < t.trips.size(); ++i) {
        for (std::size_t j = i + 1; j < t.trips.size(); ++j) {
            std::vector<int> shared;
            for (int e = 0; e < nedges; ++e)
                if (position[i][e] >= 0 && position[j][e] >= 0) shared.push_back(e);
            for (std::size_t a = 0; a < shared.size(); ++a) {
                for (std::size_t b = a + 1; b < shared.size(); ++b) {
                    const bool order_i = position[i][shared[a]] < position[i][shared[b]];
                    const bool order_j = position[j][shared[a]] < position[j][shared[b]];
                    if (order_i == order_j) {
                        return {false, "trips " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                           " form a bad double crossing"};
                    }
                }
            }
        }
    }
    return {};
}

GeneralizedPlabicGraph resolve_crossings(const GeneralizedPlabicGraph& g) {
    GeneralizedPlabicGraph out;
    const int nv = static_cast<int>(g.vertices().size());
    std::vector<int> id(nv, -1);
    for (int v = 0; v < nv; ++v) {
        const auto& x = g.vertex(v);
        if (x.kind != VertexKind::Crossing) id[v] = out.add_vertex(x.kind, x.pos, x.label);
    }
    // Virtual edge per (vertex, original edge) slot.
    std::map<std::pair<int, int>, int> slot_edge;
    for (int v = 0; v < nv; ++v) {
        if (id[v] < 0) continue;
        for (int e0 : g.vertex(v).rotation) {
            if (slot_edge.count({v, e0})) continue;
            int cur = v;
            int e = e0;
            int next = g.other(e, cur);
            for (int guard = 0; id[next] < 0; ++guard) {
                if (guard > static_cast<int>(g.edges().size())) {
                    throw Error(ErrorCode::InvalidArgument, "closed path through crossings");
                }
                const auto& rot = g.vertex(next).rotation;
                const int idx = static_cast<int>(std::find(rot.begin(), rot.end(), e) - rot.begin());
                e = rot[(idx + 2) % 4];
                cur = next;
                next = g.other(e, cur);
            }
            const int ne = out.add_edge(id[v], id[next]);
            slot_edge[{v, e0}] = ne;
            slot_edge[{next, e}] = ne;
        }
    }
    for (int v = 0; v < nv; ++v) {
        if (id[v] < 0) continue;
        std::vector<int> rot;
        for (int e : g.vertex(v).rotation) rot.push_back(slot_edge.at({v, e}));
        out.vertex(id[v]).rotation = std::move(rot);
    }
    std::vector<int> order;
    for (int b : g.boundary_order()) order.push_back(id[b]);
    out.set_boundary_order(std::move(order));
    return out;
}

bool label_isomorphic(const GeneralizedPlabicGraph& a_in, const GeneralizedPlabicGraph& b_in, bool contract_unicolored) {
    const GeneralizedPlabicGraph a = a_in.normalized(contract_unicolored);
    const GeneralizedPlabicGraph b = b_in.normalized(contract_unicolored);
    if (a.vertices().size() != b.vertices().size() || a.edges().size() != b.edges().size() ||
        a.boundary_count() != b.boundary_count()) {
        return false;
    }
    const int n = a.boundary_count();
    auto labels_from = [](const GeneralizedPlabicGraph& g, int start_label) {
        std::vector<int> out;
        const auto& order = g.boundary_order();
        std::size_t i0 = 0;
        while (i0 < order.size() && g.vertex(order[i0]).label != start_label) ++i0;
        if (i0 == order.size()) return out;
        for (std::size_t t = 0; t < order.size(); ++t) out.push_back(g.vertex(order[(i0 + t) % order.size()]).label);
        return out;
    };
    if (n > 0 && labels_from(a, 1) != labels_from(b, 1)) return false;

    std::vector<int> vmap(a.vertices().size(), -1);
    std::vector<int> emap(a.edges().size(), -1);
    std::vector<bool> vused(b.vertices().size(), false);

    auto bind_vertex = [&](int va, int vb) {
        if (vmap[va] >= 0) return vmap[va] == vb;
        if (vused[vb]) return false;
        const auto& x = a.vertex(va);
        const auto& y = b.vertex(vb);
        if (x.kind != y.kind || x.label != y.label || x.rotation.size() != y.rotation.size()) return false;
        vmap[va] = vb;
        vused[vb] = true;
        return true;
    };

    // Queue of matched darts entering a vertex.
    std::deque<std::pair<Dart, Dart>> queue;
    auto seed = [&](int va, int vb) {
        const int ea = a.vertex(va).rotation.front();
        const int eb = b.vertex(vb).rotation.front();
        queue.emplace_back(Dart{ea, a.edge(ea).v == va}, Dart{eb, b.edge(eb).v == vb});
    };

    for (int label = 1; label <= n; ++label) {
        const int va = a.boundary_vertex(label);
        if (vmap[va] >= 0) continue;
        seed(va, b.boundary_vertex(label));
        while (!queue.empty()) {
            auto [da, db] = queue.front();
            queue.pop_front();
            const int va2 = a.head(da);
            const int vb2 = b.head(db);
            const bool fresh = vmap[va2] < 0;
            if (!bind_vertex(va2, vb2)) return false;
            const auto& ra = a.vertex(va2).rotation;
            const auto& rb = b.vertex(vb2).rotation;
            const int d = static_cast<int>(ra.size());
            const int ia = static_cast<int>(std::find(ra.begin(), ra.end(), da.edge) - ra.begin());
            const int ib = static_cast<int>(std::find(rb.begin(), rb.end(), db.edge) - rb.begin());
            for (int s = 0; s < d; ++s) {
                const int ea = ra[(ia + s) % d];
                const int eb = rb[(ib + s) % d];
                if (emap[ea] >= 0) {
                    if (emap[ea] != eb) return false;
                    continue;
                }
                emap[ea] = eb;
                if (!fresh) continue;
                queue.emplace_back(Dart{ea, a.edge(ea).u == va2}, Dart{eb, b.edge(eb).u == vb2});
            }
        }
    }
    // Components without boundary vertices are not expected in a disk graph.
    return std::find(vmap.begin(), vmap.end(), -1) == vmap.end();
}

}  // namespace kp
