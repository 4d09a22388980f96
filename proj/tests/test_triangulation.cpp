// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "kp/error.hpp"
#include "kp/positroid.hpp"
#include "kp/soliton.hpp"
#include "kp/triangulation.hpp"

using namespace kp;

namespace {

std::set<Subset> bounded_labels(const GeneralizedPlabicGraph& g) {
    const FaceLabeling lab = label(g);
    std::set<int> outer(lab.faces.boundary_face.begin(), lab.faces.boundary_face.end());
    std::set<Subset> out;
    for (int f = 0; f < lab.faces.face_count; ++f)
        if (!outer.count(f)) out.insert(lab.region_labels[f]);
    return out;
}

std::set<Subset> diagonal_labels(const Triangulation& t) {
    std::set<Subset> out;
    for (const auto& [a, b] : t.diagonals()) out.insert(Subset::of({a, b}));
    return out;
}

}  // namespace

TEST_CASE("triangulation validation") {
    CHECK_NOTHROW(Triangulation(6, {{1, 3}, {1, 4}, {1, 5}}));
    CHECK_THROWS_AS(Triangulation(6, {{1, 4}, {2, 5}, {1, 3}}), Error);  // crossing
    CHECK_THROWS_AS(Triangulation(6, {{1, 3}, {1, 4}}), Error);          // too few
    CHECK_THROWS_AS(Triangulation(6, {{1, 2}, {1, 4}, {1, 5}}), Error);  // side
    CHECK_THROWS_AS(Triangulation(6, {{1, 6}, {1, 4}, {1, 5}}), Error);  // side
}

TEST_CASE("Catalan counts and the hexagon flip graph") {
    const int catalan[] = {1, 1, 2, 5, 14, 42, 132};
    for (int n = 3; n <= 8; ++n) CHECK(enumerate_triangulations(n).size() == static_cast<std::size_t>(catalan[n - 2]));

    const auto all = enumerate_triangulations(6);
    std::set<std::vector<Diagonal>> seen;
    for (const auto& t : all) seen.insert(t.diagonals());
    CHECK(seen.size() == 14);
    // Every flip lands on another triangulation; the flip graph is 3-regular and connected.
    std::vector<std::set<int>> adj(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (const Diagonal& d : all[i].diagonals()) {
            const Triangulation f = flip(all[i], d);
            CHECK_FALSE(f.contains(d));
            const Diagonal added = *std::find_if(f.diagonals().begin(), f.diagonals().end(),
                                                 [&](Diagonal e) { return !all[i].contains(e); });
            CHECK(flip(f, added) == all[i]);
            const auto it = std::find(all.begin(), all.end(), f);
            REQUIRE(it != all.end());
            adj[i].insert(static_cast<int>(it - all.begin()));
        }
        CHECK(adj[i].size() == 3);
    }
    std::vector<int> stack{0};
    std::set<int> reached{0};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adj[v])
            if (reached.insert(w).second) stack.push_back(w);
    }
    CHECK(reached.size() == 14);
}

TEST_CASE("flipping a non-diagonal is rejected") {
    const Triangulation t(6, {{1, 3}, {1, 4}, {1, 5}});
    try {
        (void)flip(t, {2, 4});
        FAIL("expected NotADiagonal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotADiagonal);
    }
}

TEST_CASE("Psi(T) for every triangulation of small polygons") {
    for (int n = 4; n <= 8; ++n) {
        std::vector<int> expected(n);
        for (int j = 1; j <= n; ++j) expected[j - 1] = cyclic(j - 2, n);
        for (const Triangulation& t : enumerate_triangulations(n)) {
            const GeneralizedPlabicGraph g = psi(t);
            g.validate();
            for (const auto& v : g.vertices())
                if (v.kind != VertexKind::Boundary) CHECK(v.rotation.size() == 3);
            CHECK(trips(g).permutation == expected);
            CHECK(bounded_labels(g) == diagonal_labels(t));
            const FaceLabeling lab = label(g);
            for (int i = 0; i < n; ++i) {
                // Region between rays i+1 and i+2 (boundary labels i, i+1) is the polygon side.
                const int a = i + 1, b = cyclic(i + 2, n);
                CHECK(lab.region_labels[lab.faces.boundary_face[i]] == Subset::of({a, b}));
            }
            CHECK(reduced_heuristic(g).pass);
        }
    }
}

TEST_CASE("square Psi(T) has one bounded face labeled by the diagonal") {
    const GeneralizedPlabicGraph g = psi(Triangulation(4, {{1, 3}}));
    CHECK(bounded_labels(g) == std::set<Subset>{Subset::of({1, 3})});
    int internal = 0;
    for (const auto& v : g.vertices()) internal += v.kind != VertexKind::Boundary;
    CHECK(internal == 4);
}

TEST_CASE("three-term Pluecker relation on random totally positive Gr(2,6)") {
    std::mt19937_64 rng(7);
    const LeDiagram top = LeDiagram::parse("++++\n++++", 6);
    for (int trial = 0; trial < 100; ++trial) {
        const GrassmannPoint p = random_cell_point(top, rng, 1.0);
        for (int a = 1; a <= 6; ++a)
            for (int b = a + 1; b <= 6; ++b)
                for (int c = b + 1; c <= 6; ++c)
                    for (int d = c + 1; d <= 6; ++d) CHECK(exchange_check(p, a, b, c, d));
    }
}

TEST_CASE("cluster seeds give totally positive points with the requested values") {
    for (const Triangulation& t : enumerate_triangulations(6)) {
        const GrassmannPoint p = point_from_cluster(t, 5.0);
        CHECK(classify(p).positivity == Positivity::TP);
        const auto& pl = p.pluecker();
        const double scale = pl[Subset::of({1, 2})];
        for (const auto& [a, b] : t.diagonals()) CHECK(pl[Subset::of({a, b})] / scale == doctest::Approx(5.0));
        CHECK(pl[Subset::of({3, 4})] / scale == doctest::Approx(1.0));
    }
}

TEST_CASE("every hexagon Psi(T) appears as a soliton graph") {
    const std::vector<double> kv{-2.71, -1.63, -0.37, 0.52, 1.29, 2.83};
    const KappaParams kappa = validate_kappa(kv, 2);
    for (const Triangulation& t : enumerate_triangulations(6)) {
        const auto r = find_realization(t, kappa);
        REQUIRE(r.has_value());
        const ContourPlot cp = contour_plot(tropical_field(r->point, kappa), r->t);
        CHECK(label_isomorphic(soliton_graph(cp).graph, psi(t), true));
        CHECK(classify(r->point).positivity == Positivity::TP);
    }
}
