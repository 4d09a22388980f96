// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "kp/le_to_plabic.hpp"

using namespace kp;

TEST_CASE("G_-(L) for a single elbow is one edge") {
    const GeneralizedPlabicGraph g = build_g_minus(LeDiagram::parse("+", 2));
    CHECK(g.vertices().size() == 2);
    CHECK(g.edges().size() == 1);
    CHECK(trips(g).permutation == std::vector<int>{2, 1});
}

TEST_CASE("G_-(L) for the 2x2 all-plus diagram") {
    const GeneralizedPlabicGraph g = build_g_minus(LeDiagram::parse("++\n++", 4));
    g.validate();
    CHECK(g.boundary_count() == 4);
    CHECK(trips(g).permutation == std::vector<int>{3, 4, 1, 2});
    const FaceLabeling lab = label(g);
    CHECK(lab.faces.face_count == 5);
    std::vector<Subset> unbounded;
    for (int i = 0; i < 4; ++i) unbounded.push_back(lab.region_labels[lab.faces.boundary_face[(i + 3) % 4]]);
    CHECK(unbounded == std::vector<Subset>{Subset::parse("12"), Subset::parse("23"), Subset::parse("34"), Subset::parse("14")});
    CHECK(reduced_heuristic(g).pass);
}

TEST_CASE("trip permutation of G_-(L) equals pi(L) on all small diagrams") {
    int count = 0;
    for (int n = 2; n <= 7; ++n) {
        for (int k = 1; k <= std::min(3, n - 1); ++k) {
            for (const LeDiagram& le : enumerate_le_diagrams(k, n)) {
                const GeneralizedPlabicGraph g = build_g_minus(le);
                g.validate();
                CHECK(g.boundary_count() == n);
                const auto t = trips(g);
                CHECK_MESSAGE(t.permutation == derangement_of(le).one_line(), le.to_string());
                if (le.all_plus()) {
                    const FaceLabeling lab = label(g, t);
                    CHECK(lab.faces.face_count == le.plus_count() + 1);
                    CHECK(reduced_heuristic(g).pass);
                }
                ++count;
            }
        }
    }
    CHECK(count > 100);
}

TEST_CASE("unbounded regions of all-plus G_-(L) read off the necklace") {
    for (int n = 2; n <= 7; ++n) {
        for (int k = 1; k <= std::min(3, n - 1); ++k) {
            for (const LeDiagram& le : enumerate_le_diagrams(k, n)) {
                if (!le.all_plus()) continue;
                const GeneralizedPlabicGraph g = build_g_minus(le);
                const FaceLabeling lab = label(g);
                const GrassmannNecklace neck = necklace_from_derangement(derangement_of(le));
                // The face in the southeast gap is followed counterclockwise by the others.
                std::vector<Subset> read;
                for (int i = 0; i < n; ++i) read.push_back(lab.region_labels[lab.faces.boundary_face[(i + n - 1) % n]]);
                CHECK_MESSAGE(read == neck.subsets(), le.to_string());
            }
        }
    }
}
