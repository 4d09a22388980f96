// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "kp/error.hpp"
#include "kp/le_to_plabic.hpp"
#include "kp/positroid.hpp"

using namespace kp;

namespace {

std::vector<Subset> parse_all(std::initializer_list<const char*> items) {
    std::vector<Subset> out;
    for (const char* s : items) out.push_back(Subset::parse(s));
    return out;
}

// Shifted lex-min basis by brute force, independent of the library helper.
Subset shifted_min_oracle(const std::vector<Subset>& bases, int r, int n) {
    auto key = [&](Subset s) {
        std::vector<int> shifted;
        for (int e : s.elements()) shifted.push_back((e - r + n) % n);
        std::sort(shifted.begin(), shifted.end());
        return shifted;
    };
    Subset best = bases.front();
    for (Subset s : bases)
        if (key(s) < key(best)) best = s;
    return best;
}

}  // namespace

TEST_CASE("necklace of the full Gr(2,4) matroid") {
    PositroidMatroid m{2, 4, k_subsets(4, 2)};
    const GrassmannNecklace neck = necklace_from_matroid(m);
    CHECK(neck.subsets() == parse_all({"12", "23", "34", "14"}));
    CHECK(derangement_from_necklace(neck) == Derangement({3, 4, 1, 2}));

    PositroidMatroid m49{4, 9, k_subsets(9, 4)};
    const GrassmannNecklace n49 = necklace_from_matroid(m49);
    for (int r = 1; r <= 9; ++r) {
        Subset window;
        for (int q = 0; q < 4; ++q) window = window.with(cyclic(r + q, 9));
        CHECK(n49[r] == window);
    }
}

TEST_CASE("consecutive necklaces give pi(j) = j - k") {
    for (int n = 2; n <= 9; ++n) {
        for (int k = 1; k < n; ++k) {
            const GrassmannNecklace neck = necklace_from_matroid(PositroidMatroid{k, n, k_subsets(n, k)});
            const Derangement d = derangement_from_necklace(neck);
            for (int j = 1; j <= n; ++j) CHECK(d(j) == cyclic(j - k, n));
            CHECK(is_tp_schubert(d));
            CHECK(necklace_from_derangement(d) == neck);
        }
    }
}

TEST_CASE("type (4,9) example necklace and derangement") {
    const Derangement d({6, 7, 1, 2, 8, 3, 9, 4, 5});
    const GrassmannNecklace neck = necklace_from_derangement(d);
    CHECK(neck.subsets() ==
          parse_all({"1257", "2357", "3457", "4567", "5678", "6789", "1789", "1289", "1259"}));
    CHECK(derangement_from_necklace(neck) == d);
    CHECK(d.excedance_positions() == Subset::parse("1257"));
    CHECK(necklace_from_derangement(Derangement({2, 1})).subsets() == parse_all({"1", "2"}));
}

TEST_CASE("TP Schubert test") {
    CHECK(is_tp_schubert(Derangement({3, 4, 1, 2})));
    CHECK(is_tp_schubert(Derangement({2, 1})));
    CHECK_FALSE(is_tp_schubert(Derangement({7, 4, 2, 8, 1, 3, 9, 6, 5})));
}

TEST_CASE("necklace validation") {
    CHECK_THROWS_AS(GrassmannNecklace(4, parse_all({"12", "34", "34", "14"})), Error);
    try {
        derangement_from_necklace(GrassmannNecklace(3, parse_all({"2", "2", "3"})));
        FAIL("expected NotIrreducible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotIrreducible);
    }
    CHECK_THROWS_AS(Derangement({1, 2}), Error);
}

TEST_CASE("Le-diagram parsing and the Le-property") {
    const LeDiagram le = LeDiagram::parse("++\n0+\n", 4);
    CHECK(le.k() == 2);
    CHECK(le.to_string() == "++\n0+\n");
    CHECK_THROWS_AS(LeDiagram::parse("++\n+0\n", 4), Error);
    CHECK(le.sources() == Subset::of({1, 2}));
}

TEST_CASE("small Le-diagrams map to the expected derangements") {
    CHECK(derangement_of(LeDiagram::parse("+", 2)) == Derangement({2, 1}));
    CHECK(derangement_of(LeDiagram::parse("++\n++", 4)) == Derangement({3, 4, 1, 2}));
    CHECK(lediagram_from_derangement(Derangement({3, 4, 1, 2}), 2, 4) == LeDiagram::parse("++\n++", 4));
    CHECK(lediagram_from_derangement(Derangement({2, 1}), 1, 2) == LeDiagram::parse("+", 2));
}

TEST_CASE("cell points: matroid, necklace and pipe dream agree") {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (int n = 2; n <= 7; ++n) {
        for (int k = 1; k <= std::min(3, n - 1); ++k) {
            for (const LeDiagram& le : enumerate_le_diagrams(k, n)) {
                const GrassmannPoint a = random_cell_point(le, rng);
                const Classification cls = classify(a);
                REQUIRE(cls.positivity != Positivity::Neither);
                const GrassmannNecklace neck = necklace_from_matroid(cls.matroid);
                // Cross-check the library necklace against the brute-force minimum.
                for (int r = 1; r <= n; ++r) CHECK(neck[r] == shifted_min_oracle(cls.matroid.bases, r, n));
                const Derangement d = derangement_from_necklace(neck);
                CHECK(d == derangement_of(le));
                CHECK(d.excedance_positions() == neck[1]);
                CHECK(necklace_from_derangement(d) == neck);
                CHECK(is_tp_schubert(d) == le.all_plus());
                CHECK(lediagram_from_derangement(d, k, n) == le);
                ++checked;
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("Le-diagram of the non-Schubert (4,9) cell") {
    const Derangement d({7, 4, 2, 8, 1, 3, 9, 6, 5});
    const LeDiagram le = lediagram_from_derangement(d, 4, 9);
    CHECK(derangement_of(le) == d);
    CHECK_FALSE(le.all_plus());
    CHECK(le.irreducible());
}
