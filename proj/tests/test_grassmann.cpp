// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "kp/error.hpp"
#include "kp/grassmann.hpp"

using namespace kp;

namespace {

double det2(double a, double b, double c, double d) { return a * d - b * c; }

// Laplace expansion; only used as an oracle for small k.
double det_oracle(const std::vector<std::vector<double>>& m) {
    const std::size_t k = m.size();
    if (k == 1) return m[0][0];
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<std::vector<double>> minor;
        for (std::size_t r = 1; r < k; ++r) {
            std::vector<double> row;
            for (std::size_t q = 0; q < k; ++q)
                if (q != c) row.push_back(m[r][q]);
            minor.push_back(row);
        }
        total += (c % 2 == 0 ? 1.0 : -1.0) * m[0][c] * det_oracle(minor);
    }
    return total;
}

GrassmannPoint gr24() { return GrassmannPoint::from_rows({{1, 0, -1, -2}, {0, 1, 2, 3}}); }

}  // namespace

TEST_CASE("kappa validation") {
    std::vector<double> ok{-1, 1};
    CHECK(validate_kappa(ok, 1).n() == 2);

    std::vector<double> tied{-2, -1, 1, 2};
    CHECK_THROWS_AS(validate_kappa(tied, 2), Error);
    try {
        validate_kappa(tied, 2);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotGeneric);
    }

    std::vector<double> decreasing{1, 0};
    try {
        validate_kappa(decreasing, 1);
        FAIL("expected NotIncreasing");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotIncreasing);
    }

    // Brute force over pairs: -3 + 2 == -1 + 0, so this one is rejected.
    std::vector<double> collide{-3, -1, 0, 2};
    CHECK_THROWS_AS(validate_kappa(collide, 2), Error);
    std::vector<double> fine{-3, -1, 0, 2.5};
    const KappaParams kp = validate_kappa(fine, 2);
    CHECK(kp.vandermonde(Subset::of({1, 3})) == doctest::Approx(3.0));
    CHECK(kp.power_sum(Subset::of({1, 3}), 2) == doctest::Approx(9.0));
}

TEST_CASE("pluecker coordinates of the Gr(2,4) example") {
    const GrassmannPoint a = gr24();
    const auto rows = a.rows();
    for (Subset s : k_subsets(4, 2)) {
        const auto e = s.elements();
        const double oracle = det2(rows[0][e[0] - 1], rows[0][e[1] - 1], rows[1][e[0] - 1], rows[1][e[1] - 1]);
        CHECK(a.pluecker()[s] == doctest::Approx(oracle));
    }
    CHECK(a.pluecker()[Subset::of({1, 2})] == 1.0);
    CHECK(a.pluecker()[Subset::of({1, 3})] == 2.0);
    CHECK(a.pluecker()[Subset::of({1, 4})] == 3.0);
    CHECK(a.pluecker()[Subset::of({2, 3})] == 1.0);
    CHECK(a.pluecker()[Subset::of({2, 4})] == 2.0);
    CHECK(a.pluecker()[Subset::of({3, 4})] == 1.0);

    const Classification cls = classify(a);
    CHECK(cls.positivity == Positivity::TP);
    CHECK(cls.matroid.bases.size() == 6);
    CHECK(is_irreducible(a));
}

TEST_CASE("Gr(1,2) and identity blocks") {
    const GrassmannPoint a = GrassmannPoint::from_rows({{1, 1}});
    CHECK(a.pluecker()[Subset::of({1})] == 1.0);
    CHECK(a.pluecker()[Subset::of({2})] == 1.0);
    CHECK(is_irreducible(a));

    const GrassmannPoint id = GrassmannPoint::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}});
    const Classification cls = classify(id);
    CHECK(cls.positivity == Positivity::TNN);
    REQUIRE(cls.matroid.bases.size() == 1);
    CHECK(cls.matroid.bases[0] == Subset::of({1, 2}));
    CHECK_FALSE(is_irreducible(id));

    const GrassmannPoint neg = GrassmannPoint::from_rows({{0, 1, 1}, {1, 0, 1}});
    CHECK(classify(neg).positivity == Positivity::Neither);

    const GrassmannPoint scaled = rref(GrassmannPoint::from_rows({{2, 2}}));
    CHECK(scaled.entry(1, 1) == doctest::Approx(1.0));
    CHECK(scaled.entry(1, 2) == doctest::Approx(1.0));
}

TEST_CASE("rank deficiency and ambiguous signs") {
    CHECK_THROWS_AS(GrassmannPoint::from_rows({{1, 2, 3}, {2, 4, 6}}), Error);
    // Delta_13 sits inside the ambiguity band.
    const GrassmannPoint a = GrassmannPoint::from_rows({{1, 0, -5e-9}, {0, 1, 1}});
    try {
        classify(a);
        FAIL("expected AmbiguousSign");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::AmbiguousSign);
    }
}

TEST_CASE("random matrices: minors, rref and row operations") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 3;
        const int n = 6;
        std::vector<std::vector<double>> m(k, std::vector<double>(n));
        for (auto& row : m)
            for (double& v : row) v = u(rng);
        const GrassmannPoint a = GrassmannPoint::from_rows(m);
        for (Subset s : k_subsets(n, k)) {
            std::vector<std::vector<double>> sub(k);
            for (int r = 0; r < k; ++r)
                for (int c : s.elements()) sub[r].push_back(m[r][c - 1]);
            CHECK(a.pluecker()[s] == doctest::Approx(det_oracle(sub)).epsilon(1e-10));
        }

        // Left multiplication by a random nonsingular matrix keeps ratios.
        std::vector<std::vector<double>> g(k, std::vector<double>(k));
        for (auto& row : g)
            for (double& v : row) v = u(rng);
        std::vector<std::vector<double>> gm(k, std::vector<double>(n, 0.0));
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < n; ++c)
                for (int q = 0; q < k; ++q) gm[r][c] += g[r][q] * m[q][c];
        const GrassmannPoint b = GrassmannPoint::from_rows(gm);
        const Subset ref = Subset::of({1, 2, 3});
        for (Subset s : k_subsets(n, k)) {
            const double ra = a.pluecker()[s] / a.pluecker()[ref];
            const double rb = b.pluecker()[s] / b.pluecker()[ref];
            CHECK(std::abs(ra - rb) <= 1e-10 * std::max(1.0, std::abs(ra)));
        }

        // RREF: pivots are the lex-first basis; Pluecker vector proportional.
        const GrassmannPoint r = rref(a);
        Subset first;
        for (Subset s : k_subsets(n, k)) {
            if (std::abs(a.pluecker()[s]) > 1e-9 * a.pluecker().max_abs()) {
                first = s;
                break;
            }
        }
        const auto piv = first.elements();
        for (int row = 0; row < k; ++row)
            for (int q = 0; q < k; ++q) CHECK(r.entry(row + 1, piv[q]) == doctest::Approx(row == q ? 1.0 : 0.0));
        const double factor = r.pluecker()[first] / a.pluecker()[first];
        for (Subset s : k_subsets(n, k))
            CHECK(r.pluecker()[s] == doctest::Approx(factor * a.pluecker()[s]).epsilon(1e-9));
    }
}

TEST_CASE("between sign") {
    const Subset s = Subset::of({1, 3, 5});
    CHECK(between_sign(s, 1, 6) == 1);
    CHECK(between_sign(s, 1, 4) == -1);
    CHECK(between_sign(s, 5, 2) == -1);
}
