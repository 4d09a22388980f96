// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "kp/grassmann.hpp"
#include "kp/plabic.hpp"

namespace kp {

using Diagonal = std::pair<int, int>;

/// Triangulation of a convex n-gon with vertices 1..n counterclockwise.
class Triangulation {
public:
    /// Validates n-3 pairwise non-crossing diagonals.
    Triangulation(int n, std::vector<Diagonal> diagonals);

    int n() const { return n_; }
    /// Sorted, each with first < second.
    const std::vector<Diagonal>& diagonals() const { return diagonals_; }
    bool contains(Diagonal d) const;
    /// Triangles as increasing vertex triples.
    std::vector<std::array<int, 3>> triangles() const;

    friend bool operator==(const Triangulation&, const Triangulation&) = default;

private:
    int n_;
    std::vector<Diagonal> diagonals_;
};

bool crosses(Diagonal a, Diagonal b);

/// Replaces {a,c} by the other diagonal {b,d} of its quadrilateral.
Triangulation flip(const Triangulation& t, Diagonal d);

std::vector<Triangulation> enumerate_triangulations(int n);

/// Psi(T): black vertices in triangles, white polygon vertices on diagonals,
/// black ear tips merged into their triangle, one ray per polygon vertex and
/// white vertices of degree > 3 split into trivalent fans. The ray at polygon
/// vertex i ends at the boundary vertex labeled i - 1 (mod n), which makes the
/// unbounded region between vertices i and i+1 carry the label {i, i+1}.
GeneralizedPlabicGraph psi(const Triangulation& t);

/// D_ac D_bd = D_ab D_cd + D_ad D_bc within `rel_tol` relative.
bool exchange_check(const GrassmannPoint& point, int a, int b, int c, int d, double rel_tol = 1e-10);

/// Gr(2,n) point with prescribed positive Pluecker coordinates on the
/// diagonals of t (in the order of t.diagonals()) and on the sides {i,i+1}
/// (i = 1..n; empty means all 1). The other coordinates follow from
/// exchange relations.
GrassmannPoint point_from_cluster(const Triangulation& t, const std::vector<double>& diagonal_values,
                                  const std::vector<double>& side_values = {});
GrassmannPoint point_from_cluster(const Triangulation& t, double diagonal_value);

struct Realization {
    GrassmannPoint point;
    double t;
    std::vector<double> diagonal_values;
    std::vector<double> side_values;
};

/// Bounded, deterministic search for a contour plot whose soliton graph
/// matches Psi(T) after merging equal-colored neighbors: a uniform sweep of
/// the diagonal coordinates first, then `random_trials` seeded draws of
/// log-coordinates, each scanned over t in [-10, 10] in steps of 0.5.
std::optional<Realization> find_realization(const Triangulation& tri, const KappaParams& kappa,
                                            int random_trials = 400, unsigned seed = 1);

}  // namespace kp
