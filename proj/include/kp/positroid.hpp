// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kp/grassmann.hpp"
#include "kp/subset.hpp"

namespace kp {

/// Cyclic sequence (I_1, ..., I_n) of k-subsets with I_{i+1} = (I_i \ {i}) u {j}
/// whenever i is in I_i, and I_{i+1} = I_i otherwise.
class GrassmannNecklace {
public:
    GrassmannNecklace(int n, std::vector<Subset> subsets);

    int n() const { return n_; }
    int k() const { return subsets_.front().size(); }
    /// 1-based, cyclic.
    Subset operator[](int i) const { return subsets_[cyclic(i, n_) - 1]; }
    const std::vector<Subset>& subsets() const { return subsets_; }
    /// Every step exchanges i for some j != i.
    bool irreducible() const;

    friend bool operator==(const GrassmannNecklace&, const GrassmannNecklace&) = default;

private:
    int n_;
    std::vector<Subset> subsets_;
};

/// Fixed-point-free permutation in one-line notation, values 1..n.
class Derangement {
public:
    explicit Derangement(std::vector<int> one_line);

    int n() const { return static_cast<int>(pi_.size()); }
    /// pi(i), 1-based and cyclic in the argument.
    int operator()(int i) const { return pi_[cyclic(i, n()) - 1]; }
    const std::vector<int>& one_line() const { return pi_; }
    Subset excedance_positions() const;
    int k() const { return excedance_positions().size(); }
    std::vector<int> inverse() const;
    std::string to_string() const;

    friend bool operator==(const Derangement&, const Derangement&) = default;

private:
    std::vector<int> pi_;
};

/// Young diagram inside a k x (n-k) rectangle with a {0,+} filling.
class LeDiagram {
public:
    /// rows[r] holds the filling of row r+1 from left to right; row lengths
    /// must be weakly decreasing.
    LeDiagram(int k, int n, std::vector<std::vector<bool>> rows);

    /// Text form: one line per row, '+' or '0', top row first.
    static LeDiagram parse(std::string_view text, int n = 0);
    std::string to_string() const;

    int k() const { return k_; }
    int n() const { return n_; }
    int row_length(int r) const { return static_cast<int>(rows_[r - 1].size()); }
    int column_length(int c) const;
    /// 1-based; (r, c) must lie inside the shape.
    bool plus(int r, int c) const { return rows_[r - 1][c - 1]; }
    bool inside(int r, int c) const { return r >= 1 && r <= k_ && c >= 1 && c <= row_length(r); }
    int plus_count() const;
    bool all_plus() const;
    bool irreducible() const;
    /// Label of the vertical boundary step at the east end of row r.
    int row_label(int r) const;
    /// Label of the horizontal boundary step at the bottom of column c.
    int column_label(int c) const;
    /// Row labels: the pivot set of the cell.
    Subset sources() const;

    friend bool operator==(const LeDiagram&, const LeDiagram&) = default;

private:
    int k_;
    int n_;
    std::vector<std::vector<bool>> rows_;
};

struct PositroidData {
    GrassmannNecklace necklace;
    Derangement derangement;
    LeDiagram le;
};

GrassmannNecklace necklace_from_matroid(const PositroidMatroid& m);
Derangement derangement_from_necklace(const GrassmannNecklace& neck);
GrassmannNecklace necklace_from_derangement(const Derangement& d);
bool is_tp_schubert(const Derangement& d);

/// Trip permutation of the pipe dream of L (crosses for 0, elbows for +).
Derangement derangement_of(const LeDiagram& le);

/// Unique irreducible Le-diagram whose derangement is d, found by pruned search
/// over fillings of the shape fixed by the excedance positions.
LeDiagram lediagram_from_derangement(const Derangement& d, int k, int n);

PositroidData positroid_data(const Derangement& d);

/// All Le-diagrams of type (k, n); with `irreducible_only` every row and
/// column must carry a +.
std::vector<LeDiagram> enumerate_le_diagrams(int k, int n, bool irreducible_only = true);

/// Point of the positroid cell of L obtained as the boundary measurement of
/// the Le-network with one positive weight per + (row-major order).
GrassmannPoint le_network_point(const LeDiagram& le, std::span<const double> weights);

/// Le-network point with weights exp(U[-spread, spread]).
GrassmannPoint random_cell_point(const LeDiagram& le, std::mt19937_64& rng, double spread = 1.0);

}  // namespace kp
