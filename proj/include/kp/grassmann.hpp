// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "kp/subset.hpp"

namespace kp {

/// Relative zero threshold for Pluecker coordinates. A minor is zero when
/// |D_I| <= tol * max_J |D_J|; values in (tol, 10 tol] * max are ambiguous.
inline constexpr double kDefaultTol = 1e-9;

/// Strictly increasing, generic parameters kappa_1 < ... < kappa_n.
class KappaParams {
public:
    int n() const { return static_cast<int>(values_.size()); }
    int k() const { return k_; }
    /// 1-based access.
    double operator[](int i) const { return values_[i - 1]; }
    const std::vector<double>& values() const { return values_; }

    /// Sum of kappa_j^power over j in s.
    double power_sum(Subset s, int power) const;
    /// prod_{l<m} (kappa_{j_m} - kappa_{j_l}) over the elements of s.
    double vandermonde(Subset s) const;

private:
    friend KappaParams validate_kappa(std::span<const double> values, int k);
    std::vector<double> values_;
    int k_ = 1;
};

/// Rejects non-increasing input (NotIncreasing) and coinciding d-element sums
/// for 2 <= d <= k (NotGeneric).
KappaParams validate_kappa(std::span<const double> values, int k);

/// Maximal minors of a k x n matrix, indexed by k-subsets in lexicographic order.
class PlueckerVector {
public:
    PlueckerVector() = default;
    PlueckerVector(int k, int n, std::vector<double> values);

    int k() const { return k_; }
    int n() const { return n_; }
    const std::vector<Subset>& subsets() const { return subsets_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](Subset s) const;
    double max_abs() const;

private:
    int k_ = 0;
    int n_ = 0;
    std::vector<Subset> subsets_;
    std::vector<double> values_;
    std::unordered_map<Subset, std::size_t> index_;
};

struct PositroidMatroid {
    int k = 0;
    int n = 0;
    /// Lexicographically sorted.
    std::vector<Subset> bases;

    bool contains(Subset s) const;
};

/// A point of Gr(k, n) represented by a full-rank k x n matrix. The Pluecker
/// vector is computed once, exactly for the given binary floating-point entries.
class GrassmannPoint {
public:
    GrassmannPoint(int k, int n, std::vector<double> row_major);
    static GrassmannPoint from_rows(const std::vector<std::vector<double>>& rows);

    int k() const { return k_; }
    int n() const { return n_; }
    /// 1-based (row, column).
    double entry(int r, int c) const { return entries_[(r - 1) * n_ + (c - 1)]; }
    const std::vector<double>& entries() const { return entries_; }
    std::vector<std::vector<double>> rows() const;
    const PlueckerVector& pluecker() const { return pluecker_; }

private:
    int k_;
    int n_;
    std::vector<double> entries_;
    PlueckerVector pluecker_;
};

const PlueckerVector& pluecker(const GrassmannPoint& point);

/// Determinant of the columns `cols` of a row-major k x n matrix, computed
/// exactly from the binary expansion of the entries and rounded once.
double exact_minor(std::span<const double> row_major, int k, int n, Subset cols);

/// All maximal minors through partial-pivot LU in double precision. Cheap path
/// for inner optimization loops.
std::vector<double> minors_fast(std::span<const double> row_major, int k, int n);

enum class Positivity { TP, TNN, Neither };

struct Classification {
    Positivity positivity = Positivity::Neither;
    PositroidMatroid matroid;
    /// +1 or -1: factor applied so that the lexicographically first nonzero minor is positive.
    double sign = 1.0;
};

Classification classify(const GrassmannPoint& point, double tol = kDefaultTol);

/// Bases of the point under the zero band, without the sign checks of classify.
PositroidMatroid matroid_of(const PlueckerVector& pl, double tol = kDefaultTol);

/// Reduced row echelon representative. Pivots are the lexicographically first
/// basis; entries come from Cramer's rule on the exact minors.
GrassmannPoint rref(const GrassmannPoint& point, double tol = kDefaultTol);

bool is_irreducible(const GrassmannPoint& point, double tol = kDefaultTol);

/// Sign (-1)^{#elements of s strictly between a and b}.
int between_sign(Subset s, int a, int b);

}  // namespace kp
