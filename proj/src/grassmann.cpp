// SPDX-License-Identifier: Apache-2.0
#include "kp/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "kp/error.hpp"

namespace kp {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// Hadamard bound below which a full set of minors counts as rank deficient.
constexpr double kRankTol = 1e-12;

double to_double_scaled(const BigInt& value, long exponent) {
    if (value == 0) return 0.0;
    BigInt mag = abs(value);
    const long bits = static_cast<long>(boost::multiprecision::msb(mag)) + 1;
    long shift = 0;
    if (bits > 62) {
        shift = bits - 62;
        mag >>= static_cast<unsigned>(shift);
    }
    const double m = static_cast<double>(mag.convert_to<long long>());
    const double out = std::ldexp(m, static_cast<int>(shift + exponent));
    return value < 0 ? -out : out;
}

}  // namespace

double KappaParams::power_sum(Subset s, int power) const {
    double sum = 0.0;
    for (int j : s.elements()) sum += std::pow(values_[j - 1], power);
    return sum;
}

double KappaParams::vandermonde(Subset s) const {
    const auto e = s.elements();
    double prod = 1.0;
    for (std::size_t l = 0; l < e.size(); ++l) {
        for (std::size_t m = l + 1; m < e.size(); ++m) prod *= values_[e[m] - 1] - values_[e[l] - 1];
    }
    return prod;
}

KappaParams validate_kappa(std::span<const double> values, int k) {
    if (values.empty() || k < 1) throw Error(ErrorCode::InvalidArgument, "kappa list must be nonempty and k >= 1");
    if (static_cast<int>(values.size()) > Subset::kMaxN) {
        throw Error(ErrorCode::InvalidArgument, "too many kappa values");
    }
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (!(values[i] < values[i + 1])) {
            throw Error(ErrorCode::NotIncreasing, "kappa_" + std::to_string(i + 1) + " >= kappa_" + std::to_string(i + 2));
        }
    }
    const int n = static_cast<int>(values.size());
    double scale = 1.0;
    for (double v : values) scale = std::max(scale, std::abs(v));
    const double tol = 1e-9 * scale;

    KappaParams out;
    out.values_.assign(values.begin(), values.end());
    out.k_ = k;
    for (int d = 2; d <= std::min(k, n); ++d) {
        std::vector<std::pair<double, Subset>> sums;
        for (Subset s : k_subsets(n, d)) sums.emplace_back(out.power_sum(s, 1), s);
        std::sort(sums.begin(), sums.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i + 1 < sums.size(); ++i) {
            if (sums[i + 1].first - sums[i].first <= tol) {
                throw Error(ErrorCode::NotGeneric, "kappa sums over {" + sums[i].second.to_string(n) + "} and {" +
                                                       sums[i + 1].second.to_string(n) + "} coincide");
            }
        }
    }
    return out;
}

PlueckerVector::PlueckerVector(int k, int n, std::vector<double> values)
    : k_(k), n_(n), subsets_(k_subsets(n, k)), values_(std::move(values)) {
    if (values_.size() != subsets_.size()) {
        throw Error(ErrorCode::InvalidArgument, "Pluecker vector has wrong length");
    }
    for (std::size_t i = 0; i < subsets_.size(); ++i) index_.emplace(subsets_[i], i);
}

double PlueckerVector::operator[](Subset s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw Error(ErrorCode::InvalidArgument, "not a " + std::to_string(k_) + "-subset");
    return values_[it->second];
}

double PlueckerVector::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool PositroidMatroid::contains(Subset s) const {
    return std::binary_search(bases.begin(), bases.end(), s, lex_less);
}

double exact_minor(std::span<const double> row_major, int k, int n, Subset cols) {
    const auto c = cols.elements();
    // Write every entry as m * 2^e with integer m and rescale to a common exponent.
    int min_exp = std::numeric_limits<int>::max();
    for (int r = 0; r < k; ++r) {
        for (int j : c) {
            const double v = row_major[r * n + (j - 1)];
            if (v == 0.0) continue;
            int e = 0;
            std::frexp(v, &e);
            min_exp = std::min(min_exp, e - 53);
        }
    }
    if (min_exp == std::numeric_limits<int>::max()) return 0.0;

    std::vector<BigInt> m(static_cast<std::size_t>(k) * k);
    for (int r = 0; r < k; ++r) {
        for (int q = 0; q < k; ++q) {
            const double v = row_major[r * n + (c[q] - 1)];
            if (v == 0.0) continue;
            int e = 0;
            const double frac = std::frexp(v, &e);
            BigInt mant = static_cast<long long>(std::ldexp(frac, 53));
            mant <<= static_cast<unsigned>(e - 53 - min_exp);
            m[r * k + q] = mant;
        }
    }

    // Fraction-free Bareiss elimination.
    int sign = 1;
    BigInt prev = 1;
    for (int p = 0; p < k - 1; ++p) {
        if (m[p * k + p] == 0) {
            int swap = -1;
            for (int r = p + 1; r < k; ++r) {
                if (m[r * k + p] != 0) {
                    swap = r;
                    break;
                }
            }
            if (swap < 0) return 0.0;
            for (int q = 0; q < k; ++q) std::swap(m[p * k + q], m[swap * k + q]);
            sign = -sign;
        }
        for (int r = p + 1; r < k; ++r) {
            for (int q = p + 1; q < k; ++q) {
                m[r * k + q] = (m[r * k + q] * m[p * k + p] - m[r * k + p] * m[p * k + q]) / prev;
            }
        }
        prev = m[p * k + p];
    }
    BigInt det = m[(k - 1) * k + (k - 1)];
    if (sign < 0) det = -det;
    return to_double_scaled(det, static_cast<long>(k) * min_exp);
}

std::vector<double> minors_fast(std::span<const double> row_major, int k, int n) {
    const auto subsets = k_subsets(n, k);
    std::vector<double> out;
    out.reserve(subsets.size());
    std::vector<double> a(static_cast<std::size_t>(k) * k);
    for (Subset s : subsets) {
        const auto c = s.elements();
        for (int r = 0; r < k; ++r)
            for (int q = 0; q < k; ++q) a[r * k + q] = row_major[r * n + (c[q] - 1)];
        double det = 1.0;
        for (int p = 0; p < k; ++p) {
            int piv = p;
            for (int r = p + 1; r < k; ++r)
                if (std::abs(a[r * k + p]) > std::abs(a[piv * k + p])) piv = r;
            if (a[piv * k + p] == 0.0) {
                det = 0.0;
                break;
            }
            if (piv != p) {
                for (int q = 0; q < k; ++q) std::swap(a[p * k + q], a[piv * k + q]);
                det = -det;
            }
            det *= a[p * k + p];
            for (int r = p + 1; r < k; ++r) {
                const double f = a[r * k + p] / a[p * k + p];
                for (int q = p + 1; q < k; ++q) a[r * k + q] -= f * a[p * k + q];
            }
        }
        out.push_back(det);
    }
    return out;
}

GrassmannPoint::GrassmannPoint(int k, int n, std::vector<double> row_major)
    : k_(k), n_(n), entries_(std::move(row_major)) {
    if (k < 1 || n < k || n > Subset::kMaxN) {
        throw Error(ErrorCode::InvalidArgument, "need 1 <= k <= n <= 31");
    }
    if (entries_.size() != static_cast<std::size_t>(k) * n) {
        throw Error(ErrorCode::InvalidArgument, "matrix has wrong number of entries");
    }
    for (double v : entries_) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
    }
    std::vector<double> values;
    for (Subset s : k_subsets(n, k)) values.push_back(exact_minor(entries_, k, n, s));
    pluecker_ = PlueckerVector(k, n, std::move(values));

    double hadamard = 1.0;
    for (int r = 0; r < k; ++r) {
        double norm = 0.0;
        for (int c = 0; c < n; ++c) norm += entries_[r * n + c] * entries_[r * n + c];
        hadamard *= std::sqrt(norm);
    }
    if (pluecker_.max_abs() <= kRankTol * hadamard) {
        throw Error(ErrorCode::RankDeficient, "matrix does not have full rank " + std::to_string(k));
    }
}

GrassmannPoint GrassmannPoint::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw Error(ErrorCode::InvalidArgument, "matrix has no rows");
    const int n = static_cast<int>(rows.front().size());
    std::vector<double> flat;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::InvalidArgument, "ragged matrix rows");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return GrassmannPoint(static_cast<int>(rows.size()), n, std::move(flat));
}

std::vector<std::vector<double>> GrassmannPoint::rows() const {
    std::vector<std::vector<double>> out(k_);
    for (int r = 0; r < k_; ++r) out[r].assign(entries_.begin() + r * n_, entries_.begin() + (r + 1) * n_);
    return out;
}

const PlueckerVector& pluecker(const GrassmannPoint& point) { return point.pluecker(); }

PositroidMatroid matroid_of(const PlueckerVector& pl, double tol) {
    PositroidMatroid m{pl.k(), pl.n(), {}};
    const double cut = tol * pl.max_abs();
    for (std::size_t i = 0; i < pl.subsets().size(); ++i) {
        if (std::abs(pl.values()[i]) > cut) m.bases.push_back(pl.subsets()[i]);
    }
    return m;
}

Classification classify(const GrassmannPoint& point, double tol) {
    if (tol < 0) throw Error(ErrorCode::InvalidArgument, "tolerance must be non-negative");
    const auto& pl = point.pluecker();
    const double max = pl.max_abs();
    Classification out;
    out.matroid = {pl.k(), pl.n(), {}};
    bool sign_fixed = false;
    bool negative = false;
    for (std::size_t i = 0; i < pl.subsets().size(); ++i) {
        const double v = pl.values()[i];
        const double a = std::abs(v);
        if (a <= tol * max) continue;
        if (a <= 10.0 * tol * max) {
            throw Error(ErrorCode::AmbiguousSign, "minor " + pl.subsets()[i].to_string(pl.n()) +
                                                      " lies in the tolerance band around zero");
        }
        if (!sign_fixed) {
            out.sign = v > 0 ? 1.0 : -1.0;
            sign_fixed = true;
        }
        if (out.sign * v < 0) negative = true;
        out.matroid.bases.push_back(pl.subsets()[i]);
    }
    if (negative) {
        out.positivity = Positivity::Neither;
    } else if (out.matroid.bases.size() == pl.subsets().size()) {
        out.positivity = Positivity::TP;
    } else {
        out.positivity = Positivity::TNN;
    }
    return out;
}

int between_sign(Subset s, int a, int b) {
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    int count = 0;
    for (int e : s.elements())
        if (e > lo && e < hi) ++count;
    return count % 2 == 0 ? 1 : -1;
}

GrassmannPoint rref(const GrassmannPoint& point, double tol) {
    const auto& pl = point.pluecker();
    const auto m = matroid_of(pl, tol);
    if (m.bases.empty()) throw Error(ErrorCode::RankDeficient, "no nonzero maximal minor");
    const int k = point.k();
    const int n = point.n();
    const Subset pivots = m.bases.front();
    const auto p = pivots.elements();
    const double base = pl[pivots];
    const double cut = tol * pl.max_abs();

    std::vector<double> out(static_cast<std::size_t>(k) * n, 0.0);
    for (int r = 0; r < k; ++r) {
        for (int j = 1; j <= n; ++j) {
            if (pivots.contains(j)) {
                out[r * n + (j - 1)] = (j == p[r]) ? 1.0 : 0.0;
                continue;
            }
            const double minor = pl[pivots.without(p[r]).with(j)];
            if (std::abs(minor) <= cut) continue;
            out[r * n + (j - 1)] = between_sign(pivots, p[r], j) * minor / base;
        }
    }
    return GrassmannPoint(k, n, std::move(out));
}

bool is_irreducible(const GrassmannPoint& point, double tol) {
    const auto reduced = rref(point, tol);
    const int k = point.k();
    const int n = point.n();
    for (int c = 1; c <= n; ++c) {
        bool nonzero = false;
        for (int r = 1; r <= k; ++r) nonzero = nonzero || reduced.entry(r, c) != 0.0;
        if (!nonzero) return false;
    }
    const auto pivots = matroid_of(point.pluecker(), tol).bases.front().elements();
    for (int r = 1; r <= k; ++r) {
        bool extra = false;
        for (int c = 1; c <= n; ++c) {
            if (c == pivots[r - 1]) continue;
            extra = extra || reduced.entry(r, c) != 0.0;
        }
        if (!extra) return false;
    }
    return true;
}

}  // namespace kp
