// SPDX-License-Identifier: Apache-2.0
#include "kp/positroid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "kp/error.hpp"

namespace kp {

GrassmannNecklace::GrassmannNecklace(int n, std::vector<Subset> subsets) : n_(n), subsets_(std::move(subsets)) {
    if (n < 1 || static_cast<int>(subsets_.size()) != n) {
        throw Error(ErrorCode::NotANecklace, "a necklace of type (k, n) has exactly n terms");
    }
    const int k = subsets_.front().size();
    for (int i = 1; i <= n; ++i) {
        const Subset cur = (*this)[i];
        const Subset next = (*this)[i + 1];
        if (cur.size() != k || cur.mask() >> n != 0) {
            throw Error(ErrorCode::NotANecklace, "necklace terms must be " + std::to_string(k) + "-subsets of [n]");
        }
        const bool ok = cur.contains(i) ? (cur.without(i) - next).empty() && next.size() == k : next == cur;
        if (!ok) {
            throw Error(ErrorCode::NotANecklace, "exchange condition fails between I_" + std::to_string(i) + " = " +
                                                     cur.to_string(n) + " and I_" + std::to_string(cyclic(i + 1, n)) +
                                                     " = " + next.to_string(n));
        }
    }
}

bool GrassmannNecklace::irreducible() const {
    for (int i = 1; i <= n_; ++i) {
        if (!(*this)[i].contains(i) || (*this)[i + 1] == (*this)[i]) return false;
    }
    return true;
}

Derangement::Derangement(std::vector<int> one_line) : pi_(std::move(one_line)) {
    const int n = static_cast<int>(pi_.size());
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "a derangement needs n >= 2");
    std::vector<bool> seen(n + 1, false);
    for (int i = 1; i <= n; ++i) {
        const int v = pi_[i - 1];
        if (v < 1 || v > n || seen[v]) throw Error(ErrorCode::InvalidArgument, "not a permutation of [n]");
        if (v == i) throw Error(ErrorCode::InvalidArgument, "fixed point at " + std::to_string(i));
        seen[v] = true;
    }
}

Subset Derangement::excedance_positions() const {
    Subset s;
    for (int i = 1; i <= n(); ++i)
        if (pi_[i - 1] > i) s = s.with(i);
    return s;
}

std::vector<int> Derangement::inverse() const {
    std::vector<int> inv(pi_.size());
    for (int i = 1; i <= n(); ++i) inv[pi_[i - 1] - 1] = i;
    return inv;
}

std::string Derangement::to_string() const {
    std::string out;
    for (int v : pi_) {
        if (!out.empty()) out += ',';
        out += std::to_string(v);
    }
    return out;
}

LeDiagram::LeDiagram(int k, int n, std::vector<std::vector<bool>> rows) : k_(k), n_(n), rows_(std::move(rows)) {
    if (k < 1 || n <= k || static_cast<int>(rows_.size()) != k) {
        throw Error(ErrorCode::InvalidArgument, "Le-diagram needs k rows inside a k x (n-k) rectangle");
    }
    for (int r = 1; r <= k; ++r) {
        if (row_length(r) > n - k || (r > 1 && row_length(r) > row_length(r - 1))) {
            throw Error(ErrorCode::InvalidArgument, "row lengths must be weakly decreasing and at most n-k");
        }
    }
    for (int r = 1; r <= k; ++r) {
        for (int c = 1; c <= row_length(r); ++c) {
            if (plus(r, c)) continue;
            bool above = false;
            for (int q = 1; q < r; ++q) above = above || plus(q, c);
            bool left = false;
            for (int q = 1; q < c; ++q) left = left || plus(r, q);
            if (above && left) {
                throw Error(ErrorCode::InvalidArgument, "Le-property violated at row " + std::to_string(r) +
                                                            ", column " + std::to_string(c));
            }
        }
    }
}

LeDiagram LeDiagram::parse(std::string_view text, int n) {
    std::vector<std::vector<bool>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::vector<bool> row;
        for (char c : line) {
            if (c == '+') {
                row.push_back(true);
            } else if (c == '0') {
                row.push_back(false);
            } else if (c != ' ' && c != '\t' && c != '\r') {
                throw Error(ErrorCode::ParseError, std::string("unexpected character in Le-diagram: ") + c);
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(ErrorCode::ParseError, "empty Le-diagram");
    const int k = static_cast<int>(rows.size());
    if (n == 0) n = k + static_cast<int>(rows.front().size());
    return LeDiagram(k, n, std::move(rows));
}

std::string LeDiagram::to_string() const {
    std::string out;
    for (const auto& row : rows_) {
        for (bool p : row) out += p ? '+' : '0';
        out += '\n';
    }
    return out;
}

int LeDiagram::column_length(int c) const {
    int len = 0;
    for (int r = 1; r <= k_; ++r)
        if (row_length(r) >= c) ++len;
    return len;
}

int LeDiagram::plus_count() const {
    int count = 0;
    for (const auto& row : rows_) count += static_cast<int>(std::count(row.begin(), row.end(), true));
    return count;
}

bool LeDiagram::all_plus() const {
    for (const auto& row : rows_)
        if (std::find(row.begin(), row.end(), false) != row.end()) return false;
    return true;
}

bool LeDiagram::irreducible() const {
    for (int r = 1; r <= k_; ++r) {
        bool any = false;
        for (int c = 1; c <= row_length(r); ++c) any = any || plus(r, c);
        if (!any) return false;
    }
    for (int c = 1; c <= n_ - k_; ++c) {
        bool any = false;
        for (int r = 1; r <= column_length(c); ++r) any = any || plus(r, c);
        if (!any) return false;
    }
    return true;
}

int LeDiagram::row_label(int r) const { return r + (n_ - k_ - row_length(r)); }

int LeDiagram::column_label(int c) const { return column_length(c) + (n_ - k_ - c + 1); }

Subset LeDiagram::sources() const {
    Subset s;
    for (int r = 1; r <= k_; ++r) s = s.with(row_label(r));
    return s;
}

GrassmannNecklace necklace_from_matroid(const PositroidMatroid& m) {
    if (m.bases.empty()) throw Error(ErrorCode::NotANecklace, "empty matroid");
    std::vector<Subset> terms;
    for (int r = 1; r <= m.n; ++r) {
        Subset best = m.bases.front();
        for (Subset b : m.bases)
            if (shifted_lex_less(b, best, r, m.n)) best = b;
        terms.push_back(best);
    }
    return GrassmannNecklace(m.n, std::move(terms));
}

Derangement derangement_from_necklace(const GrassmannNecklace& neck) {
    if (!neck.irreducible()) throw Error(ErrorCode::NotIrreducible, "necklace has a repeated term");
    const int n = neck.n();
    std::vector<int> pi(n, 0);
    for (int i = 1; i <= n; ++i) {
        const Subset added = neck[i + 1] - neck[i].without(i);
        pi[added.elements().front() - 1] = i;
    }
    return Derangement(std::move(pi));
}

GrassmannNecklace necklace_from_derangement(const Derangement& d) {
    const int n = d.n();
    const auto inv = d.inverse();
    std::vector<Subset> terms{d.excedance_positions()};
    for (int i = 1; i < n; ++i) terms.push_back(terms.back().without(i).with(inv[i - 1]));
    return GrassmannNecklace(n, std::move(terms));
}

bool is_tp_schubert(const Derangement& d) {
    const auto inv = d.inverse();
    int descents = 0;
    for (std::size_t i = 0; i + 1 < inv.size(); ++i)
        if (inv[i] > inv[i + 1]) ++descents;
    return descents <= 1;
}

PositroidData positroid_data(const Derangement& d) {
    const int k = d.k();
    return PositroidData{necklace_from_derangement(d), d, lediagram_from_derangement(d, k, d.n())};
}

std::vector<LeDiagram> enumerate_le_diagrams(int k, int n, bool irreducible_only) {
    std::vector<LeDiagram> out;
    const int width = n - k;
    if (k < 1 || width < 1) return out;

    std::vector<int> shape(k);
    std::function<void(int)> shapes;
    std::vector<std::vector<bool>> rows;

    std::function<void(int, int)> fill = [&](int r, int c) {
        if (r == k) {
            LeDiagram le(k, n, rows);
            if (!irreducible_only || le.irreducible()) out.push_back(std::move(le));
            return;
        }
        if (c == shape[r]) {
            if (irreducible_only && std::find(rows[r].begin(), rows[r].end(), true) == rows[r].end()) return;
            fill(r + 1, 0);
            return;
        }
        rows[r].push_back(true);
        fill(r, c + 1);
        rows[r].back() = false;
        bool above = false;
        for (int q = 0; q < r; ++q) above = above || rows[q][c];
        const bool left = std::find(rows[r].begin(), rows[r].end() - 1, true) != rows[r].end() - 1;
        if (!(above && left)) fill(r, c + 1);
        rows[r].pop_back();
    };

    shapes = [&](int r) {
        if (r == k) {
            if (irreducible_only && (shape.front() != width || shape.back() < 1)) return;
            rows.assign(k, {});
            fill(0, 0);
            return;
        }
        const int max_len = r == 0 ? width : shape[r - 1];
        for (int len = max_len; len >= 0; --len) {
            shape[r] = len;
            shapes(r + 1);
        }
    };
    shapes(0);
    return out;
}

GrassmannPoint le_network_point(const LeDiagram& le, std::span<const double> weights) {
    const int k = le.k();
    const int n = le.n();
    const int width = n - k;
    if (static_cast<int>(weights.size()) != le.plus_count()) {
        throw Error(ErrorCode::InvalidArgument, "need one weight per + of the Le-diagram");
    }
    std::vector<std::vector<double>> x(k + 1, std::vector<double>(width + 1, 0.0));
    std::size_t w = 0;
    for (int r = 1; r <= k; ++r) {
        for (int c = 1; c <= le.row_length(r); ++c) {
            if (!le.plus(r, c)) continue;
            if (!(weights[w] > 0)) throw Error(ErrorCode::InvalidArgument, "Le-network weights must be positive");
            x[r][c] = weights[w++];
        }
    }
    auto west_plus = [&](int r, int c) {
        for (int q = c - 1; q >= 1; --q)
            if (le.plus(r, q)) return q;
        return 0;
    };
    auto below_plus = [&](int r, int c) {
        for (int q = r + 1; q <= k && le.row_length(q) >= c; ++q)
            if (le.plus(q, c)) return q;
        return 0;
    };

    // Path sums to every sink column: `west` arrives at a + moving west,
    // `south` leaves a + moving south.
    using Sums = std::vector<double>;
    std::function<Sums(int, int)> west;
    std::function<Sums(int, int)> south = [&](int r, int c) {
        const int r2 = below_plus(r, c);
        if (r2 == 0) {
            Sums out(width + 1, 0.0);
            out[c] = 1.0;
            return out;
        }
        Sums out = south(r2, c);
        if (const int c2 = west_plus(r2, c); c2 != 0) {
            const Sums turn = west(r2, c2);
            for (int j = 1; j <= width; ++j) out[j] += x[r2][c2] * turn[j];
        }
        return out;
    };
    west = [&](int r, int c) {
        Sums out = south(r, c);
        if (const int c2 = west_plus(r, c); c2 != 0) {
            const Sums more = west(r, c2);
            for (int j = 1; j <= width; ++j) out[j] += x[r][c2] * more[j];
        }
        return out;
    };

    const Subset src = le.sources();
    std::vector<double> a(static_cast<std::size_t>(k) * n, 0.0);
    for (int r = 1; r <= k; ++r) {
        const int i = le.row_label(r);
        a[(r - 1) * n + (i - 1)] = 1.0;
        int first = 0;
        for (int c = le.row_length(r); c >= 1 && first == 0; --c)
            if (le.plus(r, c)) first = c;
        if (first == 0) continue;
        const Sums m = west(r, first);
        for (int c = 1; c <= width; ++c) {
            if (m[c] == 0.0) continue;
            const int j = le.column_label(c);
            a[(r - 1) * n + (j - 1)] = between_sign(src, i, j) * x[r][first] * m[c];
        }
    }
    return GrassmannPoint(k, n, std::move(a));
}

GrassmannPoint random_cell_point(const LeDiagram& le, std::mt19937_64& rng, double spread) {
    std::uniform_real_distribution<double> dist(-spread, spread);
    std::vector<double> w(le.plus_count());
    for (double& v : w) v = std::exp(dist(rng));
    return le_network_point(le, w);
}

}  // namespace kp
