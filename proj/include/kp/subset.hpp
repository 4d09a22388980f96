// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kp {

/// A subset of [n] = {1, ..., n} stored as a bitmask (bit i-1 <-> element i).
class Subset {
public:
    static constexpr int kMaxN = 31;

    constexpr Subset() = default;

    static constexpr Subset from_mask(std::uint32_t mask) {
        Subset s;
        s.mask_ = mask;
        return s;
    }

    static Subset of(std::initializer_list<int> elements);
    static Subset of(std::span<const int> elements);

    /// Parses "1257" (n <= 9) or a comma-separated list "1,2,10".
    static Subset parse(std::string_view text);

    constexpr bool contains(int i) const { return (mask_ >> (i - 1)) & 1U; }
    constexpr Subset with(int i) const { return from_mask(mask_ | (1U << (i - 1))); }
    constexpr Subset without(int i) const { return from_mask(mask_ & ~(1U << (i - 1))); }
    constexpr int size() const { return std::popcount(mask_); }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr std::uint32_t mask() const { return mask_; }

    /// Elements in increasing order.
    std::vector<int> elements() const;

    /// Concatenated digits for n <= 9 ("1257"), comma-separated otherwise.
    std::string to_string(int n = 9) const;

    friend constexpr bool operator==(Subset a, Subset b) = default;
    friend constexpr auto operator<=>(Subset a, Subset b) { return a.mask_ <=> b.mask_; }

    friend constexpr Subset operator&(Subset a, Subset b) { return from_mask(a.mask_ & b.mask_); }
    friend constexpr Subset operator|(Subset a, Subset b) { return from_mask(a.mask_ | b.mask_); }
    friend constexpr Subset operator-(Subset a, Subset b) { return from_mask(a.mask_ & ~b.mask_); }

private:
    std::uint32_t mask_ = 0;
};

/// Lexicographic order on the sorted element lists.
bool lex_less(Subset a, Subset b);

/// Lexicographic order with respect to r < r+1 < ... < n < 1 < ... < r-1.
bool shifted_lex_less(Subset a, Subset b, int r, int n);

/// All k-subsets of [n] in lexicographic order.
std::vector<Subset> k_subsets(int n, int k);

/// Representative of i modulo n in [1, n].
constexpr int cyclic(int i, int n) { return ((i - 1) % n + n) % n + 1; }

}  // namespace kp

template <>
struct std::hash<kp::Subset> {
    std::size_t operator()(kp::Subset s) const noexcept { return std::hash<std::uint32_t>{}(s.mask()); }
};
