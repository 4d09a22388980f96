// SPDX-License-Identifier: Apache-2.0
#include "kp/subset.hpp"

#include <algorithm>
#include <cctype>

#include "kp/error.hpp"

namespace kp {

Subset Subset::of(std::initializer_list<int> elements) {
    return of(std::span<const int>(elements.begin(), elements.size()));
}

Subset Subset::of(std::span<const int> elements) {
    Subset s;
    for (int e : elements) {
        if (e < 1 || e > kMaxN) {
            throw Error(ErrorCode::InvalidArgument, "subset element out of range: " + std::to_string(e));
        }
        s = s.with(e);
    }
    return s;
}

Subset Subset::parse(std::string_view text) {
    std::vector<int> elements;
    const bool comma = text.find(',') != std::string_view::npos;
    if (comma) {
        int value = -1;
        for (char c : text) {
            if (std::isdigit(static_cast<unsigned char>(c))) {
                value = (value < 0 ? 0 : value * 10) + (c - '0');
            } else if (c == ',') {
                if (value < 0) throw Error(ErrorCode::ParseError, "empty subset element");
                elements.push_back(value);
                value = -1;
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                throw Error(ErrorCode::ParseError, std::string("bad subset text: ") + std::string(text));
            }
        }
        if (value >= 0) elements.push_back(value);
    } else {
        for (char c : text) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw Error(ErrorCode::ParseError, std::string("bad subset text: ") + std::string(text));
            }
            elements.push_back(c - '0');
        }
    }
    return of(elements);
}

std::vector<int> Subset::elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
}

std::string Subset::to_string(int n) const {
    std::string out;
    for (int e : elements()) {
        if (n >= 10 && !out.empty()) out += ',';
        out += std::to_string(e);
    }
    return out;
}

bool lex_less(Subset a, Subset b) {
    const auto ea = a.elements();
    const auto eb = b.elements();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

bool shifted_lex_less(Subset a, Subset b, int r, int n) {
    auto rank = [r, n](int e) { return cyclic(e - r + 1, n); };
    auto keys = [&](Subset s) {
        std::vector<int> out;
        for (int e : s.elements()) out.push_back(rank(e));
        std::sort(out.begin(), out.end());
        return out;
    };
    const auto ka = keys(a);
    const auto kb = keys(b);
    return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
}

std::vector<Subset> k_subsets(int n, int k) {
    std::vector<Subset> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i + 1;
    while (true) {
        out.push_back(Subset::of(idx));
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i + 1) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

}  // namespace kp
