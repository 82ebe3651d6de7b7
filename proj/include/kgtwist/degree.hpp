#pragma once

// Degree vectors in N^k and integer vectors in Z^k.

#include "numeric.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace kgtwist {

using Degree = std::vector<long long>;

inline Degree zero_degree(std::size_t k) { return Degree(k, 0); }

inline Degree unit_degree(std::size_t k, std::size_t i) {
    Degree d(k, 0);
    d[i] = 1;
    return d;
}

inline void check_same_size(const Degree &a, const Degree &b) {
    if (a.size() != b.size()) throw Error("degree dimension mismatch");
}

inline Degree operator+(const Degree &a, const Degree &b) {
    check_same_size(a, b);
    Degree r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Degree operator-(const Degree &a, const Degree &b) {
    check_same_size(a, b);
    Degree r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Degree operator-(const Degree &a) {
    Degree r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline Degree scaled(const Degree &a, long long s) {
    Degree r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

/// Componentwise maximum.
inline Degree join(const Degree &a, const Degree &b) {
    check_same_size(a, b);
    Degree r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

/// Componentwise minimum.
inline Degree meet(const Degree &a, const Degree &b) {
    check_same_size(a, b);
    Degree r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
    return r;
}

inline bool leq(const Degree &a, const Degree &b) {
    check_same_size(a, b);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Degree positive_part(const Degree &m) { return join(m, zero_degree(m.size())); }
inline Degree negative_part(const Degree &m) { return join(-m, zero_degree(m.size())); }

inline bool is_zero(const Degree &m) {
    return std::all_of(m.begin(), m.end(), [](long long x) { return x == 0; });
}
inline bool is_nonnegative(const Degree &m) {
    return std::all_of(m.begin(), m.end(), [](long long x) { return x >= 0; });
}

inline long long total(const Degree &m) {
    long long s = 0;
    for (auto x : m) s += x;
    return s;
}

inline long long max_norm(const Degree &m) {
    long long s = 0;
    for (auto x : m) s = std::max(s, x < 0 ? -x : x);
    return s;
}

inline IntVector to_integers(const Degree &m) {
    IntVector r;
    for (auto x : m) r.emplace_back(x);
    return r;
}

inline Degree from_integers(const IntVector &v) {
    Degree r;
    for (const auto &x : v) r.push_back(static_cast<long long>(x));
    return r;
}

inline std::string degree_str(const Degree &m) {
    std::string out = "(";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(m[i]);
    }
    return out + ")";
}

/// All integer vectors with |m_i| <= bound, in lexicographic order.
inline std::vector<Degree> integer_box(std::size_t k, long long bound) {
    std::vector<Degree> out;
    Degree cur(k, -bound);
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (cur[i] < bound) {
                ++cur[i];
                for (std::size_t j = i + 1; j < k; ++j) cur[j] = -bound;
                break;
            }
            if (i == 0) return out;
        }
        if (k == 0) return out;
    }
}

/// All n in N^k with n <= bound componentwise, in lexicographic order.
inline std::vector<Degree> degrees_below(const Degree &bound) {
    std::vector<Degree> out;
    const std::size_t k = bound.size();
    Degree cur(k, 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        bool advanced = false;
        while (i > 0) {
            --i;
            if (cur[i] < bound[i]) {
                ++cur[i];
                for (std::size_t j = i + 1; j < k; ++j) cur[j] = 0;
                advanced = true;
                break;
            }
        }
        if (!advanced) return out;
    }
}

} // namespace kgtwist
