#pragma once

// Eventually periodic infinite paths x = prefix . cycle . cycle . ...
//
// Values are kept in a canonical diagonal form: d(prefix) = j0*(1,..,1) and
// d(cycle) = m*(1,..,1) with j0 and m minimal. Two values are equal as infinite
// paths iff their canonical forms coincide.

#include "kgraph.hpp"

#include <set>
#include <string>
#include <vector>

namespace kgtwist {

struct InfinitePath {
    Path prefix;
    Path cycle;

    int range() const { return prefix.range; }
    long long preperiod() const { return prefix.degree.empty() ? 0 : prefix.degree[0]; }
    long long period() const { return cycle.degree[0]; }

    friend bool operator==(const InfinitePath &a, const InfinitePath &b) {
        return a.prefix == b.prefix && a.cycle == b.cycle;
    }
    friend bool operator<(const InfinitePath &a, const InfinitePath &b) {
        if (!(a.prefix == b.prefix)) return a.prefix < b.prefix;
        return a.cycle < b.cycle;
    }
};

inline Degree diagonal(std::size_t k, long long n) { return Degree(k, n); }

inline Path path_power(const KGraph &g, const Path &c, long long t) {
    Path out = vertex_path(g, c.source);
    for (long long i = 0; i < t; ++i) out = compose(g, out, c);
    return out;
}

namespace detail {

inline long long ceil_div(long long a, long long b) { return a <= 0 ? 0 : (a + b - 1) / b; }

/// x(0, N*1) for x = P . c^inf with d(c) = M*1.
inline Path diagonal_initial(const KGraph &g, const Path &P, const Path &c, long long N) {
    const long long M = c.degree[0];
    long long low = P.degree.empty() ? 0 : *std::min_element(P.degree.begin(), P.degree.end());
    long long q = ceil_div(N - low, M);
    Path X = compose(g, P, path_power(g, c, q));
    return factorize(g, X, diagonal(P.degree.size(), N)).first;
}

/// Canonical form of P . c^inf where d(c) = M*1 for some M >= 1.
inline InfinitePath canonical_from_diagonal(const KGraph &g, const Path &P, const Path &c) {
    const std::size_t k = P.degree.size();
    const long long M = c.degree[0];
    const long long J = *std::max_element(P.degree.begin(), P.degree.end());
    Path X = diagonal_initial(g, P, c, J + 2 * M);
    auto seg = [&](long long a, long long b) {
        return segment(g, X, diagonal(k, a), diagonal(k, b));
    };
    long long m = M;
    for (long long d = 1; d < M; ++d) {
        if (M % d != 0) continue;
        if (seg(J, J + M) == seg(J + d, J + d + M)) {
            m = d;
            break;
        }
    }
    long long j0 = J;
    for (long long j = 0; j < J; ++j)
        if (seg(j, J + M) == seg(j + m, J + M + m)) {
            j0 = j;
            break;
        }
    return InfinitePath{seg(0, j0), seg(j0, j0 + m)};
}

} // namespace detail

/// Canonical form of prefix . cycle^inf; every coordinate of d(cycle) must be positive.
inline InfinitePath make_infinite_path(const KGraph &g, const Path &prefix, const Path &cycle) {
    if (cycle.range != cycle.source) throw Error("cycle must have equal range and source");
    if (cycle.range != prefix.source) throw Error("cycle must start at the source of the prefix");
    for (auto d : cycle.degree)
        if (d <= 0) throw Error("cycle degree must be strictly positive in every coordinate");
    const std::size_t k = cycle.degree.size();
    // Every shift of c^inf has period d(c), so the shift by j*1 is the power of
    // its window c^inf(j*1, j*1 + d(c)); windows repeat within |Λ^{d(c)}| steps.
    const long long states = static_cast<long long>(paths_of_degree(g, cycle.degree).size());
    const long long low = *std::min_element(cycle.degree.begin(), cycle.degree.end());
    const long long high = *std::max_element(cycle.degree.begin(), cycle.degree.end());
    const long long T = detail::ceil_div(states + high, low) + 1;
    Path big = path_power(g, cycle, T);
    std::vector<Path> windows;
    long long first = -1, second = -1;
    for (long long j = 0; j <= states && first < 0; ++j) {
        Path w = segment(g, big, diagonal(k, j), diagonal(k, j) + cycle.degree);
        for (long long i = 0; i < j; ++i)
            if (windows[static_cast<std::size_t>(i)] == w) {
                first = i;
                second = j;
                break;
            }
        windows.push_back(std::move(w));
    }
    if (first < 0) throw Error("internal: no repeating window found for cycle");
    Path lead = segment(g, big, zero_degree(k), diagonal(k, first));
    Path diag = segment(g, big, diagonal(k, first), diagonal(k, second));
    return detail::canonical_from_diagonal(g, compose(g, prefix, lead), diag);
}

/// x(0, N*1) padded far enough to contain x(0, n).
inline Path initial_segment_covering(const KGraph &g, const InfinitePath &x, const Degree &n) {
    long long N = n.empty() ? 0 : *std::max_element(n.begin(), n.end());
    return detail::diagonal_initial(g, x.prefix, x.cycle, std::max<long long>(N, 0));
}

/// x(m, n) for m <= n.
inline Path segment(const KGraph &g, const InfinitePath &x, const Degree &m, const Degree &n) {
    if (!is_nonnegative(m) || !leq(m, n)) throw Error("segment: invalid bounds");
    return segment(g, initial_segment_covering(g, x, n), m, n);
}

inline Path initial(const KGraph &g, const InfinitePath &x, const Degree &n) {
    return segment(g, x, zero_degree(n.size()), n);
}

/// The vertex x(n).
inline int vertex_at(const KGraph &g, const InfinitePath &x, const Degree &n) {
    return initial(g, x, n).source;
}

/// T^n x.
inline InfinitePath shift(const KGraph &g, const InfinitePath &x, const Degree &n) {
    if (!is_nonnegative(n)) throw Error("shift: degree must be nonnegative");
    if (is_zero(n)) return x;
    const std::size_t k = n.size();
    const long long N = *std::max_element(n.begin(), n.end());
    const long long j0 = x.preperiod(), m = x.period();
    long long q = detail::ceil_div(N - j0, m);
    Path X = compose(g, x.prefix, path_power(g, x.cycle, q));
    Path rest = factorize(g, X, n).second;
    (void)k;
    return detail::canonical_from_diagonal(g, rest, x.cycle);
}

/// mu . x, requiring s(mu) = r(x).
inline InfinitePath prepend(const KGraph &g, const Path &mu, const InfinitePath &x) {
    if (mu.source != x.range()) throw Error("source/range mismatch");
    return detail::canonical_from_diagonal(g, compose(g, mu, x.prefix), x.cycle);
}

/// x starts with mu.
inline bool starts_with(const KGraph &g, const InfinitePath &x, const Path &mu) {
    if (x.range() != mu.range) return false;
    return initial(g, x, mu.degree) == mu;
}

/// The finite set {T^n x : n in N^k}.
inline std::vector<InfinitePath> shift_orbit(const KGraph &g, const InfinitePath &x) {
    std::set<InfinitePath> seen{x};
    std::vector<InfinitePath> order{x}, stack{x};
    while (!stack.empty()) {
        InfinitePath y = stack.back();
        stack.pop_back();
        for (int i = 0; i < g.k(); ++i) {
            InfinitePath z = shift(g, y, unit_degree(static_cast<std::size_t>(g.k()),
                                                     static_cast<std::size_t>(i)));
            if (seen.insert(z).second) {
                order.push_back(z);
                stack.push_back(z);
            }
        }
    }
    return order;
}

inline std::string infinite_path_str(const KGraph &g, const InfinitePath &x) {
    std::string pre = x.prefix.is_vertex() ? "" : path_str(g, x.prefix) + ".";
    return pre + "(" + path_str(g, x.cycle) + ")^inf";
}

/// Follows diagonal steps from v (first path in enumeration order whose
/// source passes the filter) until a vertex repeats.
template <class Allowed>
inline InfinitePath infinite_path_from(const KGraph &g, int v, Allowed allowed) {
    const std::size_t k = static_cast<std::size_t>(g.k());
    std::vector<int> visited{v};
    std::vector<Path> steps;
    int cur = v;
    while (true) {
        Path step;
        bool found = false;
        for (const auto &p : paths_from(g, cur, diagonal(k, 1)))
            if (allowed(p.source)) {
                step = p;
                found = true;
                break;
            }
        if (!found) throw Error("no infinite path from '" + g.vertex_name(v) +
                                "' within the allowed vertices");
        steps.push_back(step);
        cur = step.source;
        auto it = std::find(visited.begin(), visited.end(), cur);
        if (it != visited.end()) {
            std::size_t a = static_cast<std::size_t>(it - visited.begin());
            Path prefix = vertex_path(g, v), cycle = vertex_path(g, cur);
            for (std::size_t i = 0; i < a; ++i) prefix = compose(g, prefix, steps[i]);
            for (std::size_t i = a; i < steps.size(); ++i) cycle = compose(g, cycle, steps[i]);
            return make_infinite_path(g, prefix, cycle);
        }
        visited.push_back(cur);
    }
}

inline InfinitePath infinite_path_from(const KGraph &g, int v) {
    return infinite_path_from(g, v, [](int) { return true; });
}

/// All eventually periodic paths with prefix degree <= pmax and cycle degree
/// in [1, cmax]^k (componentwise), deduplicated, in sorted order.
inline std::vector<InfinitePath> enumerate_infinite_paths(const KGraph &g, long long pmax,
                                                          long long cmax) {
    const std::size_t k = static_cast<std::size_t>(g.k());
    std::set<InfinitePath> out;
    std::vector<Degree> prefix_degrees = degrees_below(diagonal(k, pmax));
    std::vector<Degree> cycle_degrees;
    for (const auto &d : degrees_below(diagonal(k, cmax - 1))) cycle_degrees.push_back(d + diagonal(k, 1));
    for (const auto &cd : cycle_degrees)
        for (const auto &c : paths_of_degree(g, cd)) {
            if (c.range != c.source) continue;
            for (const auto &pd : prefix_degrees)
                for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v)
                    for (const auto &p : paths_from(g, v, pd))
                        if (p.source == c.range) out.insert(make_infinite_path(g, p, c));
        }
    return {out.begin(), out.end()};
}

} // namespace kgtwist
