#pragma once

// Brute-force reference computations used to cross-check the library.

#include "kgtwist/kgtwist.hpp"

#include <string>
#include <vector>

namespace oracle {

using namespace kgtwist;

inline std::string fixture(const std::string &name) { return std::string(KGTWIST_FIXTURES) + "/" + name; }

/// T^{p+} x == T^{p-} x for every sampled eventually periodic x with r(x) = v.
inline bool periodic_by_shifts(const KGraph &g, const Degree &p, int v, long long pmax, long long cmax) {
    const Degree a = positive_part(p), b = negative_part(p);
    bool any = false;
    for (const auto &x : enumerate_infinite_paths(g, pmax, cmax)) {
        if (x.range() != v) continue;
        any = true;
        if (!(shift(g, x, a) == shift(g, x, b))) return false;
    }
    return any;
}

/// {p in box : sum_i p_i A[i][j] is an integer for all j}.
inline std::vector<Degree> z_omega_box(const PhaseMatrix &A, long long bound) {
    std::vector<Degree> out;
    const std::size_t r = A.size();
    for (const auto &p : integer_box(r, bound)) {
        bool ok = true;
        for (std::size_t j = 0; j < r && ok; ++j) {
            PhaseExponent s;
            for (std::size_t i = 0; i < r; ++i) s += A[i][j] * Rational(p[i]);
            ok = s.is_trivial();
        }
        if (ok) out.push_back(p);
    }
    return out;
}

/// {n in box : n . g is an integer for every generator g}.
inline std::vector<Degree> annihilator_box(const std::vector<PhaseVector> &gens, std::size_t d, long long bound) {
    std::vector<Degree> out;
    for (const auto &n : integer_box(d, bound)) {
        bool ok = true;
        for (const auto &g : gens)
            if (!g.pair(to_integers(n)).is_trivial()) {
                ok = false;
                break;
            }
        if (ok) out.push_back(n);
    }
    return out;
}

/// Hexagon condition checked by rewriting every word of three distinct colors
/// to color order along both rewrite routes, on a one-vertex graph.
inline bool hexagon_holds(const KGraph &g) {
    auto swap = [&](std::vector<int> w, std::size_t i) {
        auto [a, b] = g.swap_pair(w[i], w[i + 1]);
        w[i] = a;
        w[i + 1] = b;
        return w;
    };
    for (int x = 0; x < static_cast<int>(g.edges().size()); ++x)
        for (int y = 0; y < static_cast<int>(g.edges().size()); ++y)
            for (int z = 0; z < static_cast<int>(g.edges().size()); ++z) {
                int cx = g.edge(x).color, cy = g.edge(y).color, cz = g.edge(z).color;
                if (!(cx > cy && cy > cz)) continue;
                std::vector<int> w{x, y, z};
                auto left = swap(swap(swap(w, 0), 1), 0);
                auto right = swap(swap(swap(w, 1), 0), 1);
                if (left != right) return false;
            }
    return true;
}

} // namespace oracle
