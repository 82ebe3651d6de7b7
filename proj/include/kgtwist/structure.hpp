#pragma once

// Cofinality, periodicity and aperiodicity of finite k-graphs.

#include "infinite_path.hpp"
#include "lattice.hpp"

#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace kgtwist {

enum class Status { Yes, No, Unknown };

inline std::string status_str(Status s) {
    switch (s) {
    case Status::Yes: return "YES_CERTIFIED";
    case Status::No: return "NO_CERTIFIED";
    default: return "UNKNOWN";
    }
}

struct CofinalityVerdict {
    Status status = Status::Unknown;
    std::string reason;
    // NO: an infinite path whose shifts never meet the vertices reachable from vertex.
    std::optional<InfinitePath> path;
    int vertex = -1;
    std::vector<int> trapped; // k = 1 only: the maximal trapped set used
};

/// Vertices w with vΛw nonempty.
inline std::set<int> reachable_set(const KGraph &g, int v) {
    std::set<int> out;
    auto seen = reachable_sources(g, v);
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.insert(static_cast<int>(i));
    return out;
}

inline CofinalityVerdict is_cofinal(const KGraph &g) {
    CofinalityVerdict res;
    if (strongly_connected(g)) {
        res.status = Status::Yes;
        res.reason = "strongly connected";
        return res;
    }
    const int n = static_cast<int>(g.vertex_count());
    if (g.k() == 1) {
        for (int v = 0; v < n; ++v) {
            auto R = reachable_set(g, v);
            std::set<int> S;
            for (int w = 0; w < n; ++w)
                if (!R.count(w)) S.insert(w);
            bool changed = true;
            while (changed) {
                changed = false;
                for (auto it = S.begin(); it != S.end();) {
                    bool fed = false;
                    for (int e : g.edges_into(*it, 0))
                        if (S.count(g.edge(e).source)) fed = true;
                    if (!fed) {
                        it = S.erase(it);
                        changed = true;
                    } else {
                        ++it;
                    }
                }
            }
            if (!S.empty()) {
                res.status = Status::No;
                res.reason = "infinite path trapped outside the vertices reachable from " +
                             g.vertex_name(v);
                res.vertex = v;
                res.trapped.assign(S.begin(), S.end());
                res.path = infinite_path_from(g, *S.begin(), [&](int w) { return S.count(w) > 0; });
                return res;
            }
        }
        res.status = Status::Yes;
        res.reason = "no trapped set avoids any reachable set";
        return res;
    }
    for (int u = 0; u < n; ++u) {
        auto D = reachable_set(g, u);
        for (int v = 0; v < n; ++v) {
            auto R = reachable_set(g, v);
            bool disjoint = true;
            for (int w : D)
                if (R.count(w)) disjoint = false;
            if (disjoint) {
                res.status = Status::No;
                res.reason = "everything below " + g.vertex_name(u) +
                             " avoids the vertices reachable from " + g.vertex_name(v);
                res.vertex = v;
                res.path = infinite_path_from(g, u);
                return res;
            }
        }
    }
    res.status = Status::Unknown;
    res.reason = "not strongly connected and k >= 2";
    return res;
}

/// Independent recheck of a non-cofinality witness (x, v): no vertex visited by
/// any shift of x is reachable from v.
inline bool verify_non_cofinal(const KGraph &g, const InfinitePath &x, int v) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::deque<int> queue{v};
    seen[static_cast<std::size_t>(v)] = true;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (const auto &e : g.edges())
            if (e.range == u && !seen[static_cast<std::size_t>(e.source)]) {
                seen[static_cast<std::size_t>(e.source)] = true;
                queue.push_back(e.source);
            }
    }
    for (const auto &y : shift_orbit(g, x))
        if (seen[static_cast<std::size_t>(y.range())]) return false;
    return true;
}

/// Decides T^{p+} x = T^{p-} x for every x in Z(v) with the window automaton.
inline bool periodic_at(const KGraph &g, const Degree &p, int v) {
    if (static_cast<int>(p.size()) != g.k()) throw Error("period has wrong dimension");
    if (is_zero(p)) return true;
    const Degree a = positive_part(p), b = negative_part(p), c = a + b;
    const std::size_t k = p.size();
    std::set<Path> seen;
    std::deque<Path> queue;
    for (auto &w : paths_from(g, v, c))
        if (seen.insert(w).second) queue.push_back(w);
    while (!queue.empty()) {
        Path w = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < k; ++i) {
            const Degree ei = unit_degree(k, i);
            for (int e : g.edges_into(w.source, static_cast<int>(i))) {
                Path lambda = compose(g, w, edge_path(g, e));
                if (!(segment(g, lambda, a, a + ei) == segment(g, lambda, b, b + ei)))
                    return false;
                Path next = segment(g, lambda, ei, c + ei);
                if (seen.insert(next).second) queue.push_back(next);
            }
        }
    }
    return true;
}

/// Independent check of periodic_at: every window of degree c + e_i whose range
/// is reachable from v occurs in some x in Z(v), so compare on all of them.
inline bool verify_periodic_at(const KGraph &g, const Degree &p, int v) {
    if (is_zero(p)) return true;
    const Degree a = positive_part(p), b = negative_part(p), c = a + b;
    for (int w : reachable_set(g, v))
        for (std::size_t i = 0; i < p.size(); ++i) {
            const Degree ei = unit_degree(p.size(), i);
            for (const auto &lambda : paths_from(g, w, c + ei))
                if (!(segment(g, lambda, a, a + ei) == segment(g, lambda, b, b + ei)))
                    return false;
        }
    return true;
}

struct PeriodicityResult {
    LatticeBasis lattice;
    Degree exhaustive_up_to;
    bool per_vertex_agreement = true;
    std::vector<Degree> accepted; // periods found in the box, sign-normalized
};

/// Per-coordinate default search bound |Λ^0| * max |vΛ^{e_i}|.
inline long long default_period_bound(const KGraph &g) {
    return static_cast<long long>(g.vertex_count() * max_edge_multiplicity(g));
}

inline bool leading_positive(const Degree &p) {
    for (auto x : p) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false;
}

/// Nonzero p with ||p||_inf <= bound, up to sign.
inline std::vector<Degree> period_candidates(std::size_t k, long long bound) {
    std::vector<Degree> out;
    for (auto &p : integer_box(k, bound))
        if (leading_positive(p)) out.push_back(p);
    return out;
}

inline PeriodicityResult per_group(const KGraph &g, long long bound) {
    if (bound < 0) throw Error("period bound must be nonnegative");
    CofinalityVerdict cof = is_cofinal(g);
    if (cof.status != Status::Yes)
        throw Error("per_group requires a cofinal graph (cofinality: " + status_str(cof.status) +
                    ")");
    const std::size_t k = static_cast<std::size_t>(g.k());
    PeriodicityResult res;
    res.exhaustive_up_to = diagonal(k, bound);
    IntMatrix gens;
    for (const auto &p : period_candidates(k, bound)) {
        int hits = 0;
        for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v)
            if (periodic_at(g, p, v)) ++hits;
        if (hits == static_cast<int>(g.vertex_count())) {
            res.accepted.push_back(p);
            gens.push_back(to_integers(p));
        } else if (hits > 0) {
            res.per_vertex_agreement = false;
        }
    }
    res.lattice = LatticeBasis::from_generators(k, gens);
    return res;
}

/// Basis of a period lattice as degree vectors.
inline std::vector<Degree> lattice_generators(const LatticeBasis &l) {
    std::vector<Degree> out;
    for (const auto &row : l.basis()) out.push_back(from_integers(row));
    return out;
}

enum class AperiodicityPolicy { Strict, TrustBound };

struct PairTestSummary {
    std::size_t pairs_checked = 0;
    std::size_t unseparated = 0;
    std::optional<std::pair<Path, Path>> first_unseparated;
};

struct AperiodicityVerdict {
    Status status = Status::Unknown;
    std::string reason;
    std::optional<Degree> period; // NO witness
    int vertex = -1;              // vertex where the witness period holds
    long long bound = 0;
    PairTestSummary pair_test;
    bool pair_test_agrees = true;
};

/// Common extension of mu and nu, searched among paths of degree d(mu) v d(nu).
inline bool have_common_extension(const KGraph &g, const Path &mu, const Path &nu) {
    if (mu.range != nu.range) return false;
    Degree top = join(mu.degree, nu.degree);
    for (const auto &lam : paths_from(g, mu.range, top))
        if (factorize(g, lam, mu.degree).first == mu && factorize(g, lam, nu.degree).first == nu)
            return true;
    return false;
}

/// Pairs mu != nu with equal range and source, d(mu) ^ d(nu) = 0 and degrees
/// bounded by `bound`; a pair is separated when some alpha with
/// d(alpha) <= sep_bound gives mu.alpha and nu.alpha no common extension.
inline PairTestSummary pair_test(const KGraph &g, long long bound, long long sep_bound) {
    PairTestSummary s;
    const std::size_t k = static_cast<std::size_t>(g.k());
    auto degrees = degrees_below(diagonal(k, bound));
    for (std::size_t i = 0; i < degrees.size(); ++i)
        for (std::size_t j = i; j < degrees.size(); ++j) {
            const auto &dm = degrees[i], &dn = degrees[j];
            if (!is_zero(meet(dm, dn))) continue;
            if (is_zero(dm) && is_zero(dn)) continue;
            for (const auto &mu : paths_of_degree(g, dm))
                for (const auto &nu : paths_from(g, mu.range, dn)) {
                    if (nu.source != mu.source) continue;
                    ++s.pairs_checked;
                    bool separated = false;
                    for (const auto &da : degrees_below(diagonal(k, sep_bound))) {
                        for (const auto &alpha : paths_from(g, mu.source, da))
                            if (!have_common_extension(g, compose(g, mu, alpha),
                                                       compose(g, nu, alpha))) {
                                separated = true;
                                break;
                            }
                        if (separated) break;
                    }
                    if (!separated) {
                        ++s.unseparated;
                        if (!s.first_unseparated) s.first_unseparated = {mu, nu};
                    }
                }
        }
    return s;
}

/// For k = 1: a cycle all of whose vertices receive exactly one edge.
inline std::optional<std::pair<int, long long>> cycle_without_entrance(const KGraph &g) {
    const int n = static_cast<int>(g.vertex_count());
    for (int v = 0; v < n; ++v) {
        int cur = v;
        for (int step = 1; step <= n; ++step) {
            const auto &in = g.edges_into(cur, 0);
            if (in.size() != 1) break;
            cur = g.edge(in.front()).source;
            if (cur == v) return std::make_pair(v, static_cast<long long>(step));
        }
    }
    return std::nullopt;
}

inline AperiodicityVerdict is_aperiodic(const KGraph &g, long long bound,
                                        AperiodicityPolicy policy = AperiodicityPolicy::Strict,
                                        long long pair_bound = 1) {
    AperiodicityVerdict res;
    res.bound = bound;
    const std::size_t k = static_cast<std::size_t>(g.k());
    const int n = static_cast<int>(g.vertex_count());
    for (const auto &p : period_candidates(k, bound)) {
        for (int v = 0; v < n; ++v)
            if (periodic_at(g, p, v)) {
                res.status = Status::No;
                res.period = p;
                res.vertex = v;
                res.reason = "T^{p+} x = T^{p-} x for every x in Z(" + g.vertex_name(v) + ")";
                break;
            }
        if (res.status == Status::No) break;
    }
    if (res.status != Status::No && k == 1) {
        if (auto cyc = cycle_without_entrance(g)) {
            res.status = Status::No;
            res.period = Degree{cyc->second};
            res.vertex = cyc->first;
            res.reason = "cycle without entrance";
        } else {
            res.status = Status::Yes;
            res.reason = "every cycle has an entrance";
        }
    }
    if (res.status == Status::Unknown) {
        if (policy == AperiodicityPolicy::TrustBound && is_cofinal(g).status == Status::Yes) {
            res.status = Status::Yes;
            res.reason = "no period with norm <= " + std::to_string(bound) +
                         " (bound trusted by policy)";
        } else {
            res.reason = "no period with norm <= " + std::to_string(bound) +
                         "; exhaustiveness not claimed";
        }
    }
    res.pair_test = pair_test(g, pair_bound, pair_bound + 1);
    bool pairs_say_aperiodic = res.pair_test.unseparated == 0;
    if (res.status == Status::Yes) res.pair_test_agrees = pairs_say_aperiodic;
    if (res.status == Status::No) res.pair_test_agrees = !pairs_say_aperiodic || res.pair_test.pairs_checked == 0;
    return res;
}

} // namespace kgtwist
