#pragma once

// Brute-force model of the path groupoid restricted to eventually periodic
// paths: cylinder partitions, the induced groupoid 2-cocycle, isotropy
// restrictions, the conjugation characters and the coboundary on Per.

#include "cocycle.hpp"
#include "infinite_path.hpp"
#include "structure.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kgtwist {

/// (x, p, y) with T^l x = T^m y for some l - m = p.
struct GroupoidElement {
    InfinitePath range;
    Degree degree;
    InfinitePath source;

    friend bool operator==(const GroupoidElement &a, const GroupoidElement &b) {
        return a.degree == b.degree && a.range == b.range && a.source == b.source;
    }
    friend bool operator<(const GroupoidElement &a, const GroupoidElement &b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (!(a.range == b.range)) return a.range < b.range;
        return a.source < b.source;
    }
};

inline std::string element_str(const KGraph &g, const GroupoidElement &e) {
    return "(" + infinite_path_str(g, e.range) + ", " + degree_str(e.degree) + ", " +
           infinite_path_str(g, e.source) + ")";
}

/// (mu z, d(mu) - d(nu), nu z).
inline GroupoidElement element_from_pair(const KGraph &g, const Path &mu, const Path &nu,
                                         const InfinitePath &tail) {
    if (mu.source != nu.source) throw Error("pair must share a source");
    return {prepend(g, mu, tail), mu.degree - nu.degree, prepend(g, nu, tail)};
}

inline GroupoidElement unit_element(const InfinitePath &x) {
    return {x, zero_degree(x.cycle.degree.size()), x};
}

inline GroupoidElement inverse(const GroupoidElement &e) {
    return {e.source, -e.degree, e.range};
}

inline GroupoidElement multiply(const GroupoidElement &a, const GroupoidElement &b) {
    if (!(a.source == b.range)) throw Error("groupoid elements are not composable");
    return {a.range, a.degree + b.degree, b.source};
}

/// (x, p, x); requires T^{p+} x = T^{p-} x.
inline GroupoidElement isotropy_element(const KGraph &g, const InfinitePath &x, const Degree &p) {
    if (!(shift(g, x, positive_part(p)) == shift(g, x, negative_part(p))))
        throw Error("not periodic: " + degree_str(p) + " is not a period of " +
                    infinite_path_str(g, x));
    return {x, p, x};
}

inline bool in_cylinder(const KGraph &g, const GroupoidElement &e, const Path &mu,
                        const Path &nu) {
    if (e.degree != mu.degree - nu.degree) return false;
    if (!starts_with(g, e.range, mu) || !starts_with(g, e.source, nu)) return false;
    return shift(g, e.range, mu.degree) == shift(g, e.source, nu.degree);
}

/// Z(mu, nu) and Z(mu2, nu2) meet iff some alpha of degree (d(mu) v d(mu2)) - d(mu)
/// has mu alpha = mu2 alpha2 and nu alpha = nu2 alpha2.
inline bool cylinders_intersect(const KGraph &g, const Path &mu, const Path &nu, const Path &mu2,
                                const Path &nu2) {
    if (mu.degree - nu.degree != mu2.degree - nu2.degree) return false;
    if (mu.range != mu2.range || nu.range != nu2.range) return false;
    const Degree top = join(mu.degree, mu2.degree);
    const Degree a = top - mu.degree;
    for (const auto &alpha : paths_from(g, mu.source, a)) {
        Path mua = compose(g, mu, alpha);
        auto [head, alpha2] = factorize(g, mua, mu2.degree);
        if (!(head == mu2)) continue;
        if (alpha2.range != nu2.source) continue;
        if (compose(g, nu, alpha) == compose(g, nu2, alpha2)) return true;
    }
    return false;
}

using PathPair = std::pair<Path, Path>;

class Partition {
public:
    Partition() = default;
    Partition(const KGraph &g, Degree depth) : g_(&g), depth_(std::move(depth)) {}

    const std::vector<PathPair> &members() const { return members_; }
    const Degree &depth() const { return depth_; }

    bool disjoint_from_all(const Path &mu, const Path &nu) const {
        auto it = by_degree_.find(mu.degree - nu.degree);
        if (it == by_degree_.end()) return true;
        for (std::size_t i : it->second) {
            const auto &[m2, n2] = members_[i];
            if (cylinders_intersect(*g_, mu, nu, m2, n2)) return false;
        }
        return true;
    }

    void add(const Path &mu, const Path &nu) {
        found_.clear();
        by_degree_[mu.degree - nu.degree].push_back(members_.size());
        members_.emplace_back(mu, nu);
    }

    bool contains_pair(const Path &mu, const Path &nu) const {
        auto it = by_degree_.find(mu.degree - nu.degree);
        if (it == by_degree_.end()) return false;
        for (std::size_t i : it->second)
            if (members_[i].first == mu && members_[i].second == nu) return true;
        return false;
    }

    std::optional<std::size_t> find(const GroupoidElement &e) const {
        auto cached = found_.find(e);
        if (cached != found_.end()) return cached->second;
        std::optional<std::size_t> hit;
        auto it = by_degree_.find(e.degree);
        if (it != by_degree_.end()) {
            // Initial segments and shifts depend only on the degree, so compute each once.
            std::map<Degree, Path> heads_r, heads_s;
            std::map<Degree, InfinitePath> tails_r;
            auto head = [&](std::map<Degree, Path> &memo, const InfinitePath &x, const Degree &d) -> const Path & {
                auto h = memo.find(d);
                if (h == memo.end()) h = memo.emplace(d, initial(*g_, x, d)).first;
                return h->second;
            };
            for (std::size_t i : it->second) {
                const auto &[mu, nu] = members_[i];
                if (mu.range != e.range.range() || nu.range != e.source.range()) continue;
                if (!(head(heads_r, e.range, mu.degree) == mu) || !(head(heads_s, e.source, nu.degree) == nu))
                    continue;
                auto t = tails_r.find(mu.degree);
                if (t == tails_r.end()) t = tails_r.emplace(mu.degree, shift(*g_, e.range, mu.degree)).first;
                if (t->second == shift(*g_, e.source, nu.degree)) {
                    hit = i;
                    break;
                }
            }
        }
        found_.emplace(e, hit);
        return hit;
    }

    const PathPair &member(const GroupoidElement &e) const {
        auto i = find(e);
        if (!i)
            throw Error("increase depth: no cylinder of depth " + degree_str(depth_) +
                        " contains " + element_str(*g_, e));
        return members_[*i];
    }

private:
    const KGraph *g_ = nullptr;
    Degree depth_;
    std::vector<PathPair> members_;
    std::map<Degree, std::vector<std::size_t>> by_degree_;
    mutable std::map<GroupoidElement, std::optional<std::size_t>> found_;
};

/// All paths of degree <= depth (componentwise), ordered by total degree, then degree, then edges.
inline std::vector<Path> paths_up_to(const KGraph &g, const Degree &depth) {
    std::vector<Degree> degrees = degrees_below(depth);
    std::stable_sort(degrees.begin(), degrees.end(), [](const Degree &a, const Degree &b) {
        return total(a) < total(b);
    });
    std::vector<Path> out;
    for (const auto &d : degrees) {
        auto ps = paths_of_degree(g, d);
        out.insert(out.end(), ps.begin(), ps.end());
    }
    return out;
}

/// Greedy disjoint family: pinned pairs, all (λ, s(λ)), then every pair (μ, ν) with
/// s(μ) = s(ν) in graded order whenever its cylinder misses the current union.
inline Partition build_partition(const KGraph &g, const Degree &depth,
                                 const std::vector<PathPair> &pinned = {}) {
    Partition P(g, depth);
    for (std::size_t i = 0; i < pinned.size(); ++i) {
        const auto &[mu, nu] = pinned[i];
        if (mu.source != nu.source) throw Error("pinned pair does not share a source");
        for (std::size_t j = 0; j < i; ++j)
            if (cylinders_intersect(g, mu, nu, pinned[j].first, pinned[j].second))
                throw Error("pinned pairs overlap: (" + path_str(g, mu) + ", " + path_str(g, nu) +
                            ") and (" + path_str(g, pinned[j].first) + ", " +
                            path_str(g, pinned[j].second) + ")");
        P.add(mu, nu);
    }
    const std::vector<Path> paths = paths_up_to(g, depth);
    for (const auto &lam : paths) {
        Path s = vertex_path(g, lam.source);
        if (P.contains_pair(lam, s)) continue;
        if (!P.disjoint_from_all(lam, s))
            throw Error("pinned pair overlaps the cylinder of (" + path_str(g, lam) + ", " +
                        g.vertex_name(lam.source) + ")");
        P.add(lam, s);
    }
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = 0; j < paths.size(); ++j)
            if (paths[i].source == paths[j].source && !paths[j].is_vertex())
                candidates.emplace_back(i, j);
    std::stable_sort(candidates.begin(), candidates.end(), [&](const auto &a, const auto &b) {
        return total(paths[a.first].degree) + total(paths[a.second].degree) <
               total(paths[b.first].degree) + total(paths[b.second].degree);
    });
    for (const auto &[i, j] : candidates) {
        const Path &mu = paths[i], &nu = paths[j];
        if (P.contains_pair(mu, nu)) continue;
        if (P.disjoint_from_all(mu, nu)) P.add(mu, nu);
    }
    return P;
}

/// Evaluates the groupoid cocycle induced by a categorical cocycle and a partition.
class SigmaOracle {
public:
    SigmaOracle(const KGraph &g, const CocycleSpec &c, Partition P)
        : g_(g), c_(c), P_(std::move(P)) {}

    const Partition &partition() const { return P_; }
    const KGraph &graph() const { return g_; }

    /// sigma_c(a, b), resolving (alpha, beta, gamma) with the smallest admissible
    /// extension degree enlarged by `extra`.
    PhaseExponent evaluate(const GroupoidElement &a, const GroupoidElement &b,
                           const Degree &extra) const {
        const GroupoidElement ab = multiply(a, b);
        const auto &[mug, nug] = P_.member(a);
        const auto &[muh, nuh] = P_.member(b);
        const auto &[mugh, nugh] = P_.member(ab);
        const std::size_t k = static_cast<std::size_t>(g_.k());
        Degree ext = join(join(muh.degree - nug.degree, mugh.degree - mug.degree), zero_degree(k));
        ext = ext + extra;
        const Degree bdeg = nug.degree + ext - muh.degree;
        const Degree cdeg = mug.degree + ext - mugh.degree;
        Path alpha = segment(g_, a.source, nug.degree, nug.degree + ext);
        Path beta = segment(g_, b.range, muh.degree, muh.degree + bdeg);
        Path gamma = segment(g_, a.range, mugh.degree, mugh.degree + cdeg);
        return cocycle_value(c_, g_, mug, alpha) - cocycle_value(c_, g_, nug, alpha) +
               cocycle_value(c_, g_, muh, beta) - cocycle_value(c_, g_, nuh, beta) -
               cocycle_value(c_, g_, mugh, gamma) + cocycle_value(c_, g_, nugh, gamma);
    }

    PhaseExponent sigma(const GroupoidElement &a, const GroupoidElement &b) {
        auto key = std::make_pair(a, b);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        PhaseExponent v = evaluate(a, b, zero_degree(static_cast<std::size_t>(g_.k())));
        memo_.emplace(std::move(key), v);
        return v;
    }

    /// Recomputes with several larger extensions; true iff all agree mod Z.
    bool choice_independent(const GroupoidElement &a, const GroupoidElement &b) const {
        const std::size_t k = static_cast<std::size_t>(g_.k());
        PhaseExponent base = evaluate(a, b, zero_degree(k));
        std::vector<Degree> extras{diagonal(k, 1), unit_degree(k, 0), unit_degree(k, k - 1)};
        for (const auto &x : extras)
            if (!evaluate(a, b, x).congruent(base)) return false;
        return true;
    }

    /// sigma^x_c(p, q).
    PhaseExponent isotropy(const InfinitePath &x, const Degree &p, const Degree &q) {
        return sigma(isotropy_element(g_, x, p), isotropy_element(g_, x, q));
    }

    /// r^sigma_alpha(p) for alpha = (x, m, y).
    PhaseExponent r_sigma(const GroupoidElement &alpha, const Degree &p) {
        GroupoidElement e = isotropy_element(g_, alpha.source, p);
        GroupoidElement inv = inverse(alpha);
        return sigma(alpha, e) + sigma(multiply(alpha, e), inv) - sigma(alpha, inv);
    }

    std::size_t cached() const { return memo_.size(); }

private:
    const KGraph &g_;
    const CocycleSpec &c_;
    Partition P_;
    std::map<std::pair<GroupoidElement, GroupoidElement>, PhaseExponent> memo_;
};

/// Sum of z_i g_i.
inline Degree per_combination(const std::vector<Degree> &basis, const Degree &z, std::size_t k) {
    Degree out = zero_degree(k);
    for (std::size_t i = 0; i < basis.size(); ++i) out = out + scaled(basis[i], z[i]);
    return out;
}

/// Sum of (g_i^+ + g_i^-).
inline Degree generator_span_degree(const std::vector<Degree> &basis, std::size_t k) {
    Degree N = zero_degree(k);
    for (const auto &gi : basis) N = N + positive_part(gi) + negative_part(gi);
    return N;
}

/// First vertex at which every basis element is locally periodic.
inline int periodic_vertex(const KGraph &g, const std::vector<Degree> &basis) {
    for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v) {
        bool all = true;
        for (const auto &gi : basis)
            if (!periodic_at(g, gi, v)) all = false;
        if (all) return v;
    }
    throw Error("no vertex at which all period generators are locally periodic");
}

struct OmegaResult {
    BicharacterTable omega;         // strictly lower triangular representative
    PhaseMatrix antisymmetrization; // A(i,j) = sigma(g_i,g_j) - sigma(g_j,g_i)
    InfinitePath base_point;
    Degree depth;
    int vertex = -1;
};

/// Antisymmetrization of the isotropy restriction at the first diagonal path from v.
inline OmegaResult omega_from_oracle(const KGraph &g, const CocycleSpec &c,
                                     const std::vector<Degree> &basis, int v = -1,
                                     int max_escalations = 3) {
    const std::size_t k = static_cast<std::size_t>(g.k());
    const std::size_t l = basis.size();
    OmegaResult res;
    res.vertex = v >= 0 ? v : (l == 0 ? 0 : periodic_vertex(g, basis));
    res.base_point = infinite_path_from(g, res.vertex);
    res.omega.matrix = zero_phase_matrix(l);
    res.antisymmetrization = zero_phase_matrix(l);
    if (l == 0) {
        res.depth = zero_degree(k);
        return res;
    }
    Degree depth = generator_span_degree(basis, k);
    for (int attempt = 0;; ++attempt) {
        try {
            SigmaOracle oracle(g, c, build_partition(g, depth));
            for (std::size_t i = 0; i < l; ++i)
                for (std::size_t j = 0; j < l; ++j) {
                    if (i == j) continue;
                    res.antisymmetrization[i][j] =
                        oracle.isotropy(res.base_point, basis[i], basis[j]) -
                        oracle.isotropy(res.base_point, basis[j], basis[i]);
                }
            res.depth = depth;
            break;
        } catch (const Error &e) {
            if (std::string(e.what()).rfind("increase depth", 0) != 0 || attempt >= max_escalations)
                throw Error(std::string("omega_from_oracle: depth escalation exhausted: ") + e.what());
            depth = depth + diagonal(k, 1);
        }
    }
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < i; ++j) res.omega.matrix[i][j] = res.antisymmetrization[i][j];
    return res;
}

/// Entry (i, j) of the closed-form bicharacter, evaluated verbatim from one path of
/// degree N = sum (g_i^+ + g_i^-); entries whose factorization degrees exceed N are absent.
struct ClosedFormResult {
    std::vector<std::vector<std::optional<PhaseExponent>>> entries;
    Path lambda;
};

inline ClosedFormResult omega_closedform(const KGraph &g, const CocycleSpec &c,
                                         const std::vector<Degree> &basis, int v) {
    const std::size_t k = static_cast<std::size_t>(g.k()), l = basis.size();
    ClosedFormResult res;
    res.entries.assign(l, std::vector<std::optional<PhaseExponent>>(l));
    const Degree N = generator_span_degree(basis, k);
    auto lams = paths_from(g, v, N);
    if (lams.empty()) throw Error("omega_closedform: no path of degree " + degree_str(N));
    res.lambda = lams.front();
    auto term = [&](const Degree &d) -> std::optional<PhaseExponent> {
        if (!leq(d, N)) return std::nullopt;
        auto [head, tail] = factorize(g, res.lambda, d);
        return cocycle_value(c, g, head, tail);
    };
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            const Degree sum = basis[i] + basis[j];
            auto a = term(positive_part(basis[i])), b = term(negative_part(basis[i]));
            auto cc = term(positive_part(basis[j])), d = term(negative_part(basis[j]));
            auto e = term(positive_part(sum)), f = term(negative_part(sum));
            if (a && b && cc && d && e && f) res.entries[i][j] = *a - *b + *cc - *d - *e + *f;
        }
    return res;
}

/// Antisymmetrization of the closed form where both entries exist.
inline std::vector<std::vector<std::optional<PhaseExponent>>>
closedform_antisymmetrization(const ClosedFormResult &cf) {
    const std::size_t l = cf.entries.size();
    std::vector<std::vector<std::optional<PhaseExponent>>> out(
        l, std::vector<std::optional<PhaseExponent>>(l));
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j)
            if (cf.entries[i][j] && cf.entries[j][i])
                out[i][j] = *cf.entries[i][j] - *cf.entries[j][i];
    return out;
}

/// A cochain b on a box of Per (in basis coordinates) with δb = σ^x - ω.
struct CoboundaryResult {
    std::map<Degree, PhaseExponent> values;
    std::size_t pairs_checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

inline CoboundaryResult coboundary_bx(const BicharacterTable &target, SigmaOracle &oracle,
                                      const InfinitePath &x, const std::vector<Degree> &basis,
                                      long long radius) {
    const KGraph &g = oracle.graph();
    const std::size_t k = static_cast<std::size_t>(g.k()), l = basis.size();
    if (target.rank() != l) throw Error("coboundary_bx: bicharacter rank does not match Per");
    auto per = [&](const Degree &z) { return per_combination(basis, z, k); };
    auto ctilde = [&](const Degree &u, const Degree &w) {
        return oracle.isotropy(x, per(u), per(w)) - target.value(u, w);
    };
    PhaseMatrix antisym = target.antisymmetrization();
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            Degree ei = unit_degree(l, i), ej = unit_degree(l, j);
            PhaseExponent a = oracle.isotropy(x, basis[i], basis[j]) -
                              oracle.isotropy(x, basis[j], basis[i]);
            if (!a.congruent(antisym[i][j]))
                throw Error("coboundary_bx: antisymmetrization mismatch at (" +
                            std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            "); target is not cohomologous");
        }
    CoboundaryResult res;
    const long long R = 2 * radius;
    res.values[zero_degree(l)] = PhaseExponent{};
    std::vector<Degree> layer{zero_degree(l)};
    for (std::size_t i = 0; i < l; ++i) {
        const Degree ei = unit_degree(l, i);
        std::vector<Degree> next;
        for (const auto &base : layer) {
            next.push_back(base);
            Degree m = base;
            for (long long t = 1; t <= R; ++t) {
                Degree up = m + ei;
                res.values[up] = res.values[m] - ctilde(ei, m);
                next.push_back(up);
                m = up;
            }
            m = base;
            for (long long t = 1; t <= R; ++t) {
                Degree down = m - ei;
                res.values[down] = res.values[m] + ctilde(ei, down);
                next.push_back(down);
                m = down;
            }
        }
        layer = std::move(next);
    }
    for (const auto &u : integer_box(l, radius))
        for (const auto &w : integer_box(l, radius)) {
            ++res.pairs_checked;
            PhaseExponent lhs = res.values.at(u) + res.values.at(w) - res.values.at(u + w);
            if (!lhs.congruent(ctilde(u, w)) && res.failures.size() < 20)
                res.failures.push_back("δb != c~ at (" + degree_str(u) + ", " + degree_str(w) + ")");
        }
    return res;
}

/// Elements (mu z, d(mu) - d(nu), nu z) for pairs of degree <= depth and the given tails.
inline std::vector<GroupoidElement> enumerate_elements(const KGraph &g, const Degree &depth,
                                                       const std::vector<InfinitePath> &tails) {
    std::set<GroupoidElement> out;
    const auto paths = paths_up_to(g, depth);
    for (const auto &mu : paths)
        for (const auto &nu : paths) {
            if (mu.source != nu.source) continue;
            for (const auto &z : tails)
                if (z.range() == mu.source) out.insert(element_from_pair(g, mu, nu, z));
        }
    return {out.begin(), out.end()};
}

/// Entrywise comparison of the closed-form antisymmetrization with the oracle's.
struct OmegaComparison {
    ClosedFormResult closed_form;
    std::vector<std::vector<std::optional<PhaseExponent>>> closed_antisymmetrization;
    PhaseMatrix oracle_antisymmetrization;
    std::vector<std::string> discrepancies;
    std::size_t entries_compared = 0;
    bool agree() const { return discrepancies.empty(); }
};

inline OmegaComparison compare_omega_forms(const KGraph &g, const CocycleSpec &c,
                                           const std::vector<Degree> &basis, const OmegaResult &oracle) {
    OmegaComparison out;
    out.closed_form = omega_closedform(g, c, basis, oracle.vertex);
    out.closed_antisymmetrization = closedform_antisymmetrization(out.closed_form);
    out.oracle_antisymmetrization = oracle.antisymmetrization;
    const std::size_t l = basis.size();
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            const auto &cf = out.closed_antisymmetrization[i][j];
            if (!cf) continue;
            ++out.entries_compared;
            if (!cf->congruent(oracle.antisymmetrization[i][j]))
                out.discrepancies.push_back("A(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                            "): closed form " + cf->str() + ", oracle " +
                                            oracle.antisymmetrization[i][j].str());
        }
    return out;
}

} // namespace kgtwist
