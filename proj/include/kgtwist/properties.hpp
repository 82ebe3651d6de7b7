#pragma once

// Property suites for the groupoid cocycle oracle, with counterexample capture.

#include "simplicity.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace kgtwist {

struct PropertyOutcome {
    std::string name;
    std::size_t checked = 0;
    std::size_t skipped = 0; // instances the partition could not resolve
    std::size_t violations = 0;
    std::vector<std::string> counterexamples;
    bool pass() const { return violations == 0 && checked > 0; }
    bool vacuous() const { return checked == 0; }

    void fail(std::string what) {
        ++violations;
        if (counterexamples.size() < 10) counterexamples.push_back(std::move(what));
    }
};

struct PropertyConfig {
    long long depth = 2;
    long long samples = 200;
    long long box = 2;      // |z_i| bound for Per-coordinate samples
    long long coboundary_radius = 3;
    unsigned seed = 12345;
};

namespace detail {

inline bool needs_depth(const Error &e) { return std::string(e.what()).rfind("increase depth", 0) == 0; }

/// Eventually periodic tails used to instantiate elements: one per vertex.
inline std::vector<InfinitePath> default_tails(const KGraph &g) {
    std::vector<InfinitePath> out;
    for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v) out.push_back(infinite_path_from(g, v));
    return out;
}

} // namespace detail

/// sigma(a,b) + sigma(ab,c) = sigma(b,c) + sigma(a,bc) over all composable triples
/// of elements built from path pairs of degree <= depth.
inline PropertyOutcome check_cocycle_identity(SigmaOracle &oracle, const std::vector<GroupoidElement> &elems) {
    PropertyOutcome out{"sigma 2-cocycle identity"};
    const KGraph &g = oracle.graph();
    std::map<InfinitePath, std::vector<std::size_t>> by_range;
    for (std::size_t i = 0; i < elems.size(); ++i) by_range[elems[i].range].push_back(i);
    for (const auto &a : elems) {
        auto ib = by_range.find(a.source);
        if (ib == by_range.end()) continue;
        for (std::size_t bi : ib->second) {
            const auto &b = elems[bi];
            auto ic = by_range.find(b.source);
            if (ic == by_range.end()) continue;
            for (std::size_t ci : ic->second) {
                const auto &c = elems[ci];
                try {
                    PhaseExponent lhs = oracle.sigma(a, b) + oracle.sigma(multiply(a, b), c);
                    PhaseExponent rhs = oracle.sigma(b, c) + oracle.sigma(a, multiply(b, c));
                    ++out.checked;
                    if (!lhs.congruent(rhs))
                        out.fail(element_str(g, a) + " | " + element_str(g, b) + " | " + element_str(g, c) +
                                 ": " + lhs.str() + " vs " + rhs.str());
                } catch (const Error &e) {
                    if (!detail::needs_depth(e)) throw;
                    ++out.skipped;
                }
            }
        }
    }
    return out;
}

/// The value of sigma does not depend on the extension used to resolve it.
inline PropertyOutcome check_choice_independence(SigmaOracle &oracle, const std::vector<GroupoidElement> &elems,
                                                 long long samples, std::mt19937 &rng) {
    PropertyOutcome out{"sigma choice independence"};
    const KGraph &g = oracle.graph();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
            if (elems[i].source == elems[j].range) pairs.emplace_back(i, j);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    for (const auto &[i, j] : pairs) {
        if (static_cast<long long>(out.checked) >= samples) break;
        try {
            ++out.checked;
            if (!oracle.choice_independent(elems[i], elems[j]))
                out.fail(element_str(g, elems[i]) + " | " + element_str(g, elems[j]));
        } catch (const Error &e) {
            if (!detail::needs_depth(e)) throw;
            --out.checked;
            ++out.skipped;
        }
    }
    return out;
}

/// r_a(p+q) = sigma_{r(a)}(p,q) - sigma_{s(a)}(p,q) + r_a(p) + r_a(q) on sampled a, p, q in Per.
inline PropertyOutcome check_r_formula(SigmaOracle &oracle, const std::vector<GroupoidElement> &elems,
                                       const std::vector<Degree> &basis, long long box, long long samples,
                                       std::mt19937 &rng) {
    PropertyOutcome out{"r-sigma cocycle formula"};
    if (basis.empty() || elems.empty()) return out;
    const KGraph &g = oracle.graph();
    const std::size_t k = static_cast<std::size_t>(g.k());
    std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
    std::uniform_int_distribution<long long> coord(-box, box);
    auto random_period = [&] {
        Degree z(basis.size());
        for (auto &x : z) x = coord(rng);
        return per_combination(basis, z, k);
    };
    for (long long s = 0; s < samples * 4 && static_cast<long long>(out.checked) < samples; ++s) {
        const auto &a = elems[pick(rng)];
        Degree p = random_period(), q = random_period();
        try {
            PhaseExponent lhs = oracle.r_sigma(a, p + q);
            PhaseExponent rhs = oracle.isotropy(a.range, p, q) - oracle.isotropy(a.source, p, q) +
                                oracle.r_sigma(a, p) + oracle.r_sigma(a, q);
            ++out.checked;
            if (!lhs.congruent(rhs))
                out.fail(element_str(g, a) + " p=" + degree_str(p) + " q=" + degree_str(q) + ": " + lhs.str() +
                         " vs " + rhs.str());
        } catch (const Error &e) {
            if (!detail::needs_depth(e)) throw;
            ++out.skipped;
        }
    }
    return out;
}

/// r_a(p) is an integer for isotropy a = (x, m, x) and p in Z_omega (both over a box).
inline PropertyOutcome check_z_omega_perp(SigmaOracle &oracle, const std::vector<InfinitePath> &tails,
                                          const std::vector<Degree> &basis, const std::vector<Degree> &z_ambient,
                                          long long box) {
    PropertyOutcome out{"r-sigma trivial on Z_omega over isotropy"};
    if (basis.empty() || z_ambient.empty()) return out;
    const KGraph &g = oracle.graph();
    const std::size_t k = static_cast<std::size_t>(g.k());
    for (const auto &x : tails)
        for (const auto &zm : integer_box(basis.size(), box)) {
            Degree m = per_combination(basis, zm, k);
            GroupoidElement a = isotropy_element(g, x, m);
            for (const auto &zp : integer_box(z_ambient.size(), box)) {
                Degree p = per_combination(z_ambient, zp, k);
                try {
                    PhaseExponent r = oracle.r_sigma(a, p);
                    ++out.checked;
                    if (!r.is_trivial())
                        out.fail(element_str(g, a) + " p=" + degree_str(p) + ": " + r.str());
                } catch (const Error &e) {
                    if (!detail::needs_depth(e)) throw;
                    ++out.skipped;
                }
            }
        }
    return out;
}

/// delta b_x = sigma^x - omega on the box of the given radius, with a partition deep
/// enough to resolve every isotropy element the construction touches.
inline PropertyOutcome check_coboundary(const KGraph &g, const CocycleSpec &c, const OmegaResult &omega,
                                        const std::vector<Degree> &basis, long long radius) {
    PropertyOutcome out{"isotropy cocycle cohomologous to omega"};
    if (basis.empty()) return out;
    const std::size_t k = static_cast<std::size_t>(g.k());
    Degree depth = scaled(generator_span_degree(basis, k), 2 * radius + 2);
    try {
        SigmaOracle oracle(g, c, build_partition(g, depth));
        CoboundaryResult r = coboundary_bx(omega.omega, oracle, omega.base_point, basis, radius);
        out.checked = r.pairs_checked;
        for (const auto &f : r.failures) out.fail(f);
    } catch (const Error &e) {
        if (!detail::needs_depth(e)) {
            out.fail(e.what());
        } else {
            ++out.skipped;
        }
    }
    return out;
}

struct PropertyReport {
    std::vector<PropertyOutcome> outcomes;
    Degree partition_depth;
    std::size_t elements = 0;
    bool pass() const {
        for (const auto &o : outcomes)
            if (!o.vacuous() && !o.pass()) return false;
        return true;
    }
};

/// Runs every suite on one graph and cocycle; the graph must be cofinal.
inline PropertyReport run_property_suites(const KGraph &g, const CocycleSpec &c, const PropertyConfig &cfg = {},
                                          long long period_bound = -1) {
    const std::size_t k = static_cast<std::size_t>(g.k());
    PropertyReport rep;
    std::mt19937 rng(cfg.seed);
    PeriodicityResult per = per_group(g, period_bound >= 0 ? period_bound : default_period_bound(g));
    std::vector<Degree> basis = lattice_generators(per.lattice);
    OmegaResult omega = omega_from_oracle(g, c, basis);
    std::vector<Degree> z_ambient = to_ambient(z_omega_of(omega.omega), basis, k);

    rep.partition_depth = diagonal(k, 2 * cfg.depth);
    SigmaOracle oracle(g, c, build_partition(g, rep.partition_depth));
    auto tails = detail::default_tails(g);
    auto elems = enumerate_elements(g, diagonal(k, cfg.depth), tails);
    rep.elements = elems.size();

    rep.outcomes.push_back(check_cocycle_identity(oracle, elems));
    rep.outcomes.push_back(check_choice_independence(oracle, elems, cfg.samples, rng));
    rep.outcomes.push_back(check_r_formula(oracle, elems, basis, cfg.box, cfg.samples, rng));
    rep.outcomes.push_back(check_z_omega_perp(oracle, tails, basis, z_ambient, cfg.box));
    rep.outcomes.push_back(check_coboundary(g, c, omega, basis, cfg.coboundary_radius));
    return rep;
}

} // namespace kgtwist
