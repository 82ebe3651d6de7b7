#pragma once

// Categorical 2-cocycles on k-graphs (in exponent form) and T^l-valued 1-cocycles.

#include "kgraph.hpp"
#include "phase.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kgtwist {

using PhaseMatrix = std::vector<std::vector<PhaseExponent>>;

inline PhaseMatrix zero_phase_matrix(std::size_t n) {
    return PhaseMatrix(n, std::vector<PhaseExponent>(n));
}

/// A bicharacter on Z^l: omega(p, q) = p^T M q.
struct BicharacterTable {
    PhaseMatrix matrix;

    std::size_t rank() const { return matrix.size(); }

    PhaseExponent value(const Degree &p, const Degree &q) const {
        if (p.size() != rank() || q.size() != rank())
            throw Error("bicharacter argument has wrong dimension");
        PhaseExponent out;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (p[i] == 0) continue;
            for (std::size_t j = 0; j < rank(); ++j)
                if (q[j] != 0) out += matrix[i][j] * Rational(p[i] * q[j]);
        }
        return out;
    }

    /// M - M^T.
    PhaseMatrix antisymmetrization() const {
        PhaseMatrix a = zero_phase_matrix(rank());
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j) a[i][j] = matrix[i][j] - matrix[j][i];
        return a;
    }
};

/// Same phases entrywise modulo Z.
inline bool phase_matrices_congruent(const PhaseMatrix &a, const PhaseMatrix &b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != b[i].size()) return false;
        for (std::size_t j = 0; j < a[i].size(); ++j)
            if (!a[i][j].congruent(b[i][j])) return false;
    }
    return true;
}

/// Per-edge T^l values extended additively along paths.
struct OneCocyclePhi {
    std::size_t l = 0;
    std::map<std::string, PhaseVector> values;

    const PhaseVector &at(const std::string &edge) const {
        auto it = values.find(edge);
        if (it == values.end()) throw Error("phi has no value for edge '" + edge + "'");
        return it->second;
    }

    /// Sum of the values of the listed edges (ignores edges in skip_colors_from and up).
    PhaseVector of_path(const KGraph &g, const Path &p, int colors_below = -1) const {
        PhaseVector out(l);
        for (int e : p.edges) {
            if (colors_below >= 0 && g.edge(e).color >= colors_below) continue;
            out += at(g.edge(e).name);
        }
        return out;
    }
};

struct PullbackCocycle {
    PhaseMatrix theta; // k x k
};

struct PhiOmegaCocycle {
    int base_colors = 0;
    OneCocyclePhi phi;
    BicharacterTable omega;
};

struct TableCocycle {
    std::map<std::pair<Path, Path>, PhaseExponent> entries;
};

struct CocycleSpec {
    std::set<std::string> symbols;
    std::variant<PullbackCocycle, PhiOmegaCocycle, TableCocycle> data;

    std::string variant_name() const {
        switch (data.index()) {
        case 0: return "pullback";
        case 1: return "phi_omega";
        default: return "table";
        }
    }
};

inline PhaseExponent degree_form(const PhaseMatrix &m, const Degree &p, const Degree &q) {
    return BicharacterTable{m}.value(p, q);
}

/// The T^l part of a degree on a product graph.
inline Degree torus_part(const Degree &d, int base_colors) {
    return Degree(d.begin() + base_colors, d.end());
}

inline PhaseExponent cocycle_value(const CocycleSpec &c, const KGraph &g, const Path &mu,
                                   const Path &nu) {
    if (mu.source != nu.range) throw Error("source/range mismatch");
    if (mu.is_vertex() || nu.is_vertex()) return {};
    if (const auto *pb = std::get_if<PullbackCocycle>(&c.data)) {
        if (pb->theta.size() != static_cast<std::size_t>(g.k()))
            throw Error("theta matrix size does not match k");
        return degree_form(pb->theta, mu.degree, nu.degree);
    }
    if (const auto *po = std::get_if<PhiOmegaCocycle>(&c.data)) {
        Degree m = torus_part(mu.degree, po->base_colors);
        Degree n = torus_part(nu.degree, po->base_colors);
        if (m.size() != po->phi.l) throw Error("phi_omega: torus rank does not match graph");
        PhaseVector phi_nu = po->phi.of_path(g, nu, po->base_colors);
        return phi_nu.pair(to_integers(m)) + po->omega.value(m, n);
    }
    const auto &t = std::get<TableCocycle>(c.data);
    auto it = t.entries.find({mu, nu});
    if (it == t.entries.end())
        throw Error("cocycle table has no entry for (" + path_str(g, mu) + ", " +
                    path_str(g, nu) + ")");
    return it->second;
}

inline ValidationReport validate_phi(const OneCocyclePhi &phi, const KGraph &g) {
    ValidationReport rep;
    for (const auto &e : g.edges()) {
        auto it = phi.values.find(e.name);
        if (it == phi.values.end())
            rep.add("phi has no value for edge '" + e.name + "'");
        else if (it->second.size() != phi.l)
            rep.add("phi value for edge '" + e.name + "' has length " +
                    std::to_string(it->second.size()) + ", expected " + std::to_string(phi.l));
    }
    for (const auto &[name, v] : phi.values)
        if (!g.has_edge(name)) rep.add("phi assigns a value to unknown edge '" + name + "'");
    if (!rep.ok()) return rep;
    for (const auto &s : g.squares()) {
        const auto &f = g.edge(s.f).name, &gg = g.edge(s.g).name;
        const auto &gp = g.edge(s.gp).name, &fp = g.edge(s.fp).name;
        PhaseVector lhs = phi.at(f) + phi.at(gg), rhs = phi.at(gp) + phi.at(fp);
        if (!(lhs - rhs).is_trivial())
            rep.add("phi not square-compatible at (" + f + "," + gg + ")->(" + gp + "," + fp + ")");
    }
    return rep;
}

/// All paths with total degree <= D, grouped by range vertex.
inline std::vector<std::vector<Path>> paths_by_range(const KGraph &g, long long D) {
    std::vector<std::vector<Path>> out(g.vertex_count());
    const std::size_t k = static_cast<std::size_t>(g.k());
    for (const auto &d : degrees_below(Degree(k, D))) {
        if (total(d) > D) continue;
        for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v)
            for (auto &p : paths_from(g, v, d)) out[static_cast<std::size_t>(v)].push_back(p);
    }
    return out;
}

inline ValidationReport validate_cocycle(const CocycleSpec &c, const KGraph &g, long long D,
                                         std::size_t *triples_checked = nullptr) {
    ValidationReport rep;
    if (const auto *po = std::get_if<PhiOmegaCocycle>(&c.data)) {
        if (!is_product_with_T(g, po->base_colors))
            rep.add("phi_omega cocycle requires a product with T^l on colors " +
                    std::to_string(po->base_colors + 1) + ".." + std::to_string(g.k()));
        if (po->omega.rank() != po->phi.l)
            rep.add("omega rank does not match phi target rank");
        if (!rep.ok()) return rep;
        for (auto &issue : validate_phi(po->phi, base_graph(g, po->base_colors)).issues)
            rep.add(issue);
        if (!rep.ok()) return rep;
    }
    auto by_range = paths_by_range(g, D);
    std::size_t count = 0;
    auto report = [&](const std::string &what) {
        if (rep.issues.size() < 50) rep.add(what);
    };
    try {
        for (const auto &group : by_range)
            for (const auto &lam : group) {
                if (!cocycle_value(c, g, lam, vertex_path(g, lam.source)).is_trivial() ||
                    !cocycle_value(c, g, vertex_path(g, lam.range), lam).is_trivial())
                    report("normalization fails at " + path_str(g, lam));
                for (const auto &mu : by_range[static_cast<std::size_t>(lam.source)]) {
                    long long lm = total(lam.degree) + total(mu.degree);
                    if (lm > D) continue;
                    Path lammu = compose(g, lam, mu);
                    for (const auto &nu : by_range[static_cast<std::size_t>(mu.source)]) {
                        if (lm + total(nu.degree) > D) continue;
                        ++count;
                        Path munu = compose(g, mu, nu);
                        PhaseExponent lhs = cocycle_value(c, g, mu, nu) + cocycle_value(c, g, lam, munu);
                        PhaseExponent rhs = cocycle_value(c, g, lam, mu) + cocycle_value(c, g, lammu, nu);
                        if (!lhs.congruent(rhs))
                            report("cocycle identity fails at (" + path_str(g, lam) + ", " +
                                   path_str(g, mu) + ", " + path_str(g, nu) + ")");
                    }
                }
            }
    } catch (const Error &e) {
        rep.add(e.what());
    }
    if (triples_checked) *triples_checked = count;
    return rep;
}

/// phi(mu) - phi(nu) for paths with a common source.
inline PhaseVector phi_tilde(const OneCocyclePhi &phi, const KGraph &g, const Path &mu,
                             const Path &nu) {
    if (mu.source != nu.source) throw Error("phi_tilde: paths must share a source");
    return phi.of_path(g, mu) - phi.of_path(g, nu);
}

} // namespace kgtwist
