#pragma once

// Simplicity decisions for twisted k-graph algebras, with checkable certificates.

#include "groupoid.hpp"
#include "lattice.hpp"

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace kgtwist {

inline LatticeBasis z_omega_of(const BicharacterTable &omega) {
    return annihilator_lattice(omega.antisymmetrization(), omega.rank());
}

inline bool nc_torus_simple(const BicharacterTable &omega) { return z_omega_of(omega).is_zero(); }

/// Z_omega basis (Per coordinates) mapped into Z^k.
inline std::vector<Degree> to_ambient(const LatticeBasis &z, const std::vector<Degree> &per_basis,
                                      std::size_t k) {
    std::vector<Degree> out;
    for (const auto &row : z.basis()) out.push_back(per_combination(per_basis, from_integers(row), k));
    return out;
}

/// phi(e) paired with the torus part of each Z_omega vector.
inline PhaseVector project_phase(const PhaseVector &phi_value, const std::vector<Degree> &z_ambient,
                                 int base_colors) {
    PhaseVector out(z_ambient.size());
    for (std::size_t j = 0; j < z_ambient.size(); ++j)
        out[j] = phi_value.pair(to_integers(torus_part(z_ambient[j], base_colors)));
    return out;
}

struct OrbitGenerators {
    std::vector<PhaseVector> generators;
    bool stabilized = false;
    std::size_t pairs_examined = 0;
};

namespace detail {

/// Integer encoding of the subgroup of T^d generated by gens (plus Z^d).
inline LatticeBasis phase_group_lattice(const std::vector<PhaseVector> &gens, std::size_t d,
                                        const std::vector<std::string> &symbols, const Integer &L) {
    const std::size_t w = d * (1 + symbols.size());
    IntMatrix rows;
    for (const auto &g : gens) {
        IntVector row(w, 0);
        for (std::size_t j = 0; j < d; ++j) {
            row[j * (1 + symbols.size())] = numerator_of(g[j].rational_part() * Rational(L));
            for (std::size_t s = 0; s < symbols.size(); ++s)
                row[j * (1 + symbols.size()) + 1 + s] =
                    numerator_of(g[j].coefficient(symbols[s]) * Rational(L));
        }
        rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < d; ++j) {
        IntVector row(w, 0);
        row[j * (1 + symbols.size())] = L;
        rows.push_back(std::move(row));
    }
    return LatticeBasis::from_generators(w, rows);
}

} // namespace detail

/// phi(mu) - phi(nu) projected to Z_omega for base paths with equal range and source
/// and lengths up to `bound`; requires a strongly connected base graph.
inline OrbitGenerators orbit_phase_generators(const KGraph &base, const OneCocyclePhi &phi,
                                              const std::vector<Degree> &z_ambient, int base_colors,
                                              long long bound) {
    if (!strongly_connected(base))
        throw Error("orbit_phase_generators requires a strongly connected graph");
    const std::size_t d = z_ambient.size();
    const std::size_t kb = static_cast<std::size_t>(base.k());
    auto collect = [&](long long B, std::size_t *count) {
        std::set<PhaseVector> out;
        auto paths = paths_up_to(base, diagonal(kb, B));
        for (const auto &mu : paths)
            for (const auto &nu : paths) {
                if (mu.range != nu.range || mu.source != nu.source) continue;
                if (count) ++*count;
                PhaseVector v = project_phase(phi_tilde(phi, base, mu, nu), z_ambient, base_colors);
                out.insert(v.reduced());
            }
        return out;
    };
    OrbitGenerators res;
    auto now = collect(bound, &res.pairs_examined);
    res.generators.assign(now.begin(), now.end());
    if (bound >= 1) {
        auto before = collect(bound - 1, nullptr);
        std::set<std::string> syms;
        Integer L = 1;
        for (const auto &g : res.generators)
            for (const auto &c : g.coords()) {
                L = lcm(L, c.common_denominator());
                for (const auto &[s, q] : c.irrational_part()) syms.insert(s);
            }
        std::vector<std::string> symbols(syms.begin(), syms.end());
        res.stabilized = detail::phase_group_lattice({before.begin(), before.end()}, d, symbols, L) ==
                         detail::phase_group_lattice(res.generators, d, symbols, L);
    }
    return res;
}

/// n in Z^d \ {0} and psi with n . phi_Z(e) = psi(r(e)) - psi(s(e)) mod Z for every edge.
struct PotentialCertificate {
    IntVector n;
    std::vector<PhaseExponent> psi; // indexed by vertex
};

inline std::optional<PotentialCertificate>
potential_certificate(const KGraph &base, const std::vector<PhaseVector> &edge_phase, std::size_t d) {
    const std::size_t nv = base.vertex_count();
    if (edge_phase.size() != base.edges().size()) throw Error("potential_certificate: one phase per edge required");
    if (d == 0) return std::nullopt;
    // Spanning forest; Psi(v) accumulates edge phases from the component root.
    std::vector<std::optional<PhaseVector>> Psi(nv);
    std::vector<bool> tree_edge(base.edges().size(), false);
    for (std::size_t root = 0; root < nv; ++root) {
        if (Psi[root]) continue;
        Psi[root] = PhaseVector(d);
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t e = 0; e < base.edges().size(); ++e) {
                const auto &E = base.edges()[e];
                auto r = static_cast<std::size_t>(E.range), s = static_cast<std::size_t>(E.source);
                if (Psi[s] && !Psi[r]) {
                    Psi[r] = *Psi[s] + edge_phase[e];
                    tree_edge[e] = true;
                    grew = true;
                } else if (Psi[r] && !Psi[s]) {
                    Psi[s] = *Psi[r] - edge_phase[e];
                    tree_edge[e] = true;
                    grew = true;
                }
            }
        }
    }
    std::vector<PhaseVector> cycle_phases;
    for (std::size_t e = 0; e < base.edges().size(); ++e) {
        if (tree_edge[e]) continue;
        const auto &E = base.edges()[e];
        cycle_phases.push_back(edge_phase[e] - *Psi[static_cast<std::size_t>(E.range)] +
                               *Psi[static_cast<std::size_t>(E.source)]);
    }
    LatticeBasis ann = character_annihilator(cycle_phases, d);
    if (ann.is_zero()) return std::nullopt;
    PotentialCertificate cert;
    cert.n = ann.basis().front();
    for (std::size_t v = 0; v < nv; ++v) cert.psi.push_back(Psi[v]->pair(cert.n).reduced());
    return cert;
}

inline bool verify_potential(const KGraph &base, const std::vector<PhaseVector> &edge_phase,
                             const PotentialCertificate &cert) {
    if (is_zero_vector(cert.n) || cert.psi.size() != base.vertex_count()) return false;
    for (std::size_t e = 0; e < base.edges().size(); ++e) {
        const auto &E = base.edges()[e];
        PhaseExponent lhs = edge_phase[e].pair(cert.n);
        PhaseExponent rhs = cert.psi[static_cast<std::size_t>(E.range)] -
                            cert.psi[static_cast<std::size_t>(E.source)];
        if (!lhs.congruent(rhs)) return false;
    }
    return true;
}

enum class SimplicityVerdict { CertifiedSimple, CertifiedNonsimple, Unknown };

inline std::string verdict_str(SimplicityVerdict v) {
    switch (v) {
    case SimplicityVerdict::CertifiedSimple: return "CERTIFIED_SIMPLE";
    case SimplicityVerdict::CertifiedNonsimple: return "CERTIFIED_NONSIMPLE";
    default: return "UNKNOWN";
    }
}

struct NotCofinalCertificate {
    InfinitePath path;
    int vertex;
};
struct ZOmegaTrivialCertificate {};
struct UniquePathsCertificate {};
struct PotentialNonDensity {
    PotentialCertificate potential;
    std::vector<PhaseVector> edge_phase;
};
struct KroneckerDensity {
    DensityTranscript transcript;
};
struct AnnihilatorEvidence {
    IntVector n;
};
using SimplicityCertificate =
    std::variant<std::monostate, NotCofinalCertificate, ZOmegaTrivialCertificate,
                 UniquePathsCertificate, PotentialNonDensity, KroneckerDensity, AnnihilatorEvidence>;

inline std::string certificate_kind(const SimplicityCertificate &c) {
    switch (c.index()) {
    case 1: return "NOT_COFINAL";
    case 2: return "Z_OMEGA_TRIVIAL";
    case 3: return "UNIQUE_PATHS";
    case 4: return "POTENTIAL";
    case 5: return "KRONECKER_DENSE";
    case 6: return "ANNIHILATOR";
    default: return "NONE";
    }
}

struct SimplicityBounds {
    long long period_bound = -1; // -1: default from the graph
    long long orbit_bound = 4;
    AperiodicityPolicy policy = AperiodicityPolicy::Strict;
};

struct SimplicityReport {
    SimplicityVerdict verdict = SimplicityVerdict::Unknown;
    int stage = 0; // which step of the cascade decided
    std::string reason;
    CofinalityVerdict cofinality;
    std::optional<PeriodicityResult> per;
    std::vector<Degree> per_basis;
    std::optional<OmegaResult> omega;
    LatticeBasis z_omega;                // Per coordinates
    std::vector<Degree> z_omega_ambient; // in Z^k
    std::vector<PhaseVector> density_generators;
    bool generators_stabilized = false;
    SimplicityCertificate certificate;
    long long period_bound = 0;
    long long orbit_bound = 0;
};

inline bool unique_paths(const KGraph &g) {
    for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v)
        for (int c = 0; c < g.k(); ++c)
            if (g.edges_into(v, c).size() != 1) return false;
    return true;
}

inline SimplicityReport decide_simplicity(const KGraph &g, const CocycleSpec &c,
                                          const SimplicityBounds &bounds = {}) {
    SimplicityReport rep;
    const std::size_t k = static_cast<std::size_t>(g.k());
    rep.period_bound = bounds.period_bound >= 0 ? bounds.period_bound : default_period_bound(g);
    rep.orbit_bound = bounds.orbit_bound;

    rep.cofinality = is_cofinal(g);
    if (rep.cofinality.status == Status::No) {
        rep.verdict = SimplicityVerdict::CertifiedNonsimple;
        rep.stage = 1;
        rep.reason = "not cofinal";
        rep.certificate = NotCofinalCertificate{*rep.cofinality.path, rep.cofinality.vertex};
        return rep;
    }
    if (rep.cofinality.status == Status::Unknown) {
        rep.stage = 1;
        rep.reason = "cofinality undecided: " + rep.cofinality.reason;
        return rep;
    }

    rep.per = per_group(g, rep.period_bound);
    rep.per_basis = lattice_generators(rep.per->lattice);
    rep.omega = omega_from_oracle(g, c, rep.per_basis);
    rep.z_omega = z_omega_of(rep.omega->omega);
    rep.z_omega_ambient = to_ambient(rep.z_omega, rep.per_basis, k);
    if (rep.z_omega.is_zero()) {
        rep.verdict = SimplicityVerdict::CertifiedSimple;
        rep.stage = 2;
        rep.reason = "Z_omega is trivial";
        rep.certificate = ZOmegaTrivialCertificate{};
        return rep;
    }

    if (unique_paths(g)) {
        rep.verdict = SimplicityVerdict::CertifiedNonsimple;
        rep.stage = 3;
        rep.reason = "every vertex has exactly one path of each degree and Z_omega is nonzero";
        rep.certificate = UniquePathsCertificate{};
        return rep;
    }

    if (const auto *po = std::get_if<PhiOmegaCocycle>(&c.data)) {
        const int b = po->base_colors;
        if (!is_product_with_T(g, b)) {
            rep.stage = 4;
            rep.reason = "phi_omega cocycle on a graph that is not a product with T^l";
            return rep;
        }
        KGraph base = base_graph(g, b);
        if (!strongly_connected(base)) {
            rep.stage = 4;
            rep.reason = "base graph not strongly connected; density reduction unavailable";
            return rep;
        }
        AperiodicityVerdict ap = is_aperiodic(base, default_period_bound(base), bounds.policy);
        if (ap.status != Status::Yes) {
            rep.stage = 4;
            rep.reason = "base graph not certified aperiodic (" + status_str(ap.status) + ")";
            return rep;
        }
        std::vector<PhaseVector> edge_phase;
        for (const auto &e : base.edges())
            edge_phase.push_back(project_phase(po->phi.at(e.name), rep.z_omega_ambient, b));
        if (auto pot = potential_certificate(base, edge_phase, rep.z_omega_ambient.size())) {
            rep.verdict = SimplicityVerdict::CertifiedNonsimple;
            rep.stage = 4;
            rep.reason = "orbit phases are a coboundary on Z_omega";
            rep.certificate = PotentialNonDensity{*pot, edge_phase};
            return rep;
        }
        OrbitGenerators og = orbit_phase_generators(base, po->phi, rep.z_omega_ambient, b,
                                                    bounds.orbit_bound);
        rep.density_generators = og.generators;
        rep.generators_stabilized = og.stabilized;
        KroneckerResult kr = kronecker_dense(og.generators, rep.z_omega_ambient.size());
        rep.stage = 4;
        if (kr.dense) {
            rep.verdict = SimplicityVerdict::CertifiedSimple;
            rep.reason = "orbit phases are dense in the dual of Z_omega";
            rep.certificate = KroneckerDensity{*kr.transcript};
        } else {
            rep.reason = std::string("orbit phases not dense at the bound") +
                         (og.stabilized ? " (generated group stabilized)" : " (not stabilized)");
            rep.certificate = AnnihilatorEvidence{kr.annihilating_character};
        }
        return rep;
    }

    rep.stage = 5;
    rep.reason = "no applicable criterion";
    return rep;
}

/// Rechecks the certificate attached to a report with independent routines.
inline bool verify_certificate(const KGraph &g, const CocycleSpec &c, const SimplicityReport &rep) {
    return std::visit(
        [&](const auto &cert) -> bool {
            using T = std::decay_t<decltype(cert)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return rep.verdict == SimplicityVerdict::Unknown;
            } else if constexpr (std::is_same_v<T, NotCofinalCertificate>) {
                return verify_non_cofinal(g, cert.path, cert.vertex);
            } else if constexpr (std::is_same_v<T, ZOmegaTrivialCertificate>) {
                return rep.omega && z_omega_of(rep.omega->omega).is_zero();
            } else if constexpr (std::is_same_v<T, UniquePathsCertificate>) {
                return unique_paths(g) && rep.omega && !z_omega_of(rep.omega->omega).is_zero();
            } else if constexpr (std::is_same_v<T, PotentialNonDensity>) {
                const auto *po = std::get_if<PhiOmegaCocycle>(&c.data);
                if (!po) return false;
                KGraph base = base_graph(g, po->base_colors);
                std::vector<PhaseVector> phases;
                for (const auto &e : base.edges())
                    phases.push_back(project_phase(po->phi.at(e.name), rep.z_omega_ambient,
                                                   po->base_colors));
                return phases == cert.edge_phase && verify_potential(base, phases, cert.potential);
            } else if constexpr (std::is_same_v<T, KroneckerDensity>) {
                return verify_density_transcript(rep.density_generators,
                                                 rep.z_omega_ambient.size(), cert.transcript);
            } else {
                return verify_annihilating_character(rep.density_generators, cert.n);
            }
        },
        rep.certificate);
}

} // namespace kgtwist
