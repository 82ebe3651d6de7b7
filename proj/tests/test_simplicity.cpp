#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace kgtwist;

namespace {

const std::set<std::string> kSymbols{"theta", "rho"};
PhaseExponent P(const std::string &s) { return parse_phase(s, kSymbols); }

struct Case {
    KGraph g;
    CocycleSpec c;
};

Case load(const std::string &graph, const std::string &cocycle) {
    KGraph g = load_graph(oracle::fixture(graph + ".json"));
    CocycleSpec c = load_cocycle(oracle::fixture(cocycle + ".cocycle.json"), g);
    return {std::move(g), std::move(c)};
}

OneCocyclePhi phi_of(std::map<std::string, std::string> vals) {
    OneCocyclePhi phi;
    phi.l = 1;
    for (auto &[edge, x] : vals) phi.values.emplace(edge, PhaseVector({P(x)}));
    return phi;
}

bool contains(const std::vector<PhaseVector> &gens, const PhaseVector &v) {
    return std::any_of(gens.begin(), gens.end(), [&](const PhaseVector &g) { return (g - v).is_trivial(); });
}

} // namespace

TEST(Simplicity, TorusWithIrrationalTwistIsSimple) {
    auto [g, c] = load("T2", "T2_pullback_theta");
    SimplicityReport r = decide_simplicity(g, c);
    EXPECT_EQ(r.verdict, SimplicityVerdict::CertifiedSimple);
    EXPECT_EQ(r.stage, 2);
    EXPECT_TRUE(r.per->lattice.is_full());
    EXPECT_TRUE(r.z_omega.is_zero());
    EXPECT_EQ(certificate_kind(r.certificate), "Z_OMEGA_TRIVIAL");
    EXPECT_TRUE(verify_certificate(g, c, r));
}

TEST(Simplicity, TorusWithHalfTwistIsNotSimple) {
    auto [g, c] = load("T2", "T2_pullback_half");
    SimplicityReport r = decide_simplicity(g, c);
    EXPECT_EQ(r.verdict, SimplicityVerdict::CertifiedNonsimple);
    EXPECT_EQ(r.stage, 3);
    EXPECT_EQ(r.z_omega.str(), "span{(2, 0), (0, 2)}");
    EXPECT_EQ(certificate_kind(r.certificate), "UNIQUE_PATHS");
    EXPECT_TRUE(verify_certificate(g, c, r));
}

TEST(Simplicity, ProductWithIrrationalPhiIsSimple) {
    auto [g, c] = load("B2xT1", "B2xT1_phi_theta");
    SimplicityReport r = decide_simplicity(g, c);
    EXPECT_EQ(r.verdict, SimplicityVerdict::CertifiedSimple);
    EXPECT_EQ(r.stage, 4);
    EXPECT_EQ(r.per->lattice, LatticeBasis::from_generators(2, {{Integer(0), Integer(1)}}));
    EXPECT_EQ(certificate_kind(r.certificate), "KRONECKER_DENSE");
    EXPECT_TRUE(contains(r.density_generators, PhaseVector({P("theta")})));
    EXPECT_TRUE(r.generators_stabilized);
    EXPECT_TRUE(verify_certificate(g, c, r));
}

TEST(Simplicity, ProductWithZeroPhiIsNotSimple) {
    auto [g, c] = load("B2xT1", "B2xT1_phi_zero");
    SimplicityReport r = decide_simplicity(g, c);
    EXPECT_EQ(r.verdict, SimplicityVerdict::CertifiedNonsimple);
    ASSERT_EQ(certificate_kind(r.certificate), "POTENTIAL");
    const auto &pot = std::get<PotentialNonDensity>(r.certificate).potential;
    EXPECT_EQ(pot.n, (IntVector{Integer(1)}));
    for (const auto &psi : pot.psi) EXPECT_TRUE(psi.is_trivial());
    EXPECT_TRUE(verify_certificate(g, c, r));
}

TEST(Simplicity, FourGraphUsesOnlyZOmegaDirections) {
    auto [g, c] = load("B2xT3", "B2xT3_phi_rho");
    SimplicityReport r = decide_simplicity(g, c);
    EXPECT_EQ(r.verdict, SimplicityVerdict::CertifiedSimple);
    EXPECT_EQ(r.z_omega.str(), "span{(1, 0, 0)}");
    ASSERT_EQ(r.z_omega_ambient.size(), 1u);
    EXPECT_EQ(r.z_omega_ambient[0], (Degree{0, 1, 0, 0}));
    EXPECT_TRUE(verify_certificate(g, c, r));
}

TEST(Simplicity, DisjointLoopsAreNotSimple) {
    auto [g, c] = load("DISJOINT2", "DISJOINT2_zero");
    SimplicityReport r = decide_simplicity(g, c);
    EXPECT_EQ(r.verdict, SimplicityVerdict::CertifiedNonsimple);
    EXPECT_EQ(r.stage, 1);
    EXPECT_EQ(certificate_kind(r.certificate), "NOT_COFINAL");
    EXPECT_TRUE(verify_certificate(g, c, r));
}

TEST(Simplicity, TamperedReportFailsVerification) {
    auto [g, c] = load("T2", "T2_pullback_half");
    SimplicityReport r = decide_simplicity(g, c);
    r.certificate = ZOmegaTrivialCertificate{};
    EXPECT_FALSE(verify_certificate(g, c, r));
}

TEST(Simplicity, ZOmegaIgnoresSymmetricPerturbation) {
    auto [g, c] = load("T2", "T2_pullback_half");
    CocycleSpec perturbed = c;
    auto &t2 = std::get<PullbackCocycle>(perturbed.data).theta;
    t2[0][0] += P("rho");
    t2[0][1] += P("1/3 + theta");
    t2[1][0] += P("1/3 + theta");
    perturbed.symbols = kSymbols;
    ASSERT_TRUE(validate_cocycle(perturbed, g, 3).ok());
    std::vector<Degree> basis{{1, 0}, {0, 1}};
    LatticeBasis z0 = z_omega_of(omega_from_oracle(g, c, basis).omega);
    LatticeBasis z1 = z_omega_of(omega_from_oracle(g, perturbed, basis).omega);
    EXPECT_EQ(z0, z1);
}

TEST(Potential, CycleWithCancellingPhases) {
    auto [g, c] = load("C2xT1", "C2xT1_phi_potential");
    const auto &po = std::get<PhiOmegaCocycle>(c.data);
    KGraph base = base_graph(g, po.base_colors);
    std::vector<PhaseVector> phases;
    for (const auto &e : base.edges()) phases.push_back(po.phi.at(e.name));
    auto cert = potential_certificate(base, phases, 1);
    ASSERT_TRUE(cert);
    EXPECT_EQ(cert->n, (IntVector{Integer(1)}));
    EXPECT_TRUE(verify_potential(base, phases, *cert));
    std::set<PhaseExponent> psi;
    for (const auto &x : cert->psi) psi.insert(x.reduced());
    EXPECT_EQ(psi, (std::set<PhaseExponent>{P("0"), P("theta").reduced()}));
}

TEST(Potential, AbsentWhenLoopPhaseIsIrrational) {
    KGraph b2 = builtin("B2");
    std::vector<PhaseVector> phases{PhaseVector({P("0")}), PhaseVector({P("theta")})};
    EXPECT_FALSE(potential_certificate(b2, phases, 1));
    std::vector<PhaseVector> rational{PhaseVector({P("1/3")}), PhaseVector({P("2/3")})};
    auto cert = potential_certificate(b2, rational, 1);
    ASSERT_TRUE(cert);
    EXPECT_EQ(cert->n, (IntVector{Integer(3)}));
    EXPECT_TRUE(verify_potential(b2, rational, *cert));
}

TEST(OrbitGenerators, Examples) {
    KGraph b2 = builtin("B2");
    std::vector<Degree> z{{0, 1}};
    auto one = orbit_phase_generators(b2, phi_of({{"e", "0"}, {"f", "theta"}}), z, 1, 3);
    EXPECT_TRUE(contains(one.generators, PhaseVector({P("theta")})));
    EXPECT_TRUE(kronecker_dense(one.generators, 1).dense);

    // Equal edge phases: only length differences contribute, so the group is theta Z.
    auto same = orbit_phase_generators(b2, phi_of({{"e", "theta"}, {"f", "theta"}}), z, 1, 3);
    EXPECT_TRUE(contains(same.generators, PhaseVector({P("theta")})));
    for (const auto &v : same.generators) {
        Rational coef = v[0].coefficient("theta");
        EXPECT_TRUE(is_integral(coef) && (v[0] - PhaseExponent::symbol("theta", coef)).is_trivial());
    }
    EXPECT_TRUE(kronecker_dense(same.generators, 1).dense);

    auto zero = orbit_phase_generators(b2, phi_of({{"e", "0"}, {"f", "0"}}), z, 1, 3);
    for (const auto &v : zero.generators) EXPECT_TRUE(v.is_trivial());
    EXPECT_TRUE(zero.stabilized);
    EXPECT_THROW(orbit_phase_generators(builtin("DISJOINT2"), phi_of({{"l_u", "0"}, {"l_w", "0"}}), z, 1, 2), Error);
}

TEST(OrbitGenerators, GrowMonotonicallyWithBound) {
    KGraph c3 = builtin("C3");
    std::vector<Degree> z{{0, 1}};
    OneCocyclePhi phi = phi_of({{"e0", "theta"}, {"e1", "1/2"}, {"e2", "rho"}});
    for (long long B = 1; B < 4; ++B) {
        auto lo = orbit_phase_generators(c3, phi, z, 1, B);
        auto hi = orbit_phase_generators(c3, phi, z, 1, B + 1);
        for (const auto &v : lo.generators) EXPECT_TRUE(contains(hi.generators, v)) << B;
    }
}

TEST(OrbitGenerators, IrrationalBaseLoopGivesDensityForEveryCoordinate) {
    // Any phi with phi(e) - phi(f) irrational on the one-vertex base is dense.
    KGraph b2 = builtin("B2");
    for (const char *x : {"theta", "2*theta + 1/5", "-theta"}) {
        auto gens = orbit_phase_generators(b2, phi_of({{"e", "0"}, {"f", x}}), {{0, 1}}, 1, 2).generators;
        auto res = kronecker_dense(gens, 1);
        ASSERT_TRUE(res.dense) << x;
        EXPECT_TRUE(verify_density_transcript(gens, 1, *res.transcript));
    }
}
