#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace kgtwist;

namespace {

const std::set<std::string> kSymbols{"theta", "rho"};
PhaseExponent P(const std::string &s) { return parse_phase(s, kSymbols); }

struct Loaded {
    KGraph g;
    CocycleSpec c;
};

Loaded load(const std::string &graph, const std::string &cocycle) {
    KGraph g = load_graph(oracle::fixture(graph + ".json"));
    CocycleSpec c = load_cocycle(oracle::fixture(cocycle + ".cocycle.json"), g);
    return {std::move(g), std::move(c)};
}

OneCocyclePhi phi_of(std::size_t l, std::map<std::string, std::vector<std::string>> vals) {
    OneCocyclePhi phi;
    phi.l = l;
    for (auto &[edge, xs] : vals) {
        std::vector<PhaseExponent> coords;
        for (auto &x : xs) coords.push_back(P(x));
        phi.values.emplace(edge, PhaseVector(coords));
    }
    return phi;
}

bool mentions(const ValidationReport &r, const std::string &needle) {
    return std::any_of(r.issues.begin(), r.issues.end(),
                       [&](const std::string &s) { return s.find(needle) != std::string::npos; });
}

} // namespace

TEST(CocycleValue, PullbackOnT2) {
    auto [g, c] = load("T2", "T2_pullback_theta");
    Path t1 = path_from_names(g, {"t1"}), t2 = path_from_names(g, {"t2"});
    EXPECT_TRUE(cocycle_value(c, g, t1, t2).is_trivial());
    EXPECT_EQ(cocycle_value(c, g, t2, t1), P("theta"));
    EXPECT_TRUE(cocycle_value(c, g, vertex_path(g, 0), t1).is_zero());
    EXPECT_TRUE(cocycle_value(c, g, t2, vertex_path(g, 0)).is_zero());
}

TEST(CocycleValue, PhiOmegaOnProduct) {
    auto [g, c] = load("B2xT1", "B2xT1_phi_theta");
    Path et = path_from_names(g, {"e", "t2"}), f = path_from_names(g, {"f"});
    Path e = path_from_names(g, {"e"}), ft = path_from_names(g, {"f", "t2"});
    EXPECT_EQ(cocycle_value(c, g, et, f), P("theta"));
    EXPECT_TRUE(cocycle_value(c, g, e, ft).is_trivial());
}

TEST(CocycleValue, PullbackDependsOnlyOnDegrees) {
    auto [g, c] = load("B2", "B2_pullback_theta");
    for (const auto &mu : paths_of_degree(g, {2}))
        for (const auto &nu : paths_of_degree(g, {1}))
            EXPECT_EQ(cocycle_value(c, g, mu, nu), P("2*theta"));
}

TEST(ValidateCocycle, KnownCocyclesPass) {
    for (auto [graph, cocycle] : std::vector<std::pair<std::string, std::string>>{
             {"T2", "T2_pullback_theta"}, {"T2", "T2_pullback_half"}, {"B2", "B2_pullback_theta"},
             {"B2xT1", "B2xT1_phi_theta"}, {"B2xT1", "B2xT1_phi_zero"}, {"B2xT3", "B2xT3_phi_rho"},
             {"C2xT1", "C2xT1_phi_potential"}}) {
        auto [g, c] = load(graph, cocycle);
        std::size_t triples = 0;
        ValidationReport r = validate_cocycle(c, g, 3, &triples);
        EXPECT_TRUE(r.ok()) << cocycle << ": " << (r.issues.empty() ? "" : r.issues.front());
        EXPECT_GT(triples, 0u);
    }
}

TEST(ValidateCocycle, CorruptedTableNamesTheTriple) {
    KGraph g = builtin("B2");
    auto [g0, pullback] = load("B2", "B2_pullback_theta");
    TableCocycle table;
    auto by_range = paths_by_range(g, 3);
    for (const auto &mu : by_range[0])
        for (const auto &nu : by_range[0])
            if (total(mu.degree) + total(nu.degree) <= 3)
                table.entries[{mu, nu}] = cocycle_value(pullback, g, mu, nu);
    Path e = path_from_names(g, {"e"}), f = path_from_names(g, {"f"});
    CocycleSpec good{{"theta"}, table};
    EXPECT_TRUE(validate_cocycle(good, g, 3).ok());
    table.entries[{e, f}] += P("1/2");
    CocycleSpec bad{{"theta"}, table};
    ValidationReport r = validate_cocycle(bad, g, 3);
    ASSERT_FALSE(r.ok());
    EXPECT_TRUE(mentions(r, "cocycle identity fails at (")) << r.issues.front();
    EXPECT_TRUE(mentions(r, "e, f")) << r.issues.front();
}

TEST(ValidatePhi, SquareCompatibility) {
    EXPECT_TRUE(validate_phi(phi_of(1, {{"e", {"0"}}, {"f", {"theta"}}}), builtin("B2")).ok());
    EXPECT_TRUE(validate_phi(phi_of(1, {{"e", {"0"}}, {"f", {"theta"}}, {"t2", {"rho"}}}), builtin("B2xT1")).ok());

    KGraph flip(2, {"v"}, {{"e", 0, "v", "v"}, {"f", 0, "v", "v"}, {"g", 1, "v", "v"}, {"h", 1, "v", "v"}},
                {{0, 1, "e", "g", "g", "f"}, {0, 1, "f", "g", "g", "e"},
                 {0, 1, "e", "h", "h", "e"}, {0, 1, "f", "h", "h", "f"}});
    ASSERT_TRUE(validate_kgraph(flip).ok());
    ValidationReport r = validate_phi(phi_of(1, {{"e", {"theta"}}, {"f", {"0"}}, {"g", {"0"}}, {"h", {"0"}}}), flip);
    EXPECT_TRUE(mentions(r, "phi not square-compatible at (e,g)->(g,f)"));
    EXPECT_TRUE(mentions(validate_phi(phi_of(1, {{"e", {"0"}}}), builtin("B2")), "no value for edge 'f'"));
}

TEST(PhiTilde, Examples) {
    KGraph g = builtin("B2");
    OneCocyclePhi phi = phi_of(1, {{"e", {"0"}}, {"f", {"theta"}}});
    Path e = path_from_names(g, {"e"}), f = path_from_names(g, {"f"});
    EXPECT_EQ(phi_tilde(phi, g, f, e)[0], P("theta"));
    EXPECT_TRUE(phi_tilde(phi, g, f, f).is_trivial());
    EXPECT_TRUE(phi_tilde(phi, g, compose(g, e, f), compose(g, f, e)).is_trivial());
}

TEST(Groupoid, ElementAlgebra) {
    KGraph g = builtin("B2");
    InfinitePath z = infinite_path_from(g, 0);
    Path e = path_from_names(g, {"e"}), f = path_from_names(g, {"f"}), ef = compose(g, e, f);
    GroupoidElement a = element_from_pair(g, ef, f, z);
    EXPECT_EQ(a.degree, (Degree{1}));
    EXPECT_EQ(multiply(a, inverse(a)), unit_element(a.range));
    EXPECT_TRUE(in_cylinder(g, a, ef, f));
    EXPECT_TRUE(in_cylinder(g, a, e, vertex_path(g, 0)));
    EXPECT_FALSE(in_cylinder(g, a, f, vertex_path(g, 0)));
    InfinitePath alt = make_infinite_path(g, vertex_path(g, 0), ef);
    EXPECT_THROW(isotropy_element(g, alt, {1}), Error);
    EXPECT_EQ(isotropy_element(g, alt, {2}).degree, (Degree{2}));
}

TEST(Groupoid, PartitionMembersAreDisjoint) {
    for (const char *name : {"B2", "T2", "B2xT1"}) {
        KGraph g = builtin(name);
        Partition P = build_partition(g, diagonal(static_cast<std::size_t>(g.k()), 1));
        const auto &m = P.members();
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                EXPECT_FALSE(cylinders_intersect(g, m[i].first, m[i].second, m[j].first, m[j].second))
                    << name << ": " << path_str(g, m[i].first) << "," << path_str(g, m[i].second);
    }
}

TEST(Sigma, IsotropyOnT2) {
    auto [g, c] = load("T2", "T2_pullback_theta");
    SigmaOracle oracle(g, c, build_partition(g, {2, 2}));
    InfinitePath x = infinite_path_from(g, 0);
    EXPECT_TRUE(oracle.isotropy(x, {1, 0}, {0, 1}).is_trivial());
    EXPECT_TRUE(oracle.isotropy(x, {0, 1}, {1, 0}).congruent(P("theta")));
    OmegaResult om = omega_from_oracle(g, c, {{1, 0}, {0, 1}});
    EXPECT_TRUE(om.antisymmetrization[0][1].congruent(P("-theta")));
    EXPECT_TRUE(om.antisymmetrization[1][0].congruent(P("theta")));
    EXPECT_TRUE(om.omega.matrix[0][1].is_zero());
}

TEST(Sigma, ClosedFormDisagreesOnT2) {
    auto [g, c] = load("T2", "T2_pullback_theta");
    std::vector<Degree> basis{{1, 0}, {0, 1}};
    OmegaResult om = omega_from_oracle(g, c, basis);
    OmegaComparison cmp = compare_omega_forms(g, c, basis, om);
    ASSERT_TRUE(cmp.closed_form.entries[0][1] && cmp.closed_form.entries[1][0]);
    EXPECT_TRUE(cmp.closed_form.entries[0][1]->congruent(P("theta")));
    EXPECT_TRUE(cmp.closed_form.entries[1][0]->congruent(P("theta")));
    EXPECT_FALSE(cmp.agree());
    EXPECT_EQ(cmp.entries_compared, 2u);
    ASSERT_FALSE(cmp.discrepancies.empty());
    EXPECT_EQ(cmp.discrepancies.front().rfind("A(1,2): closed form", 0), 0u);
}

TEST(Sigma, RFormulaValueOnProduct) {
    auto [g, c] = load("B2xT1", "B2xT1_phi_theta");
    SigmaOracle oracle(g, c, build_partition(g, {2, 2}));
    InfinitePath z = infinite_path_from(g, 0);
    GroupoidElement alpha = element_from_pair(g, path_from_names(g, {"f"}), path_from_names(g, {"e"}), z);
    EXPECT_TRUE(oracle.r_sigma(alpha, {0, 1}).congruent(P("-theta")));
    EXPECT_TRUE(oracle.r_sigma(unit_element(z), {0, 1}).is_trivial());
}

TEST(Properties, SuitesPassOnSmallFixtures) {
    PropertyConfig cfg;
    cfg.depth = 1;
    cfg.samples = 40;
    cfg.coboundary_radius = 2;
    for (auto [graph, cocycle] : std::vector<std::pair<std::string, std::string>>{
             {"T2", "T2_pullback_theta"}, {"T2", "T2_pullback_half"}, {"B2", "B2_pullback_theta"}}) {
        auto [g, c] = load(graph, cocycle);
        PropertyReport rep = run_property_suites(g, c, cfg);
        for (const auto &o : rep.outcomes)
            EXPECT_EQ(o.violations, 0u) << cocycle << " " << o.name << ": "
                                        << (o.counterexamples.empty() ? "" : o.counterexamples.front());
        EXPECT_TRUE(rep.pass()) << cocycle;
    }
}
