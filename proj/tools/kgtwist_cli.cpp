// kgtwist command line: validate, analyze, per, omega, simplicity, oracle.

#include "kgtwist/kgtwist.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace kgtwist;

enum ExitCode { Ok = 0, Failure = 1, Undecided = 2, Rejected = 3 };

struct Common {
    std::string graph;
    std::string cocycle;
    std::string format = "human";
    std::string emit;
    std::vector<std::string> symbols;
};

struct Inputs {
    KGraph graph;
    std::optional<CocycleSpec> cocycle;
    std::vector<std::pair<std::string, std::string>> digests;
};

Inputs load_inputs(const Common &opt, bool need_cocycle) {
    Inputs in;
    in.graph = load_graph(opt.graph);
    std::string graph_bytes = opt.graph.rfind("builtin:", 0) == 0 ? canonical_text(graph_to_json(in.graph))
                                                                   : read_file(opt.graph);
    in.digests.emplace_back(opt.graph, fnv1a64(graph_bytes));
    if (need_cocycle && opt.cocycle.empty()) throw Error("--cocycle is required for this command");
    if (!opt.cocycle.empty()) {
        std::string text = read_file(opt.cocycle);
        Json doc;
        try {
            doc = Json::parse(text);
        } catch (const Json::parse_error &e) {
            throw Error(opt.cocycle + ": " + e.what());
        }
        if (!opt.symbols.empty()) {
            std::set<std::string> all;
            if (doc.is_object() && doc.contains("symbols") && doc["symbols"].is_array())
                for (const auto &s : doc["symbols"])
                    if (s.is_string()) all.insert(s.get<std::string>());
            all.insert(opt.symbols.begin(), opt.symbols.end());
            doc["symbols"] = std::vector<std::string>(all.begin(), all.end());
        }
        try {
            in.cocycle = cocycle_from_json(doc, in.graph);
        } catch (const Error &e) {
            throw Error(opt.cocycle + ": " + e.what());
        }
        in.digests.emplace_back(opt.cocycle, fnv1a64(text));
    }
    return in;
}

void publish(const Common &opt, const std::string &command, const Inputs &in, const Json &payload,
             const std::string &human) {
    Json doc = envelope(command, in.digests, payload);
    if (!opt.emit.empty()) {
        std::ofstream out(opt.emit, std::ios::binary);
        if (!out) throw Error("cannot write '" + opt.emit + "'");
        out << canonical_text(doc);
    }
    if (opt.format == "structured")
        std::cout << canonical_text(doc);
    else
        std::cout << human;
}

std::string lattice_line(const LatticeBasis &l) { return l.str(); }

int run_validate(const Common &opt, long long depth) {
    Inputs in = load_inputs(opt, false);
    ValidationReport g = validate_kgraph(in.graph);
    Json payload{{"graph", validation_json(g)}};
    std::ostringstream h;
    h << "graph: " << (g.ok() ? "valid" : "INVALID") << "\n";
    for (const auto &i : g.issues) h << "  " << i << "\n";
    bool ok = g.ok();
    if (in.cocycle && g.ok()) {
        std::size_t triples = 0;
        ValidationReport c = validate_cocycle(*in.cocycle, in.graph, depth, &triples);
        payload["cocycle"] = validation_json(c);
        payload["cocycle"]["triples_checked"] = triples;
        payload["cocycle"]["depth"] = depth;
        h << "cocycle (" << in.cocycle->variant_name() << "): " << (c.ok() ? "valid" : "INVALID") << " ("
          << triples << " triples, total degree <= " << depth << ")\n";
        for (const auto &i : c.issues) h << "  " << i << "\n";
        ok = ok && c.ok();
    }
    publish(opt, "validate", in, payload, h.str());
    return ok ? Ok : Rejected;
}

int run_analyze(const Common &opt, long long bound) {
    Inputs in = load_inputs(opt, false);
    ValidationReport v = validate_kgraph(in.graph);
    Json payload{{"validation", validation_json(v)}};
    std::ostringstream h;
    if (!v.ok()) {
        h << "graph: INVALID\n";
        for (const auto &i : v.issues) h << "  " << i << "\n";
        publish(opt, "analyze", in, payload, h.str());
        return Rejected;
    }
    const long long B = bound > 0 ? bound : default_period_bound(in.graph);
    CofinalityVerdict cof = is_cofinal(in.graph);
    AperiodicityVerdict ap = is_aperiodic(in.graph, B);
    payload["k"] = in.graph.k();
    payload["vertices"] = in.graph.vertex_count();
    payload["edges"] = in.graph.edges().size();
    payload["strongly_connected"] = strongly_connected(in.graph);
    payload["cofinality"] = cofinality_json(in.graph, cof);
    payload["aperiodicity"] = aperiodicity_json(in.graph, ap);
    h << "k=" << in.graph.k() << " vertices=" << in.graph.vertex_count() << " edges=" << in.graph.edges().size()
      << "\n";
    h << "strongly connected: " << (strongly_connected(in.graph) ? "yes" : "no") << "\n";
    h << "cofinal: " << status_str(cof.status);
    if (cof.path) h << " (witness " << infinite_path_str(in.graph, *cof.path) << " misses " << in.graph.vertex_name(cof.vertex) << ")";
    h << "\n";
    h << "aperiodic: " << status_str(ap.status) << " (" << ap.reason << ")\n";
    if (cof.status == Status::Yes) {
        PeriodicityResult per = per_group(in.graph, B);
        payload["per"] = per_json(per);
        h << "Per: " << lattice_line(per.lattice) << " (exhaustive up to " << degree_str(per.exhaustive_up_to)
          << ")\n";
    }
    publish(opt, "analyze", in, payload, h.str());
    return Ok;
}

int run_per(const Common &opt, long long bound) {
    Inputs in = load_inputs(opt, false);
    const long long B = bound > 0 ? bound : default_period_bound(in.graph);
    PeriodicityResult per = per_group(in.graph, B);
    std::ostringstream h;
    h << "Per: " << lattice_line(per.lattice) << " (exhaustive up to " << degree_str(per.exhaustive_up_to) << ")\n";
    if (!per.per_vertex_agreement) h << "note: some candidate periods hold only at some vertices\n";
    publish(opt, "per", in, {{"per", per_json(per)}, {"bound", B}}, h.str());
    return Ok;
}

int run_omega(const Common &opt, long long bound) {
    Inputs in = load_inputs(opt, true);
    const long long B = bound > 0 ? bound : default_period_bound(in.graph);
    PeriodicityResult per = per_group(in.graph, B);
    auto basis = lattice_generators(per.lattice);
    OmegaResult om = omega_from_oracle(in.graph, *in.cocycle, basis);
    LatticeBasis z = z_omega_of(om.omega);
    Json payload{{"per", per_json(per)}, {"omega", omega_json(in.graph, om)}, {"z_omega", detail::lattice_json(z)}};
    std::ostringstream h;
    h << "Per: " << lattice_line(per.lattice) << "\n";
    h << "antisymmetrization (Per coordinates):\n";
    for (const auto &row : om.antisymmetrization) {
        h << " ";
        for (const auto &x : row) h << " [" << x.str() << "]";
        h << "\n";
    }
    h << "Z_omega: " << lattice_line(z) << "\n";
    if (!basis.empty()) {
        OmegaComparison cmp = compare_omega_forms(in.graph, *in.cocycle, basis, om);
        payload["closed_form_comparison"] = comparison_json(in.graph, cmp);
        h << "closed form vs oracle: " << (cmp.agree() ? "agree" : "DISCREPANCY") << " (" << cmp.entries_compared
          << " entries)\n";
        for (const auto &d : cmp.discrepancies) h << "  " << d << "\n";
    }
    publish(opt, "omega", in, payload, h.str());
    return Ok;
}

int run_simplicity(const Common &opt, const SimplicityBounds &bounds) {
    Inputs in = load_inputs(opt, true);
    SimplicityReport rep = decide_simplicity(in.graph, *in.cocycle, bounds);
    const bool verified = verify_certificate(in.graph, *in.cocycle, rep);
    Json payload = simplicity_json(in.graph, rep);
    payload["certificate_verified"] = verified;
    std::ostringstream h;
    h << verdict_str(rep.verdict) << " (step " << rep.stage << ": " << rep.reason << ")\n";
    h << "certificate: " << certificate_kind(rep.certificate) << (verified ? " [verified]" : " [NOT VERIFIED]")
      << "\n";
    if (!rep.per_basis.empty() || rep.per) h << "Per basis: " << (rep.per ? lattice_line(rep.per->lattice) : "-") << "\n";
    if (rep.omega) h << "Z_omega: " << lattice_line(rep.z_omega) << "\n";
    publish(opt, "simplicity", in, payload, h.str());
    if (!verified) return Rejected;
    return rep.verdict == SimplicityVerdict::Unknown ? Undecided : Ok;
}

int run_oracle(const Common &opt, const PropertyConfig &cfg) {
    Inputs in = load_inputs(opt, true);
    PropertyReport rep = run_property_suites(in.graph, *in.cocycle, cfg);
    Json suites = Json::array();
    std::ostringstream h;
    for (const auto &o : rep.outcomes) {
        suites.push_back({{"name", o.name},
                          {"checked", o.checked},
                          {"skipped", o.skipped},
                          {"violations", o.violations},
                          {"counterexamples", o.counterexamples},
                          {"status", o.vacuous() ? "VACUOUS" : (o.pass() ? "PASS" : "FAIL")}});
        h << (o.vacuous() ? "SKIP" : (o.pass() ? "PASS" : "FAIL")) << "  " << o.name << ": " << o.checked
          << " checked, " << o.violations << " violations";
        if (o.skipped) h << ", " << o.skipped << " unresolved at depth";
        h << "\n";
        for (const auto &c : o.counterexamples) h << "    " << c << "\n";
    }
    Json payload{{"depth", cfg.depth},
                 {"seed", cfg.seed},
                 {"samples", cfg.samples},
                 {"partition_depth", rep.partition_depth},
                 {"elements", rep.elements},
                 {"suites", suites},
                 {"pass", rep.pass()}};
    publish(opt, "oracle", in, payload, h.str());
    return rep.pass() ? Ok : Rejected;
}

void add_common(CLI::App *cmd, Common &opt, bool cocycle) {
    cmd->add_option("graph", opt.graph, "graph file (JSON) or builtin:NAME")->required();
    if (cocycle) cmd->add_option("--cocycle", opt.cocycle, "cocycle file (JSON)");
    cmd->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"human", "structured"}));
    cmd->add_option("--emit", opt.emit, "also write the structured report to this file");
    cmd->add_option("--symbols", opt.symbols, "extra irrational symbol declarations")->delimiter(',');
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Twisted k-graph analysis: periodicity, isotropy twists and simplicity certificates"};
    app.set_version_flag("--version", std::string(kgtwist::tool_version));
    app.require_subcommand(1);

    Common opt;
    long long depth = 3, bound = 0, period_bound = 0, orbit_bound = 4;
    std::string policy = "strict";
    PropertyConfig pcfg;

    auto *validate = app.add_subcommand("validate", "check k-graph axioms and the cocycle identity");
    add_common(validate, opt, true);
    validate->add_option("--depth", depth, "total degree bound for cocycle triples")->check(CLI::PositiveNumber);

    auto *analyze = app.add_subcommand("analyze", "cofinality, aperiodicity and Per");
    add_common(analyze, opt, false);
    analyze->add_option("--bound", bound, "period search bound")->check(CLI::PositiveNumber);

    auto *per = app.add_subcommand("per", "periodicity lattice");
    add_common(per, opt, false);
    per->add_option("--bound", bound, "period search bound")->check(CLI::PositiveNumber);

    auto *omega = app.add_subcommand("omega", "isotropy bicharacter, Z_omega and closed-form comparison");
    add_common(omega, opt, true);
    omega->add_option("--bound", bound, "period search bound")->check(CLI::PositiveNumber);

    auto *simp = app.add_subcommand("simplicity", "certified simplicity verdict");
    add_common(simp, opt, true);
    simp->add_option("--bound", orbit_bound, "path length bound for orbit phase generators")
        ->check(CLI::PositiveNumber);
    simp->add_option("--period-bound", period_bound, "period search bound")->check(CLI::PositiveNumber);
    simp->add_option("--policy", policy, "aperiodicity policy for the base graph")
        ->check(CLI::IsMember({"strict", "trust-bound"}));

    auto *oracle = app.add_subcommand("oracle", "run the groupoid cocycle property suites");
    add_common(oracle, opt, true);
    oracle->add_option("--depth", pcfg.depth, "degree bound for sampled elements")->check(CLI::PositiveNumber);
    oracle->add_option("--samples", pcfg.samples, "samples per randomized suite")->check(CLI::PositiveNumber);
    oracle->add_option("--seed", pcfg.seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? Ok : Failure;
    }

    try {
        if (*validate) return run_validate(opt, depth);
        if (*analyze) return run_analyze(opt, bound);
        if (*per) return run_per(opt, bound);
        if (*omega) return run_omega(opt, bound);
        if (*simp) {
            SimplicityBounds b;
            b.period_bound = period_bound > 0 ? period_bound : -1;
            b.orbit_bound = orbit_bound;
            b.policy = policy == "strict" ? AperiodicityPolicy::Strict : AperiodicityPolicy::TrustBound;
            return run_simplicity(opt, b);
        }
        if (*oracle) return run_oracle(opt, pcfg);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Failure;
    }
    return Failure;
}
