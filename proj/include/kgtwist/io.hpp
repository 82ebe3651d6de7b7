#pragma once

// JSON reading and writing of graphs, cocycles and reports.

#include "simplicity.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>

namespace kgtwist {

using Json = nlohmann::json;

inline constexpr const char *tool_version = "0.3.0";

/// FNV-1a 64-bit digest, hex encoded.
inline std::string fnv1a64(const std::string &bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace detail {

inline Json parse_json_text(const std::string &text, const std::string &what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw Error(what + ": " + e.what());
    }
}

inline const Json &field(const Json &obj, const std::string &key, const std::string &ctx) {
    if (!obj.is_object()) throw Error(ctx + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw Error(ctx + ": missing field '" + key + "'");
    return *it;
}

inline std::string string_field(const Json &obj, const std::string &key, const std::string &ctx) {
    const Json &v = field(obj, key, ctx);
    if (!v.is_string()) throw Error(ctx + "." + key + ": expected a string");
    return v.get<std::string>();
}

inline long long int_field(const Json &obj, const std::string &key, const std::string &ctx) {
    const Json &v = field(obj, key, ctx);
    if (!v.is_number_integer()) throw Error(ctx + "." + key + ": expected an integer");
    return v.get<long long>();
}

inline const Json &array_field(const Json &obj, const std::string &key, const std::string &ctx) {
    const Json &v = field(obj, key, ctx);
    if (!v.is_array()) throw Error(ctx + "." + key + ": expected an array");
    return v;
}

inline std::string at_index(const std::string &ctx, std::size_t i) {
    return ctx + "[" + std::to_string(i) + "]";
}

inline PhaseExponent phase_from(const Json &v, const std::set<std::string> &symbols,
                                const std::string &ctx) {
    try {
        if (v.is_number_integer()) return PhaseExponent(v.get<long long>());
        if (v.is_string()) return parse_phase(v.get<std::string>(), symbols);
    } catch (const Error &e) {
        throw Error(ctx + ": " + e.what());
    }
    throw Error(ctx + ": expected a phase literal string or integer");
}

inline PhaseMatrix phase_matrix_from(const Json &v, std::size_t n, const std::set<std::string> &symbols,
                                     const std::string &ctx) {
    if (!v.is_array() || v.size() != n)
        throw Error(ctx + ": expected " + std::to_string(n) + " rows");
    PhaseMatrix m = zero_phase_matrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string rc = at_index(ctx, i);
        if (!v[i].is_array() || v[i].size() != n)
            throw Error(rc + ": expected " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) m[i][j] = phase_from(v[i][j], symbols, at_index(rc, j));
    }
    return m;
}

inline Json phase_matrix_json(const PhaseMatrix &m) {
    Json out = Json::array();
    for (const auto &row : m) {
        Json r = Json::array();
        for (const auto &x : row) r.push_back(x.str());
        out.push_back(r);
    }
    return out;
}

inline Json phase_vector_json(const PhaseVector &v) {
    Json out = Json::array();
    for (const auto &x : v.coords()) out.push_back(x.str());
    return out;
}

inline Json degree_json(const Degree &d) { return Json(d); }

inline Json int_vector_json(const IntVector &v) {
    Json out = Json::array();
    for (const auto &x : v) out.push_back(to_string(x));
    return out;
}

inline Json lattice_json(const LatticeBasis &l) {
    Json rows = Json::array();
    for (const auto &r : l.basis()) rows.push_back(int_vector_json(r));
    return {{"ambient_rank", l.ambient_rank()}, {"basis", rows}};
}

inline Json int_matrix_json(const IntMatrix &m) {
    Json out = Json::array();
    for (const auto &r : m) out.push_back(int_vector_json(r));
    return out;
}

} // namespace detail

// ---- graphs ----

inline KGraph graph_from_json(const Json &doc) {
    using namespace detail;
    const std::string ctx = "graph";
    long long k = int_field(doc, "k", ctx);
    if (k < 1) throw Error("graph.k: must be at least 1");
    std::vector<std::string> vertices;
    std::set<std::string> vset;
    const Json &vs = array_field(doc, "vertices", ctx);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (!vs[i].is_string()) throw Error(at_index("graph.vertices", i) + ": expected a string");
        vertices.push_back(vs[i].get<std::string>());
        if (!vset.insert(vertices.back()).second)
            throw Error(at_index("graph.vertices", i) + ": duplicate vertex '" + vertices.back() + "'");
    }
    std::vector<EdgeSpec> edges;
    std::map<std::string, int> colors;
    const Json &es = array_field(doc, "edges", ctx);
    for (std::size_t i = 0; i < es.size(); ++i) {
        const std::string ec = at_index("graph.edges", i);
        EdgeSpec e;
        e.name = string_field(es[i], "id", ec);
        long long color = int_field(es[i], "color", ec);
        if (color < 1 || color > k)
            throw Error(ec + ": edge '" + e.name + "' has color " + std::to_string(color) +
                        " outside 1.." + std::to_string(k));
        e.color = static_cast<int>(color - 1);
        e.range = string_field(es[i], "range", ec);
        e.source = string_field(es[i], "source", ec);
        for (const auto *end : {&e.range, &e.source})
            if (!vset.count(*end))
                throw Error(ec + ": edge '" + e.name + "' references unknown vertex '" + *end + "'");
        if (!colors.emplace(e.name, e.color).second)
            throw Error(ec + ": duplicate edge id '" + e.name + "'");
        edges.push_back(e);
    }
    std::vector<SquareSpec> squares;
    if (doc.contains("squares")) {
        const Json &ss = array_field(doc, "squares", ctx);
        for (std::size_t i = 0; i < ss.size(); ++i) {
            const std::string sc = at_index("graph.squares", i);
            const Json &from = array_field(ss[i], "from", sc), &to = array_field(ss[i], "to", sc);
            if (from.size() != 2 || to.size() != 2)
                throw Error(sc + ": 'from' and 'to' must list two edges");
            std::vector<std::string> names;
            for (const Json *arr : {&from, &to})
                for (const auto &x : *arr) {
                    if (!x.is_string()) throw Error(sc + ": edge ids must be strings");
                    names.push_back(x.get<std::string>());
                    if (!colors.count(names.back()))
                        throw Error(sc + ": unknown edge '" + names.back() + "'");
                }
            SquareSpec s{colors[names[0]], colors[names[1]], names[0], names[1], names[2], names[3]};
            squares.push_back(s);
        }
    }
    return KGraph(static_cast<int>(k), vertices, edges, squares);
}

inline Json graph_to_json(const KGraph &g) {
    Json edges = Json::array();
    for (const auto &e : g.edges())
        edges.push_back({{"id", e.name},
                         {"color", e.color + 1},
                         {"range", g.vertex_name(e.range)},
                         {"source", g.vertex_name(e.source)}});
    Json squares = Json::array();
    for (const auto &s : g.squares())
        squares.push_back({{"from", {g.edge(s.f).name, g.edge(s.g).name}},
                           {"to", {g.edge(s.gp).name, g.edge(s.fp).name}}});
    return {{"k", g.k()}, {"vertices", g.vertices()}, {"edges", edges}, {"squares", squares}};
}

inline KGraph parse_graph_text(const std::string &text) {
    return graph_from_json(detail::parse_json_text(text, "graph"));
}

/// Reads a graph file, or a builtin when the argument has the form "builtin:NAME".
inline KGraph load_graph(const std::string &path) {
    if (path.rfind("builtin:", 0) == 0) return builtin(path.substr(8));
    try {
        return parse_graph_text(read_file(path));
    } catch (const Error &e) {
        throw Error(path + ": " + e.what());
    }
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string canonical_text(const Json &doc) { return doc.dump(2) + "\n"; }

// ---- cocycles ----

inline CocycleSpec cocycle_from_json(const Json &doc, const KGraph &g) {
    using namespace detail;
    const std::string ctx = "cocycle";
    CocycleSpec c;
    if (doc.contains("symbols")) {
        const Json &syms = array_field(doc, "symbols", ctx);
        for (std::size_t i = 0; i < syms.size(); ++i) {
            if (!syms[i].is_string()) throw Error(at_index("cocycle.symbols", i) + ": expected a string");
            c.symbols.insert(syms[i].get<std::string>());
        }
    }
    const std::string variant = string_field(doc, "variant", ctx);
    const std::size_t k = static_cast<std::size_t>(g.k());
    if (variant == "pullback") {
        c.data = PullbackCocycle{phase_matrix_from(field(doc, "theta_matrix", ctx), k, c.symbols,
                                                   "cocycle.theta_matrix")};
    } else if (variant == "phi_omega") {
        PhiOmegaCocycle po;
        long long b = int_field(doc, "base_colors", ctx);
        if (b < 0 || b > static_cast<long long>(k)) throw Error("cocycle.base_colors: out of range");
        po.base_colors = static_cast<int>(b);
        po.phi.l = k - static_cast<std::size_t>(b);
        const Json &phi = field(doc, "phi", ctx);
        if (!phi.is_object()) throw Error("cocycle.phi: expected an object keyed by edge id");
        for (const auto &[name, val] : phi.items()) {
            const std::string pc = "cocycle.phi." + name;
            if (!val.is_array() || val.size() != po.phi.l)
                throw Error(pc + ": expected " + std::to_string(po.phi.l) + " phase literals");
            PhaseVector v(po.phi.l);
            for (std::size_t i = 0; i < po.phi.l; ++i) v[i] = phase_from(val[i], c.symbols, at_index(pc, i));
            po.phi.values[name] = v;
        }
        po.omega.matrix = phase_matrix_from(field(doc, "omega", ctx), po.phi.l, c.symbols, "cocycle.omega");
        c.data = po;
    } else if (variant == "table") {
        TableCocycle t;
        const Json &rows = array_field(doc, "table", ctx);
        auto path_of = [&](const Json &v, const std::string &pc) {
            if (!v.is_array() || v.empty()) throw Error(pc + ": expected a nonempty list of edge ids");
            std::vector<std::string> names;
            for (const auto &x : v) {
                if (!x.is_string()) throw Error(pc + ": edge ids must be strings");
                if (!g.has_edge(x.get<std::string>()))
                    throw Error(pc + ": unknown edge '" + x.get<std::string>() + "'");
                names.push_back(x.get<std::string>());
            }
            try {
                return path_from_names(g, names);
            } catch (const Error &e) {
                throw Error(pc + ": " + e.what());
            }
        };
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::string rc = at_index("cocycle.table", i);
            Path mu = path_of(field(rows[i], "mu", rc), rc + ".mu");
            Path nu = path_of(field(rows[i], "nu", rc), rc + ".nu");
            if (mu.source != nu.range) throw Error(rc + ": mu and nu are not composable");
            if (!t.entries.emplace(std::make_pair(mu, nu), phase_from(field(rows[i], "value", rc), c.symbols,
                                                                      rc + ".value"))
                     .second)
                throw Error(rc + ": duplicate entry");
        }
        c.data = std::move(t);
    } else {
        throw Error("cocycle.variant: unknown variant '" + variant + "'");
    }
    return c;
}

inline Json cocycle_to_json(const CocycleSpec &c, const KGraph &g) {
    Json doc{{"symbols", Json(std::vector<std::string>(c.symbols.begin(), c.symbols.end()))},
             {"variant", c.variant_name()}};
    if (const auto *pb = std::get_if<PullbackCocycle>(&c.data)) {
        doc["theta_matrix"] = detail::phase_matrix_json(pb->theta);
    } else if (const auto *po = std::get_if<PhiOmegaCocycle>(&c.data)) {
        doc["base_colors"] = po->base_colors;
        Json phi = Json::object();
        for (const auto &[name, v] : po->phi.values) phi[name] = detail::phase_vector_json(v);
        doc["phi"] = phi;
        doc["omega"] = detail::phase_matrix_json(po->omega.matrix);
    } else {
        Json rows = Json::array();
        auto names = [&](const Path &p) {
            std::vector<std::string> out;
            for (int e : p.edges) out.push_back(g.edge(e).name);
            return out;
        };
        for (const auto &[key, value] : std::get<TableCocycle>(c.data).entries)
            rows.push_back({{"mu", names(key.first)}, {"nu", names(key.second)}, {"value", value.str()}});
        doc["table"] = rows;
    }
    return doc;
}

inline CocycleSpec parse_cocycle_text(const std::string &text, const KGraph &g) {
    return cocycle_from_json(detail::parse_json_text(text, "cocycle"), g);
}

inline CocycleSpec load_cocycle(const std::string &path, const KGraph &g) {
    try {
        return parse_cocycle_text(read_file(path), g);
    } catch (const Error &e) {
        throw Error(path + ": " + e.what());
    }
}

inline bool operator==(const CocycleSpec &a, const CocycleSpec &b) {
    if (a.symbols != b.symbols || a.data.index() != b.data.index()) return false;
    if (const auto *pa = std::get_if<PullbackCocycle>(&a.data))
        return pa->theta == std::get<PullbackCocycle>(b.data).theta;
    if (const auto *pa = std::get_if<PhiOmegaCocycle>(&a.data)) {
        const auto &pb = std::get<PhiOmegaCocycle>(b.data);
        return pa->base_colors == pb.base_colors && pa->phi.l == pb.phi.l &&
               pa->phi.values == pb.phi.values && pa->omega.matrix == pb.omega.matrix;
    }
    return std::get<TableCocycle>(a.data).entries == std::get<TableCocycle>(b.data).entries;
}

// ---- reports ----

inline Json validation_json(const ValidationReport &r) {
    return {{"ok", r.ok()}, {"issues", r.issues}};
}

inline Json cofinality_json(const KGraph &g, const CofinalityVerdict &v) {
    Json out{{"status", status_str(v.status)}, {"reason", v.reason}};
    if (v.path) {
        out["witness_path"] = infinite_path_str(g, *v.path);
        out["witness_vertex"] = g.vertex_name(v.vertex);
    }
    return out;
}

inline Json per_json(const PeriodicityResult &p) {
    Json acc = Json::array();
    for (const auto &d : p.accepted) acc.push_back(detail::degree_json(d));
    return {{"lattice", detail::lattice_json(p.lattice)},
            {"exhaustive_up_to", detail::degree_json(p.exhaustive_up_to)},
            {"per_vertex_agreement", p.per_vertex_agreement},
            {"accepted_periods", acc}};
}

inline Json aperiodicity_json(const KGraph &g, const AperiodicityVerdict &v) {
    Json out{{"status", status_str(v.status)}, {"reason", v.reason}, {"bound", v.bound}};
    if (v.period) out["period"] = detail::degree_json(*v.period);
    if (v.vertex >= 0) out["vertex"] = g.vertex_name(v.vertex);
    return out;
}

inline Json omega_json(const KGraph &g, const OmegaResult &o) {
    return {{"omega_lower", detail::phase_matrix_json(o.omega.matrix)},
            {"antisymmetrization", detail::phase_matrix_json(o.antisymmetrization)},
            {"base_point", infinite_path_str(g, o.base_point)},
            {"partition_depth", detail::degree_json(o.depth)}};
}

inline Json comparison_json(const KGraph &g, const OmegaComparison &c) {
    Json entries = Json::array(), anti = Json::array();
    for (std::size_t i = 0; i < c.closed_form.entries.size(); ++i) {
        Json r = Json::array(), a = Json::array();
        for (std::size_t j = 0; j < c.closed_form.entries[i].size(); ++j) {
            const auto &e = c.closed_form.entries[i][j];
            r.push_back(e ? Json(e->str()) : Json(nullptr));
            const auto &x = c.closed_antisymmetrization[i][j];
            a.push_back(x ? Json(x->str()) : Json(nullptr));
        }
        entries.push_back(r);
        anti.push_back(a);
    }
    return {{"lambda", path_str(g, c.closed_form.lambda)},
            {"closed_form", entries},
            {"closed_form_antisymmetrization", anti},
            {"oracle_antisymmetrization", detail::phase_matrix_json(c.oracle_antisymmetrization)},
            {"entries_compared", c.entries_compared},
            {"agree", c.agree()},
            {"discrepancies", c.discrepancies}};
}

inline Json certificate_json(const KGraph &g, const SimplicityCertificate &cert) {
    Json out{{"kind", certificate_kind(cert)}};
    std::visit(
        [&](const auto &c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, NotCofinalCertificate>) {
                out["path"] = infinite_path_str(g, c.path);
                out["vertex"] = g.vertex_name(c.vertex);
            } else if constexpr (std::is_same_v<T, PotentialNonDensity>) {
                out["n"] = detail::int_vector_json(c.potential.n);
                Json psi = Json::object();
                for (std::size_t v = 0; v < c.potential.psi.size(); ++v)
                    psi[g.vertex_name(static_cast<int>(v))] = c.potential.psi[v].str();
                out["psi"] = psi;
            } else if constexpr (std::is_same_v<T, KroneckerDensity>) {
                out["scale"] = to_string(c.transcript.system.scale);
                out["system"] = detail::int_matrix_json(c.transcript.system.rows);
                out["U"] = detail::int_matrix_json(c.transcript.U);
                out["H"] = detail::int_matrix_json(c.transcript.H);
                out["rank"] = c.transcript.rank;
            } else if constexpr (std::is_same_v<T, AnnihilatorEvidence>) {
                out["n"] = detail::int_vector_json(c.n);
            }
        },
        cert);
    return out;
}

inline Json simplicity_json(const KGraph &g, const SimplicityReport &r) {
    Json per_basis = Json::array(), z_amb = Json::array(), gens = Json::array();
    for (const auto &d : r.per_basis) per_basis.push_back(detail::degree_json(d));
    for (const auto &d : r.z_omega_ambient) z_amb.push_back(detail::degree_json(d));
    for (const auto &v : r.density_generators) gens.push_back(detail::phase_vector_json(v));
    Json out{{"verdict", verdict_str(r.verdict)},
             {"stage", r.stage},
             {"reason", r.reason},
             {"cofinality", cofinality_json(g, r.cofinality)},
             {"per_basis", per_basis},
             {"z_omega", detail::lattice_json(r.z_omega)},
             {"z_omega_in_degrees", z_amb},
             {"density_generators", gens},
             {"generators_stabilized", r.generators_stabilized},
             {"certificate", certificate_json(g, r.certificate)},
             {"bounds", {{"period", r.period_bound}, {"orbit", r.orbit_bound}}}};
    if (r.per) out["per"] = per_json(*r.per);
    if (r.omega) out["omega"] = omega_json(g, *r.omega);
    return out;
}

/// Wraps a payload with version and input digests.
inline Json envelope(const std::string &command, const std::vector<std::pair<std::string, std::string>> &inputs,
                     Json payload) {
    Json in = Json::array();
    for (const auto &[name, digest] : inputs) in.push_back({{"path", name}, {"fnv1a64", digest}});
    return {{"tool", "kgtwist"}, {"version", tool_version}, {"command", command}, {"inputs", in},
            {"result", std::move(payload)}};
}

} // namespace kgtwist
