#pragma once

// Finite k-graphs presented by a colored skeleton and commuting squares, and
// the path category they generate.

#include "degree.hpp"

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace kgtwist {

struct ValidationReport {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
    void add(std::string s) { issues.push_back(std::move(s)); }
};

struct EdgeSpec {
    std::string name;
    int color; // 0-based
    std::string range;
    std::string source;
};

/// fg = g'f' with color(f) = i < j = color(g).
struct SquareSpec {
    int i, j; // 0-based colors as declared
    std::string f, g, gp, fp;
};

class KGraph {
public:
    struct Edge {
        std::string name;
        int color;
        int range;
        int source;
    };
    struct Square {
        int i, j;
        int f, g, gp, fp;
    };

    KGraph() = default;

    KGraph(int k, const std::vector<std::string> &vertices,
           const std::vector<EdgeSpec> &edges, const std::vector<SquareSpec> &squares)
        : k_(k), vertices_(vertices) {
        if (k < 1) throw Error("k must be a positive integer");
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (!vertex_index_.emplace(vertices_[v], static_cast<int>(v)).second)
                throw Error("duplicate vertex '" + vertices_[v] + "'");
        for (const auto &e : edges) {
            if (e.color < 0 || e.color >= k)
                throw Error("edge '" + e.name + "' has color " + std::to_string(e.color + 1) +
                            " outside 1.." + std::to_string(k));
            auto r = vertex_index_.find(e.range), s = vertex_index_.find(e.source);
            if (r == vertex_index_.end())
                throw Error("edge '" + e.name + "' references unknown vertex '" + e.range + "'");
            if (s == vertex_index_.end())
                throw Error("edge '" + e.name + "' references unknown vertex '" + e.source + "'");
            if (!edge_index_.emplace(e.name, static_cast<int>(edges_.size())).second)
                throw Error("duplicate edge '" + e.name + "'");
            edges_.push_back({e.name, e.color, r->second, s->second});
        }
        into_.assign(vertices_.size(), std::vector<std::vector<int>>(k));
        for (std::size_t e = 0; e < edges_.size(); ++e)
            into_[edges_[e].range][edges_[e].color].push_back(static_cast<int>(e));
        for (const auto &sq : squares) {
            auto lookup = [&](const std::string &n) {
                auto it = edge_index_.find(n);
                if (it == edge_index_.end())
                    throw Error("square references unknown edge '" + n + "'");
                return it->second;
            };
            Square s{sq.i, sq.j, lookup(sq.f), lookup(sq.g), lookup(sq.gp), lookup(sq.fp)};
            squares_.push_back(s);
            auto key = std::make_pair(s.f, s.g);
            auto val = std::make_pair(s.gp, s.fp);
            if (!forward_.emplace(key, val).second) duplicate_sources_.push_back(key);
            backward_.emplace(val, key);
        }
    }

    int k() const { return k_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    const std::vector<std::string> &vertices() const { return vertices_; }
    const std::vector<Edge> &edges() const { return edges_; }
    const std::vector<Square> &squares() const { return squares_; }
    const Edge &edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
    const std::string &vertex_name(int v) const { return vertices_.at(static_cast<std::size_t>(v)); }

    int vertex(const std::string &name) const {
        auto it = vertex_index_.find(name);
        if (it == vertex_index_.end()) throw Error("unknown vertex '" + name + "'");
        return it->second;
    }
    int edge_id(const std::string &name) const {
        auto it = edge_index_.find(name);
        if (it == edge_index_.end()) throw Error("unknown edge '" + name + "'");
        return it->second;
    }
    bool has_edge(const std::string &name) const { return edge_index_.count(name) > 0; }

    /// Edges of the given color with range v, in declaration order.
    const std::vector<int> &edges_into(int v, int color) const {
        return into_.at(static_cast<std::size_t>(v)).at(static_cast<std::size_t>(color));
    }

    /// Rewrites the adjacent pair xy (different colors) into the other order.
    std::pair<int, int> swap_pair(int x, int y) const {
        const auto &ex = edge(x), &ey = edge(y);
        if (ex.color == ey.color) throw Error("cannot swap edges of equal color");
        if (ex.color < ey.color) {
            auto it = forward_.find({x, y});
            if (it == forward_.end())
                throw Error("no commuting square for (" + ex.name + "," + ey.name + ")");
            return it->second;
        }
        auto it = backward_.find({x, y});
        if (it == backward_.end())
            throw Error("no commuting square ending in (" + ex.name + "," + ey.name + ")");
        return it->second;
    }
    bool has_forward(int f, int g) const { return forward_.count({f, g}) > 0; }
    bool has_backward(int gp, int fp) const { return backward_.count({gp, fp}) > 0; }

    const std::vector<std::pair<int, int>> &duplicate_square_sources() const {
        return duplicate_sources_;
    }

    friend bool operator==(const KGraph &a, const KGraph &b) {
        auto edge_key = [](const KGraph &g) {
            std::vector<std::tuple<std::string, int, std::string, std::string>> out;
            for (const auto &e : g.edges_)
                out.emplace_back(e.name, e.color, g.vertices_[e.range], g.vertices_[e.source]);
            return out;
        };
        auto square_key = [](const KGraph &g) {
            std::set<std::vector<std::string>> out;
            for (const auto &s : g.squares_)
                out.insert({g.edges_[s.f].name, g.edges_[s.g].name, g.edges_[s.gp].name,
                            g.edges_[s.fp].name});
            return out;
        };
        return a.k_ == b.k_ && a.vertices_ == b.vertices_ && edge_key(a) == edge_key(b) &&
               square_key(a) == square_key(b);
    }

private:
    int k_ = 0;
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<Square> squares_;
    std::map<std::string, int> vertex_index_, edge_index_;
    std::vector<std::vector<std::vector<int>>> into_;
    std::map<std::pair<int, int>, std::pair<int, int>> forward_, backward_;
    std::vector<std::pair<int, int>> duplicate_sources_;
};

/// A morphism in normal form: edges listed range-to-source with colors nondecreasing.
struct Path {
    int range = 0;
    int source = 0;
    Degree degree;
    std::vector<int> edges;

    bool is_vertex() const { return edges.empty(); }
    std::size_t length() const { return edges.size(); }

    friend bool operator==(const Path &a, const Path &b) {
        return a.range == b.range && a.source == b.source && a.edges == b.edges;
    }
    friend bool operator<(const Path &a, const Path &b) {
        return std::tie(a.range, a.source, a.degree, a.edges) <
               std::tie(b.range, b.source, b.degree, b.edges);
    }
};

inline Path vertex_path(const KGraph &g, int v) {
    return Path{v, v, zero_degree(static_cast<std::size_t>(g.k())), {}};
}

inline std::string path_str(const KGraph &g, const Path &p) {
    if (p.is_vertex()) return g.vertex_name(p.range);
    std::string out;
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        if (i) out += ".";
        out += g.edge(p.edges[i]).name;
    }
    return out;
}

/// Moves edges into the requested color sequence by adjacent square rewrites.
inline std::vector<int> reorder_to_colors(const KGraph &g, std::vector<int> word,
                                          const std::vector<int> &target) {
    for (std::size_t pos = 0; pos < word.size(); ++pos) {
        if (g.edge(word[pos]).color == target[pos]) continue;
        std::size_t q = pos + 1;
        while (q < word.size() && g.edge(word[q]).color != target[pos]) ++q;
        if (q == word.size()) throw Error("internal: color sequence mismatch");
        for (; q > pos; --q) {
            auto [a, b] = g.swap_pair(word[q - 1], word[q]);
            word[q - 1] = a;
            word[q] = b;
        }
    }
    return word;
}

inline std::vector<int> sorted_colors(const Degree &d) {
    std::vector<int> colors;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (long long n = 0; n < d[i]; ++n) colors.push_back(static_cast<int>(i));
    return colors;
}

/// Builds a path from any composable edge word, normalizing it.
inline Path path_from_word(const KGraph &g, const std::vector<int> &word) {
    if (word.empty()) throw Error("empty edge word has no vertex; use vertex_path");
    Degree d = zero_degree(static_cast<std::size_t>(g.k()));
    for (std::size_t i = 0; i < word.size(); ++i) {
        d[static_cast<std::size_t>(g.edge(word[i]).color)] += 1;
        if (i + 1 < word.size() && g.edge(word[i]).source != g.edge(word[i + 1]).range)
            throw Error("source/range mismatch");
    }
    Path p{g.edge(word.front()).range, g.edge(word.back()).source, d, {}};
    p.edges = reorder_to_colors(g, word, sorted_colors(d));
    return p;
}

inline Path path_from_names(const KGraph &g, const std::vector<std::string> &names) {
    std::vector<int> word;
    for (const auto &n : names) word.push_back(g.edge_id(n));
    return path_from_word(g, word);
}

inline Path edge_path(const KGraph &g, int e) { return path_from_word(g, {e}); }

inline Path compose(const KGraph &g, const Path &p, const Path &q) {
    if (p.source != q.range) throw Error("source/range mismatch");
    if (p.is_vertex()) return q;
    if (q.is_vertex()) return p;
    std::vector<int> word = p.edges;
    word.insert(word.end(), q.edges.begin(), q.edges.end());
    Path r{p.range, q.source, p.degree + q.degree, {}};
    r.edges = reorder_to_colors(g, std::move(word), sorted_colors(r.degree));
    return r;
}

/// p = head . tail with d(head) = m.
inline std::pair<Path, Path> factorize(const KGraph &g, const Path &p, const Degree &m) {
    if (m.size() != p.degree.size() || !is_nonnegative(m) || !leq(m, p.degree))
        throw Error("factorize: degree " + degree_str(m) + " is not <= " +
                    degree_str(p.degree));
    std::vector<int> target = sorted_colors(m);
    std::vector<int> rest = sorted_colors(p.degree - m);
    const std::size_t split = target.size();
    target.insert(target.end(), rest.begin(), rest.end());
    std::vector<int> word = reorder_to_colors(g, p.edges, target);
    Path head{p.range, p.range, m, {}}, tail{p.range, p.source, p.degree - m, {}};
    head.edges.assign(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(split));
    tail.edges.assign(word.begin() + static_cast<std::ptrdiff_t>(split), word.end());
    if (!head.edges.empty()) {
        head.source = g.edge(head.edges.back()).source;
        tail.range = head.source;
    }
    return {head, tail};
}

/// p(m, n): the part of p between degrees m and n.
inline Path segment(const KGraph &g, const Path &p, const Degree &m, const Degree &n) {
    if (!leq(m, n)) throw Error("segment: " + degree_str(m) + " is not <= " + degree_str(n));
    Path head = factorize(g, p, n).first;
    return factorize(g, head, m).second;
}

/// vΛ^n in deterministic order (edge declaration order, colors ascending).
inline std::vector<Path> paths_from(const KGraph &g, int v, const Degree &n) {
    std::vector<int> colors = sorted_colors(n);
    std::vector<Path> out;
    std::vector<int> word;
    auto rec = [&](auto &&self, int at, std::size_t pos) -> void {
        if (pos == colors.size()) {
            out.push_back(Path{v, at, n, word});
            return;
        }
        for (int e : g.edges_into(at, colors[pos])) {
            word.push_back(e);
            self(self, g.edge(e).source, pos + 1);
            word.pop_back();
        }
    };
    rec(rec, v, 0);
    return out;
}

/// Λ^n over all range vertices.
inline std::vector<Path> paths_of_degree(const KGraph &g, const Degree &n) {
    std::vector<Path> out;
    for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v) {
        auto ps = paths_from(g, v, n);
        out.insert(out.end(), ps.begin(), ps.end());
    }
    return out;
}

inline ValidationReport validate_kgraph(const KGraph &g) {
    ValidationReport rep;
    const int k = g.k();
    const auto &E = g.edges();
    auto name = [&](int e) { return E[static_cast<std::size_t>(e)].name; };

    for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v)
        for (int c = 0; c < k; ++c)
            if (g.edges_into(v, c).empty())
                rep.add("no sources violated: vertex '" + g.vertex_name(v) +
                        "' receives no edge of color " + std::to_string(c + 1));

    for (const auto &s : g.squares()) {
        const auto &f = E[s.f], &gg = E[s.g], &gp = E[s.gp], &fp = E[s.fp];
        std::string tag = "square (" + f.name + "," + gg.name + ")->(" + gp.name + "," +
                          fp.name + ")";
        if (!(s.i < s.j)) rep.add(tag + ": color pair must satisfy i < j");
        if (f.color != s.i || fp.color != s.i || gg.color != s.j || gp.color != s.j)
            rep.add(tag + ": edge colors do not match the declared pair");
        if (f.source != gg.range) rep.add(tag + ": left pair is not composable");
        if (gp.source != fp.range) rep.add(tag + ": right pair is not composable");
        if (gp.range != f.range || fp.source != gg.source)
            rep.add(tag + ": outer range/source not preserved");
    }
    for (const auto &[f, gg] : g.duplicate_square_sources())
        rep.add("square not unique: pair (" + name(f) + "," + name(gg) + ") listed twice");
    {
        std::map<std::pair<int, int>, std::pair<int, int>> seen;
        for (const auto &s : g.squares()) {
            auto [it, fresh] = seen.emplace(std::make_pair(s.gp, s.fp), std::make_pair(s.f, s.g));
            if (!fresh && it->second != std::make_pair(s.f, s.g))
                rep.add("square not injective: (" + name(it->second.first) + "," +
                        name(it->second.second) + ") and (" + name(s.f) + "," + name(s.g) +
                        ") both map to (" + name(s.gp) + "," + name(s.fp) + ")");
        }
    }
    // Totality and surjectivity over composable pairs of distinct colors.
    for (std::size_t a = 0; a < E.size(); ++a)
        for (std::size_t b = 0; b < E.size(); ++b) {
            if (E[a].source != E[b].range) continue;
            int x = static_cast<int>(a), y = static_cast<int>(b);
            if (E[a].color < E[b].color && !g.has_forward(x, y))
                rep.add("square table not total: no square for (" + E[a].name + "," +
                        E[b].name + ")");
            if (E[a].color > E[b].color && !g.has_backward(x, y))
                rep.add("square not surjective: (" + E[a].name + "," + E[b].name +
                        ") is not the image of any pair");
        }
    if (!rep.ok()) return rep;

    // Hexagon condition for colors i < j < l.
    for (std::size_t a = 0; a < E.size(); ++a)
        for (std::size_t b = 0; b < E.size(); ++b) {
            if (E[a].source != E[b].range || E[a].color >= E[b].color) continue;
            for (std::size_t c = 0; c < E.size(); ++c) {
                if (E[b].source != E[c].range || E[b].color >= E[c].color) continue;
                int f = static_cast<int>(a), h = static_cast<int>(c);
                int gg = static_cast<int>(b);
                // Order A: (1,2), (2,3), (1,2).
                auto [g1, f1] = g.swap_pair(f, gg);
                auto [h1, f2] = g.swap_pair(f1, h);
                auto [h2, g2] = g.swap_pair(g1, h1);
                // Order B: (2,3), (1,2), (2,3).
                auto [hb1, gb1] = g.swap_pair(gg, h);
                auto [hb2, fb1] = g.swap_pair(f, hb1);
                auto [gb2, fb2] = g.swap_pair(fb1, gb1);
                if (std::tie(h2, g2, f2) != std::tie(hb2, gb2, fb2))
                    rep.add("associativity violation at (" + E[a].name + "," + E[b].name +
                            "," + E[c].name + ")");
            }
        }
    return rep;
}

/// Adds l new colors, each carrying one loop per vertex, with product squares.
inline KGraph product_with_Tl(const KGraph &g, int l) {
    if (l < 1) throw Error("product_with_Tl: l must be positive");
    const int k = g.k();
    const bool single = g.vertex_count() == 1;
    auto loop_name = [&](int j, int v) {
        std::string base = "t" + std::to_string(k + j + 1);
        return single ? base : base + "_" + g.vertex_name(v);
    };
    std::vector<EdgeSpec> edges;
    for (const auto &e : g.edges())
        edges.push_back({e.name, e.color, g.vertex_name(e.range), g.vertex_name(e.source)});
    for (int j = 0; j < l; ++j)
        for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v)
            edges.push_back({loop_name(j, v), k + j, g.vertex_name(v), g.vertex_name(v)});
    std::vector<SquareSpec> squares;
    for (const auto &s : g.squares())
        squares.push_back({s.i, s.j, g.edge(s.f).name, g.edge(s.g).name, g.edge(s.gp).name,
                           g.edge(s.fp).name});
    for (const auto &e : g.edges())
        for (int j = 0; j < l; ++j)
            squares.push_back({e.color, k + j, e.name, loop_name(j, e.source),
                               loop_name(j, e.range), e.name});
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j)
            for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v)
                squares.push_back({k + i, k + j, loop_name(i, v), loop_name(j, v),
                                   loop_name(j, v), loop_name(i, v)});
    return KGraph(k + l, g.vertices(), edges, squares);
}

/// Restriction to the first base_k colors.
inline KGraph base_graph(const KGraph &g, int base_k) {
    if (base_k < 1 || base_k > g.k()) throw Error("base_graph: invalid number of base colors");
    std::vector<EdgeSpec> edges;
    for (const auto &e : g.edges())
        if (e.color < base_k)
            edges.push_back({e.name, e.color, g.vertex_name(e.range), g.vertex_name(e.source)});
    std::vector<SquareSpec> squares;
    for (const auto &s : g.squares())
        if (s.j < base_k)
            squares.push_back({s.i, s.j, g.edge(s.f).name, g.edge(s.g).name,
                               g.edge(s.gp).name, g.edge(s.fp).name});
    return KGraph(base_k, g.vertices(), edges, squares);
}

/// True when colors base_k.. consist of one loop per vertex each and every
/// square involving them is a product square.
inline bool is_product_with_T(const KGraph &g, int base_k) {
    if (base_k < 1 || base_k >= g.k()) return false;
    for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v)
        for (int c = base_k; c < g.k(); ++c) {
            const auto &in = g.edges_into(v, c);
            if (in.size() != 1 || g.edge(in.front()).source != v) return false;
        }
    for (const auto &s : g.squares()) {
        if (s.j < base_k) continue;
        // (f, t_{s(f)}) -> (t_{r(f)}, f) keeps f; two loops commute outright.
        if (s.f != s.fp) return false;
        if (s.i >= base_k && s.g != s.gp) return false;
    }
    return validate_kgraph(g).ok();
}

/// Named fixtures: Tk, Bn, Cn, DISJOINT2, and products "<name>xT<l>".
inline KGraph builtin(const std::string &name) {
    auto number_after = [&](std::size_t pos) -> int {
        if (pos >= name.size()) throw Error("unknown builtin graph '" + name + "'");
        for (std::size_t i = pos; i < name.size(); ++i)
            if (name[i] < '0' || name[i] > '9') throw Error("unknown builtin graph '" + name + "'");
        int n = std::stoi(name.substr(pos));
        if (n < 1) throw Error("unknown builtin graph '" + name + "'");
        return n;
    };
    auto x = name.rfind("xT");
    if (x != std::string::npos && x > 0) {
        std::string rest = name.substr(x + 2);
        int l = 0;
        try {
            l = std::stoi(rest);
        } catch (...) {
            throw Error("unknown builtin graph '" + name + "'");
        }
        if (std::to_string(l) != rest || l < 1) throw Error("unknown builtin graph '" + name + "'");
        return product_with_Tl(builtin(name.substr(0, x)), l);
    }
    if (name == "DISJOINT2")
        return KGraph(1, {"u", "w"}, {{"l_u", 0, "u", "u"}, {"l_w", 0, "w", "w"}}, {});
    if (name.size() >= 2 && name[0] == 'T') {
        int k = number_after(1);
        std::vector<EdgeSpec> edges;
        std::vector<SquareSpec> squares;
        for (int i = 0; i < k; ++i) edges.push_back({"t" + std::to_string(i + 1), i, "v", "v"});
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                std::string a = "t" + std::to_string(i + 1), b = "t" + std::to_string(j + 1);
                squares.push_back({i, j, a, b, b, a});
            }
        return KGraph(k, {"v"}, edges, squares);
    }
    if (name.size() >= 2 && name[0] == 'B') {
        int n = number_after(1);
        std::vector<EdgeSpec> edges;
        for (int i = 0; i < n; ++i) {
            std::string e = n <= 22 ? std::string(1, static_cast<char>('e' + i))
                                    : "e" + std::to_string(i + 1);
            edges.push_back({e, 0, "v", "v"});
        }
        return KGraph(1, {"v"}, edges, {});
    }
    if (name.size() >= 2 && name[0] == 'C') {
        int n = number_after(1);
        std::vector<std::string> vs;
        for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
        std::vector<EdgeSpec> edges;
        for (int i = 0; i < n; ++i)
            edges.push_back({"e" + std::to_string(i), 0, vs[static_cast<std::size_t>((i + 1) % n)],
                             vs[static_cast<std::size_t>(i)]});
        return KGraph(1, vs, edges, {});
    }
    throw Error("unknown builtin graph '" + name + "'");
}

/// Vertices reachable from v by paths with range v (i.e. sources of vΛ).
inline std::vector<bool> reachable_sources(const KGraph &g, int v) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<int> stack{v};
    seen[static_cast<std::size_t>(v)] = true;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int c = 0; c < g.k(); ++c)
            for (int e : g.edges_into(u, c)) {
                int s = g.edge(e).source;
                if (!seen[static_cast<std::size_t>(s)]) {
                    seen[static_cast<std::size_t>(s)] = true;
                    stack.push_back(s);
                }
            }
    }
    return seen;
}

inline bool strongly_connected(const KGraph &g) {
    for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v)
        for (bool b : reachable_sources(g, v))
            if (!b) return false;
    return true;
}

/// max over vertices and colors of |vΛ^{e_i}|.
inline std::size_t max_edge_multiplicity(const KGraph &g) {
    std::size_t m = 0;
    for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v)
        for (int c = 0; c < g.k(); ++c) m = std::max(m, g.edges_into(v, c).size());
    return m;
}

} // namespace kgtwist
