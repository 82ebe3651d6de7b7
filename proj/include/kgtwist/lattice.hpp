#pragma once

// Integer lattices in Z^r: Hermite and Smith normal forms, kernels, lattice
// arithmetic, and the character-annihilator solver behind Kronecker density.

#include "numeric.hpp"
#include "phase.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kgtwist {

using IntMatrix = std::vector<IntVector>;

inline IntMatrix identity_matrix(std::size_t n) {
    IntMatrix m(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix transpose(const IntMatrix &m, std::size_t cols) {
    IntMatrix t(cols, IntVector(m.size(), 0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    return t;
}

inline IntMatrix multiply(const IntMatrix &a, const IntMatrix &b, std::size_t b_cols) {
    IntMatrix out(a.size(), IntVector(b_cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < b_cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

inline bool is_zero_vector(const IntVector &v) {
    return std::all_of(v.begin(), v.end(), [](const Integer &x) { return x == 0; });
}

inline std::string vector_str(const IntVector &v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].str();
    }
    return out + ")";
}

/// Row-style Hermite normal form with unimodular transform: U * M = H.
/// Nonzero rows of H come first in echelon form with positive pivots and
/// entries above each pivot reduced into [0, pivot); the rest are zero rows.
struct HermiteResult {
    IntMatrix H;
    IntMatrix U;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

inline HermiteResult hermite_with_transform(const IntMatrix &m, std::size_t cols) {
    HermiteResult r;
    r.H = m;
    r.U = identity_matrix(m.size());
    const std::size_t rows = m.size();
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        std::swap(r.H[a], r.H[b]);
        std::swap(r.U[a], r.U[b]);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Integer &k) {
        if (k == 0) return;
        for (std::size_t j = 0; j < cols; ++j) r.H[dst][j] += k * r.H[src][j];
        for (std::size_t j = 0; j < rows; ++j) r.U[dst][j] += k * r.U[src][j];
    };
    auto negate_row = [&](std::size_t a) {
        for (auto &x : r.H[a]) x = -x;
        for (auto &x : r.U[a]) x = -x;
    };
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        // Euclid on column col among rows >= row.
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = row; i < rows; ++i) {
                if (r.H[i][col] == 0) continue;
                if (best == rows || abs(r.H[i][col]) < abs(r.H[best][col])) best = i;
            }
            if (best == rows) break;
            swap_rows(row, best);
            bool done = true;
            for (std::size_t i = row + 1; i < rows; ++i) {
                if (r.H[i][col] == 0) continue;
                Integer q = r.H[i][col] / r.H[row][col];
                add_row(i, row, -q);
                if (r.H[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (r.H[row][col] == 0) continue;
        if (r.H[row][col] < 0) negate_row(row);
        const Integer &p = r.H[row][col];
        for (std::size_t i = 0; i < row; ++i) {
            Integer q = floor_div(r.H[i][col], p);
            add_row(i, row, -q);
        }
        r.pivots.push_back(col);
        ++row;
    }
    r.rank = row;
    return r;
}

/// Nonzero rows of the Hermite normal form of the row span.
inline IntMatrix hermite_rows(const IntMatrix &m, std::size_t cols) {
    HermiteResult r = hermite_with_transform(m, cols);
    r.H.resize(r.rank);
    return r.H;
}

/// Basis (Hermite form) of {x in Z^cols : M x = 0}.
inline IntMatrix integer_kernel(const IntMatrix &m, std::size_t cols) {
    if (m.empty()) return identity_matrix(cols);
    HermiteResult r = hermite_with_transform(transpose(m, cols), m.size());
    IntMatrix basis(r.U.begin() + static_cast<std::ptrdiff_t>(r.rank), r.U.end());
    return hermite_rows(basis, cols);
}

/// Absolute-value-free determinant via fraction-free elimination.
inline Integer determinant(IntMatrix a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && a[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// A sublattice of Z^r stored by its Hermite basis.
class LatticeBasis {
public:
    LatticeBasis() = default;

    static LatticeBasis zero(std::size_t r) {
        LatticeBasis l;
        l.ambient_ = r;
        return l;
    }
    static LatticeBasis full(std::size_t r) {
        return from_generators(r, identity_matrix(r));
    }
    static LatticeBasis from_generators(std::size_t r, const IntMatrix &gens) {
        for (const auto &g : gens)
            if (g.size() != r) throw Error("lattice generator has wrong dimension");
        LatticeBasis l;
        l.ambient_ = r;
        l.rows_ = hermite_rows(gens, r);
        return l;
    }

    std::size_t ambient_rank() const { return ambient_; }
    std::size_t rank() const { return rows_.size(); }
    bool is_zero() const { return rows_.empty(); }
    bool is_full() const { return *this == full(ambient_); }
    const IntMatrix &basis() const { return rows_; }

    bool contains(IntVector v) const {
        if (v.size() != ambient_) throw Error("rank mismatch in lattice membership");
        for (const auto &row : rows_) {
            std::size_t c = 0;
            while (row[c] == 0) ++c;
            if (v[c] % row[c] != 0) return false;
            Integer q = v[c] / row[c];
            for (std::size_t j = 0; j < ambient_; ++j) v[j] -= q * row[j];
        }
        return is_zero_vector(v);
    }
    bool contains(const LatticeBasis &other) const {
        for (const auto &row : other.rows_)
            if (!contains(row)) return false;
        return true;
    }

    LatticeBasis sum(const LatticeBasis &o) const {
        check(o);
        IntMatrix gens = rows_;
        gens.insert(gens.end(), o.rows_.begin(), o.rows_.end());
        return from_generators(ambient_, gens);
    }

    LatticeBasis intersection(const LatticeBasis &o) const {
        check(o);
        if (is_zero() || o.is_zero()) return zero(ambient_);
        // u A = w B  <=>  (u, w) in ker [A^T | -B^T].
        const std::size_t s = rows_.size(), t = o.rows_.size();
        IntMatrix sys(ambient_, IntVector(s + t, 0));
        for (std::size_t i = 0; i < ambient_; ++i) {
            for (std::size_t a = 0; a < s; ++a) sys[i][a] = rows_[a][i];
            for (std::size_t b = 0; b < t; ++b) sys[i][s + b] = -o.rows_[b][i];
        }
        IntMatrix gens;
        for (const auto &kv : integer_kernel(sys, s + t)) {
            IntVector x(ambient_, 0);
            for (std::size_t a = 0; a < s; ++a)
                for (std::size_t j = 0; j < ambient_; ++j) x[j] += kv[a] * rows_[a][j];
            gens.push_back(std::move(x));
        }
        return from_generators(ambient_, gens);
    }

    /// Z^r intersected with the rational span.
    LatticeBasis saturation() const {
        if (is_zero()) return zero(ambient_);
        IntMatrix complement = integer_kernel(rows_, ambient_);
        if (complement.empty()) return full(ambient_);
        return from_generators(ambient_, integer_kernel(complement, ambient_));
    }

    friend bool operator==(const LatticeBasis &a, const LatticeBasis &b) {
        return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
    }

    std::string str() const {
        if (rows_.empty()) return "{0}";
        std::string out = "span{";
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i) out += ", ";
            out += vector_str(rows_[i]);
        }
        return out + "}";
    }

private:
    void check(const LatticeBasis &o) const {
        if (o.ambient_ != ambient_) throw Error("rank mismatch in lattice operation");
    }
    std::size_t ambient_ = 0;
    IntMatrix rows_;
};

/// U * M * V = D with D diagonal, d_1 | d_2 | ..., all d_i >= 0.
struct SmithResult {
    IntMatrix U, D, V;
    std::vector<Integer> diagonal;
};

inline SmithResult smith_normal_form(const IntMatrix &m, std::size_t cols) {
    const std::size_t rows = m.size();
    SmithResult s;
    s.D = m;
    s.U = identity_matrix(rows);
    s.V = identity_matrix(cols);
    auto row_add = [&](std::size_t dst, std::size_t src, const Integer &k) {
        for (std::size_t j = 0; j < cols; ++j) s.D[dst][j] += k * s.D[src][j];
        for (std::size_t j = 0; j < rows; ++j) s.U[dst][j] += k * s.U[src][j];
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Integer &k) {
        for (std::size_t i = 0; i < rows; ++i) s.D[i][dst] += k * s.D[i][src];
        for (std::size_t i = 0; i < cols; ++i) s.V[i][dst] += k * s.V[i][src];
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        std::swap(s.D[a], s.D[b]);
        std::swap(s.U[a], s.U[b]);
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        for (auto &r : s.D) std::swap(r[a], r[b]);
        for (auto &r : s.V) std::swap(r[a], r[b]);
    };
    const std::size_t n = std::min(rows, cols);
    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            // Smallest nonzero entry in the trailing block becomes the pivot.
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (s.D[i][j] != 0 &&
                        (bi == rows || abs(s.D[i][j]) < abs(s.D[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == rows) break;
            row_swap(t, bi);
            col_swap(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                Integer q = s.D[i][t] / s.D[t][t];
                row_add(i, t, -q);
                if (s.D[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                Integer q = s.D[t][j] / s.D[t][t];
                col_add(j, t, -q);
                if (s.D[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // Enforce divisibility of the remaining block.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (s.D[i][j] % s.D[t][t] != 0) {
                        row_add(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (s.D[t][t] < 0) {
            for (std::size_t j = 0; j < cols; ++j) s.D[t][j] = -s.D[t][j];
            for (std::size_t j = 0; j < rows; ++j) s.U[t][j] = -s.U[t][j];
        }
    }
    for (std::size_t t = 0; t < n; ++t) s.diagonal.push_back(s.D[t][t]);
    return s;
}

/// Integer system whose n-projected kernel is {n in Z^d : n . v in Z for all v}.
/// Unknowns are (n_1..n_d, z_1..z_G); one block of rows per generator:
/// L * (irrational coefficient rows) . n = 0 and L * q_g . n - L z_g = 0.
struct AnnihilatorSystem {
    std::size_t dimension = 0;
    std::size_t generators = 0;
    Integer scale = 1;
    IntMatrix rows;
    std::size_t unknowns() const { return dimension + generators; }
};

inline AnnihilatorSystem annihilator_system(const std::vector<PhaseVector> &gens,
                                            std::size_t d) {
    AnnihilatorSystem sys;
    sys.dimension = d;
    sys.generators = gens.size();
    std::set<std::string> symbols;
    for (const auto &g : gens) {
        if (g.size() != d) throw Error("dimension mismatch: generator of length " +
                                       std::to_string(g.size()) + ", expected " +
                                       std::to_string(d));
        for (const auto &c : g.coords()) {
            sys.scale = lcm(sys.scale, c.common_denominator());
            for (const auto &[s, q] : c.irrational_part()) symbols.insert(s);
        }
    }
    const Integer &L = sys.scale;
    const std::size_t width = sys.unknowns();
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const auto &g = gens[gi];
        for (const auto &sym : symbols) {
            IntVector row(width, 0);
            for (std::size_t i = 0; i < d; ++i) {
                Rational v = g[i].coefficient(sym) * Rational(L);
                row[i] = numerator_of(v);
            }
            if (!is_zero_vector(row)) sys.rows.push_back(std::move(row));
        }
        IntVector row(width, 0);
        for (std::size_t i = 0; i < d; ++i)
            row[i] = numerator_of(g[i].rational_part() * Rational(L));
        row[d + gi] = -L;
        sys.rows.push_back(std::move(row));
    }
    return sys;
}

/// {n in Z^d : n . v is an integer phase for every v in gens}.
inline LatticeBasis character_annihilator(const std::vector<PhaseVector> &gens,
                                          std::size_t d) {
    if (gens.empty()) return LatticeBasis::full(d);
    // Compress: irrational rows to their Hermite basis, congruence rows to the
    // Hermite basis of span{L q_g} + L Z^d; then solve in (n, z).
    AnnihilatorSystem full = annihilator_system(gens, d);
    const Integer &L = full.scale;
    IntMatrix linear, congruence;
    for (const auto &row : full.rows) {
        IntVector head(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(d));
        bool has_z = false;
        for (std::size_t j = d; j < row.size(); ++j)
            if (row[j] != 0) has_z = true;
        (has_z ? congruence : linear).push_back(std::move(head));
    }
    for (std::size_t i = 0; i < d; ++i) {
        IntVector e(d, 0);
        e[i] = L;
        congruence.push_back(std::move(e));
    }
    IntMatrix S = hermite_rows(linear, d);
    IntMatrix B = hermite_rows(congruence, d);
    const std::size_t width = d + B.size();
    IntMatrix sys;
    for (const auto &r : S) {
        IntVector row(width, 0);
        std::copy(r.begin(), r.end(), row.begin());
        sys.push_back(std::move(row));
    }
    for (std::size_t b = 0; b < B.size(); ++b) {
        IntVector row(width, 0);
        std::copy(B[b].begin(), B[b].end(), row.begin());
        row[d + b] = -L;
        sys.push_back(std::move(row));
    }
    IntMatrix gens_n;
    for (const auto &kv : integer_kernel(sys, width))
        gens_n.emplace_back(kv.begin(), kv.begin() + static_cast<std::ptrdiff_t>(d));
    return LatticeBasis::from_generators(d, gens_n);
}

/// p . A . q in Z for all q, after checking that A is antisymmetric mod Z.
inline LatticeBasis annihilator_lattice(const std::vector<std::vector<PhaseExponent>> &A,
                                        std::size_t r) {
    if (A.size() != r) throw Error("annihilator_lattice: matrix has wrong number of rows");
    for (const auto &row : A)
        if (row.size() != r) throw Error("annihilator_lattice: matrix is not square");
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < r; ++j)
            if (!(A[i][j] + A[j][i]).is_trivial() || (i == j && !A[i][i].is_trivial()))
                throw Error("annihilator_lattice: matrix is not antisymmetric at (" +
                            std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    std::vector<PhaseVector> columns;
    for (std::size_t q = 0; q < r; ++q) {
        PhaseVector col(r);
        for (std::size_t i = 0; i < r; ++i) col[i] = A[i][q];
        columns.push_back(std::move(col));
    }
    return character_annihilator(columns, r);
}

/// Proof that the annihilator of a generator set is trivial: the full system
/// E from annihilator_system and a unimodular U with U * E^T = H in echelon form.
struct DensityTranscript {
    AnnihilatorSystem system;
    IntMatrix U;
    IntMatrix H;
    std::size_t rank = 0;
};

struct KroneckerResult {
    bool dense = false;
    IntVector annihilating_character; // set when not dense
    LatticeBasis annihilator;
    std::optional<DensityTranscript> transcript; // set when dense
};

inline KroneckerResult kronecker_dense(const std::vector<PhaseVector> &gens, std::size_t d) {
    KroneckerResult res;
    for (const auto &g : gens)
        if (g.size() != d) throw Error("kronecker_dense: dimension mismatch");
    res.annihilator = character_annihilator(gens, d);
    res.dense = res.annihilator.is_zero();
    if (!res.dense) {
        res.annihilating_character = res.annihilator.basis().front();
        return res;
    }
    DensityTranscript t;
    t.system = annihilator_system(gens, d);
    const std::size_t width = t.system.unknowns();
    HermiteResult h = hermite_with_transform(transpose(t.system.rows, width),
                                             t.system.rows.size());
    t.U = std::move(h.U);
    t.H = std::move(h.H);
    t.rank = h.rank;
    res.transcript = std::move(t);
    return res;
}

/// Independent check of a non-density certificate.
inline bool verify_annihilating_character(const std::vector<PhaseVector> &gens,
                                          const IntVector &n) {
    if (is_zero_vector(n)) return false;
    for (const auto &g : gens) {
        if (g.size() != n.size()) return false;
        if (!g.pair(n).is_trivial()) return false;
    }
    return true;
}

/// Independent check of a density transcript against the generators.
inline bool verify_density_transcript(const std::vector<PhaseVector> &gens, std::size_t d,
                                      const DensityTranscript &t) {
    AnnihilatorSystem rebuilt = annihilator_system(gens, d);
    if (rebuilt.rows != t.system.rows || rebuilt.dimension != d) return false;
    const std::size_t width = rebuilt.unknowns();
    const std::size_t eq = rebuilt.rows.size();
    if (t.U.size() != width || t.H.size() != width) return false;
    Integer det = determinant(t.U);
    if (det != 1 && det != -1) return false;
    if (multiply(t.U, transpose(rebuilt.rows, width), eq) != t.H) return false;
    // Echelon: strictly increasing pivot columns on the first rank rows, zero after.
    std::ptrdiff_t last = -1;
    for (std::size_t i = 0; i < width; ++i) {
        std::size_t c = 0;
        while (c < eq && t.H[i][c] == 0) ++c;
        if (i < t.rank) {
            if (c == eq || static_cast<std::ptrdiff_t>(c) <= last) return false;
            last = static_cast<std::ptrdiff_t>(c);
        } else if (c != eq) {
            return false;
        }
    }
    // Kernel rows of U must vanish on the n-coordinates.
    for (std::size_t i = t.rank; i < width; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (t.U[i][j] != 0) return false;
    return true;
}

} // namespace kgtwist
