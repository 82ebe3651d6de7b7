#pragma once

// Exact arithmetic in the circle group T = R/Z. A phase is stored through its
// exponent q0 + sum_j q_j * xi_j, where the xi_j are formal symbols declared
// Q-linearly independent together with 1.

#include "numeric.hpp"

#include <cctype>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace kgtwist {

class PhaseExponent {
public:
    PhaseExponent() = default;
    PhaseExponent(Rational rational) : rational_(std::move(rational)) {}
    PhaseExponent(long long v) : rational_(v) {}

    static PhaseExponent symbol(const std::string &name,
                                Rational coefficient = 1) {
        PhaseExponent e;
        if (coefficient != 0) e.irrational_[name] = std::move(coefficient);
        return e;
    }

    const Rational &rational_part() const { return rational_; }
    const std::map<std::string, Rational> &irrational_part() const {
        return irrational_;
    }
    Rational coefficient(const std::string &sym) const {
        auto it = irrational_.find(sym);
        return it == irrational_.end() ? Rational(0) : it->second;
    }

    /// The phase e^{2 pi i (.)} equals 1.
    bool is_trivial() const {
        return irrational_.empty() && is_integral(rational_);
    }
    bool is_zero() const { return irrational_.empty() && rational_ == 0; }
    bool congruent(const PhaseExponent &other) const {
        return (*this - other).is_trivial();
    }
    /// Same phase, rational part moved into [0, 1).
    PhaseExponent reduced() const {
        PhaseExponent r = *this;
        r.rational_ = frac(rational_);
        return r;
    }

    /// Lowest common denominator of all coefficients.
    Integer common_denominator() const {
        Integer l = denominator_of(rational_);
        for (const auto &[s, q] : irrational_) l = lcm(l, denominator_of(q));
        return l;
    }

    PhaseExponent &operator+=(const PhaseExponent &o) {
        rational_ += o.rational_;
        for (const auto &[s, q] : o.irrational_) {
            Rational &c = irrational_[s];
            c += q;
            if (c == 0) irrational_.erase(s);
        }
        return *this;
    }
    PhaseExponent &operator-=(const PhaseExponent &o) { return *this += -o; }
    PhaseExponent operator-() const {
        PhaseExponent r;
        r.rational_ = -rational_;
        for (const auto &[s, q] : irrational_) r.irrational_[s] = -q;
        return r;
    }
    PhaseExponent &operator*=(const Rational &k) {
        if (k == 0) return *this = PhaseExponent{};
        rational_ *= k;
        for (auto &[s, q] : irrational_) q *= k;
        return *this;
    }
    friend PhaseExponent operator+(PhaseExponent a, const PhaseExponent &b) {
        return a += b;
    }
    friend PhaseExponent operator-(PhaseExponent a, const PhaseExponent &b) {
        return a -= b;
    }
    friend PhaseExponent operator*(PhaseExponent a, const Rational &k) {
        return a *= k;
    }
    friend PhaseExponent operator*(const Rational &k, PhaseExponent a) {
        return a *= k;
    }
    friend PhaseExponent operator*(long long k, PhaseExponent a) {
        return a *= Rational(k);
    }

    friend bool operator==(const PhaseExponent &, const PhaseExponent &) = default;
    friend bool operator<(const PhaseExponent &a, const PhaseExponent &b) {
        if (a.rational_ != b.rational_) return a.rational_ < b.rational_;
        return a.irrational_ < b.irrational_;
    }

    /// Canonical literal: "q0" or "q0 + c1*s1 + c2*s2" (symbols sorted).
    std::string str() const {
        std::string out = to_string(rational_);
        for (const auto &[s, q] : irrational_) out += " + " + to_string(q) + "*" + s;
        return out;
    }

private:
    Rational rational_{0};
    std::map<std::string, Rational> irrational_;
};

inline std::ostream &operator<<(std::ostream &os, const PhaseExponent &e) {
    return os << e.str();
}

/// Parses a phase literal. Accepted terms are rationals, `c*sym`, `sym`, joined by
/// `+` or `-`; every symbol must be declared.
inline PhaseExponent parse_phase(const std::string &text,
                                 const std::set<std::string> &symbols) {
    PhaseExponent out;
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw Error("empty phase literal");
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw Error("malformed phase literal '" + text + "'");
        }
        // A term runs up to the next '+' or '-' that is not part of "*-" or a
        // leading sign of a coefficient.
        std::size_t j = i;
        while (j < s.size()) {
            if ((s[j] == '+' || s[j] == '-') && j > i && s[j - 1] != '*') break;
            ++j;
        }
        std::string term = s.substr(i, j - i);
        if (term.empty() || term[0] == '+') throw Error("malformed phase literal '" + text + "'");
        auto star = term.find('*');
        std::string coef_text, sym;
        if (star != std::string::npos) {
            coef_text = term.substr(0, star);
            sym = term.substr(star + 1);
        } else if (std::isalpha(static_cast<unsigned char>(term[0])) || term[0] == '_') {
            coef_text = "1";
            sym = term;
        } else {
            coef_text = term;
        }
        Rational coef = parse_rational(coef_text) * sign;
        if (sym.empty()) {
            out += PhaseExponent(coef);
        } else {
            if (!symbols.count(sym))
                throw Error("undeclared symbol '" + sym + "' in phase literal '" + text + "'");
            out += PhaseExponent::symbol(sym, coef);
        }
        first = false;
        i = j;
    }
    return out;
}

/// A point of T^d in exponent coordinates.
class PhaseVector {
public:
    PhaseVector() = default;
    explicit PhaseVector(std::size_t d) : coords_(d) {}
    PhaseVector(std::vector<PhaseExponent> coords) : coords_(std::move(coords)) {}

    std::size_t size() const { return coords_.size(); }
    const PhaseExponent &operator[](std::size_t i) const { return coords_[i]; }
    PhaseExponent &operator[](std::size_t i) { return coords_[i]; }
    const std::vector<PhaseExponent> &coords() const { return coords_; }

    /// Character pairing n . v.
    PhaseExponent pair(const IntVector &n) const {
        if (n.size() != coords_.size()) throw Error("dimension mismatch in character pairing");
        PhaseExponent out;
        for (std::size_t i = 0; i < n.size(); ++i)
            if (n[i] != 0) out += coords_[i] * Rational(n[i]);
        return out;
    }

    bool is_trivial() const {
        for (const auto &c : coords_)
            if (!c.is_trivial()) return false;
        return true;
    }
    PhaseVector reduced() const {
        PhaseVector r = *this;
        for (auto &c : r.coords_) c = c.reduced();
        return r;
    }

    PhaseVector &operator+=(const PhaseVector &o) {
        check(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
        return *this;
    }
    PhaseVector &operator-=(const PhaseVector &o) {
        check(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
        return *this;
    }
    PhaseVector operator-() const {
        PhaseVector r = *this;
        for (auto &c : r.coords_) c = -c;
        return r;
    }
    friend PhaseVector operator+(PhaseVector a, const PhaseVector &b) { return a += b; }
    friend PhaseVector operator-(PhaseVector a, const PhaseVector &b) { return a -= b; }
    friend bool operator==(const PhaseVector &, const PhaseVector &) = default;
    friend bool operator<(const PhaseVector &a, const PhaseVector &b) {
        return a.coords_ < b.coords_;
    }

    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) out += ", ";
            out += coords_[i].str();
        }
        return out + ")";
    }

private:
    void check(const PhaseVector &o) const {
        if (o.size() != size()) throw Error("phase vector dimension mismatch");
    }
    std::vector<PhaseExponent> coords_;
};

} // namespace kgtwist
