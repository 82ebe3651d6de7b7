#include "kgtwist/phase.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace kgtwist;

namespace {

const std::set<std::string> kSymbols{"theta", "rho"};

PhaseExponent P(const std::string &s) { return parse_phase(s, kSymbols); }

} // namespace

TEST(Rational, ParseAndPrint) {
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-4"), Rational(-4));
    EXPECT_EQ(to_string(Rational(-3, 9)), "-1/3");
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("x"), Error);
    EXPECT_THROW(parse_rational("1/"), Error);
}

TEST(Rational, FloorAndFraction) {
    EXPECT_EQ(floor_div(Integer(-7), Integer(2)), Integer(-4));
    EXPECT_EQ(floor_div(Integer(7), Integer(2)), Integer(3));
    EXPECT_EQ(frac(Rational(-1, 3)), Rational(2, 3));
    EXPECT_EQ(frac(Rational(5, 2)), Rational(1, 2));
    EXPECT_TRUE(is_integral(Rational(4, 2)));
    EXPECT_EQ(lcm(Integer(4), Integer(6)), Integer(12));
}

TEST(Phase, Triviality) {
    EXPECT_FALSE(P("1/2").is_trivial());
    EXPECT_TRUE(P("3 + 0*theta").is_trivial());
    EXPECT_FALSE(P("0 + 1*theta").is_trivial());
    EXPECT_TRUE(P("theta - theta + 2").is_trivial());
}

TEST(Phase, LiteralParsing) {
    PhaseExponent a = P("1/3 + 2*theta");
    EXPECT_EQ(a.rational_part(), Rational(1, 3));
    EXPECT_EQ(a.coefficient("theta"), Rational(2));
    EXPECT_EQ(a.coefficient("rho"), Rational(0));
    EXPECT_EQ(P("-theta").coefficient("theta"), Rational(-1));
    EXPECT_EQ(P("1/2*rho - 1").rational_part(), Rational(-1));
    EXPECT_THROW(P("phi"), Error);
    EXPECT_THROW(P(""), Error);
    EXPECT_THROW(P("1 + + 2"), Error);
}

TEST(Phase, CanonicalLiteralRoundTrips) {
    for (const char *s : {"0", "-1/2", "1/3 + 2*theta", "-theta + 1*rho", "5 - 3/4*rho + theta"}) {
        PhaseExponent a = P(s);
        EXPECT_EQ(P(a.str()), a) << s;
    }
    EXPECT_EQ(P("-theta").str(), "0 + -1*theta");
}

TEST(Phase, ReducedKeepsPhase) {
    PhaseExponent a = P("-7/3 + theta");
    EXPECT_EQ(a.reduced().rational_part(), Rational(2, 3));
    EXPECT_TRUE(a.congruent(a.reduced()));
    EXPECT_EQ(P("1/6 + 3/4*theta").common_denominator(), Integer(12));
}

TEST(Phase, AbelianGroupLawsOnRandomExponents) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
    auto random_phase = [&] {
        PhaseExponent p(Rational(num(rng), den(rng)));
        p += PhaseExponent::symbol("theta", Rational(num(rng), den(rng)));
        p += PhaseExponent::symbol("rho", Rational(num(rng), den(rng)));
        return p;
    };
    for (int i = 0; i < 200; ++i) {
        PhaseExponent a = random_phase(), b = random_phase(), c = random_phase();
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a + b, b + a);
        EXPECT_TRUE((a - a).is_zero());
        EXPECT_EQ(a + PhaseExponent{}, a);
        EXPECT_EQ(Rational(3) * a, a + a + a);
    }
}

TEST(PhaseVector, PairingAndArithmetic) {
    PhaseVector v({P("theta"), P("1/2")});
    EXPECT_EQ(v.pair({Integer(2), Integer(1)}), P("1/2 + 2*theta"));
    EXPECT_TRUE(PhaseVector({P("1"), P("-3")}).is_trivial());
    EXPECT_EQ((v - v).is_trivial(), true);
    EXPECT_THROW(v.pair({Integer(1)}), Error);
}
