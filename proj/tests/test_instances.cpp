#include <gtest/gtest.h>

#include "ordlim/parser.hpp"
#include "ordlim/structure.hpp"

using namespace ordlim;

TEST(Rational, CanonicalForm) {
    Rational r(BigInt(4), BigInt(-8));
    EXPECT_EQ(r.num(), -1);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(Rational(BigInt(0), BigInt(7)).den(), 1);
    EXPECT_EQ((Rational(BigInt(3), BigInt(4)) + Rational(BigInt(1), BigInt(4))).str(), "1");
    EXPECT_THROW(Rational(BigInt(1), BigInt(0)), Error);
}

TEST(Rational, ArithmeticAndOrder) {
    Rational a(BigInt(-7), BigInt(8));
    EXPECT_EQ(a.abs().str(), "7/8");
    EXPECT_EQ((a * a.inverse()).str(), "1");
    EXPECT_LT(Rational(BigInt(1), BigInt(3)).compare(Rational(BigInt(1), BigInt(2))), 0);
    EXPECT_EQ(Rational(BigInt(1), BigInt(2)).pow(BigInt(10)).str(), "1/1024");
}

TEST(Rational, DeepDyadicStaysLinear) {
    // Tail-scale values: these would hang if normalize ran a full gcd.
    Rational tiny = Rational(BigInt(1), BigInt(2)).pow(BigInt(2'000'000));
    Rational sum = tiny + Rational(BigInt(1), BigInt(1000000));
    EXPECT_GT(sum.compare(tiny), 0);
    EXPECT_LT(tiny.compare(Rational(BigInt(1), BigInt(1000000))), 0);
}

TEST(Z1p, NormalizedRepresentation) {
    const Structure& Z2 = structure_for("z1p:2");
    Element a = parse_element("3/4", Z2);
    Element b = parse_element("1/8", Z2);
    Element sum = Z2.add(a, b);
    const Z1p& z = std::get<Z1p>(sum);
    EXPECT_EQ(z.m(), 7);
    EXPECT_EQ(z.n(), 3);
    EXPECT_EQ(render(sum), "7/8");
    // 6/2 normalizes to 3 with n = 0.
    Z1p c(2, 6, 1);
    EXPECT_EQ(c.m(), 3);
    EXPECT_EQ(c.n(), 0);
}

TEST(Z1p, UnitsAndInverses) {
    Z1p two(2, 2);
    EXPECT_TRUE(two.is_unit());
    EXPECT_EQ(two.inverse().str(), "1/2");
    Z1p three(2, 3);
    EXPECT_FALSE(three.is_unit());
    EXPECT_THROW(three.inverse(), Error);
    Z1p minus_eight(2, -8);
    EXPECT_TRUE(minus_eight.is_unit());
    EXPECT_EQ(minus_eight.inverse().str(), "-1/8");
    // Inversion succeeds exactly on +-p^k / p^n elements.
    Z1p unit(3, 9, 2); // 9/9 = 1
    EXPECT_EQ(unit.inverse().str(), "1");
}

TEST(Z1p, ClosureUnderOps) {
    const Structure& Z3 = structure_for("z1p:3");
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Element a = Z3.sample(rng);
        Element b = Z3.sample(rng);
        Element s = Z3.add(a, b);
        Element p = Z3.mul(a, b);
        const Z1p& zs = std::get<Z1p>(s);
        const Z1p& zp = std::get<Z1p>(p);
        EXPECT_TRUE(zs.n() == 0 || zs.m() % 3 != 0);
        EXPECT_TRUE(zp.n() == 0 || zp.m() % 3 != 0);
    }
}

TEST(Polynomial, GcdPrimitivePRS) {
    // (X+1)(X-2) and (X+1)(X+3) share exactly X+1.
    IntPoly a = IntPoly(std::vector<BigInt>{BigInt(-2), BigInt(-1), BigInt(1)});
    IntPoly b = IntPoly(std::vector<BigInt>{BigInt(3), BigInt(4), BigInt(1)});
    IntPoly g = poly_gcd(a, b);
    EXPECT_EQ(g, IntPoly(std::vector<BigInt>{BigInt(1), BigInt(1)}));
    EXPECT_EQ(poly_div_exact(a, g), IntPoly(std::vector<BigInt>{BigInt(-2), BigInt(1)}));
    // Content is split off.
    IntPoly c = IntPoly(std::vector<BigInt>{BigInt(6), BigInt(12)});
    EXPECT_EQ(c.content(), 6);
    EXPECT_EQ(poly_gcd(c, IntPoly(BigInt(4))), IntPoly(BigInt(1)));
}

TEST(RationalFn, CanonicalFormAndSign) {
    const Structure& ZX = structure_for("zx");
    // (X^2-1)/(X-1) reduces to X+1.
    RationalFn f(IntPoly(std::vector<BigInt>{BigInt(-1), BigInt(0), BigInt(1)}), IntPoly(std::vector<BigInt>{BigInt(-1), BigInt(1)}));
    EXPECT_EQ(render(Element(f)), "X+1");
    // Denominator sign is normalized positive.
    RationalFn g(IntPoly(BigInt(1)), IntPoly(std::vector<BigInt>{BigInt(0), BigInt(-1)}));
    EXPECT_EQ(render(Element(g)), "(-1)/(X)");
    EXPECT_EQ(zx_sign(g), -1);
    EXPECT_EQ(zx_sign(std::get<RationalFn>(parse_element("X-1000", ZX))), 1);
    EXPECT_EQ(zx_sign(RationalFn(0)), 0);
    EXPECT_EQ(zx_sign(std::get<RationalFn>(parse_element("(1-2*X)/(X)", ZX))), -1);
}

TEST(RationalFn, InversePair) {
    const Structure& ZX = structure_for("zx");
    Element product = ZX.mul(parse_element("(1)/(X-1)", ZX), parse_element("(X-1)/(1)", ZX));
    EXPECT_TRUE(ZX.equal(product, ZX.one()));
}

TEST(RationalFn, MagnitudeDegreeAndInfinitesimals) {
    const Structure& ZX = structure_for("zx");
    std::mt19937_64 rng(99);
    int found = 0;
    while (found < 200) {
        Element f = ZX.sample(rng);
        const RationalFn& rf = std::get<RationalFn>(f);
        if (rf.is_zero() || rf.sign() <= 0) continue;
        if (rf.magnitude_degree() >= 0) continue;
        ++found;
        // Positive infinitesimals sit below 1.
        EXPECT_LT(ZX.compare(f, ZX.one()), 0) << render(f);
    }
}

TEST(ArchimedeanGap, DecisionProcedure) {
    const Structure& ZX = structure_for("zx");
    const Structure& Q = structure_for("rational");
    EXPECT_FALSE(ZX.archimedean_gap(ZX.one(), parse_element("X", ZX)).has_value());
    EXPECT_EQ(*ZX.archimedean_gap(parse_element("X", ZX), parse_element("1000", ZX)), 1);
    EXPECT_EQ(*Q.archimedean_gap(Rational(2), Rational(7)), 4);
    // Equal magnitude degrees minimize exactly: n*f > g fails at n-1.
    Element f = parse_element("2", ZX);
    Element g = parse_element("7", ZX);
    auto n = ZX.archimedean_gap(f, g);
    ASSERT_TRUE(n.has_value());
    EXPECT_EQ(*n, 4);
    EXPECT_GT(ZX.compare(ZX.mul(ZX.from_integer(*n), f), g), 0);
    EXPECT_LE(ZX.compare(ZX.mul(ZX.from_integer(*n - 1), f), g), 0);
    EXPECT_THROW(ZX.archimedean_gap(ZX.zero(), g), Error);
}

TEST(MaxTimes, SemiringOps) {
    const Structure& G0 = structure_for("maxtimes-qpos");
    Element a = parse_element("3/2", G0);
    Element b = parse_element("5/4", G0);
    EXPECT_EQ(render(G0.add(a, b)), "3/2");
    EXPECT_EQ(render(G0.mul(a, b)), "15/8");
    Element bottom = G0.zero();
    EXPECT_EQ(render(G0.mul(bottom, a)), "0");
    EXPECT_LT(G0.compare(bottom, a), 0);
    EXPECT_THROW(G0.invert(bottom), Error);
    EXPECT_THROW(G0.neg(a), Error);
}

TEST(Structure, RegistryAndErrors) {
    EXPECT_EQ(structure_for("rational").id, "rational");
    EXPECT_EQ(structure_for("z1p:5").p, 5);
    EXPECT_THROW(structure_for("z1p:4"), Error);
    EXPECT_THROW(structure_for("weird"), Error);
    const Structure& NN = structure_for("nonneg:rational");
    EXPECT_FALSE(NN.caps.has_neg);
    EXPECT_TRUE(NN.caps.dense);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i)
        EXPECT_GE(NN.compare(NN.sample(rng), NN.zero()), 0);
}

TEST(Structure, CanonicalizationIdempotent) {
    // Re-normalizing a canonical element is the identity, for every carrier.
    for (const char* id : {"rational", "z1p:2", "zx", "maxtimes-qpos"}) {
        const Structure& S = structure_for(id);
        std::mt19937_64 rng(17);
        for (int i = 0; i < 200; ++i) {
            Element e = S.sample(rng);
            Element round = parse_element(render(e), S);
            EXPECT_TRUE(S.equal(e, round)) << id << ": " << render(e);
            EXPECT_EQ(render(e), render(round));
        }
    }
}
