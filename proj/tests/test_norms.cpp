#include <gtest/gtest.h>

#include "ordlim/algebra.hpp"
#include "ordlim/json_io.hpp"
#include "ordlim/parser.hpp"

using namespace ordlim;

TEST(AbsNorm, Values) {
    const Structure& Q = structure_for("rational");
    Pseudonorm n = abs_norm(Q);
    EXPECT_EQ(render(n(parse_element("-3/4", Q))), "3/4");
    EXPECT_EQ(render(n(Q.zero())), "0");
    EXPECT_EQ(n.strength(), NormStrength::multiplicative_norm);

    const Structure& ZX = structure_for("zx");
    Pseudonorm nx = abs_norm(ZX);
    EXPECT_EQ(render(nx(parse_element("1-X", ZX))), "X-1");

    EXPECT_THROW(abs_norm(structure_for("maxtimes-qpos")), Error);
}

TEST(AbsNorm, LawsOnSamples) {
    for (const char* id : {"rational", "z1p:2", "zx"}) {
        LawReport report = check_pseudonorm_laws(abs_norm(structure_for(id)), 1000, 7);
        EXPECT_TRUE(report.pass()) << id;
    }
}

TEST(PadicNorm, Values) {
    Pseudonorm p2 = padic_valuation_norm(2);
    const Structure& Q = structure_for("rational");
    EXPECT_EQ(render(p2(Element(Rational(12)))), "1/4");
    EXPECT_EQ(render(p2(Q.zero())), "0");
    Pseudonorm p3 = padic_valuation_norm(3);
    EXPECT_EQ(render(p3(parse_element("5/9", Q))), "9");
    EXPECT_EQ(p3.strength(), NormStrength::ultrametric_valuation);
    EXPECT_THROW(padic_valuation_norm(6), Error);
}

TEST(PadicNorm, UltrametricLawsOnSamples) {
    EXPECT_TRUE(check_pseudonorm_laws(padic_valuation_norm(2), 1000, 7).pass());
    EXPECT_TRUE(check_pseudonorm_laws(padic_valuation_norm(3), 1000, 7).pass());
}

TEST(PadicNorm, SharpTriangleWhenNormsDiffer) {
    // |r+s|_p = max(|r|_p, |s|_p) whenever |r|_p != |s|_p.
    Pseudonorm p2 = padic_valuation_norm(2);
    const Structure& Q = structure_for("rational");
    const Structure& G0 = structure_for("maxtimes-qpos");
    std::mt19937_64 rng(321);
    int checked = 0;
    while (checked < 500) {
        Element r = Q.sample(rng);
        Element s = Q.sample(rng);
        if (Q.is_zero(r) || Q.is_zero(s)) continue;
        Element nr = p2(r), ns = p2(s);
        if (G0.equal(nr, ns)) continue;
        ++checked;
        Element mx = G0.compare(nr, ns) >= 0 ? nr : ns;
        ASSERT_TRUE(G0.equal(p2(Q.add(r, s)), mx));
    }
}

namespace {

StructureConstants gaussian_constants() {
    // Q[i] with basis (1, i): e1e1 = e1, e1e2 = e2e1 = e2, e2e2 = -e1.
    const Structure& Q = structure_for("rational");
    StructureConstants sc = StructureConstants::zeroed(Q, 2);
    sc.at(0, 0, 0) = Element(Rational(1));
    sc.at(0, 1, 1) = Element(Rational(1));
    sc.at(1, 0, 1) = Element(Rational(1));
    sc.at(1, 1, 0) = Element(Rational(-1));
    return sc;
}

} // namespace

TEST(AlgebraNorm, GaussianExample) {
    const Structure& Q = structure_for("rational");
    StructureConstants sc = gaussian_constants();
    AlgebraPseudonorm norm = build_finite_dim_pseudonorm(sc, abs_norm(Q));
    EXPECT_EQ(render(norm.gamma_max()), "1");
    EXPECT_EQ(render(norm.scale()), "2");
    AlgebraElement a{Element(Rational(1)), Element(Rational(1))};  // 1 + i
    AlgebraElement b{Element(Rational(1)), Element(Rational(-1))}; // 1 - i
    EXPECT_EQ(render(norm(a)), "4");
    EXPECT_EQ(render(norm(b)), "4");
    AlgebraElement ab = algebra_mul(sc, a, b);
    EXPECT_EQ(render(ab[0]), "2");
    EXPECT_EQ(render(ab[1]), "0");
    EXPECT_EQ(render(norm(ab)), "4"); // 4 <= 16
    EXPECT_TRUE(check_algebra_norm_laws(norm, 1000, 7).pass());
    AlgebraElement zero{Q.zero(), Q.zero()};
    EXPECT_EQ(render(norm(zero)), "0");
}

TEST(AlgebraNorm, RawNormFailsWithScaledConstants) {
    // Q[j] with j*j = 5: the uncorrected sum-of-coordinates norm gives
    // ||j*j|| = 5 > 1 = ||j|| ||j||; the corrected one passes.
    const Structure& Q = structure_for("rational");
    StructureConstants sc = StructureConstants::zeroed(Q, 2);
    sc.at(0, 0, 0) = Element(Rational(1));
    sc.at(0, 1, 1) = Element(Rational(1));
    sc.at(1, 0, 1) = Element(Rational(1));
    sc.at(1, 1, 0) = Element(Rational(5));
    AlgebraPseudonorm raw(sc, abs_norm(Q), /*corrected=*/false);
    AlgebraElement j{Q.zero(), Q.one()};
    AlgebraElement jj = algebra_mul(sc, j, j);
    EXPECT_EQ(render(raw(jj)), "5");
    EXPECT_EQ(render(Q.mul(raw(j), raw(j))), "1");
    EXPECT_GT(Q.compare(raw(jj), Q.mul(raw(j), raw(j))), 0);
    AlgebraPseudonorm corrected(sc, abs_norm(Q));
    EXPECT_TRUE(check_algebra_norm_laws(corrected, 500, 7).pass());
}

TEST(AlgebraNorm, RandomTablesReproduceTheBound) {
    // 50 seeded random structure-constant tables, 500 pairs each: the
    // corrected norm never violates submultiplicativity.
    const Structure& Q = structure_for("rational");
    std::mt19937_64 rng(42);
    for (int t = 0; t < 50; ++t) {
        StructureConstants sc = random_structure_constants(Q, 4, 10, rng);
        AlgebraPseudonorm norm = build_finite_dim_pseudonorm(sc, abs_norm(Q));
        for (int i = 0; i < 500; ++i) {
            AlgebraElement a = sample_algebra_element(sc, rng);
            AlgebraElement b = sample_algebra_element(sc, rng);
            Element lhs = norm(algebra_mul(sc, a, b));
            Element rhs = Q.mul(norm(a), norm(b));
            ASSERT_LE(Q.compare(lhs, rhs), 0) << "table " << t;
        }
    }
}

TEST(AlgebraNorm, SearchFindsRawViolation) {
    const Structure& Q = structure_for("rational");
    auto violation = search_raw_norm_violation(Q, 50, 200, 42);
    ASSERT_TRUE(violation.has_value());
    EXPECT_GT(Q.compare(violation->norm_ab, Q.mul(violation->norm_a, violation->norm_b)), 0);
}

TEST(AlgebraNorm, DegenerateZeroTable) {
    // All-zero constants: M is replaced by 1 and submultiplicativity is
    // vacuous because every product is zero.
    const Structure& Q = structure_for("rational");
    StructureConstants sc = StructureConstants::zeroed(Q, 3);
    AlgebraPseudonorm norm = build_finite_dim_pseudonorm(sc, abs_norm(Q));
    EXPECT_TRUE(norm.degenerate());
    EXPECT_EQ(render(norm.scale()), "3");
    EXPECT_TRUE(check_algebra_norm_laws(norm, 300, 7).pass());
    EXPECT_THROW(AlgebraPseudonorm(StructureConstants::zeroed(Q, 0), abs_norm(Q)), Error);
}

TEST(AlgebraNorm, ConstantsJsonRoundTrip) {
    StructureConstants sc = gaussian_constants();
    Json j = structure_constants_to_json(sc);
    StructureConstants back = structure_constants_from_json(j);
    EXPECT_EQ(back.dim, 2u);
    const Structure& Q = structure_for("rational");
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t jx = 0; jx < 2; ++jx)
            for (std::size_t k = 0; k < 2; ++k)
                EXPECT_TRUE(Q.equal(back.at(i, jx, k), sc.at(i, jx, k)));
}
