#include <gtest/gtest.h>

#include "ordlim/json_io.hpp"
#include "ordlim/theorems.hpp"

using namespace ordlim;

namespace {
Element q(const char* text) { return parse_element(text, structure_for("rational")); }
}

TEST(Sequences, TermsAndPartialSums) {
    const Structure& Q = structure_for("rational");
    SeqPtr geo = Sequence::geometric(Q, q("1/2"));
    EXPECT_EQ(render(partial_sum(geo, 3)), "15/8");
    EXPECT_EQ(render(geo->term(0)), "1");

    SeqPtr expr = Sequence::from_expression(Q, "(1/2)^n");
    SeqPtr cond = Sequence::condensed(expr);
    EXPECT_EQ(render(cond->term(2)), "1/4");  // 4 * (1/16)
    EXPECT_EQ(render(cond->term(3)), "1/32"); // 8 * (1/256)

    const Structure& ZX = structure_for("zx");
    SeqPtr xexpr = Sequence::from_expression(ZX, "(1/X)^n");
    EXPECT_EQ(render(xexpr->term(5)), "(1)/(X^5)");
    EXPECT_EQ(render(Sequence::condensed(xexpr)->term(1)), "(2)/(X^2)");

    EXPECT_THROW(expr->term(0), Error); // IndexBeforeStart
}

TEST(Sequences, ConstructorsCompose) {
    const Structure& Q = structure_for("rational");
    SeqPtr geo = Sequence::geometric(Q, q("1/2"));
    SeqPtr scaled = Sequence::scaled(q("3"), geo);
    EXPECT_EQ(render(scaled->term(2)), "3/4");
    SeqPtr shifted = Sequence::shifted(2, geo);
    EXPECT_EQ(render(shifted->term(1)), "1/8");
    SeqPtr table = Sequence::table_then(Q, {q("7"), q("-7")}, geo);
    EXPECT_EQ(render(table->term(1)), "7");
    EXPECT_EQ(render(table->term(2)), "-7");
    EXPECT_EQ(render(table->term(3)), "1/8");
    SeqPtr sum = Sequence::sum(geo, geo);
    EXPECT_EQ(render(sum->term(1)), "1");
    SeqPtr prod = Sequence::product(geo, geo);
    EXPECT_EQ(render(prod->term(2)), "1/16");
}

TEST(Sequences, WindowMatchesTermwiseEvaluation) {
    const Structure& Q = structure_for("rational");
    SeqPtr s = Sequence::partial_sums(Sequence::product(
        Sequence::from_expression(Q, "(-1)^(n+1)"), Sequence::from_expression(Q, "1/n")));
    auto w = s->window(3, 12);
    for (BigInt n = 3; n <= 12; ++n)
        EXPECT_TRUE(Q.equal(w[static_cast<std::size_t>(n - 3)], s->term(n))) << n.str();
}

TEST(Sequences, GeometricClosedFormAgreesWithAccumulation) {
    const Structure& Q = structure_for("rational");
    for (const char* rt : {"1/2", "-1/2", "2/3", "1"}) {
        SeqPtr sums = Sequence::partial_sums(Sequence::geometric(Q, q(rt)));
        Element acc = Q.zero();
        SeqPtr geo = Sequence::geometric(Q, q(rt));
        for (BigInt n = 0; n <= 20; ++n) {
            acc = Q.add(acc, geo->term(n));
            ASSERT_TRUE(Q.equal(sums->term(n), acc)) << rt;
        }
    }
    // Closed form also holds in Z[1/2] where 1 - r is not a unit.
    const Structure& Z2 = structure_for("z1p:2");
    SeqPtr sums = Sequence::partial_sums(Sequence::geometric(Z2, parse_element("4", Z2)));
    EXPECT_EQ(render(sums->term(3)), "85"); // 1 + 4 + 16 + 64
}

TEST(Moduli, PowerGapAndBernoulli) {
    const Structure& Q = structure_for("rational");
    // Least k with (1/2)^k < eps.
    EXPECT_EQ(eval_modulus(Modulus::power_gap(q("2")), Q, q("1/1000")), 10);
    // Prop-4.5 index: x = 1, least N with N * eps > 1.
    EXPECT_EQ(eval_modulus(Modulus::bernoulli(q("1/2")), Q, q("1/1000")), 1001);
    // x = 2 for r = 1/3.
    EXPECT_EQ(eval_modulus(Modulus::bernoulli(q("1/3")), Q, q("1/1000")), 501);
    EXPECT_EQ(eval_modulus(Modulus::max_of(Modulus::constant(5), Modulus::constant(9)), Q,
                           q("1")),
              9);
    EXPECT_EQ(eval_modulus(Modulus::offset(Modulus::constant(5), -10), Q, q("1")), 1);
    EXPECT_EQ(eval_modulus(Modulus::exp_shift(Modulus::constant(10)), Q, q("1")), 1024);
    // log2_shift: least k with 2^(k-1) + 1 >= N1.
    EXPECT_EQ(eval_modulus(Modulus::log2_shift(Modulus::constant(1000)), Q, q("1")), 11);
    EXPECT_EQ(eval_modulus(Modulus::log2_shift(Modulus::constant(1)), Q, q("1")), 1);

    const Structure& ZX = structure_for("zx");
    Element inv_x3 = parse_element("(1)/(X^3)", ZX);
    EXPECT_EQ(eval_modulus(Modulus::infinitesimal_power(parse_element("1/X", ZX)), ZX, inv_x3),
              4);
    EXPECT_EQ(eval_modulus(Modulus::power_gap(parse_element("X", ZX)), ZX, inv_x3), 4);
}

TEST(Moduli, MonotoneOnEpsChains) {
    // Smaller eps never yields a smaller index, spot-checked on chains.
    const Structure& Q = structure_for("rational");
    auto rules = {Modulus::bernoulli(q("1/2")), Modulus::power_gap(q("2")),
                  Modulus::density_split(Modulus::bernoulli(q("1/2")),
                                         Modulus::bernoulli(q("1/3"))),
                  Modulus::shrink_composed(Modulus::bernoulli(q("1/2")), q("3"))};
    for (const auto& rule : rules) {
        BigInt last = 1;
        for (const Element& eps : default_eps_ladder(Q)) {
            BigInt n = eval_modulus(rule, Q, eps);
            EXPECT_GE(n, last);
            last = n;
        }
    }
}

TEST(Validation, GeometricPowerCertificate) {
    const Structure& Q = structure_for("rational");
    ConvergenceCertificate cert = power_null_certificate(q("1/2"), Q);
    auto report = validate_convergence(cert, {q("1/10"), q("1/1000")}, 64);
    EXPECT_TRUE(report.pass);
    // Full default ladder, K = 64.
    EXPECT_TRUE(validate_convergence(cert, default_eps_ladder(Q), 64).pass);
    EXPECT_TRUE(validate_convergence(power_null_certificate(q("-1/2"), Q),
                                     default_eps_ladder(Q), 64)
                    .pass);
    EXPECT_TRUE(validate_convergence(power_null_certificate(q("1/3"), Q),
                                     default_eps_ladder(Q), 64)
                    .pass);
    // r = 0 gives the constant-zero sequence with modulus 1.
    ConvergenceCertificate zero = power_null_certificate(Q.zero(), Q);
    EXPECT_EQ(eval_modulus(zero.modulus, Q, q("1/10")), 1);
    EXPECT_TRUE(validate_convergence(zero, default_eps_ladder(Q), 8).pass);
}

TEST(Validation, InfinitesimalPowersInZX) {
    const Structure& ZX = structure_for("zx");
    Element r = parse_element("1/X", ZX);
    ConvergenceCertificate cert = power_null_certificate(r, ZX);
    Element eps = parse_element("(1)/(X^3)", ZX);
    EXPECT_EQ(eval_modulus(cert.modulus, ZX, eps), 4);
    std::vector<Element> ladder = default_eps_ladder(ZX);
    EXPECT_TRUE(validate_convergence(cert, ladder, 64).pass);
    // No certificate exists for non-infinitesimal r.
    try {
        power_null_certificate(parse_element("1/2", ZX), ZX);
        FAIL() << "expected NotApplicable";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "NotApplicable");
    }
}

TEST(Validation, FakeCertificateFailsEverywhere) {
    // (1/2)^n does not sink below 1/X in Z(X): every probed index violates.
    const Structure& ZX = structure_for("zx");
    ConvergenceCertificate fake;
    fake.seq = Sequence::from_expression(ZX, "(1/2)^n");
    fake.limit = ZX.zero();
    fake.norm = abs_norm(ZX);
    fake.modulus = Modulus::constant(1);
    auto report = validate_convergence(fake, {parse_element("(1)/(X)", ZX)}, 64);
    EXPECT_FALSE(report.pass);
    EXPECT_EQ(report.violations.size(), 65u);
}

TEST(Validation, CauchyOnDivergentSeriesFails) {
    const Structure& Q = structure_for("rational");
    CauchyCertificate bad;
    bad.seq = Sequence::partial_sums(Sequence::constant(Q, Q.one()));
    bad.modulus = Modulus::constant(1);
    bad.norm = abs_norm(Q);
    auto report = validate_cauchy(bad, {q("1/2")}, 16);
    EXPECT_FALSE(report.pass);
    ASSERT_FALSE(report.violations.empty());
    EXPECT_TRUE(report.violations.front().m.has_value());
}

TEST(Validation, PadicNormCertificate) {
    // 2^n -> 0 in the 2-adic norm: |2^n|_2 = 2^-n sinks below any group eps.
    const Structure& Q = structure_for("rational");
    const Structure& G0 = structure_for("maxtimes-qpos");
    ConvergenceCertificate cert;
    cert.seq = Sequence::geometric(Q, q("2"));
    cert.limit = Q.zero();
    cert.norm = padic_valuation_norm(2);
    cert.modulus = Modulus::power_gap(parse_element("2", G0));
    auto report = validate_convergence(cert, {parse_element("1/1024", G0)}, 64);
    EXPECT_TRUE(report.pass);
}

TEST(BoundFromCertificate, PrefixMaxAndFloor) {
    const Structure& Q = structure_for("rational");
    ConvergenceCertificate cert = power_null_certificate(q("1/2"), Q);
    EXPECT_EQ(render(bound_from_certificate(cert, q("1/2"))), "1");

    // Constant sequence: ||c|| + eps0 dominates.
    ConvergenceCertificate cc;
    cc.seq = Sequence::constant(Q, q("5"));
    cc.limit = q("5");
    cc.norm = abs_norm(Q);
    cc.modulus = Modulus::constant(1);
    EXPECT_EQ(render(bound_from_certificate(cc, Q.one())), "6");

    // Zero sequence: the positive floor 1 applies.
    ConvergenceCertificate zc;
    zc.seq = Sequence::constant(Q, Q.zero());
    zc.limit = Q.zero();
    zc.norm = abs_norm(Q);
    zc.modulus = Modulus::constant(1);
    EXPECT_EQ(render(bound_from_certificate(zc, Q.one())), "1");
}

TEST(BoundFromCertificate, DominatesExtendedProbe) {
    const Structure& Q = structure_for("rational");
    ConvergenceCertificate cert = power_null_certificate(q("2/3"), Q);
    Element s1 = bound_from_certificate(cert, Q.one());
    BigInt n0 = eval_modulus(cert.modulus, Q, Q.one());
    for (BigInt n = cert.seq->start(); n <= n0 + 256; ++n)
        ASSERT_LE(Q.compare(cert.norm(cert.seq->term(n)), s1), 0) << n.str();
}

TEST(Constructors, SumCertificate) {
    const Structure& Q = structure_for("rational");
    auto cx = power_null_certificate(q("1/2"), Q);
    auto cy = power_null_certificate(q("1/3"), Q);
    auto sum = sum_certificate(cx, cy);
    EXPECT_TRUE(Q.is_zero(sum.limit));
    EXPECT_TRUE(validate_convergence(sum, default_eps_ladder(Q), 64).pass);

    // x + constant-zero keeps the limit.
    ConvergenceCertificate zc;
    zc.seq = Sequence::constant(Q, Q.zero());
    zc.limit = Q.zero();
    zc.norm = abs_norm(Q);
    zc.modulus = Modulus::constant(1);
    auto sum2 = sum_certificate(cx, zc);
    EXPECT_TRUE(Q.is_zero(sum2.limit));
    EXPECT_TRUE(validate_convergence(sum2, default_eps_ladder(Q), 64).pass);

    // Z(X): (1/X)^n + (1/X^2)^n -> 0, validated at eps = 1/X^4.
    const Structure& ZX = structure_for("zx");
    auto zx1 = power_null_certificate(parse_element("1/X", ZX), ZX);
    auto zx2 = power_null_certificate(parse_element("(1)/(X^2)", ZX), ZX);
    auto zsum = sum_certificate(zx1, zx2);
    EXPECT_TRUE(validate_convergence(zsum, {parse_element("(1)/(X^4)", ZX)}, 64).pass);
}

TEST(Constructors, ProductCertificateFollowsTheProof) {
    // (1 + (1/2)^n) -> 1 times (2 - (1/3)^n) -> 2 lands on 2, validated at
    // eps in {1/10, 1/10^6}.
    const Structure& Q = structure_for("rational");
    ConvergenceCertificate one_plus;
    one_plus.seq = Sequence::sum(Sequence::constant(Q, Q.one()),
                                 Sequence::geometric(Q, q("1/2")));
    one_plus.limit = Q.one();
    one_plus.norm = abs_norm(Q);
    one_plus.modulus = power_null_certificate(q("1/2"), Q).modulus;
    one_plus.trusted_by_construction = true;

    ConvergenceCertificate two_minus;
    two_minus.seq = Sequence::sum(Sequence::constant(Q, q("2")),
                                  Sequence::scaled(q("-1"), Sequence::geometric(Q, q("1/3"))));
    two_minus.limit = q("2");
    two_minus.norm = abs_norm(Q);
    two_minus.modulus = power_null_certificate(q("1/3"), Q).modulus;
    two_minus.trusted_by_construction = true;

    auto prod = product_certificate(one_plus, two_minus);
    EXPECT_EQ(render(prod.limit), "2");
    EXPECT_TRUE(validate_convergence(prod, {q("1/10"), q("1/1000000")}, 64).pass);
}

TEST(Constructors, ProductWithZeroLimitDelegates) {
    const Structure& Q = structure_for("rational");
    ConvergenceCertificate c5;
    c5.seq = Sequence::constant(Q, q("5"));
    c5.limit = q("5");
    c5.norm = abs_norm(Q);
    c5.modulus = Modulus::constant(1);
    auto null_cert = power_null_certificate(q("1/2"), Q);
    auto prod = product_certificate(c5, null_cert);
    EXPECT_TRUE(Q.is_zero(prod.limit));
    EXPECT_TRUE(validate_convergence(prod, default_eps_ladder(Q), 64).pass);
}

TEST(Constructors, BoundedTimesNull) {
    const Structure& Q = structure_for("rational");
    auto null_cert = power_null_certificate(q("1/2"), Q);
    // Alternating +-1 is bounded by M = 1.
    SeqPtr signs = Sequence::from_expression(Q, "(-1)^(n+1)");
    auto cert = bounded_times_null_certificate(null_cert, signs, Q.one());
    EXPECT_TRUE(Q.is_zero(cert.limit));
    EXPECT_TRUE(validate_convergence(cert, default_eps_ladder(Q), 64).pass);

    // y == 1 reduces to the shrink-of-eps recheck.
    auto cert1 = bounded_times_null_certificate(null_cert, Sequence::constant(Q, Q.one()),
                                                Q.one());
    EXPECT_TRUE(validate_convergence(cert1, default_eps_ladder(Q), 64).pass);

    // Z(X): y bounded by X, x = (1/X^2)^n.
    const Structure& ZX = structure_for("zx");
    auto zx_null = power_null_certificate(parse_element("(1)/(X^2)", ZX), ZX);
    auto zx_cert = bounded_times_null_certificate(
        zx_null, Sequence::constant(ZX, parse_element("X", ZX)), parse_element("X", ZX));
    EXPECT_TRUE(validate_convergence(zx_cert, default_eps_ladder(ZX), 64).pass);

    // M = 0 is rejected: the lemma needs a positive bound.
    try {
        bounded_times_null_certificate(null_cert, signs, Q.zero());
        FAIL() << "expected NonPositiveBound";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "NonPositiveBound");
    }
    // A bound the probe refutes is rejected too.
    try {
        bounded_times_null_certificate(null_cert, Sequence::constant(Q, q("5")), Q.one());
        FAIL() << "expected BoundViolatedOnProbe";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "BoundViolatedOnProbe");
    }
}

TEST(Constructors, CauchyFromConvergence) {
    const Structure& Q = structure_for("rational");
    auto conv = power_null_certificate(q("1/2"), Q);
    auto cauchy = cauchy_from_convergence(conv);
    EXPECT_TRUE(validate_cauchy(cauchy, default_eps_ladder(Q), 64).pass);
}

TEST(Json, CertificateRoundTrip) {
    const Structure& Q = structure_for("rational");
    auto geo = geometric_sum(q("1/2"), Q);
    Json j = certificate_to_json(geo.certificate);
    ConvergenceCertificate back = convergence_certificate_from_json(j);
    EXPECT_TRUE(Q.equal(back.limit, geo.certificate.limit));
    EXPECT_EQ(certificate_to_json(back).dump(), j.dump());
    EXPECT_TRUE(validate_convergence(back, {q("1/10"), q("1/100")}, 32).pass);

    // Cauchy certificates and every modulus rule survive the round trip.
    auto cauchy = cauchy_from_convergence(geo.certificate);
    Json cj = certificate_to_json(cauchy);
    CauchyCertificate cback = cauchy_certificate_from_json(cj);
    EXPECT_EQ(certificate_to_json(cback).dump(), cj.dump());
}

TEST(Json, SequenceTreeRoundTrip) {
    const Structure& Q = structure_for("rational");
    SeqPtr seq = Sequence::table_then(
        Q, {q("7"), q("-7")},
        Sequence::shifted(3, Sequence::sum(Sequence::condensed(
                                               Sequence::from_expression(Q, "(1/2)^n")),
                                           Sequence::scaled(q("2"), Sequence::geometric(
                                                                        Q, q("1/3"))))));
    Json j = sequence_to_json(seq);
    SeqPtr back = sequence_from_json(j, Q);
    EXPECT_EQ(sequence_to_json(back).dump(), j.dump());
    for (BigInt n = 1; n <= 8; ++n) EXPECT_TRUE(Q.equal(seq->term(n), back->term(n)));
}
