#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#ifndef ORDLIM_CLI_PATH
#error "ORDLIM_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string out_file = "cli_output.tmp";
    std::string cmd = std::string(ORDLIM_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
    int raw = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WEXITSTATUS(raw);
    std::ifstream in(out_file);
    result.output.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    std::remove(out_file.c_str());
    return result;
}

} // namespace

TEST(Cli, GeomRationalHalf) {
    RunResult r = run_cli("geom --structure rational --r \"1/2\" --terms 20");
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("sum"), std::string::npos);
    EXPECT_NE(r.output.find(" 2\n"), std::string::npos);
    EXPECT_NE(r.output.find("1048575/524288"), std::string::npos);
    EXPECT_NE(r.output.find("1/524288"), std::string::npos);
}

TEST(Cli, GeomRejectsHalfInZX) {
    RunResult r = run_cli("geom --structure zx --r \"1/2\"");
    EXPECT_EQ(r.exit_code, 3) << r.output;
    EXPECT_NE(r.output.find("NoNullCertificate"), std::string::npos);
    EXPECT_NE(r.output.find("does not converge to 0"), std::string::npos);
}

TEST(Cli, GeomNonArchimedean) {
    RunResult r = run_cli("geom --structure zx --r \"1/X\" --terms 8");
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("(X)/(X-1)"), std::string::npos);
}

TEST(Cli, BernoulliPinnedExample) {
    RunResult r = run_cli("bernoulli --structure rational --xs \"1;1;1\" --mode ring_all_nonneg");
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("lhs"), std::string::npos);
    EXPECT_NE(r.output.find(" 8"), std::string::npos);
    EXPECT_NE(r.output.find(" 4"), std::string::npos);
}

TEST(Cli, BernoulliPreconditionFailure) {
    RunResult r =
        run_cli("bernoulli --structure rational --xs \"-1/2;1\" --mode ring_all_nonneg");
    EXPECT_EQ(r.exit_code, 3) << r.output;
    EXPECT_NE(r.output.find("preconditions_ok"), std::string::npos);
}

TEST(Cli, BernoulliSinglePower) {
    RunResult r =
        run_cli("bernoulli --structure rational --xs \"3/7\" --mode single_power:1");
    EXPECT_EQ(r.exit_code, 0) << r.output;
}

TEST(Cli, LawsPassAndSeedStability) {
    RunResult a = run_cli("laws --structure maxtimes-qpos --samples 200 --seed 7 --json");
    EXPECT_EQ(a.exit_code, 0) << a.output;
    RunResult b = run_cli("laws --structure maxtimes-qpos --samples 200 --seed 7 --json");
    EXPECT_EQ(a.output, b.output); // byte-identical given identical flags
}

TEST(Cli, UnknownStructureIsUsageError) {
    RunResult r = run_cli("laws --structure nosuch --samples 10 --seed 1");
    EXPECT_EQ(r.exit_code, 4) << r.output;
}

TEST(Cli, WitnessDensity) {
    RunResult r = run_cli("witness density --structure rational --epsilon 1");
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("2/5"), std::string::npos);
    EXPECT_NE(r.output.find("4/5"), std::string::npos);
}

TEST(Cli, WitnessShrink) {
    RunResult r = run_cli("witness shrink --structure rational --alpha 1 --m 10");
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("1/25"), std::string::npos);
}

TEST(Cli, WitnessNotDense) {
    RunResult r = run_cli("witness density --structure rational --epsilon \"-1\"");
    EXPECT_EQ(r.exit_code, 3) << r.output;
}

TEST(Cli, SeqEvalWithPartialSums) {
    RunResult r = run_cli(
        "seq eval --structure rational --term \"(1/2)^n\" --from 1 --to 4 --partial-sums");
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("15/16"), std::string::npos);
}

TEST(Cli, SeqEvalDivisionByZero) {
    RunResult r =
        run_cli("seq eval --structure rational --term \"1/(n-4)\" --from 4 --to 4");
    EXPECT_EQ(r.exit_code, 3) << r.output;
}

TEST(Cli, SeqEvalParseError) {
    RunResult r =
        run_cli("seq eval --structure rational --term \"2^(n^2)\" --from 1 --to 2");
    EXPECT_EQ(r.exit_code, 4) << r.output;
    EXPECT_NE(r.output.find("NonAffineExponent"), std::string::npos);
}

TEST(Cli, CondenseRoundtrip) {
    RunResult r = run_cli(
        "condense roundtrip --structure rational --term \"(1/2)^n\" "
        "--eps \"1/10,1/1000\" --depth 64");
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("forward_validation"), std::string::npos);
    EXPECT_NE(r.output.find("backward_validation"), std::string::npos);
}

TEST(Cli, RatioCommand) {
    RunResult r = run_cli(
        "ratio --structure rational --x0-norm \"3/2\" --r \"1/2\" --eps \"1/10,1/1000000\"");
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("tail_identity_n64"), std::string::npos);
}

TEST(Cli, NormCheckCommands) {
    RunResult abs = run_cli("norm check --kind abs --structure zx --samples 200");
    EXPECT_EQ(abs.exit_code, 0) << abs.output;
    RunResult padic = run_cli("norm check --kind padic:2 --structure rational --samples 200");
    EXPECT_EQ(padic.exit_code, 0) << padic.output;
    RunResult bad = run_cli("norm check --kind padic:2 --structure zx --samples 10");
    EXPECT_EQ(bad.exit_code, 3) << bad.output;
}

TEST(Cli, NormBuildFromFile) {
    const char* path = "gaussian_constants.tmp.json";
    {
        std::ofstream out(path);
        out << R"({"n": 2, "field": "rational",
                   "gamma": [[["1","0"],["0","1"]],[["0","1"],["-1","0"]]]})";
    }
    RunResult r = run_cli(std::string("norm build --constants ") + path +
                          " --check-samples 300");
    std::remove(path);
    EXPECT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("scale_n_times_m"), std::string::npos);
}

TEST(Cli, CertValidateConvergence) {
    const char* path = "geom_cert.tmp.json";
    {
        std::ofstream out(path);
        out << R"({"structure": "rational",
                   "sequence": {"kind": "geometric", "r": "1/2"},
                   "limit": "0",
                   "modulus": {"rule": "bernoulli", "r": "1/2"}})";
    }
    RunResult r = run_cli(std::string("cert validate --file ") + path +
                          " --eps \"1/10,1/1000\" --depth 64");
    std::remove(path);
    EXPECT_EQ(r.exit_code, 0) << r.output;
}

TEST(Cli, CertValidateRejectsFakeClaim) {
    const char* path = "fake_cert.tmp.json";
    {
        std::ofstream out(path);
        out << R"({"structure": "zx",
                   "sequence": {"kind": "expr", "term": "(1/2)^n"},
                   "limit": "0",
                   "modulus": {"rule": "constant", "n": "1"}})";
    }
    RunResult r = run_cli(std::string("cert validate --file ") + path +
                          " --eps \"(1)/(X)\" --depth 64");
    std::remove(path);
    EXPECT_EQ(r.exit_code, 2) << r.output;
}

TEST(Cli, JsonByteStableAcrossRuns) {
    std::string cmd = "geom --structure rational --r \"1/2\" --terms 20 --json";
    RunResult a = run_cli(cmd);
    RunResult b = run_cli(cmd);
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.output, b.output);
}

TEST(Cli, UsageErrorsExitFour) {
    EXPECT_EQ(run_cli("").exit_code, 4);
    EXPECT_EQ(run_cli("geom --structure rational").exit_code, 4); // missing --r
    EXPECT_EQ(run_cli("frobnicate").exit_code, 4);
}
