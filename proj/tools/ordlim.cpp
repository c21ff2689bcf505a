// Command-line surface for the ordlim library: law checks, witnesses, norm
// building, series evaluation, and the certificate transformers, with
// aligned-table and JSON output.
//
// Exit codes: 0 ok, 2 law/validation failure, 3 precondition failure,
// 4 usage/parse errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ordlim/json_io.hpp"

namespace {

using namespace ordlim;

enum ExitCode : int { kOk = 0, kLawFailure = 2, kPrecondition = 3, kUsage = 4 };

struct CommandResult {
    int status = kOk;
    Json payload;
};

// The table view renders exactly the fields of the JSON payload.
void render_table(const Json& j, std::ostream& os, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        std::size_t width = 0;
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!it.value().is_structured()) width = std::max(width, it.key().size());
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_structured()) {
                os << pad << it.key() << ":";
                if (it.value().empty()) {
                    os << (it.value().is_array() ? " []" : " {}") << "\n";
                } else {
                    os << "\n";
                    render_table(it.value(), os, indent + 2);
                }
            } else {
                os << pad << it.key() << std::string(width - it.key().size(), ' ') << " = "
                   << (it.value().is_string() ? it.value().get<std::string>()
                                              : it.value().dump())
                   << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& item : j) {
            if (item.is_structured()) {
                os << pad << "-\n";
                render_table(item, os, indent + 2);
            } else {
                os << pad << "- "
                   << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
            }
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

int emit(const CommandResult& result, bool as_json) {
    if (as_json)
        std::cout << result.payload.dump(2) << "\n";
    else
        render_table(result.payload, std::cout, 0);
    return result.status;
}

std::vector<Element> parse_eps_list(const std::string& csv, const Structure& S) {
    std::vector<Element> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(parse_element(item, S));
    }
    if (out.empty()) throw usage_error("SyntaxError", "empty epsilon list");
    return out;
}

std::vector<Element> parse_elem_list(const std::string& list, const Structure& S, char sep) {
    std::vector<Element> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (item.empty()) continue;
        out.push_back(parse_element(item, S));
    }
    return out;
}

// --- subcommand bodies -------------------------------------------------------

CommandResult run_laws(const std::string& structure, std::uint64_t samples,
                       std::uint64_t seed) {
    const Structure& S = structure_for(structure);
    LawReport laws = check_hemiring_laws(S, samples, seed);
    CommandResult result;
    result.payload = Json{{"command", "laws"},
                          {"structure", structure},
                          {"samples", samples},
                          {"seed", seed},
                          {"hemiring", law_report_to_json(laws)}};
    bool pass = laws.pass();
    if (S.caps.totally_ordered && S.caps.strict_order_compatible) {
        LawReport entire = check_entire(S, samples, seed);
        result.payload["entire"] = law_report_to_json(entire);
        pass = pass && entire.pass();
    }
    result.payload["pass"] = pass;
    result.status = pass ? kOk : kLawFailure;
    return result;
}

CommandResult run_witness(const std::string& kind, const std::string& structure,
                          const std::string& epsilon, const std::string& alpha,
                          const std::string& m) {
    const Structure& S = structure_for(structure);
    CommandResult result;
    if (kind == "density") {
        if (epsilon.empty()) throw usage_error("SyntaxError", "density needs --epsilon");
        Element eps = parse_element(epsilon, S);
        auto [beta, gamma] = density_witness_for(S).produce(eps);
        Element sum = S.add(beta, gamma);
        bool ok = S.is_positive(beta) && S.is_positive(gamma) && S.compare(sum, eps) < 0;
        result.payload = Json{{"command", "witness density"}, {"structure", structure},
                              {"epsilon", render(eps)},      {"beta", render(beta)},
                              {"gamma", render(gamma)},      {"beta_plus_gamma", render(sum)},
                              {"pass", ok}};
        result.status = ok ? kOk : kLawFailure;
        return result;
    }
    if (epsilon.empty() && (alpha.empty() || m.empty()))
        throw usage_error("SyntaxError", "shrink needs --alpha and --m");
    Element a = parse_element(alpha, S);
    Element big_m = parse_element(m, S);
    auto [al, ar] = shrink_witness_for(S).produce(a, big_m);
    Element mar = S.mul(big_m, ar);
    Element alm = S.mul(al, big_m);
    bool ok = S.is_positive(al) && S.is_positive(ar) && S.compare(mar, a) < 0 &&
              S.compare(alm, a) < 0;
    result.payload = Json{{"command", "witness shrink"}, {"structure", structure},
                          {"alpha", render(a)},          {"m", render(big_m)},
                          {"alpha_l", render(al)},       {"alpha_r", render(ar)},
                          {"m_times_alpha_r", render(mar)},
                          {"alpha_l_times_m", render(alm)},
                          {"pass", ok}};
    result.status = ok ? kOk : kLawFailure;
    return result;
}

CommandResult run_norm_build(const std::string& constants_file, std::uint64_t check_samples,
                             std::uint64_t seed) {
    std::ifstream in(constants_file);
    if (!in) throw usage_error("SyntaxError", "cannot open " + constants_file);
    Json spec = Json::parse(in, nullptr, true, true);
    StructureConstants sc = structure_constants_from_json(spec);
    Pseudonorm base = abs_norm(*sc.field);
    AlgebraPseudonorm norm = build_finite_dim_pseudonorm(sc, base);
    LawReport report = check_algebra_norm_laws(norm, check_samples, seed);
    CommandResult result;
    result.payload = Json{{"command", "norm build"},
                          {"constants", constants_file},
                          {"field", sc.field->id},
                          {"dimension", sc.dim},
                          {"gamma_max", render(norm.gamma_max())},
                          {"scale_n_times_m", render(norm.scale())},
                          {"degenerate_zero_m", norm.degenerate()},
                          {"check_samples", check_samples},
                          {"seed", seed},
                          {"report", law_report_to_json(report)},
                          {"pass", report.pass()}};
    result.status = report.pass() ? kOk : kLawFailure;
    return result;
}

CommandResult run_norm_check(const std::string& kind, const std::string& structure,
                             std::uint64_t samples, std::uint64_t seed) {
    const Structure& S = structure_for(structure);
    Pseudonorm norm = abs_norm(S);
    if (kind == "abs") {
        norm = abs_norm(S);
    } else if (kind.rfind("padic:", 0) == 0) {
        if (S.kind != Kind::rational)
            throw precondition_error("NotApplicable",
                                     "the p-adic valuation norm is defined on rational");
        norm = padic_valuation_norm(std::stoll(kind.substr(6)));
    } else {
        throw usage_error("SyntaxError", "unknown norm kind '" + kind + "'");
    }
    LawReport report = check_pseudonorm_laws(norm, samples, seed);
    CommandResult result;
    result.payload = Json{{"command", "norm check"},
                          {"kind", kind},
                          {"structure", structure},
                          {"strength", to_string(norm.strength())},
                          {"samples", samples},
                          {"seed", seed},
                          {"report", law_report_to_json(report)},
                          {"pass", report.pass()}};
    result.status = report.pass() ? kOk : kLawFailure;
    return result;
}

CommandResult run_seq_eval(const std::string& structure, const std::string& term,
                           std::int64_t from, std::int64_t to, bool partial_sums) {
    const Structure& S = structure_for(structure);
    SeqPtr seq = Sequence::from_expression(S, term);
    if (from > to) throw usage_error("SyntaxError", "--from must not exceed --to");
    Json rows = Json::array();
    SeqPtr sums = partial_sums ? Sequence::partial_sums(seq) : nullptr;
    for (BigInt n = from; n <= to; ++n) {
        Json row{{"n", n.str()}, {"term", render(seq->term(n))}};
        if (sums) row["partial_sum"] = render(sums->term(n));
        rows.push_back(std::move(row));
    }
    CommandResult result;
    result.payload = Json{{"command", "seq eval"}, {"structure", structure}, {"term", term},
                          {"from", from},          {"to", to},               {"rows", rows}};
    return result;
}

CommandResult run_geom(const std::string& structure, const std::string& r_text,
                       std::int64_t terms, std::int64_t depth) {
    const Structure& S = structure_for(structure);
    Element r = parse_element(r_text, S);
    GeometricResult geo = geometric_sum(r, S);
    SeqPtr sums = Sequence::partial_sums(Sequence::geometric(S, r));
    Element s_n = sums->term(terms - 1); // `terms` summands, indices 0..terms-1
    Element gap = S.abs(S.sub(s_n, geo.sum));
    ValidationReport report =
        validate_convergence(geo.certificate, default_eps_ladder(S), depth);
    bool identity = geometric_identity_holds(r, S, 64);
    CommandResult result;
    result.payload = Json{{"command", "geom"},
                          {"structure", structure},
                          {"r", render(r)},
                          {"sum", render(geo.sum)},
                          {"terms", terms},
                          {"partial_sum", render(s_n)},
                          {"gap", render(gap)},
                          {"identity_1_minus_r_times_s_n", identity},
                          {"depth", depth},
                          {"modulus", modulus_to_json(geo.certificate.modulus)},
                          {"validation", validation_report_to_json(report)},
                          {"pass", report.pass && identity}};
    result.status = (report.pass && identity) ? kOk : kLawFailure;
    return result;
}

CommandResult run_condense(const std::string& mode, const std::string& structure,
                           const std::string& term, const std::string& eps_csv,
                           std::int64_t depth) {
    const Structure& S = structure_for(structure);
    SeqPtr series = Sequence::from_expression(S, term);
    std::vector<Element> eps = parse_eps_list(eps_csv, S);
    CauchyCertificate input = geometric_shape_cauchy(series);

    CommandResult result;
    result.payload = Json{{"command", "condense " + mode},
                          {"structure", structure},
                          {"term", term},
                          {"depth", depth},
                          {"input_certificate", certificate_to_json(input)}};
    bool pass = true;
    if (mode == "forward" || mode == "roundtrip") {
        CauchyCertificate fwd = condensation_forward(input);
        ValidationReport rep = validate_cauchy(fwd, eps, depth);
        result.payload["forward_modulus"] = modulus_to_json(fwd.modulus);
        result.payload["forward_validation"] = validation_report_to_json(rep);
        pass = pass && rep.pass;
        if (mode == "roundtrip") {
            CauchyCertificate back = condensation_backward(fwd);
            ValidationReport brep = validate_cauchy(back, eps, depth);
            result.payload["backward_modulus"] = modulus_to_json(back.modulus);
            result.payload["backward_validation"] = validation_report_to_json(brep);
            pass = pass && brep.pass;
        }
    } else if (mode == "backward") {
        CauchyCertificate fwd = condensation_forward(input);
        CauchyCertificate back = condensation_backward(fwd);
        ValidationReport rep = validate_cauchy(back, eps, depth);
        result.payload["backward_modulus"] = modulus_to_json(back.modulus);
        result.payload["backward_validation"] = validation_report_to_json(rep);
        pass = rep.pass;
    } else {
        throw usage_error("SyntaxError", "mode must be forward, backward, or roundtrip");
    }
    result.payload["pass"] = pass;
    result.status = pass ? kOk : kLawFailure;
    return result;
}

CommandResult run_ratio(const std::string& structure, const std::string& x0_norm_text,
                        const std::string& r_text, const std::string& eps_csv,
                        std::int64_t depth) {
    const Structure& S = structure_for(structure);
    Element x0_norm = parse_element(x0_norm_text, S);
    Element r = parse_element(r_text, S);
    ConvergenceCertificate pow_null = power_null_certificate(r, S);
    Element one_minus_r_inv;
    try {
        one_minus_r_inv = S.invert(S.sub(S.one(), r));
    } catch (const Error&) {
        throw precondition_error("NotInvertible", "1 - r is not invertible in " + S.id);
    }
    // Worst-case norm sequence allowed by the ratio bound: ||x_n|| = ||x_0|| r^n.
    SeqPtr norm_probe = Sequence::scaled(x0_norm, Sequence::geometric(S, r));
    RatioResult ratio = ratio_test(x0_norm, r, pow_null, one_minus_r_inv, norm_probe);
    std::vector<Element> eps = parse_eps_list(eps_csv, S);
    ValidationReport rep = validate_cauchy(ratio.norm_series_cert, eps, depth);
    bool identity = ratio_tail_identity_holds(r, S, 64);
    CommandResult result;
    result.payload = Json{{"command", "ratio"},
                          {"structure", structure},
                          {"x0_norm", render(x0_norm)},
                          {"r", render(r)},
                          {"tail_constant", render(ratio.tail_constant)},
                          {"depth", depth},
                          {"modulus", modulus_to_json(ratio.modulus)},
                          {"tail_identity_n64", identity},
                          {"norm_series_validation", validation_report_to_json(rep)},
                          {"pass", rep.pass && identity}};
    result.status = (rep.pass && identity) ? kOk : kLawFailure;
    return result;
}

CommandResult run_bernoulli(const std::string& structure, const std::string& xs_list,
                            const std::string& mode_text) {
    const Structure& S = structure_for(structure);
    std::vector<Element> xs = parse_elem_list(xs_list, S, ';');
    BernoulliMode mode;
    BigInt power = 1;
    if (mode_text == "semiring_nonneg") {
        mode = BernoulliMode::semiring_nonneg;
    } else if (mode_text == "ring_all_nonneg") {
        mode = BernoulliMode::ring_all_nonneg;
    } else if (mode_text == "ring_all_nonpos") {
        mode = BernoulliMode::ring_all_nonpos;
    } else if (mode_text.rfind("single_power", 0) == 0) {
        mode = BernoulliMode::single_power;
        if (mode_text.size() > 12 && mode_text[12] == ':')
            power = BigInt(mode_text.substr(13));
    } else {
        throw usage_error("SyntaxError", "unknown mode '" + mode_text + "'");
    }
    BernoulliResult check = bernoulli_check(S, xs, mode, power);
    CommandResult result;
    Json xs_json = Json::array();
    for (const auto& x : xs) xs_json.push_back(render(x));
    result.payload = Json{{"command", "bernoulli"},
                          {"structure", structure},
                          {"mode", mode_text},
                          {"xs", xs_json},
                          {"preconditions_ok", check.preconditions_ok}};
    if (!check.preconditions_ok) {
        result.payload["precondition_detail"] = check.precondition_detail;
        result.payload["pass"] = false;
        result.status = kPrecondition;
        return result;
    }
    result.payload["lhs"] = render(check.lhs);
    result.payload["rhs"] = render(check.rhs);
    result.payload["pass"] = check.holds;
    result.status = check.holds ? kOk : kLawFailure;
    return result;
}

CommandResult run_cert_validate(const std::string& file, const std::string& eps_csv,
                                std::int64_t depth) {
    std::ifstream in(file);
    if (!in) throw usage_error("SyntaxError", "cannot open " + file);
    Json j = Json::parse(in, nullptr, true, true);
    const Structure& S = structure_for(j.at("structure").get<std::string>());
    CommandResult result;
    result.payload = Json{{"command", "cert validate"}, {"file", file}, {"depth", depth}};
    ValidationReport rep;
    if (j.contains("limit")) {
        ConvergenceCertificate cert = convergence_certificate_from_json(j);
        std::vector<Element> eps = parse_eps_list(eps_csv, cert.norm.target());
        rep = validate_convergence(cert, eps, depth);
        result.payload["kind"] = "convergence";
    } else {
        CauchyCertificate cert = cauchy_certificate_from_json(j);
        std::vector<Element> eps = parse_eps_list(eps_csv, cert.norm.target());
        rep = validate_cauchy(cert, eps, depth);
        result.payload["kind"] = "cauchy";
    }
    (void)S;
    result.payload["validation"] = validation_report_to_json(rep);
    result.payload["pass"] = rep.pass;
    result.status = rep.pass ? kOk : kLawFailure;
    return result;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ordlim: exact ordered structures, pseudonorms, and convergence certificates"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit the JSON payload instead of the table view");

    std::string structure = "rational";
    std::uint64_t samples = 1000;
    std::uint64_t seed = 42;
    std::int64_t depth = 64;

    auto* laws = app.add_subcommand("laws", "check the ordered-hemiring laws on samples");
    laws->add_option("--structure", structure)->required();
    laws->add_option("--samples", samples);
    laws->add_option("--seed", seed);

    auto* witness = app.add_subcommand("witness", "produce density/shrink witnesses");
    witness->require_subcommand(1);
    std::string epsilon, alpha, m_text;
    auto* wd = witness->add_subcommand("density");
    wd->add_option("--structure", structure)->required();
    wd->add_option("--epsilon", epsilon)->required();
    auto* ws = witness->add_subcommand("shrink");
    ws->add_option("--structure", structure)->required();
    ws->add_option("--alpha", alpha)->required();
    ws->add_option("--m", m_text)->required();

    auto* norm = app.add_subcommand("norm", "build or check pseudonorms");
    norm->require_subcommand(1);
    std::string constants_file, norm_kind = "abs";
    std::uint64_t check_samples = 1000;
    auto* nb = norm->add_subcommand("build");
    nb->add_option("--constants", constants_file)->required();
    nb->add_option("--check-samples", check_samples);
    nb->add_option("--seed", seed);
    auto* nc = norm->add_subcommand("check");
    nc->add_option("--kind", norm_kind)->required();
    nc->add_option("--structure", structure)->required();
    nc->add_option("--samples", samples);
    nc->add_option("--seed", seed);

    auto* seq = app.add_subcommand("seq", "evaluate symbolic sequences");
    seq->require_subcommand(1);
    std::string term_text;
    std::int64_t from = 1, to = 10;
    bool partial = false;
    auto* se = seq->add_subcommand("eval");
    se->add_option("--structure", structure)->required();
    se->add_option("--term", term_text)->required();
    se->add_option("--from", from)->required();
    se->add_option("--to", to)->required();
    se->add_flag("--partial-sums", partial);

    auto* geom = app.add_subcommand("geom", "geometric series sum with certificate");
    std::string r_text;
    std::int64_t terms = 20;
    geom->add_option("--structure", structure)->required();
    geom->add_option("--r", r_text)->required();
    geom->add_option("--terms", terms);

    auto* condense_cmd = app.add_subcommand("condense", "Cauchy condensation transformers");
    condense_cmd->require_subcommand(1);
    std::string eps_csv;
    std::vector<CLI::App*> condense_modes;
    for (const char* mode : {"forward", "backward", "roundtrip"}) {
        auto* c = condense_cmd->add_subcommand(mode);
        c->add_option("--structure", structure)->required();
        c->add_option("--term", term_text)->required();
        c->add_option("--eps", eps_csv)->required();
        c->add_option("--depth", depth);
        condense_modes.push_back(c);
    }

    auto* ratio = app.add_subcommand("ratio", "ratio-test certificate for a normed series");
    std::string x0_norm_text;
    ratio->add_option("--structure", structure)->required();
    ratio->add_option("--x0-norm", x0_norm_text)->required();
    ratio->add_option("--r", r_text)->required();
    ratio->add_option("--eps", eps_csv)->required();
    ratio->add_option("--depth", depth);

    auto* bernoulli = app.add_subcommand("bernoulli", "exact Bernoulli-inequality check");
    std::string xs_list, mode_text;
    bernoulli->add_option("--structure", structure)->required();
    bernoulli->add_option("--xs", xs_list)->required();
    bernoulli->add_option("--mode", mode_text)->required();

    auto* cert = app.add_subcommand("cert", "validate certificates from JSON");
    cert->require_subcommand(1);
    std::string cert_file;
    auto* cv = cert->add_subcommand("validate");
    cv->add_option("--file", cert_file)->required();
    cv->add_option("--eps", eps_csv)->required();
    cv->add_option("--depth", depth);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        CommandResult result;
        if (laws->parsed()) {
            result = run_laws(structure, samples, seed);
        } else if (wd->parsed()) {
            result = run_witness("density", structure, epsilon, alpha, m_text);
        } else if (ws->parsed()) {
            result = run_witness("shrink", structure, epsilon, alpha, m_text);
        } else if (nb->parsed()) {
            result = run_norm_build(constants_file, check_samples, seed);
        } else if (nc->parsed()) {
            result = run_norm_check(norm_kind, structure, samples, seed);
        } else if (se->parsed()) {
            result = run_seq_eval(structure, term_text, from, to, partial);
        } else if (geom->parsed()) {
            result = run_geom(structure, r_text, terms, depth);
        } else if (condense_modes[0]->parsed()) {
            result = run_condense("forward", structure, term_text, eps_csv, depth);
        } else if (condense_modes[1]->parsed()) {
            result = run_condense("backward", structure, term_text, eps_csv, depth);
        } else if (condense_modes[2]->parsed()) {
            result = run_condense("roundtrip", structure, term_text, eps_csv, depth);
        } else if (ratio->parsed()) {
            result = run_ratio(structure, x0_norm_text, r_text, eps_csv, depth);
        } else if (bernoulli->parsed()) {
            result = run_bernoulli(structure, xs_list, mode_text);
        } else if (cv->parsed()) {
            result = run_cert_validate(cert_file, eps_csv, depth);
        } else {
            std::cerr << "no subcommand selected\n";
            return kUsage;
        }
        return emit(result, as_json);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::precondition: return kPrecondition;
            case ErrorKind::usage: return kUsage;
            case ErrorKind::internal: return kUsage;
        }
        return kUsage;
    } catch (const Json::exception& e) {
        std::cerr << "error: SyntaxError: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
