#pragma once

#include <json.hpp>

#include "ordlim/algebra.hpp"
#include "ordlim/certificate.hpp"
#include "ordlim/laws.hpp"
#include "ordlim/theorems.hpp"

namespace ordlim {

using Json = nlohmann::ordered_json;

// --- sequences ---------------------------------------------------------------

inline Json sequence_to_json(const SeqPtr& s) {
    switch (s->ctor()) {
        case Sequence::Ctor::expression:
            return Json{{"kind", "expr"}, {"term", s->expression()->text}};
        case Sequence::Ctor::geometric:
            return Json{{"kind", "geometric"}, {"r", render(s->element())}};
        case Sequence::Ctor::partial_sums:
            return Json{{"kind", "partial_sums"}, {"of", sequence_to_json(s->inner())}};
        case Sequence::Ctor::condensed:
            return Json{{"kind", "condensed"}, {"of", sequence_to_json(s->inner())}};
        case Sequence::Ctor::scaled:
            return Json{{"kind", "scaled"},
                        {"c", render(s->element())},
                        {"of", sequence_to_json(s->inner())}};
        case Sequence::Ctor::sum:
            return Json{{"kind", "sum"},
                        {"a", sequence_to_json(s->inner())},
                        {"b", sequence_to_json(s->second())}};
        case Sequence::Ctor::product:
            return Json{{"kind", "product"},
                        {"a", sequence_to_json(s->inner())},
                        {"b", sequence_to_json(s->second())}};
        case Sequence::Ctor::shifted:
            return Json{{"kind", "shifted"},
                        {"k", s->shift().str()},
                        {"of", sequence_to_json(s->inner())}};
        case Sequence::Ctor::table_then: {
            Json table = Json::array();
            for (const auto& e : s->table()) table.push_back(render(e));
            return Json{{"kind", "table_then"},
                        {"table", table},
                        {"of", sequence_to_json(s->inner())}};
        }
    }
    throw internal_error("BadCtor", "unreachable");
}

inline SeqPtr sequence_from_json(const Json& j, const Structure& S) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "expr") return Sequence::from_expression(S, j.at("term").get<std::string>());
    if (kind == "geometric")
        return Sequence::geometric(S, parse_element(j.at("r").get<std::string>(), S));
    if (kind == "partial_sums") return Sequence::partial_sums(sequence_from_json(j.at("of"), S));
    if (kind == "condensed") return Sequence::condensed(sequence_from_json(j.at("of"), S));
    if (kind == "scaled")
        return Sequence::scaled(parse_element(j.at("c").get<std::string>(), S),
                                sequence_from_json(j.at("of"), S));
    if (kind == "sum")
        return Sequence::sum(sequence_from_json(j.at("a"), S), sequence_from_json(j.at("b"), S));
    if (kind == "product")
        return Sequence::product(sequence_from_json(j.at("a"), S),
                                 sequence_from_json(j.at("b"), S));
    if (kind == "shifted")
        return Sequence::shifted(BigInt(j.at("k").get<std::string>()),
                                 sequence_from_json(j.at("of"), S));
    if (kind == "table_then") {
        std::vector<Element> table;
        for (const auto& t : j.at("table"))
            table.push_back(parse_element(t.get<std::string>(), S));
        return Sequence::table_then(S, std::move(table), sequence_from_json(j.at("of"), S));
    }
    throw usage_error("SyntaxError", "unknown sequence kind '" + kind + "'");
}

// --- moduli --------------------------------------------------------------------

inline Json modulus_to_json(const ModulusPtr& m) {
    switch (m->rule) {
        case Modulus::Rule::constant:
            return Json{{"rule", "constant"}, {"n", m->value.str()}};
        case Modulus::Rule::power_gap:
            return Json{{"rule", "power_gap"}, {"base", render(m->base)}};
        case Modulus::Rule::bernoulli:
            return Json{{"rule", "bernoulli"}, {"r", render(m->base)}};
        case Modulus::Rule::infinitesimal_power:
            return Json{{"rule", "infinitesimal_power"}, {"r", render(m->base)}};
        case Modulus::Rule::max_of:
            return Json{{"rule", "max_of"},
                        {"a", modulus_to_json(m->a)},
                        {"b", modulus_to_json(m->b)}};
        case Modulus::Rule::shrink_composed:
            return Json{{"rule", "shrink_composed"},
                        {"m", render(m->m)},
                        {"inner", modulus_to_json(m->a)}};
        case Modulus::Rule::density_split:
            return Json{{"rule", "density_split"},
                        {"a", modulus_to_json(m->a)},
                        {"b", modulus_to_json(m->b)}};
        case Modulus::Rule::product_split:
            return Json{{"rule", "product_split"},
                        {"a", modulus_to_json(m->a)},
                        {"b", modulus_to_json(m->b)},
                        {"s1", render(m->m)},
                        {"norm_b", render(m->m2)}};
        case Modulus::Rule::exp_shift:
            return Json{{"rule", "exp_shift"}, {"inner", modulus_to_json(m->a)}};
        case Modulus::Rule::log2_shift:
            return Json{{"rule", "log2_shift"}, {"inner", modulus_to_json(m->a)}};
        case Modulus::Rule::offset:
            return Json{{"rule", "offset"},
                        {"delta", m->delta},
                        {"inner", modulus_to_json(m->a)}};
    }
    throw internal_error("BadModulus", "unreachable");
}

inline ModulusPtr modulus_from_json(const Json& j, const Structure& H) {
    const std::string rule = j.at("rule").get<std::string>();
    auto elem = [&](const char* key) { return parse_element(j.at(key).get<std::string>(), H); };
    if (rule == "constant") return Modulus::constant(BigInt(j.at("n").get<std::string>()));
    if (rule == "power_gap") return Modulus::power_gap(elem("base"));
    if (rule == "bernoulli") return Modulus::bernoulli(elem("r"));
    if (rule == "infinitesimal_power") return Modulus::infinitesimal_power(elem("r"));
    if (rule == "max_of")
        return Modulus::max_of(modulus_from_json(j.at("a"), H), modulus_from_json(j.at("b"), H));
    if (rule == "shrink_composed")
        return Modulus::shrink_composed(modulus_from_json(j.at("inner"), H), elem("m"));
    if (rule == "density_split")
        return Modulus::density_split(modulus_from_json(j.at("a"), H),
                                      modulus_from_json(j.at("b"), H));
    if (rule == "product_split")
        return Modulus::product_split(modulus_from_json(j.at("a"), H),
                                      modulus_from_json(j.at("b"), H), elem("s1"),
                                      elem("norm_b"));
    if (rule == "exp_shift") return Modulus::exp_shift(modulus_from_json(j.at("inner"), H));
    if (rule == "log2_shift") return Modulus::log2_shift(modulus_from_json(j.at("inner"), H));
    if (rule == "offset")
        return Modulus::offset(modulus_from_json(j.at("inner"), H),
                               j.at("delta").get<std::int64_t>());
    throw usage_error("SyntaxError", "unknown modulus rule '" + rule + "'");
}

// --- norms and certificates ------------------------------------------------------

inline Json norm_to_json(const Pseudonorm& n) {
    if (n.family() == Pseudonorm::Family::abs) return Json{{"kind", "abs"}};
    return Json{{"kind", "padic"}, {"p", n.p()}};
}

inline Pseudonorm norm_from_json(const Json& j, const Structure& S) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "abs") return abs_norm(S);
    if (kind == "padic") return padic_valuation_norm(j.at("p").get<std::int64_t>());
    throw usage_error("SyntaxError", "unknown norm kind '" + kind + "'");
}

inline Json certificate_to_json(const ConvergenceCertificate& c) {
    Json j{{"structure", c.seq->structure().id},
           {"sequence", sequence_to_json(c.seq)},
           {"limit", render(c.limit)},
           {"modulus", modulus_to_json(c.modulus)},
           {"norm", norm_to_json(c.norm)}};
    if (!c.assumptions.empty()) j["assumptions"] = c.assumptions;
    j["trusted_by_construction"] = c.trusted_by_construction;
    return j;
}

inline Json certificate_to_json(const CauchyCertificate& c) {
    Json j{{"structure", c.seq->structure().id},
           {"sequence", sequence_to_json(c.seq)},
           {"modulus", modulus_to_json(c.modulus)},
           {"norm", norm_to_json(c.norm)}};
    if (!c.assumptions.empty()) j["assumptions"] = c.assumptions;
    j["trusted_by_construction"] = c.trusted_by_construction;
    return j;
}

inline ConvergenceCertificate convergence_certificate_from_json(const Json& j) {
    const Structure& S = structure_for(j.at("structure").get<std::string>());
    ConvergenceCertificate c;
    c.seq = sequence_from_json(j.at("sequence"), S);
    c.limit = parse_element(j.at("limit").get<std::string>(), S);
    c.norm = j.contains("norm") ? norm_from_json(j.at("norm"), S) : abs_norm(S);
    c.modulus = modulus_from_json(j.at("modulus"), c.norm.target());
    if (j.contains("assumptions"))
        c.assumptions = j.at("assumptions").get<std::vector<std::string>>();
    c.trusted_by_construction = j.value("trusted_by_construction", false);
    return c;
}

inline CauchyCertificate cauchy_certificate_from_json(const Json& j) {
    const Structure& S = structure_for(j.at("structure").get<std::string>());
    CauchyCertificate c;
    c.seq = sequence_from_json(j.at("sequence"), S);
    c.norm = j.contains("norm") ? norm_from_json(j.at("norm"), S) : abs_norm(S);
    c.modulus = modulus_from_json(j.at("modulus"), c.norm.target());
    if (j.contains("assumptions"))
        c.assumptions = j.at("assumptions").get<std::vector<std::string>>();
    c.trusted_by_construction = j.value("trusted_by_construction", false);
    return c;
}

// --- reports -----------------------------------------------------------------

inline Json validation_report_to_json(const ValidationReport& r) {
    Json violations = Json::array();
    for (const auto& v : r.violations) {
        Json e{{"epsilon", v.epsilon}, {"n", v.n.str()}};
        if (v.m) e["m"] = v.m->str();
        e["gap"] = v.gap;
        violations.push_back(std::move(e));
    }
    return Json{{"pass", r.pass},
                {"violations", violations},
                {"eps_checked", r.eps_checked},
                {"points_checked", r.points_checked},
                {"bound_decided", r.bound_decided}};
}

inline Json law_report_to_json(const LawReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json failures = Json::array();
        for (const auto& f : c.failures)
            failures.push_back(Json{
                {"inputs", f.inputs}, {"expected", f.expected}, {"observed", f.observed}});
        checks.push_back(Json{{"law", c.name},
                              {"samples_tested", c.samples_tested},
                              {"failures", failures}});
    }
    return Json{{"structure", r.structure},
                {"seed", r.seed},
                {"pass", r.pass()},
                {"checks", checks}};
}

// --- structure constants --------------------------------------------------------

/// {"n": int, "gamma": [[[elem,...],...],...], "field": structure-id}
inline StructureConstants structure_constants_from_json(const Json& j) {
    const Structure& F = structure_for(j.value("field", std::string("rational")));
    std::size_t n = j.at("n").get<std::size_t>();
    if (n == 0) throw precondition_error("EmptyAlgebra", "algebra of dimension zero");
    StructureConstants sc = StructureConstants::zeroed(F, n);
    const Json& gamma = j.at("gamma");
    if (gamma.size() != n) throw usage_error("SyntaxError", "gamma must have n slices");
    for (std::size_t i = 0; i < n; ++i) {
        if (gamma[i].size() != n) throw usage_error("SyntaxError", "gamma slice size mismatch");
        for (std::size_t jx = 0; jx < n; ++jx) {
            if (gamma[i][jx].size() != n)
                throw usage_error("SyntaxError", "gamma row size mismatch");
            for (std::size_t k = 0; k < n; ++k)
                sc.at(i, jx, k) = parse_element(gamma[i][jx][k].get<std::string>(), F);
        }
    }
    return sc;
}

inline Json structure_constants_to_json(const StructureConstants& sc) {
    Json gamma = Json::array();
    for (std::size_t i = 0; i < sc.dim; ++i) {
        Json slice = Json::array();
        for (std::size_t j = 0; j < sc.dim; ++j) {
            Json row = Json::array();
            for (std::size_t k = 0; k < sc.dim; ++k) row.push_back(render(sc.at(i, j, k)));
            slice.push_back(std::move(row));
        }
        gamma.push_back(std::move(slice));
    }
    return Json{{"n", sc.dim}, {"field", sc.field->id}, {"gamma", gamma}};
}

} // namespace ordlim
