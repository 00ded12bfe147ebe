#pragma once

// JSON forms of suite reports, run configurations and corpus manifests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lcdt/corpus.hpp"
#include "lcdt/errors.hpp"
#include "lcdt/harness.hpp"
#include "lcdt/transform.hpp"

namespace lcdt {

using Json = nlohmann::ordered_json;

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

/// Finite numbers as numbers; infinities and NaN as the strings "inf", "-inf", "nan".
inline Json number_to_json(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return v;
}

inline double number_from_json(const Json& j)
{
    if (j.is_number()) {
        return j.get<double>();
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan" || s == "empirical") return std::numeric_limits<double>::quiet_NaN();
    }
    if (j.is_null()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    throw DomainError("expected a number, got " + j.dump());
}

inline Json to_json(const InequalityReport& r)
{
    Json params = Json::object();
    for (const auto& [key, v] : r.params) {
        params[key] = number_to_json(v);
    }
    return Json{{"theorem_id", r.theorem_id},
                {"kind", r.kind},
                {"case_key", r.case_key},
                {"params", params},
                {"lhs", number_to_json(r.lhs)},
                {"rhs", number_to_json(r.rhs)},
                {"constant", r.explicit_constant() ? number_to_json(r.constant) : Json("empirical")},
                {"ratio", number_to_json(r.ratio)},
                {"verdict", verdict_name(r.verdict)},
                {"note", r.note}};
}

inline InequalityReport report_from_json(const Json& j)
{
    InequalityReport r;
    r.theorem_id = j.at("theorem_id").get<std::string>();
    r.kind = j.value("kind", std::string("inequality"));
    r.case_key = j.value("case_key", std::string());
    if (j.contains("params")) {
        for (const auto& [key, v] : j.at("params").items()) {
            r.params[key] = number_from_json(v);
        }
    }
    r.lhs = number_from_json(j.at("lhs"));
    r.rhs = number_from_json(j.at("rhs"));
    r.constant = number_from_json(j.at("constant"));
    r.ratio = number_from_json(j.at("ratio"));
    r.verdict = verdict_from_name(j.at("verdict").get<std::string>());
    r.note = j.value("note", std::string());
    return r;
}

/// FNV-1a, 64 bit.
inline std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// Hash of the document with meta.timestamp and the hash itself removed.
inline std::string report_hash(Json doc)
{
    if (doc.contains("meta")) {
        doc["meta"].erase("timestamp");
    }
    doc.erase("hash");
    return hex64(fnv1a(doc.dump()));
}

inline Json to_json(const CorpusReport& rep, const Json& config, const std::string& timestamp)
{
    Json cases = Json::array();
    for (const auto& c : rep.cases) {
        cases.push_back(to_json(c));
    }
    Json failures = Json::array();
    for (const auto& f : rep.failures) {
        failures.push_back({{"theorem_id", f.theorem_id}, {"case_key", f.case_key}, {"error", f.error}, {"message", f.message}});
    }
    Json summary = Json::object();
    for (const auto& [id, s] : rep.summary) {
        Json counts = Json::object();
        for (const auto& [v, n] : s.counts) {
            counts[v] = n;
        }
        summary[id] = {{"cases", s.cases}, {"worst_ratio", number_to_json(s.worst_ratio)}, {"counts", counts}};
    }
    Json doc{{"meta",
              {{"seed", rep.seed},
               {"versions", {{"lcdt", kLibraryVersion}, {"schema", kReportSchema}}},
               {"config", config},
               {"notes", Json::array({"Fourier reduction is taken at k = -1/2, where the kernel is exp(-i lambda x); "
                                      "k = 0 with theta = pi/2 is a Hankel-type transform, not the Fourier transform",
                                      "sup norms are maxima over quadrature nodes and critical points"})},
               {"timestamp", timestamp}}},
             {"cases", cases},
             {"failures", failures},
             {"summary", summary}};
    doc["hash"] = report_hash(doc);
    return doc;
}

/// Rebuilds the cases of a serialized report and recomputes its summary.
inline CorpusReport corpus_report_from_json(const Json& doc)
{
    CorpusReport rep;
    if (!doc.is_object() || !doc.contains("cases") || !doc.at("cases").is_array()) {
        throw DomainError("report JSON needs a 'cases' array");
    }
    if (doc.contains("meta") && doc.at("meta").contains("seed")) {
        rep.seed = doc.at("meta").at("seed").get<std::uint64_t>();
    }
    for (const auto& c : doc.at("cases")) {
        rep.cases.push_back(report_from_json(c));
    }
    if (doc.contains("failures")) {
        for (const auto& f : doc.at("failures")) {
            rep.failures.push_back({f.at("theorem_id").get<std::string>(), f.at("case_key").get<std::string>(),
                                    f.at("error").get<std::string>(), f.at("message").get<std::string>()});
        }
    }
    finalize(rep);
    return rep;
}

inline Json corpus_manifest(const std::vector<CorpusEntry>& corpus)
{
    Json out = Json::array();
    for (const auto& e : corpus) {
        Json params = Json::object();
        for (const auto& [key, v] : e.params) {
            params[key] = v;
        }
        out.push_back({{"family", family_name(e.family)}, {"params", params}, {"seed", e.seed}, {"label", e.signal.label}});
    }
    return out;
}

inline std::vector<CorpusEntry> corpus_from_manifest(const Json& j)
{
    if (!j.is_array()) {
        throw DomainError("corpus manifest must be an array");
    }
    std::vector<CorpusEntry> out;
    for (const auto& item : j) {
        std::map<std::string, double> params;
        if (item.contains("params")) {
            for (const auto& [key, v] : item.at("params").items()) {
                params[key] = v.get<double>();
            }
        }
        out.push_back(make_entry(family_from_name(item.at("family").get<std::string>()), params,
                                 item.value("seed", std::uint64_t{0})));
    }
    return out;
}

/// Everything cmd_verify needs; see README for the JSON schema.
struct RunConfig {
    std::uint64_t seed = 42;
    std::vector<double> orders{-0.5, 0.0, 0.5, 1.5};
    std::vector<CanonicalMatrix> matrices{fractional_matrix(std::numbers::pi / 6.0), fractional_matrix(std::numbers::pi / 2.0),
                                          CanonicalMatrix(1.0, 1.0, 0.0, 1.0), CanonicalMatrix(1.5, -0.8, 0.5, 0.4),
                                          CanonicalMatrix(0.5, 2.0, -0.25, 1.0)};
    std::optional<Json> corpus;
    SuiteConfig suite;
    std::string out;

    [[nodiscard]] std::vector<CorpusEntry> build_corpus() const
    {
        return corpus ? corpus_from_manifest(*corpus) : corpus_default(seed);
    }

    [[nodiscard]] std::vector<DunklOrder> dunkl_orders() const
    {
        std::vector<DunklOrder> ks;
        for (double k : orders) {
            ks.emplace_back(k);
        }
        return ks;
    }
};

inline CanonicalMatrix matrix_from_json(const Json& j)
{
    if (j.is_object() && j.contains("theta")) {
        return fractional_matrix(j.at("theta").get<double>());
    }
    if (j.is_array() && j.size() == 4) {
        return CanonicalMatrix(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>());
    }
    throw DomainError("matrix must be [a, b, c, d] or {\"theta\": x}");
}

inline Json to_json(const RunConfig& c)
{
    Json mats = Json::array();
    for (const auto& m : c.matrices) {
        mats.push_back({m.a, m.b, m.c, m.d});
    }
    const QuadratureSpec& q = c.suite.quad;
    Json j{{"seed", c.seed},
           {"orders", c.orders},
           {"matrices", mats},
           {"p_values", c.suite.p_values},
           {"s_values", c.suite.s_values},
           {"t_values", c.suite.t_values},
           {"moment_pairs", c.suite.moment_pairs},
           {"set_fractions", c.suite.set_fractions},
           {"eta", c.suite.eta},
           {"extremal", c.suite.extremal},
           {"theorems", c.suite.theorems},
           {"quad", {{"radius", q.radius}, {"panels", q.panels}, {"nodes_per_panel", q.nodes_per_panel}, {"rel_tol", q.rel_tol}}}};
    if (c.corpus) {
        j["corpus"] = *c.corpus;
    }
    return j;
}

/// Parses and validates a configuration; unknown keys are rejected.
inline RunConfig run_config_from_json(const Json& j)
{
    if (!j.is_object()) {
        throw DomainError("config must be a JSON object");
    }
    static const std::vector<std::string> known{"seed",    "orders", "matrices", "p_values", "s_values", "t_values",
                                                "moment_pairs", "set_fractions", "eta", "extremal", "theorems",
                                                "quad",    "corpus", "out"};
    for (const auto& [key, v] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw DomainError("unknown config key '" + key + "'");
        }
    }
    RunConfig c;
    try {
        c.seed = j.value("seed", c.seed);
        c.orders = j.value("orders", c.orders);
        if (j.contains("matrices")) {
            c.matrices.clear();
            for (const auto& m : j.at("matrices")) {
                c.matrices.push_back(matrix_from_json(m));
            }
        }
        c.suite.p_values = j.value("p_values", c.suite.p_values);
        c.suite.s_values = j.value("s_values", c.suite.s_values);
        c.suite.t_values = j.value("t_values", c.suite.t_values);
        c.suite.moment_pairs = j.value("moment_pairs", c.suite.moment_pairs);
        c.suite.set_fractions = j.value("set_fractions", c.suite.set_fractions);
        c.suite.eta = j.value("eta", c.suite.eta);
        c.suite.extremal = j.value("extremal", c.suite.extremal);
        c.suite.theorems = j.value("theorems", c.suite.theorems);
        if (j.contains("quad")) {
            const Json& q = j.at("quad");
            c.suite.quad.radius = q.value("radius", c.suite.quad.radius);
            c.suite.quad.panels = q.value("panels", c.suite.quad.panels);
            c.suite.quad.nodes_per_panel = q.value("nodes_per_panel", c.suite.quad.nodes_per_panel);
            c.suite.quad.rel_tol = q.value("rel_tol", c.suite.quad.rel_tol);
        }
        if (j.contains("corpus")) {
            c.corpus = j.at("corpus");
            (void)corpus_from_manifest(*c.corpus);
        }
        c.out = j.value("out", std::string());
    }
    catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("config: ") + e.what());
    }
    for (double k : c.orders) {
        (void)DunklOrder(k);
    }
    for (double p : c.suite.p_values) {
        (void)ExponentPair(p);
    }
    for (double s : c.suite.s_values) {
        if (!(s > 0.0)) {
            throw ParameterOutOfRange("s values must be positive");
        }
    }
    for (double f : c.suite.set_fractions) {
        if (!(f > 0.0 && f <= 1.0)) {
            throw ParameterOutOfRange("set fractions must lie in (0, 1]");
        }
    }
    if (!(c.suite.eta >= 0.0 && c.suite.eta < 1.0)) {
        throw ParameterOutOfRange("eta must lie in [0, 1)");
    }
    c.suite.seed = c.seed;
    c.suite.quad.validate();
    return c;
}

}  // namespace lcdt
