#pragma once

// Subcommands of lcdt_cli. run() is the whole program; main() only forwards to it.

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lcdt/lcdt.hpp"

namespace lcdt::cli {

enum ExitCode : int { kOk = 0, kViolated = 1, kInvalid = 2, kNonConvergence = 3, kNumericalFailure = 4 };

inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

/// Locale-independent strict parse of a whole token.
inline double parse_double(const std::string& token)
{
    const std::string t = trim(token);
    double v = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (!t.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (t.empty() || ec != std::errc() || ptr != last) {
        throw DomainError("not a number: '" + token + "'");
    }
    return v;
}

inline std::vector<double> parse_numbers(const std::string& s, std::size_t expected)
{
    std::vector<double> out;
    for (const auto& t : split(s, ',')) {
        out.push_back(parse_double(t));
    }
    if (out.size() != expected) {
        throw DomainError("expected " + std::to_string(expected) + " comma-separated numbers, got '" + s + "'");
    }
    return out;
}

/// "lo,hi,n"; n = 0 or an empty string gives an empty range.
inline std::vector<double> parse_range(const std::string& s)
{
    if (trim(s).empty()) {
        return {};
    }
    const auto v = parse_numbers(s, 3);
    if (!(v[2] >= 0.0) || v[2] != std::floor(v[2])) {
        throw DomainError("range point count must be a non-negative integer");
    }
    const auto n = static_cast<std::size_t>(v[2]);
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {v[0]};
    }
    if (!(v[1] > v[0])) {
        throw DomainError("range needs lo < hi");
    }
    return uniform_grid(v[0], v[1], n);
}

/// 513 points over [-L, L], L = (4|b| + |a|) R with R the signal's effective radius.
inline std::vector<double> default_grid(const Signal& f, const CanonicalMatrix& m)
{
    const double L = (4.0 * std::abs(m.b) + std::abs(m.a)) * detail::effective_radius(f);
    return uniform_grid(-L, L, 513);
}

inline CanonicalMatrix pick_matrix(const std::string& matrix, const std::optional<double>& theta)
{
    if (!matrix.empty()) {
        const auto v = parse_numbers(matrix, 4);
        return CanonicalMatrix(v[0], v[1], v[2], v[3]);
    }
    return fractional_matrix(theta.value_or(std::numbers::pi / 2.0));
}

/// "family:key=value,key=value" or "zero". A "seed" key sets the entry seed.
inline Signal parse_signal(const std::string& spec, std::uint64_t default_seed)
{
    const std::string s = trim(spec);
    const auto colon = s.find(':');
    const std::string family = trim(s.substr(0, colon));
    if (family == "zero") {
        return zero_signal();
    }
    std::map<std::string, double> params;
    std::uint64_t seed = default_seed;
    if (colon != std::string::npos && !trim(s.substr(colon + 1)).empty()) {
        for (const auto& kv : split(s.substr(colon + 1), ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw DomainError("signal parameter '" + kv + "' is not key=value");
            }
            const std::string key = trim(kv.substr(0, eq));
            const double v = parse_double(kv.substr(eq + 1));
            if (key == "seed") {
                if (!(v >= 0.0) || v != std::floor(v)) {
                    throw DomainError("seed must be a non-negative integer");
                }
                seed = static_cast<std::uint64_t>(v);
            }
            else {
                params[key] = v;
            }
        }
    }
    return make_entry(family_from_name(family), params, seed).signal;
}

/// Rows of x,re[,im]; a non-numeric first line is taken as a header.
inline Signal read_sampled_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open '" + path + "'");
    }
    std::vector<double> xs;
    std::vector<ComplexSample> ys;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        if (lineno == 1 && !fields.empty()) {
            double dummy = 0.0;
            const auto& f0 = fields[0];
            if (std::from_chars(f0.data(), f0.data() + f0.size(), dummy).ec != std::errc()) {
                continue;
            }
        }
        if (fields.size() != 2 && fields.size() != 3) {
            throw DomainError(path + ":" + std::to_string(lineno) + ": expected x,re[,im]");
        }
        try {
            xs.push_back(parse_double(fields[0]));
            ys.emplace_back(parse_double(fields[1]), fields.size() == 3 ? parse_double(fields[2]) : 0.0);
        }
        catch (const DomainError& e) {
            throw DomainError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return make_sampled_signal(std::move(xs), std::move(ys), std::filesystem::path(path).filename().string());
}

inline std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string spectrum_csv(std::span<const double> lambdas, std::span<const ComplexSample> values)
{
    std::string out = "lambda,re,im\n";
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        out += fmt17(lambdas[i]) + ',' + fmt17(values[i].real()) + ',' + fmt17(values[i].imag()) + '\n';
    }
    return out;
}

/// Writes to a sibling temporary and renames it into place.
inline void write_atomic(const std::string& path, const std::string& content)
{
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw DomainError("cannot write '" + tmp.string() + "'");
        }
        f << content;
        f.flush();
        if (!f) {
            throw DomainError("failed writing '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, target);
}

inline std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline RunConfig load_config(const std::string& path)
{
    if (path.empty()) {
        return run_config_from_json(Json::object());
    }
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open config '" + path + "'");
    }
    Json j;
    try {
        j = Json::parse(in);
    }
    catch (const nlohmann::json::exception& e) {
        throw DomainError("config '" + path + "': " + e.what());
    }
    return run_config_from_json(j);
}

/// The report of a verify run; also used directly by tests.
inline Json verify_document(const RunConfig& cfg, const std::string& timestamp, CorpusReport* out = nullptr)
{
    CorpusReport rep = run_suite(cfg.build_corpus(), cfg.matrices, cfg.dunkl_orders(), cfg.suite);
    Json doc = to_json(rep, to_json(cfg), timestamp);
    if (out) {
        *out = std::move(rep);
    }
    return doc;
}

inline const char* worst_verdict(const TheoremSummary& s)
{
    for (const char* v : {"violated", "holds", "empirical_only", "trivial"}) {
        if (s.counts.contains(v) && s.counts.at(v) > 0) {
            return v;
        }
    }
    return "none";
}

inline std::string summary_table(const CorpusReport& rep)
{
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-28s %7s %14s  %s\n", "theorem_id", "cases", "worst_ratio", "verdict");
    out += buf;
    for (const auto& [id, s] : rep.summary) {
        std::snprintf(buf, sizeof buf, "%-28s %7d %14.6g  %s\n", id.c_str(), s.cases, s.worst_ratio, worst_verdict(s));
        out += buf;
    }
    if (!rep.failures.empty()) {
        std::snprintf(buf, sizeof buf, "%zu case(s) raised errors\n", rep.failures.size());
        out += buf;
    }
    return out;
}

inline int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const NonConvergence*>(&e)) {
        return kNonConvergence;
    }
    if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const ParameterOutOfRange*>(&e) ||
        dynamic_cast<const DegenerateMatrix*>(&e) || dynamic_cast<const ZeroSignal*>(&e) ||
        dynamic_cast<const nlohmann::json::exception*>(&e)) {
        return kInvalid;
    }
    return kNumericalFailure;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Linear canonical Dunkl transform toolkit"};
    app.require_subcommand(1);
    std::uint64_t seed = 42;
    double quad_tol = 0.0;
    auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized corpus entries");
    auto* tol_opt = app.add_option("--quad-tol", quad_tol, "Relative tolerance of adaptive quadrature");

    double k = 0.0;
    std::string matrix;
    std::optional<double> theta;
    auto add_matrix = [&](CLI::App* sub) {
        auto* m = sub->add_option("--matrix", matrix, "a,b,c,d with ad - bc = 1");
        auto* t = sub->add_option("--theta", theta, "Fractional matrix angle (default pi/2)");
        m->excludes(t);
    };

    auto* kernel = app.add_subcommand("kernel", "Print the transform kernel as CSV");
    kernel->add_option("--k", k, "Dunkl order")->required();
    add_matrix(kernel);
    std::string lambda_range = "-10,10,201";
    double x = 0.0;
    kernel->add_option("--lambda-range", lambda_range, "lo,hi,n");
    kernel->add_option("--x", x, "Space variable")->required();

    auto* transform = app.add_subcommand("transform", "Transform a signal and write CSV");
    std::string signal_spec;
    std::string input;
    std::string grid_spec;
    std::string out_path;
    auto* sig_opt = transform->add_option("--signal", signal_spec, "family:key=value,...");
    auto* in_opt = transform->add_option("--input", input, "CSV of x,re,im samples");
    sig_opt->excludes(in_opt);
    transform->add_option("--k", k, "Dunkl order")->required();
    add_matrix(transform);
    transform->add_option("--grid", grid_spec, "lo,hi,n (default: 513 points over the spectrum window)");
    transform->add_option("--out", out_path, "Output CSV (standard output if absent)");

    auto* verify = app.add_subcommand("verify", "Run the inequality suite and write a JSON report");
    std::string config_path;
    std::string verify_out;
    verify->add_option("--config", config_path, "JSON run configuration");
    verify->add_option("--out", verify_out, "Output JSON (standard output if absent)");

    auto* report = app.add_subcommand("report", "Summarize a JSON report");
    std::string report_in;
    report->add_option("--in", report_in, "JSON report")->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalid;
    }

    try {
        QuadratureSpec quad;
        if (tol_opt->count() > 0) {
            quad.rel_tol = quad_tol;
        }
        quad.validate();

        if (*kernel) {
            const DunklOrder kk(k);
            const CanonicalMatrix m = pick_matrix(matrix, theta);
            const auto lambdas = parse_range(lambda_range);
            std::vector<ComplexSample> values;
            values.reserve(lambdas.size());
            for (double lam : lambdas) {
                values.push_back(lcdt_kernel(m, kk, lam, x));
            }
            out << spectrum_csv(lambdas, values);
            return kOk;
        }

        if (*transform) {
            if (signal_spec.empty() && input.empty()) {
                throw DomainError("transform needs --signal or --input");
            }
            const DunklOrder kk(k);
            const CanonicalMatrix m = pick_matrix(matrix, theta);
            const Signal f = input.empty() ? parse_signal(signal_spec, seed) : read_sampled_csv(input);
            const auto grid = grid_spec.empty() ? default_grid(f, m) : parse_range(grid_spec);
            std::vector<ComplexSample> values;
            if (!grid.empty()) {
                values = lcdt_forward(f, m, kk, grid, quad).values;
            }
            const std::string csv = spectrum_csv(grid, values);
            if (out_path.empty()) {
                out << csv;
            }
            else {
                write_atomic(out_path, csv);
            }
            return kOk;
        }

        if (*verify) {
            RunConfig cfg = load_config(config_path);
            if (seed_opt->count() > 0) {
                cfg.seed = seed;
                cfg.suite.seed = seed;
            }
            if (tol_opt->count() > 0) {
                cfg.suite.quad.rel_tol = quad_tol;
                cfg.suite.quad.validate();
            }
            CorpusReport rep;
            const Json doc = verify_document(cfg, utc_timestamp(), &rep);
            const std::string text = doc.dump(1) + "\n";
            const std::string path = verify_out.empty() ? cfg.out : verify_out;
            if (path.empty()) {
                out << text;
            }
            else {
                write_atomic(path, text);
            }
            const int violated = rep.count(Verdict::violated);
            err << rep.cases.size() << " cases, " << violated << " violated, " << rep.failures.size() << " errors\n";
            return violated > 0 ? kViolated : kOk;
        }

        if (*report) {
            std::ifstream in(report_in);
            if (!in) {
                throw DomainError("cannot open '" + report_in + "'");
            }
            const CorpusReport rep = corpus_report_from_json(Json::parse(in));
            out << summary_table(rep);
            return kOk;
        }
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kInvalid;
}

}  // namespace lcdt::cli
