#pragma once

// Parametric test signals and the default corpus.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lcdt/errors.hpp"
#include "lcdt/signal.hpp"

namespace lcdt {

enum class Family { gaussian, chirped_gaussian, poly_gaussian, indicator, smooth_bump, random_trig_bump };

inline const char* family_name(Family f)
{
    switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::chirped_gaussian: return "chirped_gaussian";
    case Family::poly_gaussian: return "poly_gaussian";
    case Family::indicator: return "indicator";
    case Family::smooth_bump: return "smooth_bump";
    case Family::random_trig_bump: return "random_trig_bump";
    }
    return "unknown";
}

inline Family family_from_name(const std::string& name)
{
    for (Family f : {Family::gaussian, Family::chirped_gaussian, Family::poly_gaussian, Family::indicator,
                     Family::smooth_bump, Family::random_trig_bump}) {
        if (name == family_name(f)) {
            return f;
        }
    }
    throw DomainError("unknown signal family '" + name + "'");
}

namespace detail {

inline std::string fmt_param(const char* key, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s=%.6g", key, v);
    return buf;
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// x -> exp(-(s_re + i s_im)(x - x0)^2).
inline Signal make_gaussian(double s_re, double s_im = 0.0, double x0 = 0.0)
{
    if (!(s_re > 0.0)) {
        throw DomainError("make_gaussian: s_re must be positive");
    }
    const std::complex<double> s(s_re, s_im);
    std::string label = "gaussian(" + detail::fmt_param("s", s_re);
    if (s_im != 0.0) {
        label += "," + detail::fmt_param("chirp", s_im);
    }
    if (x0 != 0.0) {
        label += "," + detail::fmt_param("x0", x0);
    }
    label += ")";
    Signal g = make_signal(
        [s, x0](double x) {
            const double y = x - x0;
            return std::exp(-s * (y * y));
        },
        std::abs(x0) + std::sqrt(36.0 / s_re), label);
    g.bandwidth = 12.0 * std::sqrt((s_re * s_re + s_im * s_im) / s_re);
    g.critical_points = {x0};
    return g;
}

/// x -> x^m exp(-delta x^2).
inline Signal make_poly_gaussian(int m, double delta)
{
    if (m < 0 || m > 6) {
        throw ParameterOutOfRange("make_poly_gaussian: degree must lie in [0, 6]");
    }
    if (!(delta > 0.0)) {
        throw DomainError("make_poly_gaussian: delta must be positive");
    }
    Signal g = make_signal(
        [m, delta](double x) {
            double p = 1.0;
            for (int i = 0; i < m; ++i) {
                p *= x;
            }
            return ComplexSample(p * std::exp(-delta * x * x), 0.0);
        },
        std::sqrt((36.0 + 4.0 * m) / delta),
        "poly_gaussian(" + detail::fmt_param("m", m) + "," + detail::fmt_param("delta", delta) + ")");
    g.bandwidth = 12.0 * std::sqrt(delta) + 2.0 * m * std::sqrt(delta);
    const double peak = std::sqrt(m / (2.0 * delta));
    g.critical_points = {-peak, 0.0, peak};
    return g;
}

/// Polynomial Q(x) exp(-(delta + i chirp) x^2) with complex coefficients, lowest degree first.
inline Signal make_poly_chirp_gaussian(std::vector<std::complex<double>> coeffs, double delta, double chirp)
{
    if (!(delta > 0.0)) {
        throw DomainError("delta must be positive");
    }
    const int m = static_cast<int>(coeffs.size()) - 1;
    const std::complex<double> s(delta, chirp);
    Signal g = make_signal(
        [coeffs, s](double x) {
            std::complex<double> p{};
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
                p = p * x + *it;
            }
            return p * std::exp(-s * (x * x));
        },
        std::sqrt((36.0 + 4.0 * std::max(m, 0)) / delta),
        "poly_chirp_gaussian(" + detail::fmt_param("m", m) + "," + detail::fmt_param("delta", delta) + ")");
    g.bandwidth = 12.0 * std::sqrt((delta * delta + chirp * chirp) / delta) + 2.0 * std::max(m, 0) * std::sqrt(delta);
    return g;
}

/// Indicator of (-r, r), carrying its exact support.
inline Signal make_indicator(double r)
{
    if (!(r > 0.0)) {
        throw DomainError("make_indicator: r must be positive");
    }
    const IntervalSet sup = IntervalSet::symmetric(r);
    Signal g = make_signal([r](double x) { return ComplexSample(std::abs(x) < r ? 1.0 : 0.0, 0.0); }, r,
                           "indicator(" + detail::fmt_param("r", r) + ")");
    g.support = sup;
    g.critical_points = {0.0};
    return g;
}

/// exp(c - c / (1 - (x/w)^2)) on (-w, w), zero outside; equals 1 at the origin.
inline Signal make_smooth_bump(double w, double c = 4.0)
{
    if (!(w > 0.0) || !(c > 0.0)) {
        throw DomainError("make_smooth_bump: width and sharpness must be positive");
    }
    Signal g = make_signal(
        [w, c](double x) {
            const double u = x / w;
            const double t = 1.0 - u * u;
            return ComplexSample(t > 0.0 ? std::exp(c - c / t) : 0.0, 0.0);
        },
        w, "smooth_bump(" + detail::fmt_param("w", w) + "," + detail::fmt_param("c", c) + ")");
    g.support = IntervalSet::symmetric(w);
    g.bandwidth = 45.0 * std::sqrt(c / 4.0) * 4.0 / w;
    g.critical_points = {0.0};
    return g;
}

struct TrigTerm {
    double omega;
    std::complex<double> coeff;
};

/// Smooth bump times (1 + sum_j c_j e^{i omega_j x}) with sum |c_j| <= 0.8, so it never vanishes inside.
inline std::vector<TrigTerm> draw_trig_terms(int terms, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<TrigTerm> out;
    std::vector<double> mags;
    double total = 0.0;
    for (int j = 0; j < terms; ++j) {
        const double omega = -3.0 + 6.0 * detail::uniform01(rng);
        const double mag = 0.1 + detail::uniform01(rng);
        const double phase = 2.0 * 3.141592653589793 * detail::uniform01(rng);
        out.push_back({omega, std::polar(1.0, phase)});
        mags.push_back(mag);
        total += mag;
    }
    for (int j = 0; j < terms; ++j) {
        out[j].coeff *= 0.8 * mags[j] / total;
    }
    return out;
}

inline Signal make_random_trig_bump(double w, double c, int terms, std::uint64_t seed)
{
    if (terms < 1 || terms > 16) {
        throw ParameterOutOfRange("make_random_trig_bump: terms must lie in [1, 16]");
    }
    const auto trig = draw_trig_terms(terms, seed);
    Signal bump = make_smooth_bump(w, c);
    double max_omega = 0.0;
    for (const auto& t : trig) {
        max_omega = std::max(max_omega, std::abs(t.omega));
    }
    Signal g = make_signal(
        [w, c, trig](double x) {
            const double u = x / w;
            const double t = 1.0 - u * u;
            if (!(t > 0.0)) {
                return ComplexSample{};
            }
            ComplexSample mod(1.0, 0.0);
            for (const auto& term : trig) {
                mod += term.coeff * std::polar(1.0, term.omega * x);
            }
            return std::exp(c - c / t) * mod;
        },
        w,
        "random_trig_bump(" + detail::fmt_param("w", w) + "," + detail::fmt_param("c", c) + "," +
            detail::fmt_param("terms", terms) + ")");
    g.support = bump.support;
    g.bandwidth = bump.bandwidth + max_omega;
    g.seed = seed;
    g.critical_points = {0.0};
    return g;
}

struct CorpusEntry {
    Signal signal;
    Family family;
    std::map<std::string, double> params;
    std::uint64_t seed = 0;

    /// Smooth, fast-decaying spectrum; indicators are excluded from spectral sweeps.
    [[nodiscard]] bool smooth() const { return family != Family::indicator; }
};

/// Rebuilds an entry from its family, parameters and seed alone.
inline CorpusEntry make_entry(Family family, const std::map<std::string, double>& params, std::uint64_t seed)
{
    auto get = [&](const char* key, double fallback) {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    CorpusEntry e{Signal{}, family, params, seed};
    switch (family) {
    case Family::gaussian:
        e.signal = make_gaussian(get("s", 1.0), 0.0, get("x0", 0.0));
        break;
    case Family::chirped_gaussian:
        e.signal = make_gaussian(get("s", 1.0), get("chirp", 0.0), get("x0", 0.0));
        break;
    case Family::poly_gaussian:
        e.signal = make_poly_gaussian(static_cast<int>(get("m", 0.0)), get("delta", 1.0));
        break;
    case Family::indicator:
        e.signal = make_indicator(get("r", 1.0));
        break;
    case Family::smooth_bump:
        e.signal = make_smooth_bump(get("w", 3.0), get("c", 4.0));
        break;
    case Family::random_trig_bump:
        e.signal = make_random_trig_bump(get("w", 3.0), get("c", 4.0), static_cast<int>(get("terms", 3.0)), seed);
        break;
    }
    return e;
}

/// 24 entries: 20 smooth ones plus 4 indicators. Deterministic in the seed.
inline std::vector<CorpusEntry> corpus_default(std::uint64_t seed)
{
    std::vector<CorpusEntry> out;
    auto add = [&](Family f, std::map<std::string, double> p, std::uint64_t s = 0) { out.push_back(make_entry(f, p, s)); };
    add(Family::gaussian, {{"s", 0.5}});
    add(Family::gaussian, {{"s", 1.0}});
    add(Family::gaussian, {{"s", 2.0}});
    add(Family::gaussian, {{"s", 1.0}, {"x0", 0.7}});
    add(Family::gaussian, {{"s", 2.0}, {"x0", -1.2}});
    add(Family::chirped_gaussian, {{"s", 1.0}, {"chirp", 0.5}});
    add(Family::chirped_gaussian, {{"s", 0.5}, {"chirp", -1.0}});
    add(Family::chirped_gaussian, {{"s", 2.0}, {"chirp", 1.5}});
    add(Family::chirped_gaussian, {{"s", 1.0}, {"chirp", -0.25}, {"x0", 0.5}});
    add(Family::poly_gaussian, {{"m", 1.0}, {"delta", 1.0}});
    add(Family::poly_gaussian, {{"m", 2.0}, {"delta", 0.5}});
    add(Family::poly_gaussian, {{"m", 3.0}, {"delta", 1.0}});
    add(Family::poly_gaussian, {{"m", 4.0}, {"delta", 2.0}});
    add(Family::smooth_bump, {{"w", 2.5}, {"c", 4.0}});
    add(Family::smooth_bump, {{"w", 3.0}, {"c", 4.0}});
    add(Family::smooth_bump, {{"w", 3.5}, {"c", 4.0}});
    std::seed_seq seq{seed};
    std::vector<std::uint32_t> seeds(8);
    seq.generate(seeds.begin(), seeds.end());
    for (int j = 0; j < 4; ++j) {
        const std::uint64_t s = (std::uint64_t(seeds[2 * j]) << 32) | seeds[2 * j + 1];
        add(Family::random_trig_bump, {{"w", 2.5 + 0.5 * j}, {"c", 4.0}, {"terms", 2.0 + j}}, s);
    }
    for (double r : {0.5, 1.0, 2.0, 3.0}) {
        add(Family::indicator, {{"r", r}});
    }
    return out;
}

}  // namespace lcdt
