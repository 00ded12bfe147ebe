#pragma once

// Both sides of the uncertainty inequalities, with their explicit constants,
// plus the Gaussian extremal checks and a suite runner.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lcdt/corpus.hpp"
#include "lcdt/errors.hpp"
#include "lcdt/measure_norms.hpp"
#include "lcdt/quadrature.hpp"
#include "lcdt/signal.hpp"
#include "lcdt/special_functions.hpp"
#include "lcdt/transform.hpp"

namespace lcdt {

enum class Verdict { holds, violated, trivial, empirical_only };

inline const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::trivial: return "trivial";
    case Verdict::empirical_only: return "empirical_only";
    }
    return "unknown";
}

inline Verdict verdict_from_name(const std::string& s)
{
    for (Verdict v : {Verdict::holds, Verdict::violated, Verdict::trivial, Verdict::empirical_only}) {
        if (s == verdict_name(v)) {
            return v;
        }
    }
    throw DomainError("unknown verdict '" + s + "'");
}

inline constexpr double kVerdictTolerance = 1e-9;

/// One evaluated instance of an inequality (kind "inequality"), an identity such
/// as Plancherel (kind "identity"), or an extremal closed-form check (kind "extremal").
struct InequalityReport {
    std::string theorem_id;
    std::string kind = "inequality";
    std::string case_key;
    std::map<std::string, double> params;
    double lhs = 0.0;
    double rhs = 0.0;
    /// NaN when the constant is not explicit.
    double constant = std::numeric_limits<double>::quiet_NaN();
    double ratio = 0.0;
    Verdict verdict = Verdict::trivial;
    std::string note;

    [[nodiscard]] bool explicit_constant() const { return !std::isnan(constant); }
};

struct ExponentPair {
    double p;
    double q;

    explicit ExponentPair(double p_) : p(p_), q(p_ == 1.0 ? std::numeric_limits<double>::infinity() : p_ / (p_ - 1.0))
    {
        if (!(p_ > 1.0 && p_ <= 2.0)) {
            throw ParameterOutOfRange("exponent p must lie in (1, 2]");
        }
    }
};

namespace detail {

inline double log_g2(DunklOrder k)
{
    // log(2^{k+1} Gamma(k+2))
    return (k.value() + 1.0) * std::numbers::ln2 + log_gamma(k.value() + 2.0);
}

inline double c_kb(double b, DunklOrder k)
{
    return std::exp(-(k.value() + 1.0) * std::log(std::abs(b)));
}

inline void require_b(const CanonicalMatrix& m)
{
    if (m.b == 0.0) {
        throw DegenerateMatrix("the inequality requires b != 0");
    }
}

inline void close_strict(InequalityReport& r)
{
    if (std::isinf(r.rhs) || r.lhs == 0.0) {
        r.ratio = std::isinf(r.rhs) || r.rhs == 0.0 ? 0.0 : r.lhs / r.rhs;
        r.verdict = Verdict::trivial;
        return;
    }
    r.ratio = r.lhs / r.rhs;
    if (!r.explicit_constant()) {
        r.verdict = Verdict::empirical_only;
        return;
    }
    r.verdict = r.ratio <= 1.0 + kVerdictTolerance ? Verdict::holds : Verdict::violated;
}

inline void close_empirical(InequalityReport& r)
{
    close_strict(r);
    if (r.verdict != Verdict::trivial) {
        r.verdict = Verdict::empirical_only;
    }
}

// ratio must already be set.
inline void close_identity(InequalityReport& r, double tol)
{
    r.kind = "identity";
    r.params["tolerance"] = tol;
    if (r.lhs == 0.0 && r.rhs == 0.0) {
        r.verdict = Verdict::trivial;
        return;
    }
    r.verdict = std::abs(r.ratio - 1.0) <= tol ? Verdict::holds : Verdict::violated;
}

/// lambda -> w(lambda) g(lambda).
template <class W>
Signal weighted(const Signal& g, W w, std::string label)
{
    Signal h = g;
    h.evaluate = [inner = g.evaluate, w](std::span<const double> xs, std::span<ComplexSample> out) {
        inner(xs, out);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out[i] *= w(xs[i]);
        }
    };
    h.label = std::move(label);
    return h;
}

/// f - g on [-radius, radius].
inline Signal difference(const Signal& f, const Signal& g, double radius)
{
    Signal h;
    h.evaluate = [a = f.evaluate, b = g.evaluate](std::span<const double> xs, std::span<ComplexSample> out) {
        std::vector<ComplexSample> tmp(xs.size());
        a(xs, out);
        b(xs, tmp);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out[i] -= tmp[i];
        }
    };
    h.decay_radius = radius;
    h.support = IntervalSet::symmetric(radius);
    h.breakpoints = f.breakpoints;
    h.critical_points = f.critical_points;
    h.label = f.label + " - " + g.label;
    return h;
}

inline std::string fmt_key(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace detail

/// {|g| > eta max|g|} on [lo, hi], measured on an n-point uniform scan.
inline IntervalSet level_set(const Signal& g, double lo, double hi, double eta, std::size_t n = 513)
{
    const std::vector<double> grid = uniform_grid(lo, hi, n);
    const std::vector<ComplexSample> vals = g(grid);
    double peak = 0.0;
    for (const auto& v : vals) {
        peak = std::max(peak, std::abs(v));
    }
    if (peak == 0.0) {
        return {};
    }
    const double thr = eta * peak;
    const double h = n > 1 ? (hi - lo) / static_cast<double>(n - 1) : 0.0;
    std::vector<IntervalSet::Interval> pieces;
    std::size_t i = 0;
    while (i < n) {
        if (!(std::abs(vals[i]) > thr)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && std::abs(vals[j + 1]) > thr) {
            ++j;
        }
        pieces.emplace_back(std::max(lo, grid[i] - 0.5 * h), std::min(hi, grid[j] + 0.5 * h));
        i = j + 1;
    }
    return pieces.empty() ? IntervalSet{} : IntervalSet(std::move(pieces));
}

/// One (signal, matrix, order) case. Spectra, inverses and norms are computed
/// once and shared by every report built on the case.
class CaseContext {
public:
    /// With `window`, the spectrum is taken on [-window, window] instead of the
    /// automatic tail search; needed for inputs whose spectra decay slowly.
    CaseContext(Signal f, CanonicalMatrix m, DunklOrder k, QuadratureSpec quad, std::optional<double> window = std::nullopt)
        : f_(std::move(f)), m_(m), k_(k), quad_(quad), window_(window)
    {
        quad_.validate();
    }

    [[nodiscard]] const Signal& signal() const noexcept { return f_; }
    [[nodiscard]] const CanonicalMatrix& matrix() const noexcept { return m_; }
    [[nodiscard]] DunklOrder order() const noexcept { return k_; }
    [[nodiscard]] const QuadratureSpec& quad() const noexcept { return quad_; }
    /// True when the spectrum window was imposed rather than found.
    [[nodiscard]] bool truncated() const noexcept { return window_.has_value(); }
    [[nodiscard]] double radius() const { return detail::effective_radius(f_); }

    const Signal& spectrum()
    {
        if (!spectrum_) {
            spectrum_ = lcdt_spectrum(f_, m_, k_, quad_, window_);
        }
        return *spectrum_;
    }

    double spectrum_window() { return spectrum().decay_radius; }

    double f_norm(double p, double alpha = 0.0)
    {
        return cached(f_norms_, p, alpha, [&] { return lp_norm_on(f_, p, alpha, k_, quad_); });
    }

    double spectrum_norm(double q, double beta = 0.0)
    {
        return cached(spec_norms_, q, beta, [&] { return lp_norm_on(spectrum(), q, beta, k_, quad_); });
    }

    /// D^{M^{-1}}(chi_F D^M f) on the support window of f, F = (-band, band);
    /// without `band` the whole spectrum is inverted.
    const Signal& band_inverse(std::optional<double> band = std::nullopt)
    {
        const double key = band.value_or(-1.0);
        if (auto it = inverses_.find(key); it != inverses_.end()) {
            return it->second;
        }
        Signal s = spectrum();
        if (band) {
            s = restricted(s, IntervalSet::symmetric(*band));
        }
        Signal h = f_.zero || s.zero ? zero_signal() : lcdt_inverse_signal(s, m_, k_, quad_, radius());
        return inverses_.emplace(key, std::move(h)).first->second;
    }

    /// ||f - h||_p for h = band_inverse(band).
    double band_error(double p, std::optional<double> band = std::nullopt)
    {
        const double key = band.value_or(-1.0);
        return cached(band_errors_, p, key, [&] {
            // The difference is mostly rounding noise, which never converges
            // relatively; integrate it on the rule that converged for |f|^p.
            const Signal& h = band_inverse(band);
            const Domain dom = make_domain(f_, quad_, nullptr);
            auto fp = [&](std::span<const double> xs, std::span<double> out) {
                std::vector<ComplexSample> vals(xs.size());
                f_.evaluate(xs, vals);
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    out[i] = std::pow(std::abs(vals[i]), p);
                }
            };
            const WeightedRule rule = integrate_refined<double>(dom, fp, k_, quad_).rule;
            const Signal diff = detail::difference(f_, h, radius());
            const std::vector<ComplexSample> vals = diff(rule.x);
            double acc = 0.0;
            for (std::size_t i = 0; i < vals.size(); ++i) {
                acc += rule.w[i] * std::pow(std::abs(vals[i]), p);
            }
            return std::pow(acc, 1.0 / p);
        });
    }

    double concentration_f(const IntervalSet& e, double p)
    {
        return concentration(f_, e, p, k_, quad_);
    }

    double concentration_spectrum(const IntervalSet& e, double q)
    {
        return concentration(spectrum(), e, q, k_, quad_);
    }

    std::string key() const
    {
        return f_.label + "|k=" + detail::fmt_key(k_.value()) + "|M=(" + detail::fmt_key(m_.a) + "," +
               detail::fmt_key(m_.b) + "," + detail::fmt_key(m_.c) + "," + detail::fmt_key(m_.d) + ")";
    }

    std::map<std::string, double> base_params() const
    {
        return {{"k", k_.value()}, {"a", m_.a}, {"b", m_.b}, {"c", m_.c}, {"d", m_.d}};
    }

private:
    using NormCache = std::map<std::pair<double, double>, double>;

    template <class Fn>
    static double cached(NormCache& cache, double a, double b, Fn&& fn)
    {
        const auto key = std::make_pair(a, b);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
        const double v = fn();
        cache.emplace(key, v);
        return v;
    }

    Signal f_;
    CanonicalMatrix m_;
    DunklOrder k_;
    QuadratureSpec quad_;
    std::optional<double> window_;
    std::optional<Signal> spectrum_;
    std::map<double, Signal> inverses_;
    NormCache f_norms_;
    NormCache spec_norms_;
    NormCache band_errors_;
};

namespace detail {

inline InequalityReport start(const std::string& id, CaseContext& ctx, std::map<std::string, double> extra = {},
                              bool with_matrix = true)
{
    InequalityReport r;
    r.theorem_id = id;
    r.params = ctx.base_params();
    r.case_key = ctx.key();
    if (!with_matrix) {
        for (const char* key : {"a", "b", "c", "d"}) {
            r.params.erase(key);
        }
        r.case_key = ctx.signal().label + "|k=" + fmt_key(ctx.order().value());
    }
    for (auto& [key, v] : extra) {
        r.params[key] = v;
    }
    for (const auto& [key, v] : extra) {
        r.case_key += "|" + key + "=" + fmt_key(v);
    }
    if (ctx.truncated()) {
        r.note = "spectrum truncated to a fixed window";
    }
    return r;
}

inline void check_moment_exponent(double alpha, DunklOrder k, const ExponentPair& pq)
{
    if (!(alpha > 0.0) || !(alpha < 2.0 * (k.value() + 1.0) / pq.q)) {
        throw ParameterOutOfRange("moment exponent alpha must lie in (0, 2(k+1)/q)");
    }
}

inline void check_pair(double p1, double p2)
{
    if (!(p1 > 1.0 && p1 < p2 && p2 <= 2.0)) {
        throw ParameterOutOfRange("exponents must satisfy 1 < p1 < p2 <= 2");
    }
}

}  // namespace detail

/// ||D f||_2 against ||f||_2.
inline InequalityReport plancherel_report(CaseContext& ctx)
{
    InequalityReport r = detail::start("plancherel", ctx);
    r.lhs = ctx.spectrum_norm(2.0);
    r.rhs = ctx.f_norm(2.0);
    r.constant = 1.0;
    r.ratio = r.rhs == 0.0 ? 0.0 : r.lhs / r.rhs;
    detail::close_identity(r, 1e-6);
    return r;
}

/// Round trip D^{M^{-1}} D^M f against f. The ratio is (||f|| + ||f - g||)/||f||,
/// so its distance from 1 is the relative L^2 error.
inline InequalityReport inversion_report(CaseContext& ctx)
{
    InequalityReport r = detail::start("inversion", ctx);
    const double nf = ctx.f_norm(2.0);
    const double err = nf == 0.0 ? 0.0 : ctx.band_error(2.0);
    r.lhs = nf + err;
    r.rhs = nf;
    r.constant = 1.0;
    r.ratio = nf == 0.0 ? 0.0 : r.lhs / r.rhs;
    r.params["relative_error"] = nf == 0.0 ? 0.0 : err / nf;
    detail::close_identity(r, 1e-6);
    return r;
}

/// sup |D f| <= C_{k,b} ||f||_1.
inline InequalityReport riemann_lebesgue_report(CaseContext& ctx)
{
    detail::require_b(ctx.matrix());
    InequalityReport r = detail::start("riemann_lebesgue", ctx);
    r.constant = detail::c_kb(ctx.matrix().b, ctx.order());
    r.lhs = ctx.spectrum_norm(std::numeric_limits<double>::infinity());
    r.rhs = r.constant * ctx.f_norm(1.0);
    if (r.note.empty()) {
        r.note = "sup over quadrature nodes";
    }
    detail::close_strict(r);
    return r;
}

/// ||D f||_q <= |b|^{-(k+1)(1-2/q)} ||f||_p.
inline InequalityReport young_report(CaseContext& ctx, const ExponentPair& pq)
{
    detail::require_b(ctx.matrix());
    InequalityReport r = detail::start("young", ctx, {{"p", pq.p}});
    const double kk = ctx.order().value();
    r.constant = std::exp(-(kk + 1.0) * (1.0 - 2.0 / pq.q) * std::log(std::abs(ctx.matrix().b)));
    r.lhs = ctx.spectrum_norm(pq.q);
    r.rhs = r.constant * ctx.f_norm(pq.p);
    detail::close_strict(r);
    return r;
}

/// ||D f||_q against ||y^alpha f||_p^{beta/(alpha+beta)} ||lambda^beta D f||_q^{alpha/(alpha+beta)};
/// the constant is not explicit, so only the ratio is recorded.
inline InequalityReport heisenberg_report(CaseContext& ctx, double alpha, double beta, const ExponentPair& pq)
{
    detail::check_moment_exponent(alpha, ctx.order(), pq);
    if (!(beta > 0.0)) {
        throw ParameterOutOfRange("beta must be positive");
    }
    InequalityReport r = detail::start("heisenberg_pauli_weyl", ctx, {{"alpha", alpha}, {"beta", beta}, {"p", pq.p}});
    r.lhs = ctx.spectrum_norm(pq.q);
    const double sum = alpha + beta;
    r.rhs = std::pow(ctx.f_norm(pq.p, alpha), beta / sum) * std::pow(ctx.spectrum_norm(pq.q, beta), alpha / sum);
    detail::close_empirical(r);
    return r;
}

/// ||e^{-t lambda^2}||_p against (2p)^{-(k+1)/p} t^{-(k+1)/p}.
inline InequalityReport gaussian_norm_lemma_report(double t, double p, DunklOrder k, const QuadratureSpec& quad)
{
    if (!(t > 0.0) || !(p >= 1.0)) {
        throw ParameterOutOfRange("need t > 0 and p >= 1");
    }
    InequalityReport r;
    r.theorem_id = "gaussian_norm_lemma";
    r.params = {{"k", k.value()}, {"t", t}, {"p", p}};
    r.case_key = "k=" + detail::fmt_key(k.value()) + "|t=" + detail::fmt_key(t) + "|p=" + detail::fmt_key(p);
    r.lhs = lp_norm(make_gaussian(t), p, k, quad);
    r.constant = std::pow(2.0 * p, -(k.value() + 1.0) / p);
    r.rhs = r.constant * std::pow(t, -(k.value() + 1.0) / p);
    r.ratio = r.lhs / r.rhs;
    detail::close_identity(r, 1e-10);
    return r;
}

/// ||e^{-t lambda^2} D f||_q <= C t^{-alpha/2} ||y^alpha f||_p with
/// C = C_g / (|b|^{k+1} (2(k+1) - alpha q)^{1/q}) + |b|^{-(k+1)(1-2/q)}, C_g = (2q)^{-(k+1)/q}.
inline InequalityReport heisenberg_smoothing_report(CaseContext& ctx, double alpha, double t, const ExponentPair& pq)
{
    detail::require_b(ctx.matrix());
    detail::check_moment_exponent(alpha, ctx.order(), pq);
    if (!(t > 0.0)) {
        throw ParameterOutOfRange("t must be positive");
    }
    InequalityReport r = detail::start("heisenberg_smoothing", ctx, {{"alpha", alpha}, {"t", t}, {"p", pq.p}});
    const double kk = ctx.order().value();
    const double q = pq.q;
    const double b = std::abs(ctx.matrix().b);
    const double cg = std::pow(2.0 * q, -(kk + 1.0) / q);
    r.constant = cg / (std::pow(b, kk + 1.0) * std::pow(2.0 * (kk + 1.0) - alpha * q, 1.0 / q)) +
                 std::pow(b, -(kk + 1.0) * (1.0 - 2.0 / q));
    r.params["C_g"] = cg;
    const Signal& spec = ctx.spectrum();
    const Signal damped = detail::weighted(spec, [t](double l) { return std::exp(-t * l * l); }, "damped");
    r.lhs = lp_norm(damped, q, ctx.order(), ctx.quad());
    r.rhs = r.constant * std::pow(t, -alpha / 2.0) * ctx.f_norm(pq.p, alpha);
    detail::close_strict(r);
    return r;
}

/// ||lambda^u F||_q <= (beta/(beta-u)) (beta-u)^{u/beta} ||lambda^beta F||_q^{u/beta} ||F||_q^{1-u/beta}.
inline InequalityReport moment_interpolation_report(CaseContext& ctx, double u, double beta, double q)
{
    if (!(u > 0.0 && u < beta)) {
        throw ParameterOutOfRange("need 0 < u < beta");
    }
    InequalityReport r = detail::start("moment_interpolation", ctx, {{"u", u}, {"beta", beta}, {"q", q}});
    r.constant = beta / (beta - u) * std::pow(beta - u, u / beta);
    r.lhs = ctx.spectrum_norm(q, u);
    r.rhs = r.constant * std::pow(ctx.spectrum_norm(q, beta), u / beta) * std::pow(ctx.spectrum_norm(q), 1.0 - u / beta);
    detail::close_strict(r);
    return r;
}

enum class NashVariant { L1_Lp, L2_Lp, two_exponent };
enum class ClarksonVariant { L1_Lp, L2_Lp, p1_p2 };
enum class PairVariant { L1_Lp, p1_p2 };

/// Nash-type inequalities. L1_Lp and L2_Lp read p1; two_exponent reads p1 < p2.
inline InequalityReport nash_report(NashVariant variant, CaseContext& ctx, double s, double p1, double p2 = 2.0)
{
    detail::require_b(ctx.matrix());
    if (!(s > 0.0)) {
        throw ParameterOutOfRange("s must be positive");
    }
    const DunklOrder k = ctx.order();
    const double kk = k.value();
    const double n2 = 2.0 * kk + 2.0;
    const double lg = detail::log_g2(k);
    const double ckb = detail::c_kb(ctx.matrix().b, k);
    InequalityReport r;
    switch (variant) {
    case NashVariant::L1_Lp: {
        const ExponentPair pq(p1);
        const double q = pq.q;
        r = detail::start("nash_L1_Lp", ctx, {{"s", s}, {"p", p1}});
        r.constant = std::pow(1.0 + std::exp(q * std::log(ckb) - lg), 1.0 / q);
        const double den = n2 + q * s;
        r.lhs = ctx.spectrum_norm(q);
        r.rhs = r.constant * std::pow(ctx.f_norm(1.0), q * s / den) * std::pow(ctx.spectrum_norm(q, s), n2 / den);
        break;
    }
    case NashVariant::L2_Lp: {
        if (!(p1 > 1.0 && p1 < 2.0)) {
            throw ParameterOutOfRange("the L2-Lp Nash inequality needs 1 < p < 2");
        }
        const ExponentPair pq(p1);
        const double q = pq.q;
        r = detail::start("nash_L2_Lp", ctx, {{"s", s}, {"p", p1}});
        r.constant = std::sqrt(1.0 + std::exp((q - 2.0) / q * (2.0 * std::log(ckb) - lg)));
        const double den = n2 * (q - 2.0) + 2.0 * s * q;
        r.lhs = ctx.f_norm(2.0);
        r.rhs = r.constant * std::pow(ctx.f_norm(p1), 2.0 * s * q / den) *
                std::pow(ctx.spectrum_norm(2.0, s), n2 * (q - 2.0) / den);
        break;
    }
    case NashVariant::two_exponent: {
        detail::check_pair(p1, p2);
        const double q1 = ExponentPair(p1).q;
        const double q2 = ExponentPair(p2).q;
        r = detail::start("nash_two_exponent", ctx, {{"s", s}, {"p1", p1}, {"p2", p2}});
        r.constant = std::pow(1.0 + std::exp(-(q1 - q2) / q1 * lg + (1.0 - 2.0 / q1) * q2 * std::log(ckb)), 1.0 / q2);
        const double den = n2 * (q1 - q2) + s * q1 * q2;
        r.lhs = ctx.spectrum_norm(q2);
        r.rhs = r.constant * std::pow(ctx.f_norm(p1), s * q1 * q2 / den) *
                std::pow(ctx.spectrum_norm(q2, s), n2 * (q1 - q2) / den);
        break;
    }
    }
    detail::close_strict(r);
    return r;
}

/// Clarkson-type inequalities; f-side norms only, so the matrix is irrelevant.
inline InequalityReport clarkson_report(ClarksonVariant variant, CaseContext& ctx, double s, double p1, double p2 = 2.0)
{
    if (!(s > 0.0)) {
        throw ParameterOutOfRange("s must be positive");
    }
    const DunklOrder k = ctx.order();
    const double kk = k.value();
    const double n2 = 2.0 * kk + 2.0;
    const double lg = detail::log_g2(k);
    InequalityReport r;
    switch (variant) {
    case ClarksonVariant::L1_Lp: {
        const double q = ExponentPair(p1).q;
        r = detail::start("clarkson_L1_Lp", ctx, {{"s", s}, {"p", p1}}, false);
        r.constant = std::exp(-lg / q) + 1.0;
        const double den = n2 + q * s;
        r.lhs = ctx.f_norm(1.0);
        r.rhs = r.constant * std::pow(ctx.f_norm(p1), q * s / den) * std::pow(ctx.f_norm(1.0, s), n2 / den);
        break;
    }
    case ClarksonVariant::L2_Lp: {
        if (!(p1 > 1.0 && p1 < 2.0)) {
            throw ParameterOutOfRange("the L2-Lp Clarkson inequality needs 1 < p < 2");
        }
        const double p = p1;
        r = detail::start("clarkson_L2_Lp", ctx, {{"s", s}, {"p", p}}, false);
        r.constant = std::pow(1.0 + std::exp(-(2.0 - p) / 2.0 * lg), 1.0 / p);
        const double den = (kk + 1.0) * (2.0 - p) + p * s;
        r.lhs = ctx.f_norm(p);
        r.rhs = r.constant * std::pow(ctx.f_norm(2.0), p * s / den) *
                std::pow(ctx.f_norm(p, s), (kk + 1.0) * (2.0 - p) / den);
        break;
    }
    case ClarksonVariant::p1_p2: {
        detail::check_pair(p1, p2);
        r = detail::start("clarkson_p1_p2", ctx, {{"s", s}, {"p1", p1}, {"p2", p2}}, false);
        r.constant = std::pow(1.0 + std::exp(-(p2 - p1) / p2 * lg), 1.0 / p1);
        const double den = n2 * (p2 - p1) + p1 * p2 * s;
        r.lhs = ctx.f_norm(p1);
        r.rhs = r.constant * std::pow(ctx.f_norm(p2), p1 * p2 * s / den) *
                std::pow(ctx.f_norm(p1, s), n2 * (p2 - p1) / den);
        break;
    }
    }
    detail::close_strict(r);
    return r;
}

namespace detail {

inline double checked_concentration(double eps, const char* which)
{
    if (eps >= 1.0 - 1e-9) {
        throw ConcentrationSaturated(std::string("concentration ") + which + " is saturated");
    }
    return eps;
}

}  // namespace detail

/// Donoho-Stark: epsilon_E and epsilon_F are measured, then the bound is evaluated.
/// L1_Lp reads p1 (epsilon_E in L^1, epsilon_F in L^q); p1_p2 reads p1 < p2
/// (epsilon_E in L^{p1}, epsilon_F in L^{q2}).
inline InequalityReport donoho_stark_report(PairVariant variant, CaseContext& ctx, const IntervalSet& e,
                                            const IntervalSet& f_set, double p1, double p2 = 2.0)
{
    detail::require_b(ctx.matrix());
    if (ctx.signal().zero) {
        throw ZeroSignal("Donoho-Stark concentration of a zero signal is undefined");
    }
    const DunklOrder k = ctx.order();
    const double ckb = detail::c_kb(ctx.matrix().b, k);
    const double ge = gamma_measure(e, k);
    const double gf = gamma_measure(f_set, k);
    InequalityReport r;
    if (variant == PairVariant::L1_Lp) {
        const ExponentPair pq(p1);
        r = detail::start("donoho_stark_L1_Lp", ctx, {{"p", p1}, {"E", e.upper()}, {"F", f_set.upper()}});
        const double eps_e = detail::checked_concentration(ctx.concentration_f(e, 1.0), "on E");
        const double eps_f = detail::checked_concentration(ctx.concentration_spectrum(f_set, pq.q), "on F");
        r.params["eps_E"] = eps_e;
        r.params["eps_F"] = eps_f;
        r.constant = ckb;
        r.lhs = ctx.spectrum_norm(pq.q);
        r.rhs = ckb * std::pow(gf, 1.0 / pq.q) * std::pow(ge, 1.0 / pq.q) / ((1.0 - eps_e) * (1.0 - eps_f)) * ctx.f_norm(p1);
    }
    else {
        detail::check_pair(p1, p2);
        const double q1 = ExponentPair(p1).q;
        const double q2 = ExponentPair(p2).q;
        r = detail::start("donoho_stark_p1_p2", ctx, {{"p1", p1}, {"p2", p2}, {"E", e.upper()}, {"F", f_set.upper()}});
        const double eps_e = detail::checked_concentration(ctx.concentration_f(e, p1), "on E");
        const double eps_f = detail::checked_concentration(ctx.concentration_spectrum(f_set, q2), "on F");
        r.params["eps_E"] = eps_e;
        r.params["eps_F"] = eps_f;
        r.constant = std::pow(ckb, 1.0 - 2.0 / q1);
        r.lhs = ctx.spectrum_norm(q2);
        r.rhs = r.constant * std::pow(ge, (p2 - p1) / (p1 * p2)) * std::pow(gf, (q1 - q2) / (q1 * q2)) /
                ((1.0 - eps_e) * (1.0 - eps_f)) * ctx.f_norm(p2);
    }
    detail::close_strict(r);
    return r;
}

/// Bandlimited bound with h = D^{M^{-1}}(chi_F D^M f), F = (-band, band), so
/// epsilon_F = ||f - h||_{p2}/||f||_{p2} is measured rather than assumed.
inline InequalityReport bandlimited_report(CaseContext& ctx, const IntervalSet& e, double band, double p1, double p2)
{
    detail::require_b(ctx.matrix());
    detail::check_pair(p1, p2);
    const DunklOrder k = ctx.order();
    const double kk = k.value();
    InequalityReport r = detail::start("bandlimited", ctx, {{"p1", p1}, {"p2", p2}, {"E", e.upper()}, {"F", band}});
    r.constant = std::pow(std::abs(ctx.matrix().b), -2.0 * (kk + 1.0) / p2);
    if (ctx.signal().zero) {
        r.lhs = 0.0;
        r.rhs = 0.0;
        detail::close_strict(r);
        return r;
    }
    const double eps_e = detail::checked_concentration(ctx.concentration_f(e, p1), "on E");
    const double nf2 = ctx.f_norm(p2);
    const double eps_f = ctx.band_error(p2, band) / nf2;
    if (eps_f >= 1.0 - 1e-9) {
        throw ConcentrationSaturated("f is not bandlimited to F below 1");
    }
    r.params["eps_E"] = eps_e;
    r.params["eps_F"] = eps_f;
    const double ge = gamma_measure(e, k);
    const double gf = gamma_measure(IntervalSet::symmetric(band), k);
    r.lhs = ctx.f_norm(p1);
    r.rhs = std::pow(ge, (p2 - p1) / (p1 * p2)) / (1.0 - eps_e) *
            ((1.0 + eps_f) * std::pow(ge, 1.0 / p2) * std::pow(gf, 1.0 / p2) * r.constant + eps_f) * nf2;
    detail::close_strict(r);
    return r;
}

/// Matolcsi-Szucs. With eta = 0 the supports are exact: A_D is all of R unless
/// b = 0, so the bound is infinite. With eta > 0 the supports are replaced by
/// relative level sets {|g| > eta max|g|}; that diagnostic is not the theorem.
inline InequalityReport matolcsi_report(PairVariant variant, CaseContext& ctx, double eta, double p1, double p2 = 2.0)
{
    if (!(eta >= 0.0)) {
        throw ParameterOutOfRange("eta must be nonnegative");
    }
    const DunklOrder k = ctx.order();
    const bool dual = variant == PairVariant::p1_p2;
    if (dual) {
        detail::check_pair(p1, p2);
    }
    const double q1 = ExponentPair(p1).q;
    const double q2 = dual ? ExponentPair(p2).q : q1;
    InequalityReport r = dual ? detail::start("matolcsi_p1_p2", ctx, {{"p1", p1}, {"p2", p2}, {"eta", eta}})
                              : detail::start("matolcsi_L1_Lp", ctx, {{"p", p1}, {"eta", eta}});
    const double b = ctx.matrix().b;
    const double ckb = b == 0.0 ? std::exp(-(k.value() + 1.0) * std::log(std::abs(ctx.matrix().a))) : detail::c_kb(b, k);
    r.constant = dual ? std::pow(ckb, 1.0 - 2.0 / q1) : ckb;
    const double inf = std::numeric_limits<double>::infinity();
    if (ctx.signal().zero) {
        r.lhs = 0.0;
        r.rhs = 0.0;
        detail::close_strict(r);
        return r;
    }
    double g_f = inf;
    double g_d = inf;
    if (eta == 0.0) {
        if (ctx.signal().support) {
            g_f = gamma_measure(*ctx.signal().support, k);
        }
        if (b == 0.0 && ctx.spectrum().support) {
            g_d = gamma_measure(*ctx.spectrum().support, k);
        }
    }
    else {
        const double rf = ctx.radius();
        const double ld = ctx.spectrum_window();
        g_f = gamma_measure(level_set(ctx.signal(), -rf, rf, eta), k);
        g_d = gamma_measure(level_set(ctx.spectrum(), -ld, ld, eta), k);
        r.note = "eta-support diagnostic";
    }
    r.params["gamma_A_f"] = g_f;
    r.params["gamma_A_D"] = g_d;
    r.lhs = ctx.spectrum_norm(q2);
    if (std::isinf(g_f) || std::isinf(g_d)) {
        r.rhs = inf;
    }
    else if (dual) {
        r.rhs = r.constant * std::pow(g_d, (q1 - q2) / (q1 * q2)) * std::pow(g_f, (p2 - p1) / (p1 * p2)) * ctx.f_norm(p2);
    }
    else {
        r.rhs = r.constant * std::pow(g_d, 1.0 / q1) * std::pow(g_f, 1.0 / q1) * ctx.f_norm(p1);
    }
    if (eta > 0.0) {
        detail::close_empirical(r);
    }
    else {
        detail::close_strict(r);
    }
    return r;
}

/// Result of an extremal closed-form check.
struct ExtremalReport {
    std::string theorem_id;
    std::map<std::string, double> params;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string note;
};

/// Miyachi equality case st = 1/(4b^2): the transform of e^{-(s + i a/(2b)) x^2}
/// against C0 e^{-lambda^2/(4 s b^2)} e^{(i/2)(d/b) lambda^2}, plus a
/// least-squares fit of the decay rate of log|D|.
struct MiyachiResult {
    ExtremalReport report;
    ComplexSample c0;
    double expected_rate = 0.0;
    double fitted_rate = 0.0;
    /// max over the grid of ln+(|e^{t lambda^2} D| / |C0|).
    double log_plus_max = 0.0;
};

inline std::vector<double> extremal_grid(double rate, std::size_t n = 513)
{
    // Gaussian above 1e-6 of its peak.
    const double lim = std::sqrt(std::log(1e6) / rate);
    return uniform_grid(-lim, lim, n);
}

inline MiyachiResult miyachi_extremal_check(double s, const CanonicalMatrix& m, DunklOrder k, std::span<const double> grid,
                                            const QuadratureSpec& quad)
{
    if (m.b == 0.0) {
        throw DegenerateMatrix("Miyachi check requires b != 0");
    }
    if (!(s > 0.0)) {
        throw ParameterOutOfRange("s must be positive");
    }
    const Signal f = make_gaussian(s, m.a / (2.0 * m.b));
    const GaussianClosedForm closed = gaussian_lcdt_closed_form(s, m, k, quad);
    const SpectrumSample measured = lcdt_forward(f, m, k, grid, quad);
    const std::vector<ComplexSample> expected = closed.spectrum(grid);
    MiyachiResult out;
    out.c0 = closed.c0;
    out.expected_rate = closed.rate;
    double dev = 0.0;
    double lp = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    double n = 0.0;
    const double c0 = std::abs(closed.c0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double mag = std::abs(measured.values[i]);
        dev = std::max(dev, std::abs(measured.values[i] - expected[i]) / std::abs(expected[i]));
        const double l2 = grid[i] * grid[i];
        lp = std::max(lp, std::max(std::log(std::exp(closed.rate * l2) * mag / c0), 0.0));
        const double y = std::log(mag / c0);
        sx += l2;
        sy += y;
        sxx += l2 * l2;
        sxy += l2 * y;
        n += 1.0;
    }
    out.fitted_rate = n > 1.0 ? -(n * sxy - sx * sy) / (n * sxx - sx * sx) : closed.rate;
    out.log_plus_max = lp;
    const double rate_err = std::abs(4.0 * s * m.b * m.b * out.fitted_rate - 1.0);
    ExtremalReport& rep = out.report;
    rep.theorem_id = "miyachi_extremal";
    rep.params = {{"s", s},           {"k", k.value()},      {"a", m.a},        {"b", m.b},          {"c", m.c},
                  {"d", m.d},         {"c0_re", out.c0.real()}, {"c0_im", out.c0.imag()}, {"fitted_rate", out.fitted_rate},
                  {"rate_error", rate_err}, {"log_plus_max", lp}};
    rep.max_deviation = dev;
    rep.tolerance = 1e-8;
    rep.passed = dev <= 1e-8 && rate_err <= 1e-6;
    rep.note = "equality case only; C0 calibrated at lambda = 0";
    return out;
}

/// Polynomial times Gaussian: D^M of x^m e^{-(delta + i a/(2b)) x^2}, divided by
/// e^{-lambda^2/(4 delta b^2)} e^{(i/2)(d/b) lambda^2}, must be a degree-m polynomial.
struct CowlingPriceResult {
    ExtremalReport report;
    PolynomialFit fit;
};

inline CowlingPriceResult cowling_price_extremal_check(int m, double delta, const CanonicalMatrix& mat, DunklOrder k,
                                                       std::span<const double> grid, const QuadratureSpec& quad)
{
    if (m < 0 || m > 6) {
        throw ParameterOutOfRange("degree must lie in [0, 6]");
    }
    if (mat.b == 0.0) {
        throw DegenerateMatrix("Cowling-Price check requires b != 0");
    }
    std::vector<std::complex<double>> coeffs(m + 1);
    coeffs[m] = 1.0;
    const Signal f = make_poly_chirp_gaussian(coeffs, delta, mat.a / (2.0 * mat.b));
    const SpectrumSample spec = lcdt_forward(f, mat, k, grid, quad);
    const double rate = 1.0 / (4.0 * delta * mat.b * mat.b);
    const double lim = std::sqrt(std::log(1e5) / rate);
    std::vector<double> xs;
    std::vector<ComplexSample> ys;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (std::abs(grid[i]) <= lim) {
            xs.push_back(grid[i]);
            ys.push_back(spec.values[i] * std::exp(rate * grid[i] * grid[i]) * std::conj(chirp(mat.d / mat.b, grid[i])));
        }
    }
    if (xs.size() < static_cast<std::size_t>(m) + 5) {
        throw ParameterOutOfRange("too few grid points inside the fit window");
    }
    CowlingPriceResult out;
    out.fit = fit_polynomial(xs, ys, m + 3, 1e-8);
    ExtremalReport& rep = out.report;
    rep.theorem_id = "cowling_price_extremal";
    rep.params = {{"m", double(m)}, {"delta", delta}, {"k", k.value()}, {"a", mat.a}, {"b", mat.b},
                  {"c", mat.c},     {"d", mat.d},     {"fitted_degree", double(out.fit.degree)}};
    rep.max_deviation = out.fit.residual;
    rep.tolerance = 1e-8;
    rep.passed = out.fit.degree == m && out.fit.residual <= 1e-8;
    rep.note = "construction case only";
    return out;
}

inline InequalityReport to_inequality_report(const ExtremalReport& e)
{
    InequalityReport r;
    r.theorem_id = e.theorem_id;
    r.kind = "extremal";
    r.params = e.params;
    r.case_key = "";
    for (const auto& [key, v] : e.params) {
        if (key == "s" || key == "m" || key == "delta" || key == "k" || key == "a" || key == "b" || key == "c" || key == "d") {
            r.case_key += (r.case_key.empty() ? "" : "|") + key + "=" + detail::fmt_key(v);
        }
    }
    r.lhs = e.max_deviation;
    r.rhs = e.tolerance;
    r.constant = 1.0;
    r.ratio = e.max_deviation / e.tolerance;
    r.verdict = e.passed ? Verdict::holds : Verdict::violated;
    r.note = e.note;
    return r;
}

// ---------------------------------------------------------------------------
// Suite

struct SuiteConfig {
    std::uint64_t seed = 42;
    std::vector<double> p_values{1.25, 1.5, 2.0};
    std::vector<double> s_values{0.5, 1.0, 2.0};
    std::vector<double> t_values{1.0};
    std::vector<std::pair<double, double>> moment_pairs{{1.0, 3.0}, {2.0, 4.0}};
    /// Radii fractions of the signal and spectrum windows used for E and F.
    std::vector<double> set_fractions{0.25, 1.0};
    double eta = 1e-3;
    QuadratureSpec quad{1.0, 16, 16, 1e-11};
    bool extremal = true;
    /// Theorem ids to run; empty runs everything.
    std::vector<std::string> theorems;

    [[nodiscard]] bool wants(const std::string& id) const
    {
        return theorems.empty() || std::find(theorems.begin(), theorems.end(), id) != theorems.end();
    }
};

struct CaseFailure {
    std::string theorem_id;
    std::string case_key;
    std::string error;
    std::string message;
};

struct TheoremSummary {
    int cases = 0;
    double worst_ratio = 0.0;
    std::map<std::string, int> counts;
};

struct CorpusReport {
    std::uint64_t seed = 0;
    std::vector<InequalityReport> cases;
    std::vector<CaseFailure> failures;
    std::map<std::string, TheoremSummary> summary;

    [[nodiscard]] int count(Verdict v) const
    {
        return static_cast<int>(std::count_if(cases.begin(), cases.end(), [v](const auto& c) { return c.verdict == v; }));
    }
};

inline std::string error_name(const std::exception& e)
{
    if (dynamic_cast<const NonConvergence*>(&e)) return "NonConvergence";
    if (dynamic_cast<const DegenerateMatrix*>(&e)) return "DegenerateMatrix";
    if (dynamic_cast<const ZeroSignal*>(&e)) return "ZeroSignal";
    if (dynamic_cast<const ParameterOutOfRange*>(&e)) return "ParameterOutOfRange";
    if (dynamic_cast<const ConcentrationSaturated*>(&e)) return "ConcentrationSaturated";
    if (dynamic_cast<const FitFailure*>(&e)) return "FitFailure";
    if (dynamic_cast<const OverflowError*>(&e)) return "OverflowError";
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    return "Error";
}

/// Sorts cases by (theorem_id, case_key) and recomputes the summary.
inline void finalize(CorpusReport& rep)
{
    std::stable_sort(rep.cases.begin(), rep.cases.end(), [](const auto& x, const auto& y) {
        return std::tie(x.theorem_id, x.case_key) < std::tie(y.theorem_id, y.case_key);
    });
    std::stable_sort(rep.failures.begin(), rep.failures.end(), [](const auto& x, const auto& y) {
        return std::tie(x.theorem_id, x.case_key) < std::tie(y.theorem_id, y.case_key);
    });
    rep.summary.clear();
    for (const auto& c : rep.cases) {
        TheoremSummary& s = rep.summary[c.theorem_id];
        ++s.cases;
        ++s.counts[verdict_name(c.verdict)];
        // Identities are ranked by distance from 1, everything else by size.
        const double score = c.kind == "identity" ? std::abs(c.ratio - 1.0) : c.ratio;
        const double best = c.kind == "identity" ? std::abs(s.worst_ratio - 1.0) : s.worst_ratio;
        if (s.cases == 1 || score > best) {
            s.worst_ratio = c.ratio;
        }
    }
}

/// Spectrum window for inputs with slowly decaying spectra (indicators).
inline double fixed_window(const Signal& f, const CanonicalMatrix& m)
{
    const double r = detail::effective_radius(f);
    return std::abs(m.b) * 64.0 / r + std::abs(m.a) * r;
}

namespace detail {

template <class Fn>
void attempt(CorpusReport& rep, const std::string& id, const std::string& key, Fn&& fn)
{
    try {
        fn();
    }
    catch (const Error& e) {
        rep.failures.push_back({id, key, error_name(e), e.what()});
    }
}

inline std::vector<std::pair<double, double>> exponent_pairs(const std::vector<double>& ps)
{
    std::vector<std::pair<double, double>> out;
    for (double a : ps) {
        for (double b : ps) {
            if (a < b) {
                out.emplace_back(a, b);
            }
        }
    }
    return out;
}

}  // namespace detail

/// All spectral reports on one (signal, matrix, order) case.
inline void run_spectral_case(CaseContext& ctx, const SuiteConfig& cfg, CorpusReport& rep)
{
    const std::string key = ctx.key();
    auto add = [&](const std::string& id, auto&& fn) {
        if (cfg.wants(id)) {
            detail::attempt(rep, id, key, [&] { rep.cases.push_back(fn()); });
        }
    };
    const double kk = ctx.order().value();
    add("plancherel", [&] { return plancherel_report(ctx); });
    add("riemann_lebesgue", [&] { return riemann_lebesgue_report(ctx); });
    for (double p : cfg.p_values) {
        const ExponentPair pq(p);
        add("young", [&] { return young_report(ctx, pq); });
        const double alpha = (kk + 1.0) / pq.q;
        add("heisenberg_pauli_weyl", [&] { return heisenberg_report(ctx, alpha, 1.0, pq); });
        for (double t : cfg.t_values) {
            add("heisenberg_smoothing", [&] { return heisenberg_smoothing_report(ctx, alpha, t, pq); });
        }
        for (const auto& [u, beta] : cfg.moment_pairs) {
            add("moment_interpolation", [&] { return moment_interpolation_report(ctx, u, beta, pq.q); });
        }
        for (double s : cfg.s_values) {
            add("nash_L1_Lp", [&] { return nash_report(NashVariant::L1_Lp, ctx, s, p); });
            if (p < 2.0) {
                add("nash_L2_Lp", [&] { return nash_report(NashVariant::L2_Lp, ctx, s, p); });
            }
        }
        add("matolcsi_L1_Lp", [&] { return matolcsi_report(PairVariant::L1_Lp, ctx, 0.0, p); });
        if (cfg.eta > 0.0) {
            add("matolcsi_L1_Lp", [&] { return matolcsi_report(PairVariant::L1_Lp, ctx, cfg.eta, p); });
        }
    }
    const auto pairs = detail::exponent_pairs(cfg.p_values);
    for (const auto& [p1, p2] : pairs) {
        for (double s : cfg.s_values) {
            add("nash_two_exponent", [&] { return nash_report(NashVariant::two_exponent, ctx, s, p1, p2); });
        }
        add("matolcsi_p1_p2", [&] { return matolcsi_report(PairVariant::p1_p2, ctx, 0.0, p1, p2); });
        if (cfg.eta > 0.0) {
            add("matolcsi_p1_p2", [&] { return matolcsi_report(PairVariant::p1_p2, ctx, cfg.eta, p1, p2); });
        }
    }
    const double rf = ctx.radius();
    const bool spectral_sets = cfg.wants("donoho_stark_L1_Lp") || cfg.wants("donoho_stark_p1_p2") || cfg.wants("bandlimited");
    const double lw = spectral_sets ? ctx.spectrum_window() : 0.0;
    for (double fe : cfg.set_fractions) {
        const IntervalSet e = IntervalSet::symmetric(fe * rf);
        for (double ff : cfg.set_fractions) {
            const IntervalSet fs = IntervalSet::symmetric(ff * lw);
            for (double p : cfg.p_values) {
                add("donoho_stark_L1_Lp", [&] { return donoho_stark_report(PairVariant::L1_Lp, ctx, e, fs, p); });
            }
            for (const auto& [p1, p2] : pairs) {
                add("donoho_stark_p1_p2", [&] { return donoho_stark_report(PairVariant::p1_p2, ctx, e, fs, p1, p2); });
            }
        }
    }
    const IntervalSet e_full = IntervalSet::symmetric(rf);
    for (double ff : cfg.set_fractions) {
        for (const auto& [p1, p2] : pairs) {
            add("bandlimited", [&] { return bandlimited_report(ctx, e_full, ff * lw, p1, p2); });
        }
    }
    add("inversion", [&] { return inversion_report(ctx); });
}

/// Reports that only read f (Clarkson) plus Riemann-Lebesgue and Matolcsi on
/// inputs whose spectra are taken on a fixed window.
inline void run_signal_case(CaseContext& ctx, const SuiteConfig& cfg, CorpusReport& rep, bool with_clarkson)
{
    const std::string key = ctx.key();
    auto add = [&](const std::string& id, auto&& fn) {
        if (cfg.wants(id)) {
            detail::attempt(rep, id, key, [&] { rep.cases.push_back(fn()); });
        }
    };
    if (with_clarkson) {
        const auto pairs = detail::exponent_pairs(cfg.p_values);
        for (double s : cfg.s_values) {
            for (double p : cfg.p_values) {
                add("clarkson_L1_Lp", [&] { return clarkson_report(ClarksonVariant::L1_Lp, ctx, s, p); });
                if (p < 2.0) {
                    add("clarkson_L2_Lp", [&] { return clarkson_report(ClarksonVariant::L2_Lp, ctx, s, p); });
                }
            }
            for (const auto& [p1, p2] : pairs) {
                add("clarkson_p1_p2", [&] { return clarkson_report(ClarksonVariant::p1_p2, ctx, s, p1, p2); });
            }
        }
    }
    if (ctx.truncated()) {
        add("riemann_lebesgue", [&] { return riemann_lebesgue_report(ctx); });
        for (double p : cfg.p_values) {
            add("matolcsi_L1_Lp", [&] { return matolcsi_report(PairVariant::L1_Lp, ctx, 0.0, p); });
        }
    }
}

/// Runs every report over corpus x matrices x orders, then the extremal checks
/// on matrices x orders. Per-case errors are recorded, never thrown.
inline CorpusReport run_suite(const std::vector<CorpusEntry>& corpus, const std::vector<CanonicalMatrix>& matrices,
                              const std::vector<DunklOrder>& orders, const SuiteConfig& cfg)
{
    CorpusReport rep;
    rep.seed = cfg.seed;
    for (const auto& entry : corpus) {
        for (const DunklOrder k : orders) {
            for (std::size_t mi = 0; mi < matrices.size(); ++mi) {
                const CanonicalMatrix& m = matrices[mi];
                const std::optional<double> window =
                    entry.smooth() ? std::nullopt : std::optional<double>(fixed_window(entry.signal, m));
                CaseContext ctx(entry.signal, m, k, cfg.quad, window);
                if (entry.smooth()) {
                    run_spectral_case(ctx, cfg, rep);
                }
                run_signal_case(ctx, cfg, rep, mi == 0);
            }
        }
    }
    for (const DunklOrder k : orders) {
        if (!corpus.empty() && cfg.wants("gaussian_norm_lemma")) {
            for (double t : {0.5, 1.0, 4.0}) {
                for (double p : cfg.p_values) {
                    detail::attempt(rep, "gaussian_norm_lemma", "", [&] {
                        rep.cases.push_back(gaussian_norm_lemma_report(t, p, k, cfg.quad));
                    });
                }
            }
        }
        if (!cfg.extremal || corpus.empty()) {
            continue;
        }
        for (const CanonicalMatrix& m : matrices) {
            if (m.b == 0.0) {
                continue;
            }
            if (cfg.wants("miyachi_extremal")) {
                for (double s : {0.5, 1.0}) {
                    detail::attempt(rep, "miyachi_extremal", "", [&] {
                        const auto grid = extremal_grid(1.0 / (4.0 * s * m.b * m.b));
                        rep.cases.push_back(to_inequality_report(miyachi_extremal_check(s, m, k, grid, cfg.quad).report));
                    });
                }
            }
            if (cfg.wants("cowling_price_extremal")) {
                for (int deg = 0; deg <= 3; ++deg) {
                    detail::attempt(rep, "cowling_price_extremal", "", [&] {
                        const auto grid = extremal_grid(1.0 / (4.0 * m.b * m.b));
                        rep.cases.push_back(
                            to_inequality_report(cowling_price_extremal_check(deg, 1.0, m, k, grid, cfg.quad).report));
                    });
                }
            }
        }
    }
    finalize(rep);
    return rep;
}

}  // namespace lcdt
