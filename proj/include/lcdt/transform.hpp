#pragma once

// Linear canonical Dunkl transform D_k^M and the plain Dunkl transform D_k.

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lcdt/corpus.hpp"
#include "lcdt/errors.hpp"
#include "lcdt/measure_norms.hpp"
#include "lcdt/parallel.hpp"
#include "lcdt/quadrature.hpp"
#include "lcdt/signal.hpp"
#include "lcdt/special_functions.hpp"

namespace lcdt {

struct CanonicalMatrix {
    double a = 0.0;
    double b = 1.0;
    double c = -1.0;
    double d = 0.0;

    CanonicalMatrix() = default;
    CanonicalMatrix(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_)
    {
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) {
            throw DomainError("matrix entries must be finite");
        }
        if (std::abs(a * d - b * c - 1.0) > 1e-12) {
            throw DomainError("matrix must satisfy ad - bc = 1");
        }
    }

    [[nodiscard]] CanonicalMatrix operator*(const CanonicalMatrix& o) const
    {
        CanonicalMatrix r;
        r.a = a * o.a + b * o.c;
        r.b = a * o.b + b * o.d;
        r.c = c * o.a + d * o.c;
        r.d = c * o.b + d * o.d;
        return r;
    }
};

inline CanonicalMatrix matrix_inverse(const CanonicalMatrix& m)
{
    CanonicalMatrix r;
    r.a = m.d;
    r.b = -m.b;
    r.c = -m.c;
    r.d = m.a;
    return r;
}

inline CanonicalMatrix fractional_matrix(double theta)
{
    CanonicalMatrix r;
    r.a = std::cos(theta);
    r.b = -std::sin(theta);
    r.c = std::sin(theta);
    r.d = std::cos(theta);
    return r;
}

struct SpectrumSample {
    std::vector<double> grid;
    std::vector<ComplexSample> values;
    CanonicalMatrix matrix;
    DunklOrder order{0.0};
};

/// (ib)^{-(k+1)} on the principal branch arg(ib) = (pi/2) sign(b).
inline ComplexSample ib_power_inverse(double b, DunklOrder k)
{
    const double kk = k.value() + 1.0;
    const double phase = -kk * 0.5 * std::numbers::pi * (b > 0.0 ? 1.0 : -1.0);
    return std::polar(std::pow(std::abs(b), -kk), phase);
}

inline ComplexSample chirp(double coeff, double x)
{
    return std::polar(1.0, 0.5 * coeff * x * x);
}

/// E^M_k(lambda, x) = e^{(i/2)((d/b) lambda^2 + (a/b) x^2)} E_k(-i lambda/b, x).
inline ComplexSample lcdt_kernel(const CanonicalMatrix& m, DunklOrder k, double lambda, double x)
{
    if (m.b == 0.0) {
        throw DegenerateMatrix("lcdt_kernel requires b != 0");
    }
    const double phase = 0.5 * ((m.d / m.b) * lambda * lambda + (m.a / m.b) * x * x);
    return std::polar(1.0, phase) * dunkl_kernel(k, lambda / m.b, x);
}

namespace detail {

inline void check_grid(std::span<const double> grid)
{
    if (grid.empty()) {
        throw DomainError("spectrum grid must be nonempty");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw DomainError("spectrum grid must be strictly increasing");
        }
    }
    for (double g : grid) {
        if (!std::isfinite(g)) {
            throw DomainError("spectrum grid must be finite");
        }
    }
}

}  // namespace detail

/// Quadrature-based evaluator of
///   lambda -> pre * e^{(i/2) cl lambda^2} * integral f(x) e^{(i/2) cx x^2} E_k(-i s lambda, x) d mu_k(x).
/// The x-rule is refined by doubling until probe values stop changing.
class TransformEngine {
public:
    struct Params {
        double chirp_x = 0.0;
        double chirp_lambda = 0.0;
        double scale = 1.0;
        ComplexSample prefactor{1.0, 0.0};
    };

    TransformEngine(Signal f, DunklOrder k, QuadratureSpec quad, Params params)
        : f_(std::move(f)), k_(k), quad_(quad), params_(params), kernel_(k), mu_(k)
    {
        quad_.validate();
        domain_ = make_domain(f_, quad_);
        auto probe = f_.evaluate;
        grading_ = detail::choose_grading<ComplexSample>(domain_, quad_.panels, probe, mu_);
        build(quad_.panels);
    }

    static Params lcdt_params(const CanonicalMatrix& m, DunklOrder k)
    {
        if (m.b == 0.0) {
            throw DegenerateMatrix("integral form requires b != 0");
        }
        return {m.a / m.b, m.d / m.b, 1.0 / m.b, ib_power_inverse(m.b, k)};
    }

    [[nodiscard]] const Signal& input() const noexcept { return f_; }
    [[nodiscard]] double l1_mass() const noexcept { return l1_; }
    [[nodiscard]] int panels() const noexcept { return panels_; }
    [[nodiscard]] std::size_t nodes() const noexcept { return xs_.size(); }
    /// Magnitude below which values are indistinguishable from rounding noise.
    [[nodiscard]] double noise_floor() const noexcept { return 32.0 * 2.2e-16 * l1_ * std::abs(params_.prefactor); }

    [[nodiscard]] ComplexSample eval(double lambda) const { return eval_with(xs_, coeffs_, lambda); }

    void eval_batch(std::span<const double> lambdas, std::span<ComplexSample> out) const
    {
        parallel_for(lambdas.size(), [&](std::size_t i) { out[i] = eval_with(xs_, coeffs_, lambdas[i]); }, 4);
    }

    /// Doubles the x-rule until values at the probes agree with the previous rule.
    void validate(std::span<const double> probes)
    {
        if (xs_.empty() || probes.empty()) {
            return;
        }
        std::vector<ComplexSample> cur(probes.size());
        eval_batch(probes, cur);
        const auto finite = [](const ComplexSample& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); };
        if (!std::isfinite(l1_) || !std::all_of(cur.begin(), cur.end(), finite)) {
            throw NonConvergence("transform: integrand is not finite");
        }
        while (true) {
            if (2 * panels_ > kMaxPanels) {
                throw NonConvergence("transform: x-quadrature refinement ceiling reached");
            }
            std::vector<double> nx;
            std::vector<ComplexSample> nc;
            double nl1 = 0.0;
            assemble(2 * panels_, nx, nc, nl1);
            std::vector<ComplexSample> next(probes.size());
            parallel_for(probes.size(), [&](std::size_t i) { next[i] = eval_with(nx, nc, probes[i]); }, 4);
            double peak = 0.0;
            double diff = 0.0;
            for (std::size_t i = 0; i < probes.size(); ++i) {
                peak = std::max(peak, std::abs(next[i]));
                diff = std::max(diff, std::abs(next[i] - cur[i]));
            }
            const double mass = nl1 * std::abs(params_.prefactor);
            const double scale = std::max(peak, 1e-6 * mass);
            const bool ok = diff <= std::max(quad_.rel_tol * scale, 64.0 * 2.2e-16 * mass);
            if (ok) {
                return;
            }
            xs_ = std::move(nx);
            coeffs_ = std::move(nc);
            l1_ = nl1;
            panels_ *= 2;
            cur = std::move(next);
        }
    }

private:
    void assemble(int panels, std::vector<double>& xs, std::vector<ComplexSample>& coeffs, double& l1) const
    {
        const WeightedRule rule = build_rule(domain_, panels, quad_.nodes_per_panel, mu_, &grading_);
        std::vector<ComplexSample> vals(rule.x.size());
        if (!rule.x.empty()) {
            f_.evaluate(rule.x, vals);
        }
        xs.clear();
        coeffs.clear();
        l1 = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            if (vals[i] == ComplexSample{}) {
                continue;
            }
            l1 += rule.w[i] * std::abs(vals[i]);
            xs.push_back(rule.x[i]);
            coeffs.push_back(rule.w[i] * vals[i] * chirp(params_.chirp_x, rule.x[i]));
        }
    }

    void build(int panels)
    {
        panels_ = panels;
        assemble(panels, xs_, coeffs_, l1_);
    }

    ComplexSample eval_with(const std::vector<double>& xs, const std::vector<ComplexSample>& coeffs, double lambda) const
    {
        const double s = params_.scale * lambda;
        ComplexSample acc{};
        for (std::size_t j = 0; j < xs.size(); ++j) {
            acc += coeffs[j] * kernel_(s * xs[j]);
        }
        return params_.prefactor * chirp(params_.chirp_lambda, lambda) * acc;
    }

    Signal f_;
    DunklOrder k_;
    QuadratureSpec quad_;
    Params params_;
    DunklKernel kernel_;
    MuWeight mu_;
    Domain domain_;
    Grading grading_;
    std::vector<double> xs_;
    std::vector<ComplexSample> coeffs_;
    double l1_ = 0.0;
    int panels_ = 0;
};

namespace detail {

inline std::vector<double> probe_points(std::span<const double> grid, std::size_t count = 11)
{
    std::vector<double> out;
    if (grid.size() <= count) {
        out.assign(grid.begin(), grid.end());
        return out;
    }
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(grid[(grid.size() - 1) * i / (count - 1)]);
    }
    const auto nearest0 = std::min_element(grid.begin(), grid.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
    out.push_back(*nearest0);
    return out;
}

inline std::vector<double> window_probes(double lo, double hi, std::size_t count = 11)
{
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return out;
}

inline double effective_radius(const Signal& f)
{
    if (f.support && !f.support->empty()) {
        return std::max(std::abs(f.support->lower()), std::abs(f.support->upper()));
    }
    return f.decay_radius;
}

// b = 0: D(lambda) = e^{i c lambda^2/(2a)} |a|^{-(k+1)} f(lambda/a).
inline Signal chirped_dilation(const Signal& f, const CanonicalMatrix& m, DunklOrder k)
{
    if (m.a == 0.0) {
        throw DegenerateMatrix("matrix with a = b = 0");
    }
    const double a = m.a;
    const double cc = m.c / m.a;
    const double amp = std::pow(std::abs(a), -(k.value() + 1.0));
    Signal g = f;
    g.evaluate = [inner = f.evaluate, a, cc, amp](std::span<const double> ls, std::span<ComplexSample> out) {
        std::vector<double> xs(ls.size());
        for (std::size_t i = 0; i < ls.size(); ++i) {
            xs[i] = ls[i] / a;
        }
        inner(xs, out);
        for (std::size_t i = 0; i < ls.size(); ++i) {
            out[i] *= amp * chirp(cc, ls[i]);
        }
    };
    g.decay_radius = std::abs(a) * f.decay_radius;
    g.bandwidth = f.bandwidth / std::abs(a) + std::abs(cc) * g.decay_radius;
    if (f.support) {
        std::vector<IntervalSet::Interval> pieces;
        for (const auto& [lo, hi] : f.support->intervals()) {
            const double x = lo * a;
            const double y = hi * a;
            pieces.emplace_back(std::min(x, y), std::max(x, y));
        }
        g.support = IntervalSet(pieces);
    }
    for (double& bp : g.breakpoints) {
        bp *= a;
    }
    for (double& cp : g.critical_points) {
        cp *= a;
    }
    g.label = "lcdt[" + f.label + "]";
    return g;
}

inline SpectrumSample run_engine(TransformEngine& engine, std::span<const double> grid, const CanonicalMatrix& m, DunklOrder k)
{
    check_grid(grid);
    SpectrumSample out{std::vector<double>(grid.begin(), grid.end()), std::vector<ComplexSample>(grid.size()), m, k};
    if (engine.input().zero) {
        return out;
    }
    engine.validate(probe_points(grid));
    engine.eval_batch(grid, out.values);
    return out;
}

}  // namespace detail

inline SpectrumSample lcdt_forward(const Signal& f, const CanonicalMatrix& m, DunklOrder k, std::span<const double> grid,
                                   const QuadratureSpec& quad)
{
    detail::check_grid(grid);
    if (m.b == 0.0) {
        const Signal g = detail::chirped_dilation(f, m, k);
        SpectrumSample out{std::vector<double>(grid.begin(), grid.end()), g(grid), m, k};
        return out;
    }
    TransformEngine engine(f, k, quad, TransformEngine::lcdt_params(m, k));
    return detail::run_engine(engine, grid, m, k);
}

/// D_k f(mu) = integral f(x) E_k(-i mu, x) d mu_k(x), no chirps and no prefactor.
inline SpectrumSample dunkl_transform(const Signal& f, DunklOrder k, std::span<const double> grid, const QuadratureSpec& quad)
{
    TransformEngine engine(f, k, quad, TransformEngine::Params{});
    return detail::run_engine(engine, grid, CanonicalMatrix(0.0, 1.0, -1.0, 0.0), k);
}

/// e^{(i/2)(d/b) lambda^2} (ib)^{-(k+1)} D_k(e^{(i/2)(a/b) x^2} f)(lambda / b).
inline SpectrumSample lcdt_via_dunkl(const Signal& f, const CanonicalMatrix& m, DunklOrder k, std::span<const double> grid,
                                     const QuadratureSpec& quad)
{
    detail::check_grid(grid);
    if (m.b == 0.0) {
        throw DegenerateMatrix("lcdt_via_dunkl requires b != 0");
    }
    Signal ft = f;
    const double ca = m.a / m.b;
    ft.evaluate = [inner = f.evaluate, ca](std::span<const double> xs, std::span<ComplexSample> out) {
        inner(xs, out);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out[i] *= chirp(ca, xs[i]);
        }
    };
    std::vector<double> mus(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        mus[i] = grid[i] / m.b;
    }
    if (m.b < 0.0) {
        std::reverse(mus.begin(), mus.end());
    }
    SpectrumSample raw = dunkl_transform(ft, k, mus, quad);
    if (m.b < 0.0) {
        std::reverse(raw.values.begin(), raw.values.end());
    }
    const ComplexSample pre = ib_power_inverse(m.b, k);
    SpectrumSample out{std::vector<double>(grid.begin(), grid.end()), std::move(raw.values), m, k};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.values[i] *= pre * chirp(m.d / m.b, grid[i]);
    }
    return out;
}

/// D^M f as a Signal on a finite window [-L, L], memoized. Without an explicit
/// window, L is grown from |b| Omega + |a| R until the weighted tail of |D| is
/// below 1e-12 of its weighted peak, then shrunk while that still holds.
inline Signal lcdt_spectrum(const Signal& f, const CanonicalMatrix& m, DunklOrder k, const QuadratureSpec& quad,
                            std::optional<double> window = std::nullopt)
{
    if (m.b == 0.0) {
        return detail::chirped_dilation(f, m, k);
    }
    const double rf = detail::effective_radius(f);
    if (f.zero) {
        Signal z = zero_signal();
        z.decay_radius = window.value_or(1.0);
        return z;
    }
    auto engine = std::make_shared<TransformEngine>(f, k, quad, TransformEngine::lcdt_params(m, k));
    struct Memo {
        std::mutex mutex;
        std::unordered_map<double, ComplexSample> values;
    };
    auto memo = std::make_shared<Memo>();
    auto batch = [engine, memo](std::span<const double> ls, std::span<ComplexSample> out) {
        std::vector<std::size_t> missing;
        {
            std::lock_guard lock(memo->mutex);
            for (std::size_t i = 0; i < ls.size(); ++i) {
                if (auto it = memo->values.find(ls[i]); it != memo->values.end()) {
                    out[i] = it->second;
                }
                else {
                    missing.push_back(i);
                }
            }
        }
        if (missing.empty()) {
            return;
        }
        std::vector<double> mls(missing.size());
        for (std::size_t j = 0; j < missing.size(); ++j) {
            mls[j] = ls[missing[j]];
        }
        std::vector<ComplexSample> vals(missing.size());
        engine->eval_batch(mls, vals);
        std::lock_guard lock(memo->mutex);
        for (std::size_t j = 0; j < missing.size(); ++j) {
            out[missing[j]] = vals[j];
            memo->values.emplace(mls[j], vals[j]);
        }
    };

    double lim = 0.0;
    if (window) {
        lim = *window;
        if (!(lim > 0.0)) {
            throw DomainError("spectrum window must be positive");
        }
        engine->validate(detail::window_probes(-lim, lim));
    }
    else {
        const double wexp = 1.0;
        auto tail_ok = [&](double l) {
            const auto body = detail::window_probes(-l, l, 65);
            std::vector<double> tail;
            for (int i = 0; i <= 16; ++i) {
                const double t = 0.8 * l + 0.2 * l * i / 16.0;
                tail.push_back(t);
                tail.push_back(-t);
            }
            std::vector<double> probes = tail;
            for (double x : detail::window_probes(-l, l)) {
                probes.push_back(x);
            }
            const int before = engine->panels();
            engine->validate(probes);
            if (engine->panels() != before) {
                std::lock_guard lock(memo->mutex);
                memo->values.clear();
            }
            std::vector<ComplexSample> bv(body.size());
            std::vector<ComplexSample> tv(tail.size());
            batch(body, bv);
            batch(tail, tv);
            const double floor = engine->noise_floor();
            double peak = 0.0;
            double tmax = 0.0;
            for (std::size_t i = 0; i < body.size(); ++i) {
                peak = std::max(peak, std::max(std::abs(bv[i]) - floor, 0.0) * std::pow(1.0 + std::abs(body[i]), wexp));
            }
            for (std::size_t i = 0; i < tail.size(); ++i) {
                tmax = std::max(tmax, std::max(std::abs(tv[i]) - floor, 0.0) * std::pow(1.0 + std::abs(tail[i]), wexp));
            }
            peak = std::max(peak, tmax);
            return tmax <= 1e-12 * peak;
        };
        lim = std::max(std::abs(m.b) * f.bandwidth + std::abs(m.a) * rf, 1.0);
        int grow = 0;
        while (!tail_ok(lim)) {
            lim *= 1.3;
            if (++grow > 40) {
                throw NonConvergence("spectrum window search did not converge for " + f.label);
            }
        }
        if (grow == 0) {
            while (lim * 0.8 > 0.5 && tail_ok(lim * 0.8)) {
                lim *= 0.8;
            }
        }
    }

    Signal g;
    g.evaluate = batch;
    g.decay_radius = lim;
    g.support = IntervalSet::symmetric(lim);
    g.bandwidth = rf / std::abs(m.b) + std::abs(m.d / m.b) * lim;
    g.label = "lcdt[" + f.label + "]";
    g.seed = f.seed;
    g.critical_points = {0.0};
    return g;
}

inline SpectrumSample lcdt_inverse(const Signal& spectrum, const CanonicalMatrix& m, DunklOrder k, std::span<const double> grid,
                                   const QuadratureSpec& quad)
{
    return lcdt_forward(spectrum, matrix_inverse(m), k, grid, quad);
}

/// D^{M^{-1}} F as a Signal on [-radius, radius].
inline Signal lcdt_inverse_signal(const Signal& spectrum, const CanonicalMatrix& m, DunklOrder k, const QuadratureSpec& quad,
                                  std::optional<double> radius = std::nullopt)
{
    return lcdt_spectrum(spectrum, matrix_inverse(m), k, quad, radius);
}

/// Natural cubic spline through complex samples, zero outside [xs.front(), xs.back()].
inline Signal make_sampled_signal(std::vector<double> xs, std::vector<ComplexSample> ys, std::string label = "sampled")
{
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw DomainError("sampled signal needs at least two (x, value) pairs");
    }
    detail::check_grid(xs);
    for (const auto& y : ys) {
        if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) {
            throw DomainError("sampled signal values must be finite");
        }
    }
    const std::size_t n = xs.size();
    std::vector<ComplexSample> m2(n);
    if (n > 2) {
        std::vector<double> diag(n - 2);
        std::vector<double> upper(n - 2);
        std::vector<ComplexSample> rhs(n - 2);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = xs[i] - xs[i - 1];
            const double h1 = xs[i + 1] - xs[i];
            diag[i - 1] = 2.0 * (h0 + h1);
            upper[i - 1] = h1;
            rhs[i - 1] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
        }
        for (std::size_t i = 1; i < n - 2; ++i) {
            const double lower = xs[i + 1] - xs[i];
            const double w = lower / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        m2[n - 2] = rhs[n - 3] / diag[n - 3];
        for (std::size_t i = n - 3; i >= 1; --i) {
            m2[i] = (rhs[i - 1] - upper[i - 1] * m2[i + 1]) / diag[i - 1];
        }
    }
    const double lo = xs.front();
    const double hi = xs.back();
    auto shared_x = std::make_shared<const std::vector<double>>(xs);
    auto shared_y = std::make_shared<const std::vector<ComplexSample>>(std::move(ys));
    auto shared_m = std::make_shared<const std::vector<ComplexSample>>(std::move(m2));
    Signal g = make_signal(
        [shared_x, shared_y, shared_m, lo, hi](double x) -> ComplexSample {
            if (!(x >= lo && x <= hi)) {
                return {};
            }
            const auto& X = *shared_x;
            const auto& Y = *shared_y;
            const auto& M = *shared_m;
            std::size_t j = static_cast<std::size_t>(std::upper_bound(X.begin(), X.end(), x) - X.begin());
            j = std::clamp<std::size_t>(j, 1, X.size() - 1);
            const double h = X[j] - X[j - 1];
            const double a = (X[j] - x) / h;
            const double b = (x - X[j - 1]) / h;
            return a * Y[j - 1] + b * Y[j] + ((a * a * a - a) * M[j - 1] + (b * b * b - b) * M[j]) * (h * h / 6.0);
        },
        std::max(std::abs(lo), std::abs(hi)), std::move(label));
    g.support = IntervalSet({{lo, hi}});
    if (xs.size() <= 4096) {
        g.breakpoints = xs;
    }
    g.critical_points = xs;
    return g;
}

/// Closed form of D^M for the Miyachi extremal input e^{-(s + i a/(2b)) x^2}:
/// lambda -> C0 e^{-lambda^2/(4 s b^2)} e^{(i/2)(d/b) lambda^2}, with C0 calibrated
/// by quadrature at lambda = 0.
struct GaussianClosedForm {
    ComplexSample c0;
    double rate = 0.0;
    Signal spectrum;
};

inline GaussianClosedForm gaussian_lcdt_closed_form(double s, const CanonicalMatrix& m, DunklOrder k, const QuadratureSpec& quad)
{
    if (m.b == 0.0) {
        throw DegenerateMatrix("gaussian_lcdt_closed_form requires b != 0");
    }
    const Signal f = make_gaussian(s, m.a / (2.0 * m.b));
    const double zero = 0.0;
    const ComplexSample c0 = lcdt_forward(f, m, k, std::span<const double>(&zero, 1), quad).values[0];
    const double rate = 1.0 / (4.0 * s * m.b * m.b);
    const double cl = m.d / m.b;
    GaussianClosedForm out{c0, rate, make_signal([c0, rate, cl](double l) { return c0 * std::exp(-rate * l * l) * chirp(cl, l); },
                                                 std::sqrt(36.0 / rate), "gaussian_closed_form")};
    out.spectrum.bandwidth = std::abs(cl) * out.spectrum.decay_radius;
    return out;
}

struct PolynomialFit {
    int degree = -1;
    double residual = 0.0;
    /// Coefficients of lambda^j, lowest first.
    std::vector<ComplexSample> coefficients;
};

/// Lowest-degree least-squares polynomial whose max residual relative to max |y|
/// is at most tol, trying degrees 0..max_degree.
inline PolynomialFit fit_polynomial(std::span<const double> xs, std::span<const ComplexSample> ys, int max_degree, double tol)
{
    if (xs.size() != ys.size() || xs.empty()) {
        throw FitFailure("fit_polynomial: empty or mismatched samples");
    }
    double xmax = 0.0;
    double ymax = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xmax = std::max(xmax, std::abs(xs[i]));
        ymax = std::max(ymax, std::abs(ys[i]));
    }
    PolynomialFit best;
    if (ymax == 0.0) {
        best.degree = 0;
        best.coefficients = {ComplexSample{}};
        return best;
    }
    xmax = xmax > 0.0 ? xmax : 1.0;
    const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
    Eigen::VectorXcd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        rhs(i) = ys[i] / ymax;
    }
    for (int d = 0; d <= max_degree; ++d) {
        if (n < d + 1) {
            break;
        }
        Eigen::MatrixXcd v(n, d + 1);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double u = xs[i] / xmax;
            double p = 1.0;
            for (int j = 0; j <= d; ++j) {
                v(i, j) = p;
                p *= u;
            }
        }
        const Eigen::VectorXcd c = v.colPivHouseholderQr().solve(rhs);
        const double res = (v * c - rhs).cwiseAbs().maxCoeff();
        best.degree = d;
        best.residual = res;
        best.coefficients.assign(d + 1, ComplexSample{});
        double scale = 1.0;
        for (int j = 0; j <= d; ++j) {
            best.coefficients[j] = c(j) * ymax / scale;
            scale *= xmax;
        }
        if (res <= tol) {
            return best;
        }
    }
    throw FitFailure("no polynomial of degree <= " + std::to_string(max_degree) + " fits within " + std::to_string(tol) +
                     " (best residual " + std::to_string(best.residual) + ")");
}

struct PolyGaussianResult {
    SpectrumSample spectrum;
    PolynomialFit fit;
};

/// Dunkl transform of x^m e^{-delta x^2}, divided by e^{-lambda^2/(4 delta)} and
/// fitted by a polynomial; only grid points with amplification below 1e5 enter the fit.
inline PolyGaussianResult poly_gaussian_dunkl_closed_form(int m, double delta, DunklOrder k, std::span<const double> grid,
                                                          const QuadratureSpec& quad, double tol = 1e-8)
{
    if (m < 0 || m > 6) {
        throw ParameterOutOfRange("degree must lie in [0, 6]");
    }
    const Signal f = make_poly_gaussian(m, delta);
    PolyGaussianResult out{dunkl_transform(f, k, grid, quad), {}};
    const double lim = 2.0 * std::sqrt(delta * std::log(1e5));
    std::vector<double> xs;
    std::vector<ComplexSample> ys;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (std::abs(grid[i]) <= lim) {
            xs.push_back(grid[i]);
            ys.push_back(out.spectrum.values[i] * std::exp(grid[i] * grid[i] / (4.0 * delta)));
        }
    }
    if (xs.size() < static_cast<std::size_t>(m) + 5) {
        throw ParameterOutOfRange("too few grid points inside the fit window");
    }
    out.fit = fit_polynomial(xs, ys, m + 3, tol);
    if (out.fit.degree != m) {
        throw FitFailure("fitted degree " + std::to_string(out.fit.degree) + " differs from " + std::to_string(m));
    }
    return out;
}

/// n equally spaced points on [lo, hi].
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n)
{
    std::vector<double> g(n);
    if (n == 1) {
        g[0] = 0.5 * (lo + hi);
        return g;
    }
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return g;
}

}  // namespace lcdt
