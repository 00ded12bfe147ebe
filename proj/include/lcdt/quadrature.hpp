#pragma once

// Composite Gauss-Legendre rules for integrals against d mu_k.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lcdt/errors.hpp"
#include "lcdt/signal.hpp"
#include "lcdt/special_functions.hpp"

namespace lcdt {

struct QuadratureSpec {
    double radius = 30.0;
    int panels = 64;
    int nodes_per_panel = 32;
    double rel_tol = 1e-10;

    void validate() const
    {
        if (!(radius > 0.0) || !std::isfinite(radius)) {
            throw ParameterOutOfRange("quadrature radius must be positive");
        }
        if (panels < 2) {
            throw ParameterOutOfRange("quadrature needs at least 2 panels");
        }
        if (nodes_per_panel < 8) {
            throw ParameterOutOfRange("quadrature needs at least 8 nodes per panel");
        }
        if (!(rel_tol > 0.0) || rel_tol > 1e-3) {
            throw ParameterOutOfRange("quadrature rel_tol must lie in (0, 1e-3]");
        }
    }
};

inline constexpr int kMaxPanels = 1 << 14;

struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// n-point Gauss-Legendre rule on [-1, 1]; cached, safe to call concurrently.
inline const GaussRule& gauss_legendre(int n)
{
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) {
        return it->second;
    }
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = z;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        {
            double p0 = 1.0;
            double p1 = z;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.x[i] = -z;
        rule.x[n - 1 - i] = z;
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

/// Density of d mu_k with respect to dx; the normalizing constant is computed once.
class MuWeight {
public:
    explicit MuWeight(DunklOrder k)
        : exponent_(2.0 * k.value() + 1.0), scale_(std::exp(-(k.value() + 1.0) * std::numbers::ln2 - log_gamma(k.value() + 1.0)))
    {
    }

    double operator()(double x) const { return scale_ * std::pow(std::abs(x), exponent_); }
    [[nodiscard]] double exponent() const noexcept { return exponent_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }

private:
    double exponent_;
    double scale_;
};

/// Nodes with weights that already include d mu_k.
struct WeightedRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// Integration domain: disjoint segments whose interiors avoid 0 and all breakpoints.
struct Domain {
    std::vector<std::pair<double, double>> segments;
    double length = 0.0;
};

inline Domain make_domain(const Signal& f, const QuadratureSpec& quad, const IntervalSet* region = nullptr)
{
    const double r = std::max(f.decay_radius, quad.radius);
    IntervalSet base = IntervalSet::symmetric(r);
    if (f.support) {
        base = base.intersect(*f.support);
    }
    if (region) {
        base = base.intersect(*region);
    }
    std::vector<double> cuts = f.breakpoints;
    cuts.push_back(0.0);
    std::sort(cuts.begin(), cuts.end());
    Domain dom;
    for (const auto& [lo, hi] : base.intervals()) {
        double a = lo;
        for (double c : cuts) {
            if (c > a && c < hi) {
                dom.segments.emplace_back(a, c);
                a = c;
            }
        }
        dom.segments.emplace_back(a, hi);
    }
    for (const auto& [a, b] : dom.segments) {
        dom.length += b - a;
    }
    return dom;
}

namespace detail {

inline void append_panel(WeightedRule& rule, const GaussRule& g, double a, double b, const MuWeight& mu)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
        const double x = mid + half * g.x[i];
        const double w = half * g.w[i] * mu(x);
        if (w != 0.0) {
            rule.x.push_back(x);
            rule.w.push_back(w);
        }
    }
}

}  // namespace detail

/// Per-segment grading depth at the end touching 0 (0 means no grading).
struct Grading {
    std::vector<int> depth;
};

using Panel = std::pair<double, double>;

/// `panels` panels spread over the domain by length, with geometric sub-panels
/// accumulating at 0 where the grading asks for them.
inline std::vector<Panel> build_panels(const Domain& dom, int panels, const Grading* grading = nullptr)
{
    std::vector<Panel> out;
    if (dom.segments.empty() || !(dom.length > 0.0)) {
        return out;
    }
    for (std::size_t s = 0; s < dom.segments.size(); ++s) {
        const auto [lo, hi] = dom.segments[s];
        const int m = std::max(1, static_cast<int>(std::ceil(panels * (hi - lo) / dom.length - 1e-9)));
        const double h = (hi - lo) / m;
        const int depth = grading && s < grading->depth.size() ? grading->depth[s] : 0;
        for (int j = 0; j < m; ++j) {
            const double a = lo + j * h;
            const double b = (j == m - 1) ? hi : lo + (j + 1) * h;
            const bool at_zero_left = depth > 0 && j == 0 && lo == 0.0;
            const bool at_zero_right = depth > 0 && j == m - 1 && hi == 0.0;
            if (!at_zero_left && !at_zero_right) {
                out.emplace_back(a, b);
                continue;
            }
            double outer = b - a;
            std::vector<Panel> graded;
            for (int level = 0; level < depth; ++level) {
                const double inner = outer * 0.5;
                graded.push_back(at_zero_left ? Panel{inner, outer} : Panel{-outer, -inner});
                outer = inner;
            }
            graded.push_back(at_zero_left ? Panel{0.0, outer} : Panel{-outer, 0.0});
            std::sort(graded.begin(), graded.end());
            out.insert(out.end(), graded.begin(), graded.end());
        }
    }
    return out;
}

inline WeightedRule rule_from_panels(std::span<const Panel> panels, int nodes, const MuWeight& mu)
{
    WeightedRule rule;
    const GaussRule& g = gauss_legendre(nodes);
    for (const auto& [a, b] : panels) {
        detail::append_panel(rule, g, a, b, mu);
    }
    return rule;
}

/// Composite rule with `panels` panels spread over the domain by length.
inline WeightedRule build_rule(const Domain& dom, int panels, int nodes, const MuWeight& mu, const Grading* grading = nullptr)
{
    return rule_from_panels(build_panels(dom, panels, grading), nodes, mu);
}

namespace detail {

inline double abs_value(double v) { return std::abs(v); }
inline double abs_value(const ComplexSample& v) { return std::abs(v); }

// Local power-law exponent of the weighted integrand near 0; grade when it is
// not an integer.
template <class T, class G>
Grading choose_grading(const Domain& dom, int panels, G& g, const MuWeight& mu)
{
    Grading out;
    out.depth.assign(dom.segments.size(), 0);
    for (std::size_t s = 0; s < dom.segments.size(); ++s) {
        const auto [lo, hi] = dom.segments[s];
        if (lo != 0.0 && hi != 0.0) {
            continue;
        }
        const int m = std::max(1, static_cast<int>(std::ceil(panels * (hi - lo) / dom.length - 1e-9)));
        const double h = (hi - lo) / m;
        const double sign = lo == 0.0 ? 1.0 : -1.0;
        const double xs[2] = {sign * h * std::ldexp(1.0, -30), sign * h * std::ldexp(1.0, -31)};
        T vals[2];
        g(std::span<const double>(xs, 2), std::span<T>(vals, 2));
        const double v1 = abs_value(vals[0]) * mu(xs[0]);
        const double v2 = abs_value(vals[1]) * mu(xs[1]);
        if (!(v1 > 0.0) || !(v2 > 0.0) || !std::isfinite(v1) || !std::isfinite(v2)) {
            continue;
        }
        const double gamma = std::log2(v1 / v2);
        if (std::abs(gamma - std::round(gamma)) > 1e-6 && gamma > -1.0) {
            out.depth[s] = std::clamp(static_cast<int>(std::ceil(36.0 / (gamma + 1.0))) + 2, 2, 60);
        }
    }
    return out;
}

}  // namespace detail

/// Result of a refined integral together with the final rule that produced it.
template <class T>
struct IntegralResult {
    T value{};
    double abs_value = 0.0;
    WeightedRule rule;
};

/// Integrates g(x) d mu_k(x) over the domain. Each panel is compared with the
/// sum over its two halves; panels whose halves disagree by more than their
/// share of quad.rel_tol (or of abs_floor) are bisected again.
template <class T, class G>
IntegralResult<T> integrate_refined(const Domain& dom, G&& g, DunklOrder k, const QuadratureSpec& quad,
                                    double abs_floor = 0.0)
{
    quad.validate();
    IntegralResult<T> res;
    if (dom.segments.empty()) {
        return res;
    }
    const MuWeight mu(k);
    const Grading grading = detail::choose_grading<T>(dom, quad.panels, g, mu);
    const GaussRule& gl = gauss_legendre(quad.nodes_per_panel);

    struct Estimate {
        T value{};
        double abs = 0.0;
    };
    // Gauss sums over each panel, evaluated in one batch.
    const std::size_t n = gl.x.size();
    auto estimate = [&](std::span<const Panel> panels) {
        std::vector<double> xs(panels.size() * n);
        std::vector<double> ws(panels.size() * n);
        for (std::size_t p = 0; p < panels.size(); ++p) {
            const double half = 0.5 * (panels[p].second - panels[p].first);
            const double mid = 0.5 * (panels[p].second + panels[p].first);
            for (std::size_t i = 0; i < n; ++i) {
                xs[p * n + i] = mid + half * gl.x[i];
                ws[p * n + i] = half * gl.w[i] * mu(xs[p * n + i]);
            }
        }
        std::vector<T> vals(xs.size());
        if (!xs.empty()) {
            g(std::span<const double>(xs), std::span<T>(vals));
        }
        std::vector<Estimate> out(panels.size());
        for (std::size_t p = 0; p < panels.size(); ++p) {
            for (std::size_t i = p * n; i < (p + 1) * n; ++i) {
                if (ws[i] != 0.0) {
                    out[p].value += ws[i] * vals[i];
                    out[p].abs += ws[i] * detail::abs_value(vals[i]);
                }
            }
        }
        return out;
    };

    std::vector<Panel> active = build_panels(dom, quad.panels, &grading);
    std::vector<Estimate> coarse = estimate(active);
    std::vector<Panel> done;
    std::vector<Estimate> done_est;
    const double total_len = dom.length;
    while (!active.empty()) {
        if (done.size() + 2 * active.size() > static_cast<std::size_t>(kMaxPanels)) {
            throw NonConvergence("integrate_weighted: refinement ceiling of " + std::to_string(kMaxPanels) +
                                 " panels reached");
        }
        std::vector<Panel> halves;
        halves.reserve(2 * active.size());
        for (const auto& [a, b] : active) {
            const double mid = 0.5 * (a + b);
            halves.emplace_back(a, mid);
            halves.emplace_back(mid, b);
        }
        const std::vector<Estimate> fine = estimate(halves);
        T value{};
        double abs = 0.0;
        for (const auto& e : done_est) {
            value += e.value;
            abs += e.abs;
        }
        for (const auto& e : fine) {
            value += e.value;
            abs += e.abs;
        }
        if (!std::isfinite(abs)) {
            throw NonConvergence("integrate_weighted: non-finite integrand");
        }
        if (abs == 0.0) {
            done.insert(done.end(), halves.begin(), halves.end());
            done_est.insert(done_est.end(), fine.begin(), fine.end());
            break;
        }
        const double tol = std::max(quad.rel_tol * std::max(detail::abs_value(value), 1e-4 * abs), abs_floor);
        std::vector<Panel> next;
        std::vector<Estimate> next_coarse;
        for (std::size_t p = 0; p < active.size(); ++p) {
            const Estimate& l = fine[2 * p];
            const Estimate& r = fine[2 * p + 1];
            const double err = detail::abs_value(l.value + r.value - coarse[p].value);
            const double share = tol * (active[p].second - active[p].first) / total_len;
            if (err <= share) {
                done.push_back(halves[2 * p]);
                done.push_back(halves[2 * p + 1]);
                done_est.push_back(l);
                done_est.push_back(r);
            }
            else {
                next.push_back(halves[2 * p]);
                next.push_back(halves[2 * p + 1]);
                next_coarse.push_back(l);
                next_coarse.push_back(r);
            }
        }
        active = std::move(next);
        coarse = std::move(next_coarse);
    }
    std::vector<std::size_t> order(done.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return done[x] < done[y]; });
    std::vector<Panel> sorted;
    sorted.reserve(done.size());
    for (std::size_t i : order) {
        sorted.push_back(done[i]);
        res.value += done_est[i].value;
        res.abs_value += done_est[i].abs;
    }
    res.rule = rule_from_panels(sorted, quad.nodes_per_panel, mu);
    return res;
}

}  // namespace lcdt
