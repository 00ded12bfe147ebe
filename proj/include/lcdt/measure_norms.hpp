#pragma once

// The measure d mu_k(x) = |x|^{2k+1} / (2^{k+1} Gamma(k+1)) dx and the norms built on it.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "lcdt/errors.hpp"
#include "lcdt/quadrature.hpp"
#include "lcdt/signal.hpp"
#include "lcdt/special_functions.hpp"

namespace lcdt {

inline double mu_weight(DunklOrder k, double x)
{
    return MuWeight(k)(x);
}

inline ComplexSample integrate_weighted(const Signal& f, DunklOrder k, const QuadratureSpec& quad)
{
    if (f.zero) {
        return {};
    }
    const Domain dom = make_domain(f, quad);
    return integrate_refined<ComplexSample>(dom, f.evaluate, k, quad).value;
}

/// ||chi_region |x|^alpha f||_p. For p = infinity this is a supremum over the
/// quadrature nodes and the declared critical points, so it is a lower bound of
/// the essential supremum. Refinement also stops once successive estimates of
/// the integral of |.|^p agree to abs_floor.
inline double lp_norm_on(const Signal& f, double p, double alpha, DunklOrder k, const QuadratureSpec& quad,
                         const IntervalSet* region = nullptr, double abs_floor = 0.0)
{
    if (!(p >= 1.0)) {
        throw DomainError("lp_norm requires p >= 1");
    }
    if (!(alpha >= 0.0)) {
        throw DomainError("moment exponent must be nonnegative");
    }
    if (f.zero) {
        return 0.0;
    }
    const Domain dom = make_domain(f, quad, region);
    if (std::isinf(p)) {
        const MuWeight mu(k);
        const WeightedRule rule = build_rule(dom, 2 * quad.panels, quad.nodes_per_panel, mu);
        std::vector<double> xs = rule.x;
        for (double c : f.critical_points) {
            const bool inside = std::any_of(dom.segments.begin(), dom.segments.end(),
                                            [c](const auto& s) { return c >= s.first && c <= s.second; });
            if (inside) {
                xs.push_back(c);
            }
        }
        std::vector<ComplexSample> vals(xs.size());
        f.evaluate(xs, vals);
        double best = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double m = alpha == 0.0 ? 1.0 : std::pow(std::abs(xs[i]), alpha);
            best = std::max(best, std::abs(vals[i]) * m);
        }
        return best;
    }
    auto integrand = [&](std::span<const double> xs, std::span<double> out) {
        std::vector<ComplexSample> vals(xs.size());
        f.evaluate(xs, vals);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double a = std::abs(vals[i]);
            double v = p == 2.0 ? std::norm(vals[i]) : (p == 1.0 ? a : std::pow(a, p));
            if (alpha != 0.0) {
                v *= std::pow(std::abs(xs[i]), alpha * p);
            }
            out[i] = v;
        }
    };
    const double integral = integrate_refined<double>(dom, integrand, k, quad, abs_floor).value;
    return p == 1.0 ? integral : (p == 2.0 ? std::sqrt(integral) : std::pow(integral, 1.0 / p));
}

inline double lp_norm(const Signal& f, double p, DunklOrder k, const QuadratureSpec& quad)
{
    return lp_norm_on(f, p, 0.0, k, quad);
}

inline double weighted_moment_norm(const Signal& f, double alpha, double p, DunklOrder k, const QuadratureSpec& quad)
{
    return lp_norm_on(f, p, alpha, k, quad);
}

/// gamma_k(E) = integral over E of d mu_k, in closed form.
inline double gamma_measure(const IntervalSet& e, DunklOrder k)
{
    const double kk = k.value();
    const double log_norm = std::log(2.0 * kk + 2.0) + (kk + 1.0) * std::numbers::ln2 + log_gamma(kk + 1.0);
    auto antiderivative = [&](double x) {
        if (std::isinf(x)) {
            return std::copysign(std::numeric_limits<double>::infinity(), x);
        }
        if (x == 0.0) {
            return 0.0;
        }
        return std::copysign(std::exp((2.0 * kk + 2.0) * std::log(std::abs(x)) - log_norm), x);
    };
    double total = 0.0;
    for (const auto& [lo, hi] : e.intervals()) {
        total += antiderivative(hi) - antiderivative(lo);
    }
    return total;
}

/// epsilon_E = ||f - chi_E f||_p / ||f||_p.
inline double concentration(const Signal& f, const IntervalSet& e, double p, DunklOrder k, const QuadratureSpec& quad)
{
    const double whole = lp_norm(f, p, k, quad);
    if (!(whole > 0.0)) {
        throw ZeroSignal("concentration of a zero signal is undefined");
    }
    const double inf = std::numeric_limits<double>::infinity();
    const IntervalSet outside = e.complement_within(-inf, inf);
    if (outside.empty()) {
        return 0.0;
    }
    // The tail is often at rounding level; measure it relative to the whole.
    const double floor = std::isinf(p) ? 0.0 : quad.rel_tol * std::pow(whole, p);
    const double rest = lp_norm_on(f, p, 0.0, k, quad, &outside, floor);
    return std::clamp(rest / whole, 0.0, 1.0);
}

}  // namespace lcdt
