#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lcdt/errors.hpp"
#include "lcdt/special_functions.hpp"

namespace lcdt {

/// Finite union of open intervals, kept sorted and disjoint.
class IntervalSet {
public:
    using Interval = std::pair<double, double>;

    IntervalSet() = default;

    explicit IntervalSet(std::vector<Interval> pieces)
    {
        for (const auto& [lo, hi] : pieces) {
            if (!(lo < hi)) {
                throw DomainError("IntervalSet: each interval needs lo < hi");
            }
        }
        std::sort(pieces.begin(), pieces.end());
        for (const auto& piece : pieces) {
            if (!items_.empty() && piece.first <= items_.back().second) {
                items_.back().second = std::max(items_.back().second, piece.second);
            }
            else {
                items_.push_back(piece);
            }
        }
    }

    static IntervalSet symmetric(double r)
    {
        if (!(r > 0.0)) {
            return {};
        }
        return IntervalSet({{-r, r}});
    }

    [[nodiscard]] const std::vector<Interval>& intervals() const noexcept { return items_; }
    [[nodiscard]] bool empty() const noexcept { return items_.empty(); }

    [[nodiscard]] bool contains(double x) const
    {
        return std::any_of(items_.begin(), items_.end(), [x](const Interval& iv) { return x > iv.first && x < iv.second; });
    }

    [[nodiscard]] IntervalSet intersect(const IntervalSet& other) const
    {
        std::vector<Interval> out;
        std::size_t i = 0;
        std::size_t j = 0;
        const auto& b = other.items_;
        while (i < items_.size() && j < b.size()) {
            const double lo = std::max(items_[i].first, b[j].first);
            const double hi = std::min(items_[i].second, b[j].second);
            if (lo < hi) {
                out.emplace_back(lo, hi);
            }
            if (items_[i].second < b[j].second) {
                ++i;
            }
            else {
                ++j;
            }
        }
        IntervalSet result;
        result.items_ = std::move(out);
        return result;
    }

    /// Complement relative to the window (lo, hi).
    [[nodiscard]] IntervalSet complement_within(double lo, double hi) const
    {
        std::vector<Interval> out;
        double cursor = lo;
        for (const auto& [a, b] : items_) {
            if (b <= lo) {
                continue;
            }
            if (a >= hi) {
                break;
            }
            if (a > cursor) {
                out.emplace_back(cursor, a);
            }
            cursor = std::max(cursor, b);
        }
        if (cursor < hi) {
            out.emplace_back(cursor, hi);
        }
        IntervalSet result;
        result.items_ = std::move(out);
        return result;
    }

    [[nodiscard]] double lower() const { return items_.empty() ? 0.0 : items_.front().first; }
    [[nodiscard]] double upper() const { return items_.empty() ? 0.0 : items_.back().second; }

private:
    std::vector<Interval> items_;
};

/// Complex-valued function on the real line with the metadata the quadrature needs.
struct Signal {
    using Batch = std::function<void(std::span<const double>, std::span<ComplexSample>)>;

    Batch evaluate;
    double decay_radius = 1.0;
    /// Angular frequency beyond which the Fourier content is negligible.
    double bandwidth = 0.0;
    std::string label;
    std::optional<std::uint64_t> seed;
    /// Exact support, when known; quadrature never leaves it.
    std::optional<IntervalSet> support;
    /// Points where the function is not smooth; panels are split there.
    std::vector<double> breakpoints;
    /// Extra probe points for grid suprema.
    std::vector<double> critical_points;
    /// True when the function is known to vanish identically.
    bool zero = false;

    ComplexSample operator()(double x) const
    {
        ComplexSample out;
        evaluate(std::span<const double>(&x, 1), std::span<ComplexSample>(&out, 1));
        return out;
    }

    [[nodiscard]] std::vector<ComplexSample> operator()(std::span<const double> xs) const
    {
        std::vector<ComplexSample> out(xs.size());
        evaluate(xs, out);
        return out;
    }
};

/// Wraps a pointwise function as a Signal.
template <class Fn>
Signal make_signal(Fn fn, double decay_radius, std::string label)
{
    Signal s;
    s.evaluate = [fn = std::move(fn)](std::span<const double> xs, std::span<ComplexSample> out) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            out[i] = fn(xs[i]);
        }
    };
    s.decay_radius = decay_radius;
    s.label = std::move(label);
    return s;
}

inline Signal zero_signal()
{
    Signal s = make_signal([](double) { return ComplexSample{}; }, 1.0, "zero");
    s.zero = true;
    s.support = IntervalSet{};
    return s;
}

/// x -> c f(x), with all metadata carried over.
inline Signal scaled(const Signal& f, ComplexSample c)
{
    Signal g = f;
    g.evaluate = [inner = f.evaluate, c](std::span<const double> xs, std::span<ComplexSample> out) {
        inner(xs, out);
        for (auto& v : out) {
            v *= c;
        }
    };
    g.zero = f.zero || c == ComplexSample{};
    return g;
}

/// x -> chi_E(x) f(x); the support metadata is clipped to E.
inline Signal restricted(const Signal& f, const IntervalSet& e)
{
    Signal g = f;
    const IntervalSet sup = f.support ? f.support->intersect(e) : e;
    g.evaluate = [inner = f.evaluate, sup](std::span<const double> xs, std::span<ComplexSample> out) {
        inner(xs, out);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!sup.contains(xs[i])) {
                out[i] = {};
            }
        }
    };
    g.support = sup;
    g.zero = f.zero || sup.empty();
    return g;
}

}  // namespace lcdt
