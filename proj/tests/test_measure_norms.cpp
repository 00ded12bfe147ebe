#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "lcdt/corpus.hpp"
#include "lcdt/measure_norms.hpp"

using namespace lcdt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const QuadratureSpec kQuad{};

Signal constant_on(const IntervalSet& e)
{
    Signal s = make_signal([](double) { return ComplexSample{1.0, 0.0}; }, 1.0, "one");
    s.support = e;
    return s;
}

// integral of |x|^{alpha p} e^{-p x^2} d mu_k.
double gaussian_moment_power(double alpha, double p, double k)
{
    const double a = k + 1.0 + 0.5 * alpha * p;
    return std::tgamma(a) / std::pow(p, a) / (std::pow(2.0, k + 1.0) * std::tgamma(k + 1.0));
}

}  // namespace

TEST_CASE("mu_weight closed forms", "[norms]")
{
    CHECK(mu_weight(DunklOrder(0.0), 0.0) == 0.0);
    CHECK_THAT(mu_weight(DunklOrder(-0.5), 3.7), WithinRel(1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-15));
    CHECK_THAT(mu_weight(DunklOrder(0.0), 2.0), WithinRel(1.0, 1e-15));
    CHECK(mu_weight(DunklOrder(1.5), -2.0) == mu_weight(DunklOrder(1.5), 2.0));
}

TEST_CASE("Gauss-Legendre rules are exact for polynomials", "[norms]")
{
    for (int n : {8, 16, 32}) {
        const GaussRule& g = gauss_legendre(n);
        double s = 0.0;
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            s += g.w[i] * std::pow(g.x[i], 2 * n - 2);
        }
        CHECK_THAT(s, WithinRel(2.0 / (2 * n - 1), 1e-14));
    }
}

TEST_CASE("integrate_weighted closed forms", "[norms]")
{
    for (double k : {-0.5, 0.0, 0.5, 1.5, 4.0}) {
        const auto v = integrate_weighted(make_gaussian(1.0), DunklOrder(k), kQuad);
        CHECK_THAT(v.real(), WithinRel(std::pow(2.0, -(k + 1.0)), 1e-12));
        CHECK(std::abs(v.imag()) <= 1e-15);
    }
    CHECK(integrate_weighted(zero_signal(), DunklOrder(0.3), kQuad) == ComplexSample{});
    CHECK_THAT(integrate_weighted(make_indicator(1.0), DunklOrder(-0.5), kQuad).real(),
               WithinRel(std::sqrt(2.0 / std::numbers::pi), 1e-13));
}

TEST_CASE("lp_norm closed forms and homogeneity", "[norms]")
{
    CHECK_THAT(lp_norm(make_gaussian(1.0), 2.0, DunklOrder(0.0), kQuad), WithinRel(0.5, 1e-12));
    CHECK_THAT(lp_norm(make_gaussian(1.0), 2.0, DunklOrder(-0.5), kQuad), WithinRel(std::sqrt(0.5), 1e-12));
    CHECK(lp_norm(zero_signal(), 1.5, DunklOrder(0.0), kQuad) == 0.0);
    for (double k : {-0.5, 0.0, 1.5}) {
        for (double p : {1.0, 1.25, 3.0}) {
            const double want = std::pow(2.0 * p, -(k + 1.0) / p);
            CHECK_THAT(lp_norm(make_gaussian(1.0), p, DunklOrder(k), kQuad), WithinRel(want, 1e-11));
        }
    }
    CHECK_THAT(lp_norm(make_gaussian(1.0), std::numeric_limits<double>::infinity(), DunklOrder(0.0), kQuad),
               WithinRel(1.0, 1e-15));
    const Signal f = make_poly_gaussian(2, 0.5);
    const double base = lp_norm(f, 1.5, DunklOrder(0.5), kQuad);
    for (ComplexSample c : {ComplexSample{2.0, 0.0}, ComplexSample{-3.0, 0.0}, std::polar(1.0, 0.7)}) {
        CHECK_THAT(lp_norm(scaled(f, c), 1.5, DunklOrder(0.5), kQuad), WithinRel(std::abs(c) * base, 1e-12));
    }
    CHECK_THROWS_AS(lp_norm(f, 0.5, DunklOrder(0.0), kQuad), DomainError);
}

TEST_CASE("weighted_moment_norm matches Gaussian moments", "[norms]")
{
    const Signal g = make_gaussian(1.0);
    for (double k : {-0.5, 0.0, 1.5}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            for (double p : {1.25, 2.0}) {
                const double want = std::pow(gaussian_moment_power(alpha, p, k), 1.0 / p);
                CHECK_THAT(weighted_moment_norm(g, alpha, p, DunklOrder(k), kQuad), WithinRel(want, 1e-11));
            }
        }
    }
    CHECK(weighted_moment_norm(g, 0.0, 2.0, DunklOrder(0.0), kQuad) == lp_norm(g, 2.0, DunklOrder(0.0), kQuad));
    CHECK(weighted_moment_norm(zero_signal(), 1.0, 2.0, DunklOrder(0.0), kQuad) == 0.0);
}

TEST_CASE("gamma_measure closed form agrees with quadrature", "[norms]")
{
    CHECK(gamma_measure(IntervalSet{}, DunklOrder(0.0)) == 0.0);
    CHECK_THAT(gamma_measure(IntervalSet::symmetric(1.0), DunklOrder(-0.5)), WithinRel(std::sqrt(2.0 / std::numbers::pi), 1e-15));
    for (double k : {-0.5, 0.0, 0.5, 1.5}) {
        const double r = 1.7;
        const double want = std::pow(r, 2 * k + 2) / (std::pow(2.0, k + 1) * std::tgamma(k + 2));
        CHECK_THAT(gamma_measure(IntervalSet::symmetric(r), DunklOrder(k)), WithinRel(want, 1e-14));
    }
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<IntervalSet::Interval> pieces;
        for (int j = 0; j < 3; ++j) {
            const double a = u(rng);
            const double b = u(rng);
            if (a != b) {
                pieces.emplace_back(std::min(a, b), std::max(a, b));
            }
        }
        const IntervalSet e(pieces);
        for (double k : {-0.5, 0.0, 0.5, 1.5}) {
            const double direct = integrate_weighted(constant_on(e), DunklOrder(k), kQuad).real();
            CHECK_THAT(gamma_measure(e, DunklOrder(k)), WithinRel(direct, 1e-10));
        }
    }
}

TEST_CASE("concentration examples, oracles and monotonicity", "[norms]")
{
    const Signal chi = make_indicator(1.0);
    CHECK(concentration(chi, IntervalSet::symmetric(1.0), 2.0, DunklOrder(0.0), kQuad) == 0.0);
    CHECK_THAT(concentration(chi, IntervalSet{}, 2.0, DunklOrder(0.0), kQuad), WithinRel(1.0, 1e-14));

    const Signal g = make_gaussian(1.0);
    const double eps = concentration(g, IntervalSet::symmetric(2.0), 2.0, DunklOrder(0.0), kQuad);
    CHECK(eps > 0.0);
    CHECK(eps < 0.05);
    CHECK_THAT(eps, WithinRel(std::exp(-4.0), 1e-8));
    for (double r : {0.5, 1.0, 1.5}) {
        const double want = std::sqrt(std::erfc(std::numbers::sqrt2 * r));
        CHECK_THAT(concentration(g, IntervalSet::symmetric(r), 2.0, DunklOrder(-0.5), kQuad), WithinRel(want, 1e-9));
    }
    double prev = 1.0;
    for (double r : {0.25, 0.5, 1.0, 2.0, 3.0}) {
        const double c = concentration(g, IntervalSet::symmetric(r), 1.5, DunklOrder(0.5), kQuad);
        CHECK(c <= prev + 1e-12);
        prev = c;
    }
    CHECK_THROWS_AS(concentration(zero_signal(), IntervalSet::symmetric(1.0), 2.0, DunklOrder(0.0), kQuad), ZeroSignal);
}

TEST_CASE("quadrature refinement is stable and fails loudly", "[norms]")
{
    const Signal f = make_random_trig_bump(3.0, 4.0, 3, 99);
    QuadratureSpec fine = kQuad;
    fine.nodes_per_panel *= 2;
    const double a = lp_norm(f, 2.0, DunklOrder(0.5), kQuad);
    const double b = lp_norm(f, 2.0, DunklOrder(0.5), fine);
    CHECK(std::abs(a - b) <= kQuad.rel_tol * a);

    const Signal bad = make_signal([](double) { return ComplexSample{std::numeric_limits<double>::infinity(), 0.0}; }, 1.0, "inf");
    CHECK_THROWS_AS(integrate_weighted(bad, DunklOrder(0.0), kQuad), NonConvergence);

    QuadratureSpec wrong = kQuad;
    wrong.rel_tol = 1e-2;
    CHECK_THROWS_AS(wrong.validate(), ParameterOutOfRange);
    wrong = kQuad;
    wrong.panels = 1;
    CHECK_THROWS_AS(wrong.validate(), ParameterOutOfRange);
}

TEST_CASE("IntervalSet normalizes and clips", "[norms]")
{
    const IntervalSet e({{2.0, 3.0}, {-1.0, 1.0}, {0.5, 1.5}});
    REQUIRE(e.intervals().size() == 2);
    CHECK(e.intervals()[0] == IntervalSet::Interval{-1.0, 1.5});
    CHECK(e.contains(2.5));
    CHECK_FALSE(e.contains(1.75));
    const IntervalSet i = e.intersect(IntervalSet::symmetric(2.5));
    CHECK(i.upper() == 2.5);
    CHECK_THROWS_AS(IntervalSet({{1.0, 1.0}}), DomainError);
}
