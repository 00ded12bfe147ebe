#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "lcdt/corpus.hpp"
#include "lcdt/measure_norms.hpp"
#include "lcdt/transform.hpp"

using namespace lcdt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using cd = std::complex<double>;

namespace {

const QuadratureSpec kQuad{};

// D^M of exp(-s0 x^2), s0 complex with Re s0 > 0: the Gaussian integral
// int exp(-sigma x^2) E_k(-i mu, x) d mu_k = (2 sigma)^{-(k+1)} exp(-mu^2/(4 sigma)),
// sigma = s0 - i a/(2b), mu = lambda/b.
cd gaussian_oracle(cd s0, const CanonicalMatrix& m, double k, double lambda)
{
    const cd sigma = s0 - cd(0.0, m.a / (2.0 * m.b));
    const double mu = lambda / m.b;
    const cd ib(0.0, m.b);
    return std::pow(ib, -(k + 1.0)) * std::exp(cd(0.0, 0.5 * (m.d / m.b) * lambda * lambda)) *
           std::pow(2.0 * sigma, -(k + 1.0)) * std::exp(-mu * mu / (4.0 * sigma));
}

// k = -1/2 transform of exp(-(x - x0)^2): int exp(-A x^2 + B x + C) dx = sqrt(pi/A) exp(B^2/(4A) + C).
cd shifted_gaussian_oracle(double x0, const CanonicalMatrix& m, double lambda)
{
    const cd A = 1.0 - cd(0.0, m.a / (2.0 * m.b));
    const cd B = 2.0 * x0 - cd(0.0, lambda / m.b);
    const double C = -x0 * x0;
    const cd integral = std::sqrt(std::numbers::pi / A) * std::exp(B * B / (4.0 * A) + C) / std::sqrt(2.0 * std::numbers::pi);
    return std::pow(cd(0.0, m.b), -0.5) * std::exp(cd(0.0, 0.5 * (m.d / m.b) * lambda * lambda)) * integral;
}

double max_abs(const std::vector<cd>& v)
{
    double m = 0.0;
    for (const auto& z : v) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

const CanonicalMatrix kMatrices[] = {fractional_matrix(std::numbers::pi / 6.0), fractional_matrix(std::numbers::pi / 2.0),
                                     CanonicalMatrix(1.0, 1.0, 0.0, 1.0), CanonicalMatrix(1.5, -0.8, 0.5, 0.4),
                                     CanonicalMatrix(0.5, 2.0, -0.25, 1.0)};

}  // namespace

TEST_CASE("matrix utilities", "[transform]")
{
    const CanonicalMatrix f = fractional_matrix(std::numbers::pi / 2.0);
    CHECK_THAT(f.a, WithinAbs(0.0, 1e-16));
    CHECK(f.b == -1.0);
    CHECK(f.c == 1.0);
    const CanonicalMatrix q = fractional_matrix(std::numbers::pi / 4.0);
    CHECK_THAT(q.a, WithinRel(std::numbers::sqrt2 / 2.0, 1e-15));
    CHECK_THAT(q.b, WithinRel(-std::numbers::sqrt2 / 2.0, 1e-15));
    const CanonicalMatrix inv = matrix_inverse(CanonicalMatrix(0.0, -1.0, 1.0, 0.0));
    CHECK(inv.b == 1.0);
    CHECK(inv.c == -1.0);
    for (const auto& m : kMatrices) {
        const CanonicalMatrix id = m * matrix_inverse(m);
        CHECK_THAT(id.a, WithinAbs(1.0, 1e-12));
        CHECK_THAT(id.b, WithinAbs(0.0, 1e-12));
        CHECK_THAT(id.c, WithinAbs(0.0, 1e-12));
        CHECK_THAT(id.d, WithinAbs(1.0, 1e-12));
    }
    CHECK_THROWS_AS(CanonicalMatrix(1.0, 1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("lcdt_kernel examples", "[transform]")
{
    const CanonicalMatrix m = fractional_matrix(std::numbers::pi / 2.0);
    const DunklOrder k(-0.5);
    for (double lam : {-3.0, 0.5, 2.0}) {
        for (double x : {-1.0, 0.7}) {
            CHECK(std::abs(lcdt_kernel(m, k, lam, x) - std::polar(1.0, lam * x)) <= 1e-12);
        }
    }
    CHECK(std::abs(lcdt_kernel(CanonicalMatrix(1.5, -0.8, 0.5, 0.4), DunklOrder(1.5), 0.0, 0.0) - cd(1.0, 0.0)) <= 1e-15);
    CHECK(std::abs(lcdt_kernel(kMatrices[4], DunklOrder(0.5), 3.0, 2.0)) <= 1.0 + 1e-12);
    CHECK_THROWS_AS(lcdt_kernel(CanonicalMatrix(2.0, 0.0, 0.0, 0.5), k, 1.0, 1.0), DegenerateMatrix);
}

TEST_CASE("lcdt_forward matches the complex Gaussian closed form", "[transform]")
{
    const auto grid = uniform_grid(-12.0, 12.0, 97);
    for (const auto& m : kMatrices) {
        for (double k : {-0.5, 0.0, 0.5, 1.5, 3.0}) {
            for (cd s0 : {cd(1.0, 0.0), cd(0.5, -1.0), cd(2.0, 1.5)}) {
                const Signal f = make_gaussian(s0.real(), s0.imag());
                const auto got = lcdt_forward(f, m, DunklOrder(k), grid, kQuad);
                std::vector<cd> want(grid.size());
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    want[i] = gaussian_oracle(s0, m, k, grid[i]);
                }
                double err = 0.0;
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    err = std::max(err, std::abs(got.values[i] - want[i]));
                }
                INFO("k=" << k << " s=" << s0 << " b=" << m.b);
                CHECK(err <= 1e-10 * max_abs(want));
            }
        }
    }
}

TEST_CASE("k = -1/2 reproduces the Fourier transform of a shifted Gaussian", "[transform]")
{
    const auto grid = uniform_grid(-10.0, 10.0, 81);
    for (const auto& m : kMatrices) {
        const Signal f = make_gaussian(1.0, 0.0, 0.7);
        const auto got = lcdt_forward(f, m, DunklOrder(-0.5), grid, kQuad);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(got.values[i] - shifted_gaussian_oracle(0.7, m, grid[i])) <= 1e-11);
        }
    }
}

TEST_CASE("factorization through the Dunkl transform", "[transform]")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto corpus = corpus_default(42);
    const auto grid = uniform_grid(-8.0, 8.0, 65);
    for (int trial = 0; trial < 10; ++trial) {
        const auto& entry = corpus[static_cast<std::size_t>(u(rng) * 20.0)];
        const double theta = 0.2 + 2.7 * u(rng);
        const double sgn = u(rng) < 0.5 ? -1.0 : 1.0;
        const CanonicalMatrix m = trial % 2 == 0 ? fractional_matrix(sgn * theta) : CanonicalMatrix(1.0, sgn * (0.5 + u(rng)), 0.0, 1.0);
        const DunklOrder k(-0.5 + 2.5 * u(rng));
        const auto a = lcdt_forward(entry.signal, m, k, grid, kQuad);
        const auto b = lcdt_via_dunkl(entry.signal, m, k, grid, kQuad);
        double err = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            err = std::max(err, std::abs(a.values[i] - b.values[i]));
        }
        INFO(entry.signal.label << " k=" << k.value() << " b=" << m.b);
        CHECK(err <= 1e-9);
    }
}

TEST_CASE("b = 0 branch is the chirped dilation", "[transform]")
{
    const CanonicalMatrix m(2.0, 0.0, 0.3, 0.5);
    const DunklOrder k(0.5);
    const Signal f = make_gaussian(1.0, 0.0, 0.4);
    const auto grid = uniform_grid(-5.0, 5.0, 41);
    const auto got = lcdt_forward(f, m, k, grid, kQuad);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double lam = grid[i];
        const cd want = std::polar(1.0, m.c * lam * lam / (2.0 * m.a)) * std::pow(std::abs(m.a), -(k.value() + 1.0)) * f(lam / m.a);
        CHECK(got.values[i] == want);
    }
    CHECK_THROWS_AS(lcdt_via_dunkl(f, m, k, grid, kQuad), DegenerateMatrix);
}

TEST_CASE("Plancherel anchor and inversion round trip", "[transform]")
{
    const Signal g = make_gaussian(1.0);
    const DunklOrder k0(0.0);
    const Signal spec = lcdt_spectrum(g, fractional_matrix(std::numbers::pi / 2.0), k0, kQuad);
    CHECK_THAT(lp_norm(spec, 2.0, k0, kQuad), WithinRel(0.5, 1e-9));

    for (const auto& m : {CanonicalMatrix(1.0, 1.0, 0.0, 1.0), kMatrices[3]}) {
        for (double kv : {-0.5, 1.5}) {
            const DunklOrder k(kv);
            const Signal f = make_poly_gaussian(2, 0.5);
            const double r = detail::effective_radius(f);
            const Signal back = lcdt_inverse_signal(lcdt_spectrum(f, m, k, kQuad), m, k, kQuad, r);
            // Fixed composite Gauss-Legendre rule on [-r, r]: the difference is
            // rounding noise, which adaptive refinement cannot converge on.
            const GaussRule& g = gauss_legendre(32);
            std::vector<double> xs;
            std::vector<double> ws;
            const int panels = 64;
            for (int j = 0; j < panels; ++j) {
                const double lo = -r + 2.0 * r * j / panels;
                const double h = r / panels;
                for (std::size_t i = 0; i < g.x.size(); ++i) {
                    xs.push_back(lo + h * (g.x[i] + 1.0));
                    ws.push_back(h * g.w[i] * mu_weight(k, xs.back()));
                }
            }
            const auto fv = f(xs);
            const auto bv = back(xs);
            double err = 0.0;
            double norm = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                err += ws[i] * std::norm(fv[i] - bv[i]);
                norm += ws[i] * std::norm(fv[i]);
            }
            CHECK(std::sqrt(err) <= 1e-6 * std::sqrt(norm));
            CHECK_THAT(std::sqrt(norm), WithinRel(lp_norm(f, 2.0, k, kQuad), 1e-10));
        }
    }

    const auto grid = uniform_grid(-3.0, 3.0, 7);
    const auto z = lcdt_forward(zero_signal(), kMatrices[0], k0, grid, kQuad);
    for (const auto& v : z.values) {
        CHECK(v == cd{});
    }
    const std::vector<double> bad{0.0, 0.0, 1.0};
    CHECK_THROWS_AS(lcdt_forward(g, kMatrices[0], k0, bad, kQuad), DomainError);
}

TEST_CASE("Gaussian closed form calibration and decay rate", "[transform]")
{
    for (const auto& m : {kMatrices[1], kMatrices[3], kMatrices[4]}) {
        for (double kv : {-0.5, 1.5}) {
            const double s = 0.5;
            const DunklOrder k(kv);
            const GaussianClosedForm cf = gaussian_lcdt_closed_form(s, m, k, kQuad);
            CHECK_THAT(cf.rate, WithinRel(1.0 / (4.0 * s * m.b * m.b), 1e-15));
            const auto grid = uniform_grid(-6.0, 6.0, 49);
            const auto fwd = lcdt_forward(make_gaussian(s, m.a / (2.0 * m.b)), m, k, grid, kQuad);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const cd want = cf.spectrum(grid[i]);
                CHECK(std::abs(fwd.values[i] - want) <= 1e-8 * std::abs(want) + 1e-14 * std::abs(cf.c0));
            }
            CHECK(std::abs(cf.c0 - gaussian_oracle(cd(s, m.a / (2.0 * m.b)), m, kv, 0.0)) <= 1e-12 * std::abs(cf.c0));
        }
    }
    CHECK_THROWS_AS(gaussian_lcdt_closed_form(1.0, CanonicalMatrix(1.0, 0.0, 0.0, 1.0), DunklOrder(0.0), kQuad), DegenerateMatrix);
}

TEST_CASE("polynomial times Gaussian keeps its degree", "[transform]")
{
    const auto grid = uniform_grid(-8.0, 8.0, 129);
    for (int m = 0; m <= 3; ++m) {
        const auto r = poly_gaussian_dunkl_closed_form(m, 1.0, DunklOrder(0.5), grid, kQuad);
        CHECK(r.fit.degree == m);
        CHECK(r.fit.residual <= 1e-8);
    }
    // Fourier pair: x e^{-x^2/2} -> -i lambda e^{-lambda^2/2}.
    const auto r = poly_gaussian_dunkl_closed_form(1, 0.5, DunklOrder(-0.5), grid, kQuad);
    REQUIRE(r.fit.coefficients.size() == 2);
    CHECK(std::abs(r.fit.coefficients[0]) <= 1e-9);
    CHECK(std::abs(r.fit.coefficients[1] - cd(0.0, -1.0)) <= 1e-9);
    CHECK_THROWS_AS(poly_gaussian_dunkl_closed_form(7, 1.0, DunklOrder(0.0), grid, kQuad), ParameterOutOfRange);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> noise;
    std::vector<double> xs = uniform_grid(-1.0, 1.0, 40);
    std::vector<cd> ys(xs.size());
    for (auto& y : ys) {
        y = {noise(rng), noise(rng)};
    }
    CHECK_THROWS_AS(fit_polynomial(xs, ys, 4, 1e-8), FitFailure);
}

TEST_CASE("sampled signals are cubic splines", "[transform]")
{
    const auto xs = uniform_grid(-8.0, 8.0, 1601);
    std::vector<cd> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        ys[i] = std::exp(-xs[i] * xs[i]);
    }
    const Signal s = make_sampled_signal(xs, ys);
    CHECK(s(xs[17]) == ys[17]);
    CHECK(s(9.0) == cd{});
    CHECK_THAT(s(0.0033).real(), WithinAbs(std::exp(-0.0033 * 0.0033), 1e-8));
    const auto grid = uniform_grid(-4.0, 4.0, 17);
    const auto got = lcdt_forward(s, kMatrices[2], DunklOrder(0.0), grid, kQuad);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(got.values[i] - gaussian_oracle(1.0, kMatrices[2], 0.0, grid[i])) <= 1e-7);
    }
    CHECK_THROWS_AS(make_sampled_signal({0.0}, {cd{}}), DomainError);
}
