#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "lcdt/harness.hpp"

using namespace lcdt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const QuadratureSpec kQuad = SuiteConfig{}.quad;
const CanonicalMatrix kDunkl = fractional_matrix(std::numbers::pi / 2.0);
const CanonicalMatrix kShear(1.0, 1.0, 0.0, 1.0);
constexpr double kInf = std::numeric_limits<double>::infinity();

CaseContext gaussian_case(const CanonicalMatrix& m = kDunkl, double k = 0.0, ComplexSample c = 1.0)
{
    return CaseContext(scaled(make_gaussian(1.0), c), m, DunklOrder(k), kQuad);
}

CaseContext zero_case()
{
    return CaseContext(zero_signal(), kDunkl, DunklOrder(0.0), kQuad);
}

}  // namespace

TEST_CASE("verdict rules", "[harness]")
{
    InequalityReport r;
    r.constant = 2.0;
    r.lhs = 1.0;
    r.rhs = 1.0 - 1e-12;
    detail::close_strict(r);
    CHECK(r.verdict == Verdict::holds);
    r.rhs = 0.5;
    detail::close_strict(r);
    CHECK(r.verdict == Verdict::violated);
    CHECK(r.ratio == 2.0);
    r.rhs = kInf;
    detail::close_strict(r);
    CHECK(r.verdict == Verdict::trivial);
    r.rhs = 1.0;
    r.lhs = 0.0;
    detail::close_strict(r);
    CHECK(r.verdict == Verdict::trivial);
    InequalityReport e;
    e.lhs = 3.0;
    e.rhs = 1.0;
    detail::close_strict(e);
    CHECK(e.verdict == Verdict::empirical_only);
    CHECK(verdict_from_name(verdict_name(Verdict::empirical_only)) == Verdict::empirical_only);
    CHECK_THROWS_AS(verdict_from_name("maybe"), DomainError);
}

TEST_CASE("exponent pairs", "[harness]")
{
    const ExponentPair pq(1.25);
    CHECK_THAT(1.0 / pq.p + 1.0 / pq.q, WithinAbs(1.0, 1e-12));
    CHECK(ExponentPair(2.0).q == 2.0);
    CHECK_THROWS_AS(ExponentPair(1.0), ParameterOutOfRange);
    CHECK_THROWS_AS(ExponentPair(2.5), ParameterOutOfRange);
}

TEST_CASE("Gaussian norm lemma anchor", "[harness]")
{
    for (double k : {-0.5, 0.0, 1.5}) {
        for (double t : {0.5, 1.0, 4.0}) {
            for (double p : {1.25, 2.0}) {
                const auto r = gaussian_norm_lemma_report(t, p, DunklOrder(k), kQuad);
                CHECK(r.verdict == Verdict::holds);
                CHECK(std::abs(r.ratio - 1.0) <= 1e-10);
            }
        }
    }
    const double a = gaussian_norm_lemma_report(1.0, 1.5, DunklOrder(0.5), kQuad).lhs;
    const double b = gaussian_norm_lemma_report(4.0, 1.5, DunklOrder(0.5), kQuad).lhs;
    CHECK_THAT(b / a, WithinRel(std::pow(4.0, -1.5 / 1.5), 1e-10));
}

TEST_CASE("identities and transform bounds on a Gaussian", "[harness]")
{
    auto ctx = gaussian_case(kShear, 0.5);
    const auto pl = plancherel_report(ctx);
    CHECK(pl.kind == "identity");
    CHECK(pl.verdict == Verdict::holds);
    CHECK(std::abs(pl.ratio - 1.0) <= 1e-9);
    const auto inv = inversion_report(ctx);
    CHECK(inv.verdict == Verdict::holds);
    CHECK(inv.params.at("relative_error") <= 1e-6);
    CHECK(riemann_lebesgue_report(ctx).verdict == Verdict::holds);
    for (double p : {1.25, 1.5, 2.0}) {
        const auto y = young_report(ctx, ExponentPair(p));
        CHECK(y.verdict == Verdict::holds);
        CHECK(y.ratio <= 1.0 + 1e-9);
    }
    auto zc = zero_case();
    CHECK(plancherel_report(zc).verdict == Verdict::trivial);
    CHECK(young_report(zc, ExponentPair(1.5)).verdict == Verdict::trivial);
}

TEST_CASE("Heisenberg family", "[harness]")
{
    auto ctx = gaussian_case();
    const auto h = heisenberg_report(ctx, 0.5, 1.0, ExponentPair(2.0));
    CHECK(h.verdict == Verdict::empirical_only);
    CHECK(std::isfinite(h.ratio));
    CHECK(h.ratio > 0.0);
    CHECK_FALSE(h.explicit_constant());
    auto twice = gaussian_case(kDunkl, 0.0, 2.0);
    CHECK_THAT(heisenberg_report(twice, 0.5, 1.0, ExponentPair(2.0)).ratio, WithinRel(h.ratio, 1e-9));
    CHECK_THROWS_AS(heisenberg_report(ctx, 1.0, 1.0, ExponentPair(2.0)), ParameterOutOfRange);
    auto zc = zero_case();
    CHECK(heisenberg_report(zc, 0.5, 1.0, ExponentPair(2.0)).verdict == Verdict::trivial);

    const auto sm = heisenberg_smoothing_report(ctx, 0.5, 1.0, ExponentPair(2.0));
    CHECK(sm.verdict == Verdict::holds);
    const auto mi = moment_interpolation_report(ctx, 1.0, 3.0, 2.0);
    CHECK(mi.verdict == Verdict::holds);
    CHECK_THROWS_AS(moment_interpolation_report(ctx, 3.0, 3.0, 2.0), ParameterOutOfRange);
    CHECK(moment_interpolation_report(zc, 1.0, 3.0, 2.0).verdict == Verdict::trivial);
}

TEST_CASE("Nash and Clarkson", "[harness]")
{
    auto ctx = gaussian_case();
    CHECK(nash_report(NashVariant::L1_Lp, ctx, 1.0, 2.0).verdict == Verdict::holds);
    CHECK(nash_report(NashVariant::L2_Lp, ctx, 1.0, 1.5).verdict == Verdict::holds);
    CHECK(nash_report(NashVariant::two_exponent, ctx, 1.0, 1.25, 2.0).verdict == Verdict::holds);
    CHECK_THROWS_AS(nash_report(NashVariant::two_exponent, ctx, 1.0, 1.5, 1.5), ParameterOutOfRange);
    auto zc = zero_case();
    CHECK(nash_report(NashVariant::L1_Lp, zc, 1.0, 2.0).verdict == Verdict::trivial);

    CHECK(clarkson_report(ClarksonVariant::L1_Lp, ctx, 1.0, 2.0).verdict == Verdict::holds);
    CHECK(clarkson_report(ClarksonVariant::L2_Lp, ctx, 1.0, 1.5).verdict == Verdict::holds);
    CHECK(clarkson_report(ClarksonVariant::p1_p2, ctx, 1.0, 1.25, 2.0).verdict == Verdict::holds);
    CaseContext chi(make_indicator(1.0), kDunkl, DunklOrder(0.0), kQuad);
    CHECK(clarkson_report(ClarksonVariant::L1_Lp, chi, 1.0, 2.0).verdict == Verdict::holds);
    CHECK(clarkson_report(ClarksonVariant::L1_Lp, zc, 1.0, 2.0).verdict == Verdict::trivial);
    const auto c = clarkson_report(ClarksonVariant::L1_Lp, ctx, 1.0, 2.0);
    CHECK_FALSE(c.params.contains("b"));
}

TEST_CASE("Donoho-Stark and bandlimited", "[harness]")
{
    auto ctx = gaussian_case();
    const IntervalSet box = IntervalSet::symmetric(4.0);
    const auto ds = donoho_stark_report(PairVariant::L1_Lp, ctx, box, box, 2.0);
    CHECK(ds.verdict == Verdict::holds);
    CHECK(ds.params.at("eps_E") < 1e-6);
    CHECK(ds.ratio < 0.5);
    CHECK(donoho_stark_report(PairVariant::p1_p2, ctx, box, box, 1.25, 2.0).verdict == Verdict::holds);
    for (double r : {1.0, 2.0, 4.0, 8.0}) {
        CHECK(donoho_stark_report(PairVariant::L1_Lp, ctx, IntervalSet::symmetric(r), box, 1.5).verdict == Verdict::holds);
    }
    CHECK_THROWS_AS(donoho_stark_report(PairVariant::L1_Lp, ctx, IntervalSet{}, box, 2.0), ConcentrationSaturated);
    auto zc = zero_case();
    CHECK_THROWS_AS(donoho_stark_report(PairVariant::L1_Lp, zc, box, box, 2.0), ZeroSignal);

    const auto bl = bandlimited_report(ctx, box, 20.0, 1.25, 2.0);
    CHECK(bl.verdict == Verdict::holds);
    CHECK(bl.params.at("eps_F") < 1e-6);
    const auto narrow = bandlimited_report(ctx, box, 1.0, 1.25, 2.0);
    CHECK(narrow.verdict == Verdict::holds);
    CHECK(narrow.params.at("eps_F") > 0.01);
    CHECK(bandlimited_report(zc, box, 1.0, 1.25, 2.0).verdict == Verdict::trivial);
}

TEST_CASE("Matolcsi-Szucs exact mode is trivial, eta mode is a diagnostic", "[harness]")
{
    CaseContext chi(make_indicator(1.0), kShear, DunklOrder(0.0), kQuad, 64.0);
    const auto exact = matolcsi_report(PairVariant::L1_Lp, chi, 0.0, 1.5);
    CHECK(exact.verdict == Verdict::trivial);
    CHECK(std::isinf(exact.rhs));
    const auto diag = matolcsi_report(PairVariant::L1_Lp, chi, 1e-6, 1.5);
    CHECK(diag.verdict == Verdict::empirical_only);
    CHECK(std::isfinite(diag.ratio));
    CHECK(diag.note == "eta-support diagnostic");
    auto zc = zero_case();
    CHECK(matolcsi_report(PairVariant::p1_p2, zc, 0.0, 1.25, 2.0).verdict == Verdict::trivial);
}

TEST_CASE("report ratios are homogeneous", "[harness]")
{
    const IntervalSet box = IntervalSet::symmetric(2.0);
    auto ratios = [&](ComplexSample c) {
        auto ctx = gaussian_case(kShear, 0.5, c);
        return std::vector<double>{young_report(ctx, ExponentPair(1.5)).ratio,
                                   nash_report(NashVariant::L1_Lp, ctx, 1.0, 1.5).ratio,
                                   donoho_stark_report(PairVariant::p1_p2, ctx, box, box, 1.25, 2.0).ratio,
                                   bandlimited_report(ctx, box, 3.0, 1.25, 2.0).ratio,
                                   heisenberg_smoothing_report(ctx, 0.5, 1.0, ExponentPair(1.5)).ratio};
    };
    const auto base = ratios(1.0);
    for (ComplexSample c : {ComplexSample{2.0, 0.0}, ComplexSample{-3.0, 0.0}, ComplexSample{0.0, 1.0}}) {
        const auto other = ratios(c);
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK_THAT(other[i], WithinRel(base[i], 1e-9));
        }
    }
}

TEST_CASE("extremal checks", "[harness]")
{
    for (const auto& m : {kDunkl, CanonicalMatrix(1.0, -1.0, 0.0, 1.0), CanonicalMatrix(0.5, 2.0, -0.25, 1.0)}) {
        const double s = 0.5;
        const auto grid = extremal_grid(1.0 / (4.0 * s * m.b * m.b));
        const auto mr = miyachi_extremal_check(s, m, DunklOrder(-0.5), grid, kQuad);
        CHECK(mr.report.passed);
        CHECK(mr.report.max_deviation <= 1e-8);
        CHECK(std::abs(4.0 * s * m.b * m.b * mr.fitted_rate - 1.0) <= 1e-6);
        CHECK(mr.log_plus_max <= 1e-6);
    }
    for (int deg = 0; deg <= 3; ++deg) {
        const auto grid = extremal_grid(1.0 / (4.0 * 1.0 * 4.0));
        const auto cp = cowling_price_extremal_check(deg, 1.0, CanonicalMatrix(0.5, 2.0, -0.25, 1.0), DunklOrder(0.5), grid, kQuad);
        CHECK(cp.report.passed);
        CHECK(cp.fit.degree == deg);
        double top = 0.0;
        for (const auto& c : cp.fit.coefficients) {
            top = std::max(top, std::abs(c));
        }
        for (std::size_t j = (deg + 1) % 2; j < cp.fit.coefficients.size(); j += 2) {
            CHECK(std::abs(cp.fit.coefficients[j]) <= 1e-7 * top);
        }
    }
    CHECK_THROWS_AS(miyachi_extremal_check(1.0, CanonicalMatrix(1.0, 0.0, 0.0, 1.0), DunklOrder(0.0), extremal_grid(1.0), kQuad),
                    DegenerateMatrix);
    const auto ir = to_inequality_report(ExtremalReport{"miyachi_extremal", {{"s", 1.0}}, 2e-9, 1e-8, true, ""});
    CHECK(ir.kind == "extremal");
    CHECK(ir.verdict == Verdict::holds);
    CHECK_THAT(ir.ratio, WithinRel(0.2, 1e-12));
}

TEST_CASE("run_suite aggregates deterministically and records errors", "[harness]")
{
    SuiteConfig cfg;
    cfg.extremal = false;
    cfg.p_values = {1.5, 2.0};
    cfg.s_values = {1.0};
    cfg.theorems = {"plancherel", "young", "nash_L1_Lp", "clarkson_L1_Lp", "riemann_lebesgue"};
    const auto corpus = corpus_default(42);
    const std::vector<CorpusEntry> sub{corpus[0], corpus[20]};
    const std::vector<CanonicalMatrix> ms{kShear, CanonicalMatrix(2.0, 0.0, 0.0, 0.5)};
    const std::vector<DunklOrder> ks{DunklOrder(0.0)};
    const auto a = run_suite(sub, ms, ks, cfg);
    const auto b = run_suite(sub, ms, ks, cfg);
    REQUIRE(a.cases.size() == b.cases.size());
    for (std::size_t i = 0; i < a.cases.size(); ++i) {
        CHECK(a.cases[i].case_key == b.cases[i].case_key);
        CHECK(a.cases[i].ratio == b.cases[i].ratio);
    }
    CHECK(std::is_sorted(a.cases.begin(), a.cases.end(), [](const auto& x, const auto& y) {
        return std::tie(x.theorem_id, x.case_key) < std::tie(y.theorem_id, y.case_key);
    }));
    CHECK(a.count(Verdict::violated) == 0);
    // b = 0 has no Riemann-Lebesgue or Young constant: recorded as errors, not fatal.
    CHECK_FALSE(a.failures.empty());
    for (const auto& f : a.failures) {
        CHECK(f.error == "DegenerateMatrix");
    }
    CHECK(a.summary.contains("clarkson_L1_Lp"));
    CHECK(a.summary.at("plancherel").counts.at("holds") == a.summary.at("plancherel").cases);

    const auto empty = run_suite({}, ms, ks, cfg);
    CHECK(empty.cases.empty());
}
