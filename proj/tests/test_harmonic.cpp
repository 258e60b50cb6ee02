// Exponential sums, the truncated Poisson expansion, stationary phase against
// the Legendre dual, discrepancy machinery, and the dual-curve tail sums.
// Closed-form cases (parabola duals, degenerate samples) are pinned exactly;
// quadrature comparisons use the budgets the expansion itself certifies.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "nearcurve/curve.hpp"
#include "nearcurve/dual.hpp"
#include "nearcurve/errors.hpp"
#include "nearcurve/harmonic.hpp"
#include "nearcurve/quadrature.hpp"

using namespace nearcurve;
using doctest::Approx;

namespace {
PlanarCurve parabola(Rat a, Rat lo, Rat hi) {
    return make_curve(CurveFamily::parabola, std::vector<Rat>{a, Rat(0), Rat(0)},
                      Interval(lo, hi));
}
} // namespace

TEST_CASE("exponential sum with hand-computable terms") {
    // x^2 on [0,1], k=1, q=2: e(a^2/2) for a=0,1,2 -> 1 - 1 + 1 = 1.
    auto c = parabola(Rat(1), Rat(0), Rat(1));
    auto s = exp_sum(c, 1, 2);
    CHECK(s.real() == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(s.imag()) < 1e-12);

    // Trivial bound: no more than one per lattice point.
    auto big = exp_sum(parabola(Rat(1), Rat(1), Rat(2)), 5, 100);
    CHECK(std::abs(big) <= 101.0 + 1e-9);

    CHECK_THROWS_AS(exp_sum(c, 0, 2), DomainError);
    CHECK_THROWS_AS(exp_sum(c, 1, 0), DomainError);
}

TEST_CASE("32-node Gauss-Legendre rule integrates constants exactly") {
    const auto& rule = gauss_legendre_32();
    double wsum = 0, xsum = 0;
    for (const auto& [x, w] : rule) {
        wsum += w;
        xsum += w * x;
    }
    CHECK(wsum == Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(xsum) < 1e-14);

    auto flat = oscillatory_quadrature([](long double) { return 0.0L; }, 0.0, 1.0, 0.0);
    CHECK(flat.real() == Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(flat.imag()) < 1e-13);
}

TEST_CASE("quadrature node cap raises instead of running away") {
    PanelQuadOptions tight;
    tight.node_cap = 100;
    CHECK_THROWS_AS(oscillatory_quadrature([](long double x) { return 1000.0L * x; }, 0.0,
                                           1.0, 1000.0, tight),
                    ResourceError);
}

TEST_CASE("oscillatory integral without stationary point obeys the derivative bound") {
    // x^2 on [1,2], k=1, j=10, q=30: phase' = 30(2x-10), |phase'| >= 180 and
    // monotone, so |I| <= 1/(pi * 180). (True value ~ 1/(2 pi 720).)
    auto c = parabola(Rat(1), Rat(1), Rat(2));
    auto v = oscillatory_integral(c, 1, 10, 30);
    CHECK(std::abs(v) <= 1.0 / (3.141592653589793 * 180.0) * 1.05);
    CHECK(std::abs(v) > 1e-6);
}

TEST_CASE("stationary phase matches an exactly reducible parabola phase") {
    // x^2 on [1,2], k=2, j=6, q=100: x0 = 1.5, dual value f*(3) = 9/4, so the
    // phase -q k f*(j/k) = -450 is an exact integer and only sgn(f'')/8 is left:
    // value = e(1/8) / sqrt(400).
    auto c = parabola(Rat(1), Rat(1), Rat(2));
    auto r = stationary_phase(c, 2, 6, 100);
    double expect = std::cos(3.141592653589793 / 4.0) / 20.0;
    CHECK(r.value.real() == Approx(expect).epsilon(1e-12));
    CHECK(r.value.imag() == Approx(expect).epsilon(1e-12));
    CHECK(r.x0 == Approx(1.5).epsilon(1e-12));
    CHECK(r.kappa == Approx(0.5).epsilon(1e-12));
    CHECK(r.error_budget == Approx((1.0 / 0.5 + std::log(200.0)) / 200.0).epsilon(1e-12));

    // j/k on or outside the boundary of J = [2,4] has no interior critical point.
    CHECK_THROWS_AS(stationary_phase(c, 1, 10, 30), DomainError);
    CHECK_THROWS_AS(stationary_phase(c, 1, 4, 30), DomainError);
    CHECK_THROWS_AS(stationary_phase(c, 1, 2, 30), DomainError);
}

TEST_CASE("stationary phase approximates the direct integral") {
    // x^2/2 on [-1,1], k=1, j=0, q=100: the Fresnel regime, lambda = 100.
    auto c = parabola(Rat(1, 2), Rat(-1), Rat(1));
    auto direct = oscillatory_integral(c, 1, 0, 100);
    auto sp = stationary_phase(c, 1, 0, 100);
    double expect = std::cos(3.141592653589793 / 4.0) / 10.0;
    CHECK(sp.value.real() == Approx(expect).epsilon(1e-12));
    CHECK(sp.value.imag() == Approx(expect).epsilon(1e-12));
    CHECK(std::abs(direct - sp.value) <= 0.02);
    CHECK(std::abs(direct - sp.value) <= sp.error_budget);
}

TEST_CASE("truncated expansion j-range from exact derivative endpoints") {
    auto c12 = parabola(Rat(1), Rat(1), Rat(2)); // f' in [2,4]
    auto r = poisson_j_range(c12, 5);
    CHECK(r.first == 9);
    CHECK(r.last == 21);

    auto c01 = parabola(Rat(1), Rat(0), Rat(1)); // f' in [0,2]
    auto r2 = poisson_j_range(c01, 5);
    CHECK(r2.first == -1);
    CHECK(r2.last == 11);

    auto ex = make_curve(CurveFamily::exponential, std::vector<Rat>{},
                         Interval(Rat(0), Rat(1))); // f' in [1, e]
    auto r3 = poisson_j_range(ex, 7);
    CHECK(r3.first == 6);
    CHECK(r3.last == 20); // floor(7e + 1)
}

TEST_CASE("expansion tracks the exponential sum within the log error gate") {
    auto c = parabola(Rat(1), Rat(1), Rat(2));
    double jlen = 2.0; // |J| for f' on [2,4]
    for (long long k : {1, 5}) {
        for (long long q : {1, 12, 37}) {
            auto direct = exp_sum(c, k, q);
            auto expanded = poisson_expansion(c, k, q);
            double gate = 2.0 * std::log(2.0 + static_cast<double>(k) * jlen);
            CHECK(std::abs(direct - expanded) <= gate);
        }
    }
}

TEST_CASE("curve sequence enumerates fractional parts in (q, a) order") {
    auto c = parabola(Rat(1), Rat(0), Rat(1));
    auto s = curve_sequence(c, 2);
    REQUIRE(s.n() == 5);
    // (q=1: a=0,1) then (q=2: a=0,1,2): frac of 0, 1, 0, 1/2, 2.
    CHECK(s.values[0] == 0.0);
    CHECK(s.values[1] == 0.0);
    CHECK(s.values[2] == 0.0);
    CHECK(s.values[3] == 0.5);
    CHECK(s.values[4] == 0.0);
    CHECK(s.source.find("Q=2") != std::string::npos);

    auto big = curve_sequence(parabola(Rat(1), Rat(1), Rat(2)), 100);
    CHECK(big.n() == 5150); // sum of (q+1) for q <= 100
    CHECK_THROWS_AS(curve_sequence(parabola(Rat(1), Rat(1), Rat(2)), 100, 1000),
                    ResourceError);
}

TEST_CASE("sqrt(2) sequence values") {
    auto s = sqrt2_sequence(5);
    REQUIRE(s.n() == 5);
    double r2 = std::sqrt(2.0);
    for (int n = 1; n <= 5; ++n) {
        double expect = n * r2 - std::floor(n * r2);
        CHECK(s.values[n - 1] == Approx(expect).epsilon(1e-12));
    }
    CHECK_THROWS_AS(sqrt2_sequence(0), DomainError);
}

TEST_CASE("interval-count discrepancy uses the open window") {
    SequenceSample s{{0.5, 0.0, 0.5, 0.0}, "hand"};
    // (-1/4, 1/4) mod 1 contains the two zeros: Z=2, (b-a)N=2.
    CHECK(discrepancy(s, -0.25, 0.25) == Approx(0.0));
    // (0, 1/2) is open: neither 0 nor 1/2 counts, Z=0.
    CHECK(discrepancy(s, 0.0, 0.5) == Approx(-2.0));
    CHECK_THROWS_AS(discrepancy(s, 0.3, 0.2), DomainError);
    CHECK_THROWS_AS(discrepancy(s, 0.0, 1.5), DomainError);
}

TEST_CASE("star discrepancy in count units") {
    CHECK(star_discrepancy(SequenceSample{{0.1, 0.5, 0.9}, "h"}) == Approx(0.7));
    CHECK(star_discrepancy(SequenceSample{{0.5}, "h"}) == Approx(0.5));
    // Stratified points (i - 1/2)/N achieve the optimum N D* = 1/2.
    std::vector<double> strat;
    for (int i = 1; i <= 100; ++i) strat.push_back((i - 0.5) / 100.0);
    CHECK(star_discrepancy(SequenceSample{strat, "h"}) == Approx(0.5));
    CHECK_THROWS_AS(star_discrepancy(SequenceSample{{}, "empty"}), DomainError);
}

TEST_CASE("Weyl magnitudes and the discrepancy bound on a degenerate sample") {
    SequenceSample zeros{{0.0, 0.0, 0.0}, "zeros"};
    auto w = weyl_magnitudes(zeros, 4);
    REQUIRE(w.size() == 4);
    for (double m : w) CHECK(m == Approx(3.0).epsilon(1e-13));

    // K=1 by hand: N/2 + 2 (1/2 + min(w, 1/pi)) |W1| with w = 1/4, |W1| = 3.
    double b = erdos_turan_bound(zeros, 1, 0.1, 0.35);
    CHECK(b == Approx(3.0 / 2.0 + 2.0 * (0.5 + 0.25) * 3.0).epsilon(1e-12));
    CHECK(std::abs(discrepancy(zeros, 0.1, 0.35)) <= b);

    // The two overloads agree, and the bound always dominates N-scale error.
    CHECK(erdos_turan_bound(w, 3, 4, 0.1, 0.35) ==
          Approx(erdos_turan_bound(zeros, 4, 0.1, 0.35)).epsilon(1e-14));
    CHECK(erdos_turan_bound(zeros, 10, 0.2, 0.7) >= 0.8 * 3.0);
    CHECK_THROWS_AS(erdos_turan_bound(w, 3, 9, 0.1, 0.35), DomainError);
    CHECK_THROWS_AS(erdos_turan_bound(zeros, 0, 0.1, 0.35), DomainError);
}

TEST_CASE("bound dominates measured discrepancy on a real sequence") {
    auto s = sqrt2_sequence(2000);
    for (auto [a, b] : {std::pair<double, double>{0.0, 0.25},
                        {0.37, 0.52},
                        {-0.1, 0.1}}) {
        double d = discrepancy(s, a, b);
        CHECK(std::abs(d) <= erdos_turan_bound(s, 100, a, b));
    }
}

TEST_CASE("derivative inversion and dual evaluation") {
    auto c = parabola(Rat(1), Rat(1), Rat(2));
    CHECK(dprime_inverse(c, 3.0) == Approx(1.5).epsilon(1e-10));
    CHECK(dprime_inverse(c, 2.0) == Approx(1.0).epsilon(1e-10));  // left endpoint
    CHECK(dprime_inverse(c, 4.0) == Approx(2.0).epsilon(1e-10));  // right endpoint
    CHECK_THROWS_AS(dprime_inverse(c, 5.0), DomainError);

    auto p3 = make_curve(CurveFamily::power, std::vector<Rat>{Rat(3)},
                         Interval(Rat(1), Rat(2)));
    CHECK(dprime_inverse(p3, 12.0) == Approx(2.0).epsilon(1e-10));

    auto ex = make_curve(CurveFamily::exponential, std::vector<Rat>{},
                         Interval(Rat(0), Rat(1)));
    CHECK(dprime_inverse(ex, 2.0) == Approx(std::log(2.0)).epsilon(1e-10));

    auto dual = make_dual(c);
    CHECK(dual.domain().lo == Approx(2.0));
    CHECK(dual.domain().hi == Approx(4.0));
    auto e = dual.eval(3.0);
    CHECK(e.fstar == Approx(2.25).epsilon(1e-10));     // y^2/4
    CHECK(e.fstar_d1 == Approx(1.5).epsilon(1e-10));   // h(y)
    CHECK(e.fstar_d2 == Approx(0.5).epsilon(1e-10));   // 1/f''

    auto half = make_dual(parabola(Rat(1, 2), Rat(-1), Rat(1)));
    auto eh = half.eval(0.5); // f*(y) = y^2/2
    CHECK(eh.fstar == Approx(0.125).epsilon(1e-10));
    CHECK(eh.fstar_d1 == Approx(0.5).epsilon(1e-10));
    CHECK(eh.fstar_d2 == Approx(1.0).epsilon(1e-10));

    auto exd = make_dual(ex);
    auto ee = exd.eval(2.0); // f*(y) = y log y - y
    CHECK(ee.fstar == Approx(2.0 * std::log(2.0) - 2.0).epsilon(1e-10));
    CHECK(ee.fstar_d1 == Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(ee.fstar_d2 == Approx(0.5).epsilon(1e-10));
}

TEST_CASE("exact dual values for rational parabolas") {
    auto dual = make_dual(parabola(Rat(1), Rat(1), Rat(2)));
    CHECK(dual.exact_capable());
    CHECK(dual.exact_value(Rat(3)) == Rat(9, 4));
    CHECK(dual.exact_value(Rat(5, 2)) == Rat(25, 16));
    auto dom = dual.exact_domain();
    REQUIRE(dom.has_value());
    CHECK(dom->first == Rat(2));
    CHECK(dom->second == Rat(4));

    auto exd = make_dual(make_curve(CurveFamily::exponential, std::vector<Rat>{},
                                    Interval(Rat(0), Rat(1))));
    CHECK_FALSE(exd.exact_capable());
    CHECK_FALSE(exd.exact_domain().has_value());
    CHECK_THROWS_AS(exd.exact_value(Rat(2)), DomainError);
}

TEST_CASE("the dual of the dual returns the curve") {
    CHECK(double_dual_residual(parabola(Rat(1, 2), Rat(-1), Rat(1))) < 1e-10);
    CHECK(double_dual_residual(make_curve(CurveFamily::exponential, std::vector<Rat>{},
                                          Interval(Rat(0), Rat(1)))) < 1e-8);
    CHECK(double_dual_residual(make_curve(CurveFamily::logarithm, std::vector<Rat>{},
                                          Interval(Rat(1), Rat(2)))) < 1e-8);
    CHECK(double_dual_residual(make_curve(CurveFamily::circle_arc, std::vector<Rat>{Rat(2)},
                                          Interval(Rat(0), Rat(1)))) < 1e-8);
    CHECK_THROWS_AS(double_dual_residual(parabola(Rat(1), Rat(1), Rat(2)), 8), DomainError);
}

TEST_CASE("dual tail sums with hand-counted terms") {
    // Dual of x^2 on [1,2]: F(y) = y^2/4 on J = [2,4].
    auto dual = make_dual(parabola(Rat(1), Rat(1), Rat(2)));

    // k=1, j in {2,3,4}: ||F(j)|| = 0, 1/4, 0. With Q=10 the two zeros are
    // "near" and j=3 is far with distance exactly 1/4.
    CHECK(huxley_sum(dual, 0, 1, 10, 0.5, HuxleyMode::near) == Approx(2.0));
    CHECK(huxley_sum(dual, 0, 1, 10, 0.5, HuxleyMode::half) == Approx(2.0));
    CHECK(huxley_sum(dual, 0, 1, 10, 0.5, HuxleyMode::one) == Approx(4.0));

    // Threshold is inclusive: at Q=4 the distance-1/4 term moves to "near".
    CHECK(huxley_sum(dual, 0, 1, 4, 0.5, HuxleyMode::near) == Approx(3.0));
    CHECK(huxley_sum(dual, 0, 1, 4, 0.5, HuxleyMode::half) == Approx(0.0));

    // K1 is exclusive and terms carry k^-s: k=2 alone, near j=4 and j=8.
    CHECK(huxley_sum(dual, 1, 2, 10, 0.5, HuxleyMode::near) ==
          Approx(2.0 / std::sqrt(2.0)).epsilon(1e-12));

    CHECK(huxley_sum(dual, 1, 1, 10, 0.5, HuxleyMode::near) == Approx(0.0));
    CHECK_THROWS_AS(huxley_sum(dual, 0, 1, 10, 1.0, HuxleyMode::near), DomainError);
    CHECK_THROWS_AS(huxley_sum(dual, 2, 1, 10, 0.5, HuxleyMode::near), DomainError);
    CHECK_THROWS_AS(huxley_sum(dual, 0, 1, 0, 0.5, HuxleyMode::near), DomainError);
}
