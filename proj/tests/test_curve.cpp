// Curve families and their certified curvature bands 0 < c1 <= |f''| <= c2.
// Bands for the closed-form families are pinned to their analytic values; the
// rejection paths (vanishing or sign-changing f'', domain violations) matter as
// much as the happy paths because everything downstream assumes the band.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "nearcurve/curve.hpp"
#include "nearcurve/errors.hpp"
#include "nearcurve/interval.hpp"

using namespace nearcurve;
using doctest::Approx;

namespace {
PlanarCurve mk(CurveFamily fam, std::vector<Rat> params, const Interval& iv) {
    return make_curve(fam, params, iv);
}
} // namespace

TEST_CASE("parabola has constant second derivative") {
    auto c = mk(CurveFamily::parabola, {Rat(1), Rat(0), Rat(0)}, Interval(Rat(1), Rat(2)));
    CHECK(c.c1() == Approx(2.0));
    CHECK(c.c2() == Approx(2.0));
    CHECK(c.lipschitz_c() == Approx(0.0));
    CHECK(c.concavity() == 1);
    CHECK(c.exact_capable());
    CHECK(c.value(1.5L) == Approx(2.25));
    CHECK(c.deriv(1.5L) == Approx(3.0));
    CHECK(c.second(1.5L) == Approx(2.0));

    auto concave = mk(CurveFamily::parabola, {Rat(-2), Rat(0), Rat(1)}, Interval(Rat(0), Rat(1)));
    CHECK(concave.concavity() == -1);
    CHECK(concave.c1() == Approx(4.0));
    CHECK(concave.c2() == Approx(4.0));
}

TEST_CASE("integer power band comes from the monotone f''") {
    auto c = mk(CurveFamily::power, {Rat(3)}, Interval(Rat(1), Rat(2)));
    CHECK(c.c1() == Approx(6.0));   // 6x at x=1
    CHECK(c.c2() == Approx(12.0));  // 6x at x=2
    CHECK(c.lipschitz_c() == Approx(6.0));
    CHECK(c.exact_capable());
    CHECK(c.deriv_rat(Rat(2)) == Rat(12));
    Range j = c.deriv_range();
    CHECK(j.lo == Approx(3.0));
    CHECK(j.hi == Approx(12.0));
}

TEST_CASE("degenerate or sign-changing curvature is rejected") {
    // x^3 on [-1,1]: f'' = 6x vanishes and changes sign at 0.
    CHECK_THROWS_AS(mk(CurveFamily::power, {Rat(3)}, Interval(Rat(-1), Rat(1))), DomainError);
    CHECK_THROWS_AS(mk(CurveFamily::power, {Rat(0)}, Interval(Rat(1), Rat(2))), DomainError);
    CHECK_THROWS_AS(mk(CurveFamily::power, {Rat(1)}, Interval(Rat(1), Rat(2))), DomainError);
    CHECK_THROWS_AS(mk(CurveFamily::parabola, {Rat(0), Rat(1), Rat(0)}, Interval(Rat(0), Rat(1))),
                    DomainError);
    // Non-integer power needs lo > 0.
    CHECK_THROWS_AS(mk(CurveFamily::power, {Rat(5, 2)}, Interval(Rat(0), Rat(1))), DomainError);
    // Wrong parameter count.
    CHECK_THROWS_AS(mk(CurveFamily::parabola, {Rat(1)}, Interval(Rat(0), Rat(1))), DomainError);
    // Sampling grid must be fine enough to mean anything.
    CHECK_THROWS_AS(make_curve(CurveFamily::parabola, std::vector<Rat>{Rat(1), Rat(0), Rat(0)},
                               Interval(Rat(0), Rat(1)), 32),
                    DomainError);
}

TEST_CASE("circle arc band and domain guard") {
    auto c = mk(CurveFamily::circle_arc, {Rat(2)}, Interval(Rat(0), Rat(1)));
    // |f''| = r^2 (r^2 - x^2)^(-3/2): 1/r at x=0, 4/3^1.5 at x=1.
    CHECK(c.c1() == Approx(0.5));
    CHECK(c.c2() == Approx(4.0 / std::pow(3.0, 1.5)));
    CHECK(c.concavity() == -1);
    CHECK_FALSE(c.exact_capable());
    CHECK(c.value(0.0L) == Approx(2.0));
    // 1.9 > 0.9 r: too close to the flat-tangent endpoint.
    CHECK_THROWS_AS(mk(CurveFamily::circle_arc, {Rat(2)}, Interval(Rat(0), Rat(19, 10))),
                    DomainError);
    CHECK_THROWS_AS(mk(CurveFamily::circle_arc, {Rat(-1)}, Interval(Rat(0), Rat(1, 2))),
                    DomainError);
}

TEST_CASE("logarithm and exponential bands") {
    auto lg = mk(CurveFamily::logarithm, {}, Interval(Rat(1), Rat(2)));
    CHECK(lg.c1() == Approx(0.25)); // 1/x^2 at x=2
    CHECK(lg.c2() == Approx(1.0));  // 1/x^2 at x=1
    CHECK(lg.concavity() == -1);
    Range j = lg.deriv_range(); // f' = 1/x is decreasing
    CHECK(j.lo == Approx(0.5));
    CHECK(j.hi == Approx(1.0));
    CHECK_THROWS_AS(mk(CurveFamily::logarithm, {}, Interval(Rat(0), Rat(1))), DomainError);

    auto ex = mk(CurveFamily::exponential, {}, Interval(Rat(0), Rat(1)));
    CHECK(ex.c1() == Approx(1.0));
    CHECK(ex.c2() == Approx(std::exp(1.0)));
    CHECK(ex.concavity() == 1);
    CHECK_FALSE(ex.exact_capable());
}

TEST_CASE("fermat cubic domain and sampled band") {
    auto c = mk(CurveFamily::fermat3, {}, Interval(Rat(1, 5), Rat(4, 5)));
    CHECK(c.concavity() == -1);
    CHECK(0.0 < c.c1());
    CHECK(c.c1() < c.c2());
    // x^3 + y^3 = 1 on the arc.
    long double y = c.value(0.5L);
    CHECK(std::abs(static_cast<double>(0.125L + y * y * y - 1.0L)) < 1e-15);
    CHECK_THROWS_AS(mk(CurveFamily::fermat3, {}, Interval(Rat(1, 5), Rat(3, 2))), DomainError);
    // f'' -> 0 as x -> 0, so an interval touching 0 fails the degeneracy sweep.
    CHECK_THROWS_AS(mk(CurveFamily::fermat3, {}, Interval(Rat(0), Rat(1, 2))), DomainError);
}

TEST_CASE("cubic takes descending coefficients") {
    auto c = mk(CurveFamily::cubic, {Rat(1), Rat(0), Rat(0), Rat(0)}, Interval(Rat(1), Rat(2)));
    CHECK(c.c1() == Approx(6.0));
    CHECK(c.c2() == Approx(12.0));
    CHECK(c.exact_capable());
    // Ascending storage: x^3 is {0,0,0,1}.
    REQUIRE(c.poly_coeffs().size() == 4);
    CHECK(c.poly_coeffs()[3] == Rat(1));
    CHECK(c.poly_coeffs()[0] == Rat(0));
    CHECK(c.deriv_rat(Rat(3, 2)) == Rat(27, 4));
}

TEST_CASE("exact derivative of rational polynomials") {
    auto c = mk(CurveFamily::parabola, {Rat(1), Rat(0), Rat(0)}, Interval(Rat(1), Rat(2)));
    CHECK(c.deriv_rat(Rat(3, 2)) == Rat(3));
    CHECK(c.deriv_rat(Rat(1)) == Rat(2));
    auto circ = mk(CurveFamily::circle_arc, {Rat(2)}, Interval(Rat(0), Rat(1)));
    CHECK_THROWS_AS(circ.deriv_rat(Rat(1, 2)), DomainError);
}

TEST_CASE("curve spec parsing applies defaults and round-trips") {
    Interval iv(Rat(1), Rat(2));
    auto c = parse_curve_spec("parabola:a=1", iv);
    CHECK(c.spec_string() == "parabola:a=1,b=0,c=0");
    CHECK(c.params()[1] == Rat(0));

    auto d = parse_curve_spec("parabola:a=5/7,b=-1/2,c=2", iv);
    CHECK(d.spec_string() == "parabola:a=5/7,b=-1/2,c=2");
    CHECK(parse_curve_spec(d.spec_string(), iv).spec_string() == d.spec_string());

    CHECK(parse_curve_spec("power", iv).spec_string() == "power:alpha=2");
    CHECK(parse_curve_spec("exponential", Interval(Rat(0), Rat(1))).spec_string() ==
          "exponential");
    CHECK(parse_curve_spec("cubic:c3=1/3,c2=1,c1=-1/2,c0=2/5", Interval(Rat(0), Rat(1)))
              .spec_string() == "cubic:c3=1/3,c2=1,c1=-1/2,c0=2/5");

    CHECK_THROWS_AS(parse_curve_spec("ellipse:r=2", iv), DomainError);
    CHECK_THROWS_AS(parse_curve_spec("parabola:q=3", iv), DomainError);
    CHECK_THROWS_AS(parse_curve_spec("parabola:a", iv), DomainError);
}

TEST_CASE("interval endpoints are exact and ordered") {
    CHECK_THROWS_AS(Interval(Rat(2), Rat(1)), DomainError);
    CHECK_THROWS_AS(Interval(Rat(1), Rat(1)), DomainError);
    Interval iv(Rat(1), Rat(2));
    CHECK(iv.length() == Approx(1.0));
    CHECK(iv.contains(1.5));
    CHECK_FALSE(iv.contains(2.5));

    auto r = iv.a_range(5); // a/5 in [1,2]: a = 5..10
    CHECK(r.first == 5);
    CHECK(r.last == 10);
    CHECK(r.count() == 6);

    Interval narrow(Rat(1, 3), Rat(1, 2));
    auto n7 = narrow.a_range(7); // only 3/7
    CHECK(n7.first == 3);
    CHECK(n7.last == 3);
    CHECK(n7.count() == 1);
    auto n5 = narrow.a_range(5); // 2/5 only
    CHECK(n5.count() == 1);
    CHECK(n5.first == 2);
}
