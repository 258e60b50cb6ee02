// Planar curves y = f(x) with curvature bounded away from 0 and infinity.
//
// Everything downstream (counting, dual transforms, exponential sums) works for
// any C^2 function whose second derivative keeps a fixed sign on the interval,
// with a certified band 0 < c1 <= |f''| <= c2 and a Lipschitz constant for f''.
// The built-in families cover the interesting regimes:
//
//   parabola      a x^2 + b x + c            exact rational arithmetic available
//   power         x^alpha                    exact for integer alpha >= 2
//   circle-arc    sqrt(r^2 - x^2), |x| <= 0.9 r
//   exponential   e^x
//   logarithm     log x                      concave (f'' < 0)
//   cubic         c3 x^3 + c2 x^2 + c1 x + c0
//   fermat3       (1 - x^3)^(1/3)            x^3 + y^3 = 1, concave
//
// Curvature bands come from closed-form extrema of f'' (monotone or constant for
// every family except fermat3, whose band is certified by dense sampling with a
// safety factor). A sampled sign/degeneracy check runs for all families: a sign
// change or |f''| < 1e-9 anywhere on the grid rejects the curve.
//
// "Exact capable" means f is a polynomial with rational coefficients, so
// q*f(a/q) is a ratio of checked 128-bit integers and counting decisions can be
// made with zero floating-point content.
#pragma once

#include <string>
#include <vector>

#include "nearcurve/interval.hpp"
#include "nearcurve/rational.hpp"

namespace nearcurve {

enum class CurveFamily { parabola, power, circle_arc, exponential, logarithm, cubic, fermat3 };

const char* family_name(CurveFamily f);
std::vector<CurveFamily> builtin_families();

// Closed range of doubles; analysis-only (no exact endpoints needed).
struct Range {
    double lo, hi;
    double length() const { return hi - lo; }
};

class PlanarCurve {
public:
    long double value(long double x) const;
    long double deriv(long double x) const;
    long double second(long double x) const;

    CurveFamily family() const { return family_; }
    const std::vector<Rat>& params() const { return params_; }
    const Interval& interval() const { return interval_; }

    double c1() const { return c1_; }
    double c2() const { return c2_; }
    double lipschitz_c() const { return lip_; }
    int concavity() const { return sign_second_; } // sign of f'' on the interval

    // J = [min f', max f']; f' is monotone so the endpoints are the extrema.
    Range deriv_range() const;

    bool exact_capable() const { return !poly_.empty(); }
    // Ascending-degree rational coefficients; empty unless exact_capable().
    const std::vector<Rat>& poly_coeffs() const { return poly_; }
    // f'(x) for rational x, exact. Requires exact_capable().
    Rat deriv_rat(const Rat& x) const;

    std::string spec_string() const; // canonical "family:key=val,..." form

private:
    friend PlanarCurve make_curve(CurveFamily, const std::vector<Rat>&, const Interval&, int);

    PlanarCurve(CurveFamily fam, std::vector<Rat> params, Interval iv)
        : family_(fam), params_(std::move(params)), interval_(iv) {}

    CurveFamily family_;
    std::vector<Rat> params_;
    Interval interval_;
    std::vector<Rat> poly_;        // ascending degree; empty if not polynomial
    std::vector<long double> lp_;  // long-double mirrors of family parameters
    double c1_ = 0, c2_ = 0, lip_ = 0;
    int sign_second_ = 0;
};

// Certifies the curvature band (closed-form extrema where available, sampled for
// fermat3) and runs the sampled sign/degeneracy check at sampling_n+1 points.
PlanarCurve make_curve(CurveFamily family, const std::vector<Rat>& params,
                       const Interval& interval, int sampling_n = 1024);
PlanarCurve make_curve(CurveFamily family, const std::vector<double>& params,
                       const Interval& interval, int sampling_n = 1024);

// "family:key=val,key=val", e.g. "parabola:a=1,b=0,c=-2/7". Values are parsed as
// exact rationals; unknown families/keys raise DomainError listing valid names.
PlanarCurve parse_curve_spec(const std::string& spec, const Interval& interval,
                             int sampling_n = 1024);

} // namespace nearcurve
