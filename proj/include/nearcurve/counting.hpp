// The three counting functions and the identities tying them together.
//
//   raw      N(Q,d)  = #{(a,q)   : q <= Q, a/q in I, ||q f(a/q)|| < d}
//   reduced  N^(Q,d) = #{(a,b,q) : q <= Q, a/q in I, gcd(a,b,q) = 1,
//                                  |f(a/q) - b/q| < d/q}
//   tilde    N~(Q,d) = as reduced but with threshold d/Q
//
// b is the nearest integer to q f(a/q), unique for d <= 1/2. Factoring out
// g = gcd(a, b, q) gives the exact identity  N(Q,d) = sum_{m<=Q} N^(Q/m, d/m),
// which mobius_residual checks literally: the residual must be exactly 0.
//
// Decisions are made on one of two paths:
//   exact  - polynomial curves with rational coefficients: q f(a/q) is a ratio
//            of checked 128-bit integers, delta stays rational, every comparison
//            is integer arithmetic, ties are impossible.
//   float  - long double evaluation; a decision landing within
//            1e-12 * max(1, q) of the threshold still counts by sign but
//            increments `ties`, making precision fragility visible.
// Interval membership of a/q is exact on both paths (integer cross-
// multiplication against the rational endpoints), so the two sides of the
// Mobius identity always agree on which pairs exist.
#pragma once

#include <vector>

#include "nearcurve/curve.hpp"
#include "nearcurve/interval.hpp"
#include "nearcurve/rational.hpp"

namespace nearcurve {

enum class CountMode { raw, reduced, tilde };
const char* count_mode_name(CountMode m);

struct CountReport {
    long long count = 0;
    long long Q = 0;
    Rat delta;
    double main_term = 0; // |I| d Q^2, divided by zeta(3) for reduced mode
    double ratio = 0;     // count / main_term (NaN when main_term == 0)
    long long ties = 0;
    CountMode mode = CountMode::raw;
    bool exact_path = false;
    long long tie_a = 0, tie_q = 0; // first guard-band hit, valid when ties > 0
    double wall_ms = 0;
};

struct RationalPoint {
    long long a, b, q;
    bool reduced;
    double distance; // |f(a/q) - b/q|
};

// force_exact demands the exact-integer path (DomainError if the curve cannot).
CountReport count_points(const PlanarCurve& curve, long long Q, const Rat& delta,
                         CountMode mode, bool force_exact = false);
CountReport count_raw(const PlanarCurve& curve, long long Q, const Rat& delta);
CountReport count_reduced(const PlanarCurve& curve, long long Q, const Rat& delta);
CountReport count_tilde(const PlanarCurve& curve, long long Q, const Rat& delta);

// count_raw(Q,d) - sum_{m=1..Q} count_reduced(Q/m, d/m); exactly 0 on every
// unambiguous instance. A tie on any subcount raises TieError naming (a, q, m).
long long mobius_residual(const PlanarCurve& curve, long long Q, const Rat& delta);

// Reduced rational points lying exactly on y = x^2 with denominator <= Q and
// x in the interval: sum over s <= floor(sqrt(Q)) of #{r : r/s in I, gcd(r,s)=1}
// (the points are (r/s, r^2/s^2) in lowest terms). Pure integer arithmetic.
long long on_curve_count_parabola(long long Q, const Interval& interval);

// First `limit` reduced near-points in lexicographic (q, a) order.
std::vector<RationalPoint> near_points_list(const PlanarCurve& curve, long long Q,
                                            const Rat& delta, long long limit);

} // namespace nearcurve
