// Sweep harnesses: the asymptotic counting laws, the sandwich for the tilde
// count, the tiny-delta floor, the discrepancy growth rate, and the stationary
// phase error decay, each reduced to rows a least-squares fit (or the
// acceptance gate) can consume. Everything is deterministic given (curve,
// grid, seed): identical rows, identical CSV bytes, at any worker count.
//
// Targets the rows are checked against:
//   raw      count ~ |I| d Q^2                 (ratio -> 1)
//   reduced  count ~ |I| d Q^2 / zeta(3)       (ratio -> 0.831907...)
//   tilde    count / (|I| d Q^2) sandwiched in [2 sqrt(3)/(9 zeta(3)), 1/zeta(3)]
//            = [0.320201..., 0.831907...], conjectured limit 2/(3 zeta(3))
//   error    |count - main_term| = O(d^{1/2} log(1/d) Q^{3/2} + Q^{1+eps})
//   floor    at d << Q^{-2} only the on-curve points survive
//   deviation 2 N D*(N) grows like N^{3/4} (up to constants and logs)
//   stationary-phase gap shrinks like (1/kappa + log lambda) / lambda
//
// zeta(3) and every constant derived from it are summed at first use with a
// proven tail bound <= 1e-15; no decimal literal of zeta(3) appears anywhere.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "nearcurve/constants.hpp"
#include "nearcurve/counting.hpp"
#include "nearcurve/harmonic.hpp"

namespace nearcurve {

// Per-Q delta choice: the same fixed rational for every Q, or delta = Q^p
// (p < 0 in practice), realized as the exact rational value of the double.
class DeltaRule {
public:
    static DeltaRule fixed(const Rat& d) { return DeltaRule(true, d, 0.0); }
    static DeltaRule power(double p) { return DeltaRule(false, Rat(), p); }

    Rat delta_for(long long Q) const {
        if (fixed_) return d_;
        return Rat::from_double(std::pow(static_cast<double>(Q), p_));
    }
    bool is_fixed() const { return fixed_; }
    double exponent() const { return p_; }

private:
    DeltaRule(bool fixed, const Rat& d, double p) : fixed_(fixed), d_(d), p_(p) {}
    bool fixed_;
    Rat d_;
    double p_;
};

struct SweepRow {
    long long Q = 0;
    double delta = 0;
    long long count = 0;
    double main_term = 0;
    double ratio = 0;
    double abs_error = 0; // |count - main_term|
    double wall_ms = 0;
};

struct FitResult {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    long long n_points = 0;
};

// One row per Q, ascending. Q_list must be ascending with every entry >= 2.
std::vector<SweepRow> asymptotic_sweep(const PlanarCurve& curve, CountMode mode,
                                       const std::vector<long long>& Q_list,
                                       const DeltaRule& rule);

// Least squares of log(y) against log(x); needs >= 3 positive pairs.
FitResult loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

enum class FitModel { vs_Q, vs_N };

// Slope of log(abs_error) against log(Q) (vs_Q) or log(count) (vs_N). Rows
// with abs_error = 0 or count < 10 are excluded; fewer than 3 usable rows is
// an error ("insufficient data").
FitResult error_exponent_fit(const std::vector<SweepRow>& rows, FitModel model);

struct SandwichReport {
    double lower_const = 0;   // 2 sqrt(3) / (9 zeta(3))
    double upper_const = 0;   // 1 / zeta(3)
    double conjectured = 0;   // 2 / (3 zeta(3))
    double observed_ratio = 0;
    long long count = 0;
    double main_term = 0; // |I| d Q^2, undivided
};

SandwichReport sandwich_report(const PlanarCurve& curve, long long Q, const Rat& delta);

// ---- tiny-delta floor --------------------------------------------------------

enum class FloorKind { parabola, fermat3 };

struct FloorRow {
    long long Q = 0;
    Rat delta;
    long long count = 0;          // reduced near-count at (Q, delta)
    long long on_curve_count = 0; // rational points on the curve itself
};

// parabola: x^2 on [1,2] (on-curve floor = denominator-square points);
// fermat3: (1-x^3)^{1/3} on [1/5,4/5] (no rational points at all, floor = 0).
std::vector<FloorRow> floor_experiment(FloorKind kind,
                                       const std::vector<long long>& Q_list,
                                       const std::vector<Rat>& delta_list);

// ---- discrepancy growth ------------------------------------------------------

struct DiscrepancyRow {
    long long Q = 0;
    long long N = 0;
    double D_surrogate = 0; // 2 N D*(N), count units
    double D_over_N34 = 0;  // D_surrogate / N^{3/4}
};

std::vector<DiscrepancyRow> discrepancy_sweep(const PlanarCurve& curve,
                                              const std::vector<long long>& Q_list);

// ---- stationary phase error --------------------------------------------------

struct SpErrorRow {
    long long lambda = 0;
    std::complex<double> direct;     // panel quadrature of the oscillatory integral
    std::complex<double> stationary; // leading stationary-phase term
    double abs_diff = 0;
    double budget = 0; // (1/kappa + log lambda) / lambda
};

// lambda realized as q = lambda, k = 1; j is the nearest integer to the
// midpoint of J = f'(I) with an interior critical point (scanning +-1, +-2 if
// the rounded midpoint lands on the boundary).
std::vector<SpErrorRow> sp_error_sweep(const PlanarCurve& curve,
                                       const std::vector<long long>& lambda_list);

// ---- Fresnel spot-check ------------------------------------------------------

// int_0^inf e(t^2) dt = (1/4) + (1/4) i, computed as the average of panel
// integrals truncated at T_m = sqrt(T0^2 + m/M), m = 0..M-1: the truncation
// tails are ~uniform on the unit circle, so averaging cancels them to ~1e-6.
std::complex<double> fresnel_quarter(double T0 = 10.0, int M = 64);

} // namespace nearcurve
