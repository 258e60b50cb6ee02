// Exponential sums over rational points, their truncated Poisson expansion,
// stationary-phase evaluation, Erdos-Turan discrepancy bounds, and the
// Huxley-type dual-curve sums.
//
// Conventions: e(x) = exp(+2 pi i x); ||x|| is the distance from x to the
// nearest integer. The central identity implemented here is the truncated
// Poisson expansion
//
//   sum_{a/q in I} e(k q f(a/q))
//     = sum_{j in J_k} q * int_I e(q (k f(x) - j x)) dx + O(log(2 + k|J|)),
//
// with J = [min f', max f'] and J_k the integers in [k min f' - 1, k max f' + 1].
// Each integral concentrates at the stationary point x0 = h(j/k) when j/k lies
// inside J, where its leading term is
//
//   e(-q k f*(j/k) + sgn(f'')/8) / sqrt(q k |f''(x0)|)
//
// with error O((1/kappa + log(qk))/(qk)), kappa the distance from x0 to the
// boundary. Phases like q k f*(j/k) reach 1e6 and beyond, so they are reduced
// mod 1 in exact rational arithmetic when the curve allows it and in long
// double otherwise.
#pragma once

#include <complex>
#include <string>
#include <vector>

#include "nearcurve/curve.hpp"
#include "nearcurve/dual.hpp"
#include "nearcurve/quadrature.hpp"

namespace nearcurve {

// sum over integers a with a/q in the closed interval of e(k q f(a/q)),
// compensated accumulation in fixed block order.
std::complex<double> exp_sum(const PlanarCurve& curve, long long k, long long q);

// int_I e(q (k f(x) - j x)) dx  (no leading q factor; callers scale).
std::complex<double> oscillatory_integral(const PlanarCurve& curve, long long k,
                                          long long j, long long q,
                                          const PanelQuadOptions& opts = {});

struct StationaryPhaseResult {
    std::complex<double> value;
    double x0;
    double kappa;        // min(x0 - lo, hi - x0)
    double error_budget; // (1/kappa + log(qk)) / (qk)
};

// Leading stationary-phase term of oscillatory_integral; requires j/k strictly
// inside J so the critical point is interior.
StationaryPhaseResult stationary_phase(const PlanarCurve& curve, long long k,
                                       long long j, long long q);

// Integers j of the truncated expansion: [ceil(k min f' - 1), floor(k max f' + 1)].
struct JRange {
    long long first, last;
};
JRange poisson_j_range(const PlanarCurve& curve, long long k);

// sum over J_k of q * oscillatory_integral(curve, k, j, q).
std::complex<double> poisson_expansion(const PlanarCurve& curve, long long k,
                                       long long q, const PanelQuadOptions& opts = {});

// ---- equidistribution ------------------------------------------------------

struct SequenceSample {
    std::vector<double> values; // fractional parts in [0,1)
    std::string source;
    long long n() const { return static_cast<long long>(values.size()); }
};

// Fractional parts of q f(a/q), q ascending then a ascending; N > max_n raises
// ResourceError before anything is allocated.
SequenceSample curve_sequence(const PlanarCurve& curve, long long Q,
                              long long max_n = 100'000'000);
// u_n = frac(n sqrt(2)), n = 1..N: the classical test sequence.
SequenceSample sqrt2_sequence(long long N);

// Z - (beta-alpha) N, with Z the exact number of values in the open interval
// (alpha, beta) mod 1. Requires alpha < beta < alpha + 1.
double discrepancy(const SequenceSample& sample, double alpha, double beta);

// N * D*(N) from the sorted-sample identity; D(N) <= 2 D*(N) makes it the
// surrogate for the sup-over-intervals discrepancy (already in count units).
double star_discrepancy(const SequenceSample& sample);

// |sum_n e(k u_n)| for k = 1..K (shared by Erdos-Turan evaluations at many K).
std::vector<double> weyl_magnitudes(const SequenceSample& sample, long long K);

// N/(K+1) + 2 sum_{k<=K} (1/(K+1) + min(beta-alpha, 1/(pi k))) |sum_n e(k u_n)|.
double erdos_turan_bound(const SequenceSample& sample, long long K, double alpha,
                         double beta);
double erdos_turan_bound(const std::vector<double>& weyl, long long N, long long K,
                         double alpha, double beta);

// ---- Huxley-type sums over the dual curve ----------------------------------

enum class HuxleyMode { half, one, near };

// Over K1 < k <= K2 and integers j with j/k in the closed dual domain J:
//   half: sum k^-s ||k F(j/k)||^(-1/2) over ||k F(j/k)|| >  1/Q
//   one:  sum k^-s ||k F(j/k)||^(-1)   over ||k F(j/k)|| >  1/Q
//   near: sum k^-s                     over ||k F(j/k)|| <= 1/Q
// s must be 1/2 or 3/2. Exact rational ||.|| and boundary comparisons when the
// dual supports them.
double huxley_sum(const DualCurve& dual, long long K1, long long K2, long long Q,
                  double s, HuxleyMode mode);

} // namespace nearcurve
