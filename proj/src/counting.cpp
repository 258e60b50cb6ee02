#include "nearcurve/counting.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "nearcurve/constants.hpp"
#include "nearcurve/detail/exactq.hpp"
#include "nearcurve/errors.hpp"
#include "nearcurve/parallel.hpp"

namespace nearcurve {

using detail::ExactQ;
using detail::exact_setup;

const char* count_mode_name(CountMode m) {
    switch (m) {
    case CountMode::raw: return "raw";
    case CountMode::reduced: return "reduced";
    case CountMode::tilde: return "tilde";
    }
    return "?";
}

namespace {

long long gcd_ll(long long a, long long b) {
    return std::gcd(static_cast<unsigned long long>(a < 0 ? -a : a),
                    static_cast<unsigned long long>(b < 0 ? -b : b));
}

// ---- shared per-q state ----------------------------------------------------

struct QTally {
    long long count = 0;
    long long ties = 0;
    long long tie_a = 0, tie_q = 0; // smallest (q, a) guard-band hit in the block

    void merge(const QTally& o) {
        count += o.count;
        ties += o.ties;
        if (o.ties > 0 && (ties == o.ties ||
                           std::pair(o.tie_q, o.tie_a) < std::pair(tie_q, tie_a))) {
            tie_a = o.tie_a;
            tie_q = o.tie_q;
        }
    }
};

// One q, exact decisions. tau is the distance threshold (delta, or delta/Q for
// tilde mode).
void count_q_exact(const PlanarCurve& curve, long long q, const Rat& tau,
                   CountMode mode, QTally& t) {
    auto ar = curve.interval().a_range(q);
    if (ar.last < ar.first) return;
    ExactQ e = exact_setup(curve.poly_coeffs(), q);
    const i128 rhs = checked_mul(tau.num(), e.m0);
    for (long long a = ar.first; a <= ar.last; ++a) {
        i128 n = e.num(a);
        if (mode == CountMode::raw) {
            i128 r = n % e.m0;
            if (r < 0) r += e.m0;
            i128 dn = r <= e.m0 - r ? r : e.m0 - r;
            if (checked_mul(dn, tau.den()) < rhs) ++t.count;
        } else {
            i128 b = round_div(n, e.m0);
            i128 dn = iabs128(n - checked_mul(b, e.m0));
            if (checked_mul(dn, tau.den()) < rhs &&
                gcd128(a, gcd128(b, q)) == 1)
                ++t.count;
        }
    }
}

// One q, long-double decisions with the guard band.
void count_q_float(const PlanarCurve& curve, long long q, const Rat& tau,
                   CountMode mode, QTally& t) {
    auto ar = curve.interval().a_range(q);
    if (ar.last < ar.first) return;
    const long double lt = tau.to_long_double();
    const long double guard = 1e-12L * static_cast<long double>(q < 1 ? 1 : q);
    for (long long a = ar.first; a <= ar.last; ++a) {
        long double x = static_cast<long double>(a) / q;
        long double v = static_cast<long double>(q) * curve.value(x);
        long double w = v - nearbyintl(v);
        long double dist = std::fabs(w);
        long double diff = dist - lt;
        if (std::fabs(diff) < guard) {
            ++t.ties;
            if (t.ties == 1) {
                t.tie_a = a;
                t.tie_q = q;
            }
        }
        if (diff < 0) {
            if (mode == CountMode::raw) {
                ++t.count;
            } else {
                auto b = static_cast<long long>(nearbyintl(v));
                if (gcd_ll(a, gcd_ll(b, q)) == 1) ++t.count;
            }
        }
    }
}

// Distance threshold on ||q f(a/q)|| for this q: delta for raw/reduced
// (|f - b/q| < delta/q), q delta / Q for tilde (|f - b/q| < delta/Q).
Rat q_threshold(const Rat& delta, long long q, long long Q, CountMode mode) {
    if (mode != CountMode::tilde) return delta;
    return Rat(checked_mul(delta.num(), q), checked_mul(delta.den(), Q));
}

QTally tally_all(const PlanarCurve& curve, long long Q, const Rat& delta,
                 CountMode mode, bool exact) {
    const long long chunk = 16; // q's per block; any fixed layout gives the
                                // same integer totals, ordered merge fixes ties
    long long n_blocks = (Q + chunk - 1) / chunk;
    std::vector<QTally> per_block(static_cast<size_t>(n_blocks));
    exec::run_blocks(n_blocks, [&](long long bi) {
        QTally& t = per_block[static_cast<size_t>(bi)];
        long long q0 = bi * chunk + 1, q1 = std::min(Q, q0 + chunk - 1);
        for (long long q = q0; q <= q1; ++q) {
            Rat tau = q_threshold(delta, q, Q, mode);
            if (exact)
                count_q_exact(curve, q, tau, mode, t);
            else
                count_q_float(curve, q, tau, mode, t);
        }
    });
    QTally total;
    for (const QTally& t : per_block) total.merge(t);
    return total;
}

void validate(long long Q, const Rat& delta) {
    if (Q < 1) throw DomainError("Q must be >= 1");
    if (Q >= (1LL << 31)) throw DomainError("overflow guard: Q^2 >= 2^62 rejected");
    if (!(delta > Rat(0)) || delta > Rat(1, 2))
        throw DomainError("delta must lie in (0, 1/2]");
}

} // namespace

CountReport count_points(const PlanarCurve& curve, long long Q, const Rat& delta,
                         CountMode mode, bool force_exact) {
    validate(Q, delta);
    bool exact = curve.exact_capable();
    if (force_exact && !exact)
        throw DomainError("exact path requires a polynomial curve with rational "
                          "coefficients");
    auto t0 = std::chrono::steady_clock::now();
    QTally t = tally_all(curve, Q, delta, mode, exact);
    auto t1 = std::chrono::steady_clock::now();

    CountReport r;
    r.count = t.count;
    r.Q = Q;
    r.delta = delta;
    r.mode = mode;
    r.exact_path = exact;
    r.ties = t.ties;
    r.tie_a = t.tie_a;
    r.tie_q = t.tie_q;
    double mt = curve.interval().length() * delta.to_double() * static_cast<double>(Q) *
                static_cast<double>(Q);
    if (mode == CountMode::reduced) mt /= zeta3();
    r.main_term = mt;
    r.ratio = mt > 0 ? static_cast<double>(r.count) / mt
                     : std::numeric_limits<double>::quiet_NaN();
    r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return r;
}

CountReport count_raw(const PlanarCurve& c, long long Q, const Rat& d) {
    return count_points(c, Q, d, CountMode::raw);
}
CountReport count_reduced(const PlanarCurve& c, long long Q, const Rat& d) {
    return count_points(c, Q, d, CountMode::reduced);
}
CountReport count_tilde(const PlanarCurve& c, long long Q, const Rat& d) {
    return count_points(c, Q, d, CountMode::tilde);
}

long long mobius_residual(const PlanarCurve& curve, long long Q, const Rat& delta) {
    validate(Q, delta);
    CountReport raw = count_points(curve, Q, delta, CountMode::raw);
    if (raw.ties > 0)
        throw TieError("mobius_residual: ambiguous tie in raw count at (a=" +
                       std::to_string(raw.tie_a) + ", q=" + std::to_string(raw.tie_q) +
                       ", d=1)");
    long long total = 0;
    for (long long d = 1; d <= Q; ++d) {
        Rat dd(delta.num(), checked_mul(delta.den(), d));
        CountReport red = count_points(curve, Q / d, dd, CountMode::reduced);
        if (red.ties > 0)
            throw TieError("mobius_residual: ambiguous tie in reduced subcount at (a=" +
                           std::to_string(red.tie_a) + ", q=" +
                           std::to_string(red.tie_q) + ", d=" + std::to_string(d) + ")");
        total += red.count;
    }
    return raw.count - total;
}

long long on_curve_count_parabola(long long Q, const Interval& interval) {
    if (Q < 1) throw DomainError("Q must be >= 1");
    long long total = 0;
    for (long long s = 1; s * s <= Q; ++s) {
        auto ar = interval.a_range(s);
        for (long long r = ar.first; r <= ar.last; ++r)
            if (gcd_ll(r, s) == 1) ++total;
    }
    return total;
}

std::vector<RationalPoint> near_points_list(const PlanarCurve& curve, long long Q,
                                            const Rat& delta, long long limit) {
    validate(Q, delta);
    std::vector<RationalPoint> out;
    if (limit <= 0) return out;
    bool exact = curve.exact_capable();
    for (long long q = 1; q <= Q; ++q) {
        auto ar = curve.interval().a_range(q);
        if (ar.last < ar.first) continue;
        if (exact) {
            ExactQ e = exact_setup(curve.poly_coeffs(), q);
            const i128 rhs = checked_mul(delta.num(), e.m0);
            for (long long a = ar.first; a <= ar.last; ++a) {
                i128 n = e.num(a);
                i128 b = round_div(n, e.m0);
                i128 dn = iabs128(n - checked_mul(b, e.m0));
                if (checked_mul(dn, delta.den()) < rhs &&
                    gcd128(a, gcd128(b, q)) == 1) {
                    double dist = static_cast<double>(
                        static_cast<long double>(dn) /
                        (static_cast<long double>(e.m0) * q));
                    out.push_back({a, static_cast<long long>(b), q, true, dist});
                    if (static_cast<long long>(out.size()) == limit) return out;
                }
            }
        } else {
            const long double lt = delta.to_long_double();
            for (long long a = ar.first; a <= ar.last; ++a) {
                long double x = static_cast<long double>(a) / q;
                long double v = static_cast<long double>(q) * curve.value(x);
                auto b = static_cast<long long>(nearbyintl(v));
                long double dist = std::fabs(v - b);
                if (dist < lt && gcd_ll(a, gcd_ll(b, q)) == 1) {
                    out.push_back({a, b, q, true, static_cast<double>(dist / q)});
                    if (static_cast<long long>(out.size()) == limit) return out;
                }
            }
        }
    }
    return out;
}

} // namespace nearcurve
