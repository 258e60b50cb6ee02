#include "nearcurve/harmonic.hpp"

#include <algorithm>
#include <cmath>

#include "nearcurve/detail/exactq.hpp"
#include "nearcurve/errors.hpp"
#include "nearcurve/parallel.hpp"

namespace nearcurve {

namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559L;

std::complex<double> cis_frac(long double frac) {
    auto arg = static_cast<double>(kTwoPi * frac);
    return {std::cos(arg), std::sin(arg)};
}

long double reduce_mod1(long double t) { return t - nearbyintl(t); }

void require_positive(long long k, long long q) {
    if (k < 1 || q < 1) throw DomainError("k and q must be >= 1");
}

} // namespace

std::complex<double> exp_sum(const PlanarCurve& curve, long long k, long long q) {
    require_positive(k, q);
    auto ar = curve.interval().a_range(q);
    if (ar.last < ar.first) return 0;
    const long long n_terms = ar.count();
    const bool exact = curve.exact_capable();
    detail::ExactQ eq;
    if (exact) eq = detail::exact_setup(curve.poly_coeffs(), q);

    // Fixed 8192-term blocks, Kahan-compensated within a block, combined in
    // block order: bitwise reproducible at any worker count.
    const long long block = 8192;
    const long long n_blocks = (n_terms + block - 1) / block;
    std::vector<std::complex<long double>> partial(static_cast<size_t>(n_blocks));

    exec::run_blocks(n_blocks, [&](long long bi) {
        long double sre = 0, sim = 0, cre = 0, cim = 0; // sums + compensation
        long long i0 = bi * block, i1 = std::min(n_terms, i0 + block);
        for (long long i = i0; i < i1; ++i) {
            long long a = ar.first + i;
            long double frac;
            if (exact) {
                i128 n = checked_mul(static_cast<i128>(k), eq.num(a));
                i128 r = n % eq.m0;
                if (r < 0) r += eq.m0;
                frac = static_cast<long double>(r) / static_cast<long double>(eq.m0);
            } else {
                long double x = static_cast<long double>(a) / q;
                frac = reduce_mod1(static_cast<long double>(k) * q * curve.value(x));
            }
            std::complex<double> t = cis_frac(frac);
            long double y = t.real() - cre, z = sre + y;
            cre = (z - sre) - y;
            sre = z;
            y = t.imag() - cim;
            z = sim + y;
            cim = (z - sim) - y;
            sim = z;
        }
        partial[static_cast<size_t>(bi)] = {sre, sim};
    });

    std::complex<long double> total = 0;
    for (const auto& c : partial) total += c;
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

std::complex<double> oscillatory_integral(const PlanarCurve& curve, long long k,
                                          long long j, long long q,
                                          const PanelQuadOptions& opts) {
    require_positive(k, q);
    const Interval& I = curve.interval();
    Range J = curve.deriv_range();
    double maxd = std::max(std::fabs(J.lo), std::fabs(J.hi));
    double len = I.length();
    double units = q * (k * maxd + std::fabs(static_cast<double>(j))) * len +
                   q * static_cast<double>(k) * curve.c2() * len * len;
    auto lk = static_cast<long double>(k);
    auto lj = static_cast<long double>(j);
    auto lq = static_cast<long double>(q);
    return oscillatory_quadrature(
        [&](long double x) { return lq * (lk * curve.value(x) - lj * x); }, I.lo(),
        I.hi(), units, opts);
}

StationaryPhaseResult stationary_phase(const PlanarCurve& curve, long long k,
                                       long long j, long long q) {
    require_positive(k, q);
    Range J = curve.deriv_range();
    double y = static_cast<double>(j) / static_cast<double>(k);
    if (!(y > J.lo && y < J.hi))
        throw DomainError("stationary_phase: j/k is not interior to J, no interior "
                          "stationary point (fall back to oscillatory_integral)");

    double x0 = dprime_inverse(curve, y);
    const Interval& I = curve.interval();
    double kappa = std::min(x0 - I.lo(), I.hi() - x0);
    int sigma = curve.concavity();

    long double lambda = static_cast<long double>(q) * k;
    long double amp = 1 / std::sqrt(lambda * std::fabs(curve.second(x0)));

    // Phase at the critical point: lambda phi(x0) = -q k f*(j/k), reduced mod 1
    // exactly when the dual supports it (the magnitude can reach 1e6; naive
    // evaluation in double would shed all phase accuracy).
    long double frac;
    bool have_exact = false;
    if (curve.family() == CurveFamily::parabola) {
        try {
            DualCurve dual = make_dual(curve);
            Rat fs = dual.exact_value(Rat(j, k));
            Rat theta = Rat(sigma, 8) - Rat(q) * Rat(k) * fs;
            frac = (theta - Rat(theta.floor(), 1)).to_long_double();
            have_exact = true;
        } catch (const ResourceError&) {
            // exact phase overflowed 128 bits; extended precision below
        }
    }
    if (!have_exact) {
        long double lx = x0;
        long double fstar = static_cast<long double>(y) * lx - curve.value(lx);
        frac = reduce_mod1(-lambda * fstar + sigma / 8.0L);
    }

    StationaryPhaseResult r;
    std::complex<double> dir = cis_frac(frac);
    r.value = {static_cast<double>(amp * dir.real()), static_cast<double>(amp * dir.imag())};
    r.x0 = x0;
    r.kappa = kappa;
    r.error_budget = static_cast<double>((1 / static_cast<long double>(kappa) +
                                          std::log(lambda)) /
                                         lambda);
    return r;
}

JRange poisson_j_range(const PlanarCurve& curve, long long k) {
    if (k < 1) throw DomainError("k must be >= 1");
    if (curve.exact_capable()) {
        Rat d0 = curve.deriv_rat(curve.interval().rlo());
        Rat d1 = curve.deriv_rat(curve.interval().rhi());
        if (d1 < d0) std::swap(d0, d1);
        Rat lo = Rat(k) * d0 - Rat(1), hi = Rat(k) * d1 + Rat(1);
        return {static_cast<long long>(lo.ceil()), static_cast<long long>(hi.floor())};
    }
    Range J = curve.deriv_range();
    auto lo = static_cast<long long>(std::ceil(static_cast<long double>(k) * J.lo - 1));
    auto hi = static_cast<long long>(std::floor(static_cast<long double>(k) * J.hi + 1));
    return {lo, hi};
}

std::complex<double> poisson_expansion(const PlanarCurve& curve, long long k,
                                       long long q, const PanelQuadOptions& opts) {
    require_positive(k, q);
    JRange jr = poisson_j_range(curve, k);
    std::complex<long double> total = 0;
    for (long long j = jr.first; j <= jr.last; ++j) {
        std::complex<double> t = oscillatory_integral(curve, k, j, q, opts);
        total += std::complex<long double>(t) * static_cast<long double>(q);
    }
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

SequenceSample curve_sequence(const PlanarCurve& curve, long long Q, long long max_n) {
    if (Q < 1) throw DomainError("Q must be >= 1");
    i128 n_total = 0;
    for (long long q = 1; q <= Q; ++q) {
        auto ar = curve.interval().a_range(q);
        n_total += ar.count();
    }
    if (n_total > max_n)
        throw ResourceError("curve_sequence: N = " + to_string_i128(n_total) +
                            " exceeds the memory cap " + std::to_string(max_n));

    SequenceSample s;
    s.values.reserve(static_cast<size_t>(n_total));
    const bool exact = curve.exact_capable();
    for (long long q = 1; q <= Q; ++q) {
        auto ar = curve.interval().a_range(q);
        if (ar.last < ar.first) continue;
        if (exact) {
            detail::ExactQ eq = detail::exact_setup(curve.poly_coeffs(), q);
            for (long long a = ar.first; a <= ar.last; ++a) {
                i128 r = eq.num(a) % eq.m0;
                if (r < 0) r += eq.m0;
                auto u = static_cast<double>(static_cast<long double>(r) /
                                             static_cast<long double>(eq.m0));
                s.values.push_back(u >= 1.0 ? 0.0 : u);
            }
        } else {
            for (long long a = ar.first; a <= ar.last; ++a) {
                long double x = static_cast<long double>(a) / q;
                long double v = static_cast<long double>(q) * curve.value(x);
                auto u = static_cast<double>(v - std::floor(v));
                s.values.push_back(u >= 1.0 ? 0.0 : u);
            }
        }
    }
    s.source = curve.spec_string() + "@[" + curve.interval().rlo().str() + "," +
               curve.interval().rhi().str() + "],Q=" + std::to_string(Q);
    return s;
}

SequenceSample sqrt2_sequence(long long N) {
    if (N < 1) throw DomainError("N must be >= 1");
    SequenceSample s;
    s.values.reserve(static_cast<size_t>(N));
    const long double r2 = std::sqrt(2.0L);
    for (long long n = 1; n <= N; ++n) {
        long double v = n * r2;
        auto u = static_cast<double>(v - std::floor(v));
        s.values.push_back(u >= 1.0 ? 0.0 : u);
    }
    s.source = "nsqrt2,N=" + std::to_string(N);
    return s;
}

namespace {
void validate_window(double alpha, double beta) {
    if (!(alpha < beta && beta < alpha + 1))
        throw DomainError("window must satisfy alpha < beta < alpha + 1");
}
} // namespace

double discrepancy(const SequenceSample& sample, double alpha, double beta) {
    validate_window(alpha, beta);
    const double w = beta - alpha;
    long long z = 0;
    for (double u : sample.values) {
        long double t = static_cast<long double>(u) - alpha;
        t -= std::floor(t);
        if (t > 0 && t < w) ++z;
    }
    return static_cast<double>(z) - w * static_cast<double>(sample.n());
}

double star_discrepancy(const SequenceSample& sample) {
    if (sample.values.empty()) throw DomainError("empty sample");
    std::vector<double> x = sample.values;
    std::sort(x.begin(), x.end());
    const auto N = static_cast<long double>(x.size());
    long double worst = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        long double nx = N * static_cast<long double>(x[i]);
        worst = std::max(worst, static_cast<long double>(i + 1) - nx);
        worst = std::max(worst, nx - static_cast<long double>(i));
    }
    return static_cast<double>(worst);
}

std::vector<double> weyl_magnitudes(const SequenceSample& sample, long long K) {
    if (K < 1) throw DomainError("K must be >= 1");
    std::vector<double> out(static_cast<size_t>(K), 0.0);
    const long long block = 8;
    const long long n_blocks = (K + block - 1) / block;
    exec::run_blocks(n_blocks, [&](long long bi) {
        long long k0 = bi * block + 1, k1 = std::min(K, k0 + block - 1);
        for (long long k = k0; k <= k1; ++k) {
            long double sre = 0, sim = 0;
            for (double u : sample.values) {
                long double t = reduce_mod1(static_cast<long double>(k) * u);
                auto arg = static_cast<double>(kTwoPi * t);
                sre += std::cos(arg);
                sim += std::sin(arg);
            }
            out[static_cast<size_t>(k - 1)] =
                static_cast<double>(std::sqrt(sre * sre + sim * sim));
        }
    });
    return out;
}

double erdos_turan_bound(const std::vector<double>& weyl, long long N, long long K,
                         double alpha, double beta) {
    validate_window(alpha, beta);
    if (K < 1 || K > static_cast<long long>(weyl.size()))
        throw DomainError("K outside the precomputed Weyl range");
    const long double w = static_cast<long double>(beta) - alpha;
    const long double pi = 3.14159265358979323846L;
    long double bound = static_cast<long double>(N) / (K + 1);
    for (long long k = 1; k <= K; ++k) {
        long double bk = 1.0L / (K + 1) + std::min(w, 1 / (pi * k));
        bound += 2 * bk * static_cast<long double>(weyl[static_cast<size_t>(k - 1)]);
    }
    return static_cast<double>(bound);
}

double erdos_turan_bound(const SequenceSample& sample, long long K, double alpha,
                         double beta) {
    return erdos_turan_bound(weyl_magnitudes(sample, K), sample.n(), K, alpha, beta);
}

double huxley_sum(const DualCurve& dual, long long K1, long long K2, long long Q,
                  double s, HuxleyMode mode) {
    if (K1 < 0 || K2 < K1) throw DomainError("need 0 <= K1 <= K2");
    if (Q < 1) throw DomainError("Q must be >= 1");
    if (s != 0.5 && s != 1.5) throw DomainError("s must be 1/2 or 3/2");

    const bool exact = dual.exact_capable();
    std::optional<std::pair<Rat, Rat>> rdom = dual.exact_domain();
    Range J = dual.domain();

    long double total = 0;
    for (long long k = K1 + 1; k <= K2; ++k) {
        long double ks = s == 0.5 ? 1 / std::sqrt(static_cast<long double>(k))
                                  : 1 / (k * std::sqrt(static_cast<long double>(k)));
        long long j0, j1;
        if (exact && rdom) {
            j0 = static_cast<long long>((Rat(k) * rdom->first).ceil());
            j1 = static_cast<long long>((Rat(k) * rdom->second).floor());
        } else {
            j0 = static_cast<long long>(std::ceil(static_cast<long double>(k) * J.lo));
            j1 = static_cast<long long>(std::floor(static_cast<long double>(k) * J.hi));
        }
        for (long long j = j0; j <= j1; ++j) {
            bool is_near;
            long double t;
            if (exact) {
                Rat dist = (Rat(k) * dual.exact_value(Rat(j, k))).dist_to_nearest_int();
                is_near = !(dist > Rat(1, Q));
                t = dist.to_long_double();
            } else {
                double y = static_cast<double>(j) / static_cast<double>(k);
                long double v = static_cast<long double>(k) * dual.eval(y).fstar;
                t = std::fabs(reduce_mod1(v));
                is_near = !(t > 1.0L / static_cast<long double>(Q));
            }
            if (mode == HuxleyMode::near) {
                if (is_near) total += ks;
            } else if (!is_near) {
                total += mode == HuxleyMode::half ? ks / std::sqrt(t) : ks / t;
            }
        }
    }
    return static_cast<double>(total);
}

} // namespace nearcurve
