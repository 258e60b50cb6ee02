#include "nearcurve/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nearcurve/errors.hpp"
#include "nearcurve/quadrature.hpp"

namespace nearcurve {

// Direct summation, smallest terms first, Kahan-compensated. The tail beyond
// N = 2.5e7 is below integral_N^inf x^-3 dx = 1/(2 N^2) = 8e-16, and the
// compensated long double sum carries ~18 digits, so the cached double is
// correct to its last bit for practical purposes.
double zeta3() {
    static const double value = [] {
        const long long N = 25'000'000;
        long double s = 0, c = 0;
        for (long long n = N; n >= 1; --n) {
            long double x = static_cast<long double>(n);
            long double term = 1 / (x * x * x);
            long double y = term - c, t = s + y;
            c = (t - s) - y;
            s = t;
        }
        return static_cast<double>(s);
    }();
    return value;
}

std::vector<SweepRow> asymptotic_sweep(const PlanarCurve& curve, CountMode mode,
                                       const std::vector<long long>& Q_list,
                                       const DeltaRule& rule) {
    if (Q_list.empty()) throw DomainError("Q_list must not be empty");
    for (size_t i = 0; i < Q_list.size(); ++i) {
        if (Q_list[i] < 2) throw DomainError("every Q in Q_list must be >= 2");
        if (i > 0 && Q_list[i] <= Q_list[i - 1])
            throw DomainError("Q_list must be strictly ascending");
    }
    std::vector<SweepRow> rows;
    rows.reserve(Q_list.size());
    for (long long Q : Q_list) {
        Rat d = rule.delta_for(Q);
        CountReport r = count_points(curve, Q, d, mode);
        SweepRow row;
        row.Q = Q;
        row.delta = d.to_double();
        row.count = r.count;
        row.main_term = r.main_term;
        row.ratio = r.ratio;
        row.abs_error = std::fabs(static_cast<double>(r.count) - r.main_term);
        row.wall_ms = r.wall_ms;
        rows.push_back(row);
    }
    return rows;
}

FitResult loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DomainError("loglog_fit: size mismatch");
    std::vector<double> lx, ly;
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0 && y[i] > 0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    const size_t n = lx.size();
    if (n < 3) throw DomainError("insufficient data: log-log fit needs >= 3 positive pairs");

    long double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) { sx += lx[i]; sy += ly[i]; }
    long double mx = sx / n, my = sy / n;
    long double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        long double dx = lx[i] - mx, dy = ly[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0) throw DomainError("loglog_fit: all x identical");

    FitResult f;
    f.slope = static_cast<double>(sxy / sxx);
    f.intercept = static_cast<double>(my - (sxy / sxx) * mx);
    f.r_squared = syy == 0 ? 1.0 : static_cast<double>((sxy * sxy) / (sxx * syy));
    f.r_squared = std::min(1.0, std::max(0.0, f.r_squared));
    f.n_points = static_cast<long long>(n);
    return f;
}

FitResult error_exponent_fit(const std::vector<SweepRow>& rows, FitModel model) {
    std::vector<double> x, y;
    for (const SweepRow& r : rows) {
        if (r.abs_error == 0 || r.count < 10) continue; // log(0) / tiny-sample noise
        x.push_back(model == FitModel::vs_Q ? static_cast<double>(r.Q)
                                            : static_cast<double>(r.count));
        y.push_back(r.abs_error);
    }
    if (x.size() < 3)
        throw DomainError("insufficient data: exponent fit needs >= 3 usable rows");
    return loglog_fit(x, y);
}

SandwichReport sandwich_report(const PlanarCurve& curve, long long Q, const Rat& delta) {
    CountReport r = count_points(curve, Q, delta, CountMode::tilde);
    const double z3 = zeta3();
    SandwichReport s;
    s.lower_const = 2.0 * std::sqrt(3.0) / (9.0 * z3);
    s.upper_const = 1.0 / z3;
    s.conjectured = 2.0 / (3.0 * z3);
    s.count = r.count;
    s.main_term = r.main_term; // tilde main term is the undivided |I| d Q^2
    s.observed_ratio = r.main_term > 0
                           ? static_cast<double>(r.count) / r.main_term
                           : std::numeric_limits<double>::quiet_NaN();
    return s;
}

std::vector<FloorRow> floor_experiment(FloorKind kind,
                                       const std::vector<long long>& Q_list,
                                       const std::vector<Rat>& delta_list) {
    PlanarCurve curve =
        kind == FloorKind::parabola
            ? make_curve(CurveFamily::parabola, {Rat(1), Rat(0), Rat(0)},
                         Interval(Rat(1), Rat(2)))
            : make_curve(CurveFamily::fermat3, std::vector<Rat>{},
                         Interval(Rat(1, 5), Rat(4, 5)));

    std::vector<FloorRow> rows;
    rows.reserve(Q_list.size() * delta_list.size());
    for (long long Q : Q_list) {
        for (const Rat& d : delta_list) {
            FloorRow row;
            row.Q = Q;
            row.delta = d;
            row.count = count_points(curve, Q, d, CountMode::reduced).count;
            row.on_curve_count = kind == FloorKind::parabola
                                     ? on_curve_count_parabola(Q, curve.interval())
                                     : 0;
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<DiscrepancyRow> discrepancy_sweep(const PlanarCurve& curve,
                                              const std::vector<long long>& Q_list) {
    for (size_t i = 1; i < Q_list.size(); ++i)
        if (Q_list[i] <= Q_list[i - 1])
            throw DomainError("Q_list must be strictly ascending");
    std::vector<DiscrepancyRow> rows;
    rows.reserve(Q_list.size());
    for (long long Q : Q_list) {
        SequenceSample s = curve_sequence(curve, Q);
        DiscrepancyRow row;
        row.Q = Q;
        row.N = s.n();
        row.D_surrogate = 2.0 * star_discrepancy(s);
        row.D_over_N34 =
            row.D_surrogate / std::pow(static_cast<double>(row.N), 0.75);
        rows.push_back(row);
    }
    return rows;
}

std::vector<SpErrorRow> sp_error_sweep(const PlanarCurve& curve,
                                       const std::vector<long long>& lambda_list) {
    Range J = curve.deriv_range();
    long long j = std::llround((J.lo + J.hi) / 2.0);
    if (!(J.lo < static_cast<double>(j) && static_cast<double>(j) < J.hi)) {
        bool found = false;
        for (long long off : {1LL, -1LL, 2LL, -2LL}) {
            double cand = static_cast<double>(j + off);
            if (J.lo < cand && cand < J.hi) {
                j += off;
                found = true;
                break;
            }
        }
        if (!found)
            throw DomainError("sp_error_sweep: no integer j interior to the "
                              "derivative range J (interval too narrow)");
    }

    std::vector<SpErrorRow> rows;
    rows.reserve(lambda_list.size());
    for (long long lam : lambda_list) {
        if (lam < 1) throw DomainError("lambda must be >= 1");
        SpErrorRow row;
        row.lambda = lam;
        row.direct = oscillatory_integral(curve, 1, j, lam);
        StationaryPhaseResult sp = stationary_phase(curve, 1, j, lam);
        row.stationary = sp.value;
        row.abs_diff = std::abs(row.direct - row.stationary);
        row.budget = sp.error_budget;
        rows.push_back(row);
    }
    return rows;
}

std::complex<double> fresnel_quarter(double T0, int M) {
    if (!(T0 > 0) || M < 1) throw DomainError("need T0 > 0 and M >= 1");
    std::complex<long double> acc = 0;
    for (int m = 0; m < M; ++m) {
        long double T = std::sqrt(static_cast<long double>(T0) * T0 +
                                  static_cast<long double>(m) / M);
        double units = static_cast<double>(T * T); // total phase variation on [0,T]
        std::complex<double> part = oscillatory_quadrature(
            [](long double t) { return t * t; }, 0.0, static_cast<double>(T), units);
        acc += std::complex<long double>(part);
    }
    acc /= static_cast<long double>(M);
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

} // namespace nearcurve
