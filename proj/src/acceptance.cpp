#include "nearcurve/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>

#include "nearcurve/counting.hpp"
#include "nearcurve/dual.hpp"
#include "nearcurve/errors.hpp"
#include "nearcurve/experiments.hpp"
#include "nearcurve/harmonic.hpp"
#include "nearcurve/io.hpp"
#include "nearcurve/parallel.hpp"
#include "nearcurve/rng.hpp"

namespace nearcurve {

namespace {

std::string g6(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

PlanarCurve parabola12() {
    return make_curve(CurveFamily::parabola, std::vector<Rat>{Rat(1), Rat(0), Rat(0)},
                      Interval(Rat(1), Rat(2)));
}

// Instance pool for the identity check: every built-in family, both signs of
// f'', rational coefficients with small denominators, exact and float paths.
std::vector<PlanarCurve> instance_pool() {
    Interval i01(Rat(0), Rat(1)), i12(Rat(1), Rat(2)), i11(Rat(-1), Rat(1));
    std::vector<PlanarCurve> p;
    p.push_back(parabola12());
    p.push_back(make_curve(CurveFamily::parabola,
                           std::vector<Rat>{Rat(1, 2), Rat(1, 3), Rat(-1)}, i01));
    p.push_back(make_curve(CurveFamily::parabola,
                           std::vector<Rat>{Rat(-2), Rat(1), Rat(0)}, i01));
    p.push_back(make_curve(CurveFamily::parabola,
                           std::vector<Rat>{Rat(3), Rat(-1, 2), Rat(1, 7)}, i11));
    p.push_back(make_curve(CurveFamily::parabola,
                           std::vector<Rat>{Rat(5, 7), Rat(2, 5), Rat(3)}, i12));
    p.push_back(make_curve(CurveFamily::cubic,
                           std::vector<Rat>{Rat(1, 3), Rat(1), Rat(-1, 2), Rat(2, 5)},
                           i01));
    p.push_back(make_curve(CurveFamily::cubic,
                           std::vector<Rat>{Rat(1), Rat(0), Rat(0), Rat(0)}, i12));
    p.push_back(make_curve(CurveFamily::power, std::vector<Rat>{Rat(3)}, i12));
    p.push_back(make_curve(CurveFamily::circle_arc, std::vector<Rat>{Rat(2)}, i11));
    p.push_back(make_curve(CurveFamily::exponential, std::vector<Rat>{}, i01));
    p.push_back(make_curve(CurveFamily::logarithm, std::vector<Rat>{}, i12));
    p.push_back(make_curve(CurveFamily::power, std::vector<Rat>{Rat(5, 2)}, i12));
    return p;
}

struct MobiusRun {
    int instances = 0;
    int nonzero = 0;
    long long first_bad_q = 0;
    std::string first_bad_spec;
    std::string payload; // worker-count-independent serialization
};

MobiusRun run_mobius_instances(const AcceptanceOptions& o) {
    auto pool = instance_pool();
    MobiusRun r;
    r.instances = o.quick ? 15 : 50;
    const long long q_hi = o.quick ? 150 : 300;
    SplitMix64 rng(o.seed ^ 0xA11CE5ULL);
    for (int i = 0; i < r.instances; ++i) {
        const PlanarCurve& c = pool[static_cast<size_t>(rng.next() % pool.size())];
        long long Q = rng.range(20, q_hi);
        long long s = rng.range(3, 64);
        Rat delta(rng.range(1, s / 2), s);
        long long resid = mobius_residual(c, Q, delta);
        if (resid != 0 && r.nonzero++ == 0) {
            r.first_bad_q = Q;
            r.first_bad_spec = c.spec_string();
        }
        r.payload += c.spec_string() + "|" + std::to_string(Q) + "|" + delta.str() +
                     "|" + std::to_string(resid) + "\n";
    }
    return r;
}

CriterionResult c01_mobius(const AcceptanceOptions& o) {
    CriterionResult r;
    MobiusRun m = run_mobius_instances(o); // TieError propagates (ties must be 0)
    r.pass = m.nonzero == 0;
    r.detail = "instances=" + std::to_string(m.instances) +
               " nonzero_residuals=" + std::to_string(m.nonzero) + " ties=0";
    if (m.nonzero > 0)
        r.detail += " first_bad=" + m.first_bad_spec + " Q=" + std::to_string(m.first_bad_q);
    return r;
}

std::vector<SweepRow> convergence_sweep(CountMode mode, bool quick) {
    std::vector<long long> grid =
        quick ? std::vector<long long>{500, 1000}
              : std::vector<long long>{500, 1000, 2000, 4000};
    return asymptotic_sweep(parabola12(), mode, grid, DeltaRule::fixed(Rat(1, 5)));
}

// Shared by c02/c03: |count/(|I| d Q^2) - target| must be <= tol at the largest
// Q and strictly smaller there than at the smallest.
CriterionResult convergence_check(CountMode mode, double target, const char* label,
                                  const AcceptanceOptions& o) {
    CriterionResult r;
    auto rows = convergence_sweep(mode, o.quick);
    auto undivided = [](const SweepRow& row) {
        return static_cast<double>(row.count) /
               (row.delta * static_cast<double>(row.Q) * static_cast<double>(row.Q));
    };
    double first = std::fabs(undivided(rows.front()) - target);
    double last = std::fabs(undivided(rows.back()) - target);
    r.pass = last <= 0.10 && last < first;
    r.detail = std::string(label) + "=" + g6(target) + " |diff|@Q" +
               std::to_string(rows.back().Q) + "=" + g6(last) + " |diff|@Q" +
               std::to_string(rows.front().Q) + "=" + g6(first) + " tol=0.10";
    return r;
}

CriterionResult c02_reduced(const AcceptanceOptions& o) {
    return convergence_check(CountMode::reduced, 1.0 / zeta3(), "1/zeta3", o);
}

CriterionResult c03_raw(const AcceptanceOptions& o) {
    return convergence_check(CountMode::raw, 1.0, "target", o);
}

CriterionResult c04_sandwich(const AcceptanceOptions& o) {
    CriterionResult r;
    long long Q = o.quick ? 1000 : 4000;
    SandwichReport s = sandwich_report(parabola12(), Q, Rat(1, 5));
    double lo = s.lower_const - 0.05, hi = s.upper_const + 0.05;
    r.pass = s.observed_ratio >= lo && s.observed_ratio <= hi;
    r.detail = "observed=" + g6(s.observed_ratio) + " window=[" + g6(lo) + "," +
               g6(hi) + "] conjectured=" + g6(s.conjectured) + " (reported only)";
    return r;
}

CriterionResult c05_floor(const AcceptanceOptions& o) {
    CriterionResult r;
    std::vector<long long> Qs = o.quick ? std::vector<long long>{100, 1000}
                                        : std::vector<long long>{100, 1000, 10000};
    auto rows = floor_experiment(FloorKind::parabola, Qs, {Rat(1, 1000000000)});
    r.pass = true;
    for (const FloorRow& row : rows) {
        bool ok = row.count == row.on_curve_count &&
                  (row.Q != 100 || row.count == 33);
        if (!ok) r.pass = false;
        r.detail += "Q=" + std::to_string(row.Q) + ":" + std::to_string(row.count) +
                    (row.count == row.on_curve_count ? "=floor " : "!=floor ");
    }
    r.detail += "(expected 33 at Q=100)";
    return r;
}

CriterionResult c06_fermat(const AcceptanceOptions&) {
    CriterionResult r;
    PlanarCurve c = make_curve(CurveFamily::fermat3, std::vector<Rat>{},
                               Interval(Rat(1, 5), Rat(4, 5)));
    CountReport cr = count_points(c, 1000, Rat(1, 100000000), CountMode::reduced);
    r.pass = cr.count == 0 && cr.ties == 0;
    r.detail = "count=" + std::to_string(cr.count) +
               " ties=" + std::to_string(cr.ties) + " (both must be 0)";
    return r;
}

CriterionResult c07_dual(const AcceptanceOptions&) {
    CriterionResult r;
    Interval i01(Rat(0), Rat(1)), i12(Rat(1), Rat(2)), i11(Rat(-1), Rat(1));
    std::vector<PlanarCurve> fams;
    fams.push_back(parabola12());
    fams.push_back(make_curve(CurveFamily::power, std::vector<Rat>{Rat(3)}, i12));
    fams.push_back(make_curve(CurveFamily::circle_arc, std::vector<Rat>{Rat(2)}, i11));
    fams.push_back(make_curve(CurveFamily::exponential, std::vector<Rat>{}, i01));
    fams.push_back(make_curve(CurveFamily::logarithm, std::vector<Rat>{}, i12));
    fams.push_back(make_curve(
        CurveFamily::cubic, std::vector<Rat>{Rat(1, 3), Rat(1), Rat(-1, 2), Rat(2, 5)},
        i01));
    fams.push_back(make_curve(CurveFamily::fermat3, std::vector<Rat>{},
                              Interval(Rat(1, 5), Rat(4, 5))));

    double worst_resid = 0;
    double worst_band = 0; // most negative slack against the band check
    std::string bad;
    r.pass = true;
    for (const PlanarCurve& c : fams) {
        double resid = double_dual_residual(c);
        worst_resid = std::max(worst_resid, resid);
        if (!(resid < 1e-8)) {
            r.pass = false;
            bad += std::string(family_name(c.family())) + ":residual=" + g6(resid) + " ";
        }
        DualCurve dual = make_dual(c);
        Range J = dual.domain();
        for (int i = 0; i < 1000; ++i) {
            double y = J.lo + (i + 0.5) * (J.hi - J.lo) / 1000.0;
            double d2 = std::fabs(dual.eval(y).fstar_d2);
            double slack =
                std::min(d2 - (1.0 / c.c2() - 1e-9), (1.0 / c.c1() + 1e-9) - d2);
            worst_band = std::min(worst_band, slack);
            if (slack < 0) {
                r.pass = false;
                bad += std::string(family_name(c.family())) + ":band@y=" + g6(y) + " ";
                break;
            }
        }
    }
    r.detail = "families=7 max_residual=" + g6(worst_resid) +
               " (tol 1e-8) band_slack_min=" + g6(worst_band) + " " + bad;
    return r;
}

CriterionResult c08_stationary(const AcceptanceOptions& o) {
    CriterionResult r;
    PlanarCurve c = make_curve(CurveFamily::parabola,
                               std::vector<Rat>{Rat(1, 2), Rat(0), Rat(0)},
                               Interval(Rat(-1), Rat(1)));
    std::vector<long long> lambdas =
        o.quick ? std::vector<long long>{100, 1000, 10000}
                : std::vector<long long>{100, 1000, 10000, 100000};
    auto rows = sp_error_sweep(c, lambdas);

    std::vector<double> xs, ys;
    for (const auto& row : rows) {
        xs.push_back(static_cast<double>(row.lambda));
        ys.push_back(row.abs_diff);
    }
    FitResult fit = loglog_fit(xs, ys);

    // Closed form at lambda = 100: the phase is critical at x0 = 0 with value 0,
    // so the integral is e(1/8)/sqrt(lambda) up to the budgeted error.
    const double pi4 = 0.78539816339744830962;
    std::complex<double> closed(std::cos(pi4) / 10.0, std::sin(pi4) / 10.0);
    double gap100 = std::abs(rows.front().direct - closed);

    r.pass = fit.slope >= -1.25 && fit.slope <= -0.75 && gap100 <= 0.02;
    r.detail = "slope=" + g6(fit.slope) + " (window [-1.25,-0.75]) |direct-closed|@100=" +
               g6(gap100) + " (tol 0.02)";
    return r;
}

CriterionResult c09_erdos_turan(const AcceptanceOptions& o) {
    CriterionResult r;
    std::vector<SequenceSample> samples;
    samples.push_back(curve_sequence(parabola12(), 200));
    samples.push_back(sqrt2_sequence(10000));
    std::vector<long long> Ks = o.quick ? std::vector<long long>{10, 100}
                                        : std::vector<long long>{10, 100, 1000};
    const int n_pairs = o.quick ? 25 : 100;

    long long checks = 0, violations = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (const SequenceSample& s : samples) {
        auto weyl = weyl_magnitudes(s, Ks.back());
        SplitMix64 rng(o.seed ^ 0xE7B0D1ULL);
        for (int p = 0; p < n_pairs; ++p) {
            double alpha = rng.unit() - 0.5;
            double beta = alpha + 0.01 + 0.98 * rng.unit();
            double D = std::fabs(discrepancy(s, alpha, beta));
            for (long long K : Ks) {
                double bound = erdos_turan_bound(weyl, s.n(), K, alpha, beta);
                ++checks;
                if (D > bound) ++violations;
                min_margin = std::min(min_margin, bound - D);
            }
        }
    }
    r.pass = violations == 0;
    r.detail = "checks=" + std::to_string(checks) +
               " violations=" + std::to_string(violations) +
               " min_margin=" + g6(min_margin);
    return r;
}

CriterionResult c10_poisson(const AcceptanceOptions& o) {
    CriterionResult r;
    PlanarCurve c = parabola12();
    const double jlen = c.deriv_range().length();
    const long long k_hi = o.quick ? 5 : 10, q_hi = o.quick ? 20 : 50;
    double worst = 0;
    long long wk = 0, wq = 0;
    for (long long k = 1; k <= k_hi; ++k) {
        for (long long q = 1; q <= q_hi; ++q) {
            std::complex<double> s = exp_sum(c, k, q);
            std::complex<double> p = poisson_expansion(c, k, q);
            double ratio = std::abs(s - p) / std::log(2.0 + static_cast<double>(k) * jlen);
            if (ratio > worst) {
                worst = ratio;
                wk = k;
                wq = q;
            }
        }
    }
    // Pinned regression constant: first full build measured max ratio 0.757 at
    // (k,q) = (1,1); the gate is set at 2.0 (initial provisional gate was 10).
    r.pass = worst <= 2.0;
    r.detail = "max|sum-expansion|/log(2+k|J|)=" + g6(worst) + " at k=" +
               std::to_string(wk) + ",q=" + std::to_string(wq) + " (gate 2.0)";
    return r;
}

CriterionResult c11_discrepancy(const AcceptanceOptions& o) {
    CriterionResult r;
    std::vector<long long> Qs = o.quick ? std::vector<long long>{200, 400, 800}
                                        : std::vector<long long>{200, 400, 800, 1600, 3200};
    auto rows = discrepancy_sweep(parabola12(), Qs);
    std::vector<double> xs, ys;
    for (const auto& row : rows) {
        xs.push_back(static_cast<double>(row.N));
        ys.push_back(row.D_surrogate);
    }
    FitResult fit = loglog_fit(xs, ys);
    r.pass = fit.slope <= 0.8;
    r.detail = "slope=" + g6(fit.slope) + " (gate 0.8) N_max=" +
               std::to_string(rows.back().N) + " D_max=" + g6(rows.back().D_surrogate);
    return r;
}

CriterionResult c12_fresnel(const AcceptanceOptions&) {
    CriterionResult r;
    std::complex<double> v = fresnel_quarter();
    double err = std::abs(v - std::complex<double>(0.25, 0.25));
    r.pass = err <= 1e-3;
    r.detail = "value=(" + g6(v.real()) + "," + g6(v.imag()) + ") |err|=" + g6(err) +
               " (tol 1e-3)";
    return r;
}

std::string sweep_payload(const std::vector<SweepRow>& rows) {
    std::string s;
    for (const SweepRow& r : rows) // wall_ms deliberately excluded
        s += std::to_string(r.Q) + "," + fmt_double(r.delta) + "," +
             std::to_string(r.count) + "," + fmt_double(r.main_term) + "," +
             fmt_double(r.ratio) + "," + fmt_double(r.abs_error) + "\n";
    return s;
}

std::string determinism_payload(const AcceptanceOptions& o) {
    return run_mobius_instances(o).payload +
           sweep_payload(convergence_sweep(CountMode::reduced, o.quick)) +
           sweep_payload(convergence_sweep(CountMode::raw, o.quick));
}

CriterionResult c13_determinism(const AcceptanceOptions& o) {
    CriterionResult r;
    int before = exec::threads();
    std::string p1, p8;
    try {
        exec::set_threads(1);
        p1 = determinism_payload(o);
        exec::set_threads(8);
        p8 = determinism_payload(o);
    } catch (...) {
        exec::set_threads(before);
        throw;
    }
    exec::set_threads(before);
    r.pass = p1 == p8;
    r.detail = "payload_bytes=" + std::to_string(p1.size()) +
               (r.pass ? " identical at 1 and 8 workers" : " DIFFER between 1 and 8 workers");
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
    struct Entry {
        const char* name;
        CriterionResult (*fn)(const AcceptanceOptions&);
        double limit_ms; // 0 = no stated runtime budget
    };
    static const Entry entries[] = {
        {"c01-mobius", c01_mobius, 30000},
        {"c02-reduced-constant", c02_reduced, 120000},
        {"c03-raw-constant", c03_raw, 120000},
        {"c04-sandwich", c04_sandwich, 0},
        {"c05-floor-parabola", c05_floor, 0},
        {"c06-floor-fermat", c06_fermat, 0},
        {"c07-dual-involution", c07_dual, 0},
        {"c08-stationary-phase", c08_stationary, 60000},
        {"c09-erdos-turan", c09_erdos_turan, 0},
        {"c10-poisson", c10_poisson, 0},
        {"c11-discrepancy", c11_discrepancy, 0},
        {"c12-fresnel", c12_fresnel, 0},
        {"c13-determinism", c13_determinism, 0},
    };

    std::vector<CriterionResult> out;
    for (const Entry& e : entries) {
        if (!opts.only.empty() &&
            std::string(e.name).find(opts.only) == std::string::npos)
            continue;
        CriterionResult r;
        auto t0 = std::chrono::steady_clock::now();
        try {
            r = e.fn(opts);
        } catch (const std::exception& ex) {
            r.pass = false;
            r.detail = std::string("exception: ") + ex.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        r.name = e.name;
        r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (e.limit_ms > 0 && r.wall_ms > e.limit_ms) {
            r.pass = false;
            r.detail += " [runtime " + g6(r.wall_ms) + " ms exceeds budget " +
                        g6(e.limit_ms) + " ms]";
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace nearcurve
