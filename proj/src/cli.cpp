#include "nearcurve/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "nearcurve/acceptance.hpp"
#include "nearcurve/counting.hpp"
#include "nearcurve/dual.hpp"
#include "nearcurve/errors.hpp"
#include "nearcurve/experiments.hpp"
#include "nearcurve/harmonic.hpp"
#include "nearcurve/io.hpp"
#include "nearcurve/parallel.hpp"
#include "nearcurve/version.hpp"

namespace nearcurve {

namespace {

using json = nlohmann::ordered_json;

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

Interval parse_interval(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == s.size())
        throw DomainError("interval must be given as 'lo,hi'");
    return Interval(Rat::parse(s.substr(0, comma)), Rat::parse(s.substr(comma + 1)));
}

std::vector<long long> parse_int_list(const std::string& s, const char* flag) {
    std::vector<long long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Rat r = Rat::parse(item);
        if (!r.is_integer())
            throw DomainError(std::string(flag) + ": '" + item + "' is not an integer");
        out.push_back(static_cast<long long>(r.num()));
    }
    if (out.empty()) throw DomainError(std::string(flag) + ": empty list");
    return out;
}

std::vector<Rat> parse_rat_list(const std::string& s, const char* flag) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(Rat::parse(item));
    if (out.empty()) throw DomainError(std::string(flag) + ": empty list");
    return out;
}

std::string interval_str(const Interval& iv) {
    return iv.rlo().str() + "," + iv.rhi().str();
}

CountMode parse_mode(const std::string& m) {
    if (m == "raw") return CountMode::raw;
    if (m == "reduced") return CountMode::reduced;
    if (m == "tilde") return CountMode::tilde;
    throw DomainError("mode must be raw, reduced, or tilde");
}

// Canonical config string: rebuilt from parsed values so it round-trips.
struct ConfigStr {
    std::string s;
    explicit ConfigStr(const std::string& cmd) : s(cmd) {}
    ConfigStr& kv(const std::string& flag, const std::string& v) {
        s += " --" + flag + " " + v;
        return *this;
    }
    ConfigStr& flag(const std::string& f, bool on) {
        if (on) s += " --" + f;
        return *this;
    }
};

void emit(const json& record, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << record.dump() << "\n";
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw DomainError("cannot open output file '" + out_path + "'");
        f << record.dump() << "\n";
    }
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw DomainError("cannot open output file '" + out_path + "'");
        f << text;
    }
}

// Shared state for all subcommands.
struct Args {
    // global
    std::uint64_t seed = 2026;
    int threads = 0;
    std::string out;
    // curve/interval
    std::string curve_spec;
    std::string interval;
    // count
    long long Q = 0;
    std::string delta;
    std::string mode = "reduced";
    bool exact = false;
    long long list_n = 0;
    // dual
    std::vector<double> ys;
    long long grid = 1000;
    // oscint / expsum
    long long k = 1, j = 0, q = 1;
    std::string method = "both";
    bool poisson = false;
    // sequences
    std::string source = "curve";
    long long N = 10000;
    long long K = 100;
    double alpha = 0.0, beta = 0.5;
    // sweep
    std::string experiment;
    std::string q_list, delta_list, lambda_list;
    double delta_p = 0.0;
    bool has_delta_p = false;
    std::string plot;
    // verify
    bool quick = false;
    std::string only;
};

json base_record(const char* tool, const std::string& config, const Args& a) {
    json r;
    r["tool"] = tool;
    r["version"] = kVersion;
    r["config"] = config;
    r["seed"] = a.seed;
    r["threads"] = a.threads;
    return r;
}

// ---- subcommand bodies -------------------------------------------------------

int do_count(const Args& a) {
    Interval iv = parse_interval(a.interval);
    PlanarCurve curve = parse_curve_spec(a.curve_spec, iv);
    Rat delta = Rat::parse(a.delta);
    CountMode mode = parse_mode(a.mode);

    std::string config =
        ConfigStr("count")
            .kv("curve", curve.spec_string())
            .kv("interval", interval_str(iv))
            .kv("Q", std::to_string(a.Q))
            .kv("delta", delta.str())
            .kv("mode", a.mode)
            .flag("exact", a.exact)
            .kv("seed", std::to_string(a.seed))
            .kv("threads", std::to_string(a.threads))
            .s;

    Clock clock;
    CountReport rep = count_points(curve, a.Q, delta, mode, a.exact);
    json r = base_record("count", config, a);
    r["mode"] = a.mode;
    r["Q"] = rep.Q;
    r["delta"] = delta.str();
    r["exact_path"] = rep.exact_path;
    r["count"] = rep.count;
    r["main_term"] = rep.main_term;
    r["ratio"] = rep.ratio;
    if (a.list_n > 0) {
        json pts = json::array();
        for (const RationalPoint& p : near_points_list(curve, a.Q, delta, a.list_n)) {
            json e;
            e["a"] = p.a;
            e["b"] = p.b;
            e["q"] = p.q;
            e["distance"] = p.distance;
            pts.push_back(e);
        }
        r["points"] = pts;
    }
    r["ties"] = rep.ties;
    r["wall_ms"] = clock.ms();
    emit(r, a.out);
    return 0;
}

int do_dual(const Args& a) {
    Interval iv = parse_interval(a.interval);
    PlanarCurve curve = parse_curve_spec(a.curve_spec, iv);

    ConfigStr cfg("dual");
    cfg.kv("curve", curve.spec_string()).kv("interval", interval_str(iv));
    for (double y : a.ys) cfg.kv("y", fmt_double(y));
    cfg.kv("grid", std::to_string(a.grid))
        .kv("seed", std::to_string(a.seed))
        .kv("threads", std::to_string(a.threads));

    Clock clock;
    DualCurve dual = make_dual(curve);
    Range dom = dual.domain();
    double resid = double_dual_residual(curve, static_cast<int>(a.grid));

    json r = base_record("dual", cfg.s, a);
    r["domain"] = {dom.lo, dom.hi};
    r["curvature_band"] = {1.0 / curve.c2(), 1.0 / curve.c1()};
    if (!a.ys.empty()) {
        json evals = json::array();
        for (double y : a.ys) {
            DualEval e = dual.eval(y);
            json one;
            one["y"] = y;
            one["fstar"] = e.fstar;
            one["fstar_d1"] = e.fstar_d1;
            one["fstar_d2"] = e.fstar_d2;
            evals.push_back(one);
        }
        r["evals"] = evals;
    }
    r["double_dual_residual"] = resid;
    r["ties"] = 0;
    r["wall_ms"] = clock.ms();
    emit(r, a.out);
    return 0;
}

int do_oscint(const Args& a) {
    Interval iv = parse_interval(a.interval);
    PlanarCurve curve = parse_curve_spec(a.curve_spec, iv);
    if (a.method != "direct" && a.method != "stationary" && a.method != "both")
        throw DomainError("method must be direct, stationary, or both");

    std::string config = ConfigStr("oscint")
                             .kv("curve", curve.spec_string())
                             .kv("interval", interval_str(iv))
                             .kv("k", std::to_string(a.k))
                             .kv("j", std::to_string(a.j))
                             .kv("q", std::to_string(a.q))
                             .kv("method", a.method)
                             .kv("seed", std::to_string(a.seed))
                             .kv("threads", std::to_string(a.threads))
                             .s;

    Clock clock;
    json r = base_record("oscint", config, a);
    r["k"] = a.k;
    r["j"] = a.j;
    r["q"] = a.q;
    std::complex<double> direct, sp;
    if (a.method != "stationary") {
        direct = oscillatory_integral(curve, a.k, a.j, a.q);
        r["direct_re"] = direct.real();
        r["direct_im"] = direct.imag();
    }
    if (a.method != "direct") {
        StationaryPhaseResult s = stationary_phase(curve, a.k, a.j, a.q);
        sp = s.value;
        r["sp_re"] = sp.real();
        r["sp_im"] = sp.imag();
        r["x0"] = s.x0;
        r["kappa"] = s.kappa;
        r["budget"] = s.error_budget;
    }
    if (a.method == "both") r["abs_diff"] = std::abs(direct - sp);
    r["ties"] = 0;
    r["wall_ms"] = clock.ms();
    emit(r, a.out);
    return 0;
}

int do_expsum(const Args& a) {
    Interval iv = parse_interval(a.interval);
    PlanarCurve curve = parse_curve_spec(a.curve_spec, iv);

    std::string config = ConfigStr("expsum")
                             .kv("curve", curve.spec_string())
                             .kv("interval", interval_str(iv))
                             .kv("k", std::to_string(a.k))
                             .kv("q", std::to_string(a.q))
                             .flag("poisson", a.poisson)
                             .kv("seed", std::to_string(a.seed))
                             .kv("threads", std::to_string(a.threads))
                             .s;

    Clock clock;
    std::complex<double> s = exp_sum(curve, a.k, a.q);
    json r = base_record("expsum", config, a);
    r["k"] = a.k;
    r["q"] = a.q;
    r["terms"] = iv.a_range(a.q).count();
    r["sum_re"] = s.real();
    r["sum_im"] = s.imag();
    r["abs"] = std::abs(s);
    if (a.poisson) {
        JRange jr = poisson_j_range(curve, a.k);
        std::complex<double> p = poisson_expansion(curve, a.k, a.q);
        r["j_first"] = jr.first;
        r["j_last"] = jr.last;
        r["poisson_re"] = p.real();
        r["poisson_im"] = p.imag();
        r["abs_diff"] = std::abs(s - p);
    }
    r["ties"] = 0;
    r["wall_ms"] = clock.ms();
    emit(r, a.out);
    return 0;
}

SequenceSample make_sample(const Args& a, std::string* config_part) {
    if (a.source == "sqrt2") {
        *config_part = " --source sqrt2 --N " + std::to_string(a.N);
        return sqrt2_sequence(a.N);
    }
    if (a.source != "curve") throw DomainError("source must be curve or sqrt2");
    Interval iv = parse_interval(a.interval);
    PlanarCurve curve = parse_curve_spec(a.curve_spec, iv);
    *config_part = " --source curve --curve " + curve.spec_string() + " --interval " +
                   interval_str(iv) + " --Q " + std::to_string(a.Q);
    return curve_sequence(curve, a.Q);
}

int do_et_bound(const Args& a) {
    std::string part;
    Clock clock;
    SequenceSample sample = make_sample(a, &part);
    std::string config = "et-bound" + part + " --K " + std::to_string(a.K) +
                         " --alpha " + fmt_double(a.alpha) + " --beta " +
                         fmt_double(a.beta) + " --seed " + std::to_string(a.seed) +
                         " --threads " + std::to_string(a.threads);

    double D = discrepancy(sample, a.alpha, a.beta);
    double bound = erdos_turan_bound(sample, a.K, a.alpha, a.beta);
    json r = base_record("et-bound", config, a);
    r["source"] = sample.source;
    r["N"] = sample.n();
    r["K"] = a.K;
    r["alpha"] = a.alpha;
    r["beta"] = a.beta;
    r["discrepancy"] = D;
    r["bound"] = bound;
    r["dominated"] = std::fabs(D) <= bound;
    r["ties"] = 0;
    r["wall_ms"] = clock.ms();
    emit(r, a.out);
    return 0;
}

int do_discrepancy(const Args& a) {
    std::string part;
    Clock clock;
    SequenceSample sample = make_sample(a, &part);
    std::string config = "discrepancy" + part + " --seed " + std::to_string(a.seed) +
                         " --threads " + std::to_string(a.threads);

    double star = star_discrepancy(sample);
    json r = base_record("discrepancy", config, a);
    r["source"] = sample.source;
    r["N"] = sample.n();
    r["star"] = star;             // N * D*(N)
    r["D_surrogate"] = 2.0 * star;
    r["ties"] = 0;
    r["wall_ms"] = clock.ms();
    emit(r, a.out);
    return 0;
}

int do_sweep(const Args& a) {
    std::ostringstream csv;
    std::vector<PlotSeries> series;
    std::string x_label, y_label, title;

    if (a.experiment == "asymptotic") {
        Interval iv = parse_interval(a.interval);
        PlanarCurve curve = parse_curve_spec(a.curve_spec, iv);
        CountMode mode = parse_mode(a.mode);
        auto Qs = parse_int_list(a.q_list, "--Q-list");
        DeltaRule rule = a.has_delta_p ? DeltaRule::power(a.delta_p)
                                       : DeltaRule::fixed(Rat::parse(a.delta));
        auto rows = asymptotic_sweep(curve, mode, Qs, rule);
        write_asymptotic_csv(rows, mode, csv);
        PlotSeries s{"abs_error", {}};
        for (const auto& r : rows)
            s.points.emplace_back(static_cast<double>(r.Q), r.abs_error);
        series.push_back(std::move(s));
        title = "count error vs Q (" + std::string(count_mode_name(mode)) + ")";
        x_label = "Q";
        y_label = "|count - main term|";
    } else if (a.experiment == "sandwich") {
        Interval iv = parse_interval(a.interval);
        PlanarCurve curve = parse_curve_spec(a.curve_spec, iv);
        auto Qs = parse_int_list(a.q_list, "--Q-list");
        Rat delta = Rat::parse(a.delta);
        std::vector<SandwichRow> rows;
        for (long long Q : Qs)
            rows.push_back({Q, delta.to_double(), sandwich_report(curve, Q, delta)});
        write_sandwich_csv(rows, csv);
        PlotSeries s{"observed_ratio", {}};
        for (const auto& r : rows)
            s.points.emplace_back(static_cast<double>(r.Q), r.report.observed_ratio);
        series.push_back(std::move(s));
        title = "threshold-normalized count ratio vs Q";
        x_label = "Q";
        y_label = "ratio";
    } else if (a.experiment == "floor") {
        FloorKind kind;
        std::string fam = a.curve_spec.substr(0, a.curve_spec.find(':'));
        if (fam == "parabola") kind = FloorKind::parabola;
        else if (fam == "fermat3") kind = FloorKind::fermat3;
        else throw DomainError("floor experiment curve must be parabola or fermat3");
        auto Qs = parse_int_list(a.q_list, "--Q-list");
        auto deltas = parse_rat_list(a.delta_list, "--delta-list");
        auto rows = floor_experiment(kind, Qs, deltas);
        write_floor_csv(rows, csv);
        PlotSeries s{"count", {}};
        for (const auto& r : rows)
            s.points.emplace_back(static_cast<double>(r.Q),
                                  static_cast<double>(r.count));
        series.push_back(std::move(s));
        title = "near-count floor vs Q (" + fam + ")";
        x_label = "Q";
        y_label = "count";
    } else if (a.experiment == "discrepancy") {
        Interval iv = parse_interval(a.interval);
        PlanarCurve curve = parse_curve_spec(a.curve_spec, iv);
        auto Qs = parse_int_list(a.q_list, "--Q-list");
        auto rows = discrepancy_sweep(curve, Qs);
        write_discrepancy_csv(rows, csv);
        PlotSeries s{"D_surrogate", {}};
        for (const auto& r : rows)
            s.points.emplace_back(static_cast<double>(r.N), r.D_surrogate);
        series.push_back(std::move(s));
        title = "discrepancy surrogate vs N";
        x_label = "N";
        y_label = "2 N D*(N)";
    } else if (a.experiment == "sp-error") {
        Interval iv = parse_interval(a.interval);
        PlanarCurve curve = parse_curve_spec(a.curve_spec, iv);
        auto lambdas = parse_int_list(a.lambda_list, "--lambda-list");
        auto rows = sp_error_sweep(curve, lambdas);
        write_sp_error_csv(rows, csv);
        PlotSeries sd{"abs_diff", {}}, sb{"budget", {}};
        for (const auto& r : rows) {
            sd.points.emplace_back(static_cast<double>(r.lambda), r.abs_diff);
            sb.points.emplace_back(static_cast<double>(r.lambda), r.budget);
        }
        series.push_back(std::move(sd));
        series.push_back(std::move(sb));
        title = "stationary-phase error vs lambda";
        x_label = "lambda";
        y_label = "error";
    } else {
        throw DomainError("experiment must be one of asymptotic, sandwich, floor, "
                          "discrepancy, sp-error");
    }

    emit_text(csv.str(), a.out);
    if (!a.plot.empty()) {
        std::ofstream f(a.plot, std::ios::binary);
        if (!f) throw DomainError("cannot open plot file '" + a.plot + "'");
        f << svg_loglog_plot(series, title, x_label, y_label);
    }
    return 0;
}

int do_verify(const Args& a) {
    AcceptanceOptions opts;
    opts.quick = a.quick;
    opts.only = a.only;
    opts.seed = a.seed;
    auto results = run_acceptance(opts);
    if (results.empty())
        throw DomainError("no criterion matches --only filter '" + a.only + "'");
    std::ostringstream out;
    for (const CriterionResult& r : results) {
        json line;
        line["criterion"] = r.name;
        line["pass"] = r.pass;
        line["detail"] = r.detail;
        line["wall_ms"] = r.wall_ms;
        out << line.dump() << "\n";
    }
    emit_text(out.str(), a.out);
    int failed = 0;
    for (const CriterionResult& r : results)
        if (!r.pass) ++failed;
    if (failed > 0) {
        std::cerr << "verify: " << failed << "/" << results.size()
                  << " criteria failed\n";
        return 1;
    }
    std::cerr << "verify: " << results.size() << "/" << results.size()
              << " criteria passed\n";
    return 0;
}

} // namespace

int run_cli(int argc, char** argv) {
    Args a;
    CLI::App app{"exact counting of rational points near curvature-banded planar "
                 "curves, with the harmonic-analysis toolkit behind the counts"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", a.seed, "seed for generated instances")
        ->capture_default_str();
    app.add_option("--threads", a.threads, "worker threads (0 = auto)")
        ->capture_default_str();
    app.add_option("--out", a.out, "write the record/CSV here instead of stdout");

    auto add_curve = [&](CLI::App* c, bool required = true) {
        auto* o1 = c->add_option("--curve", a.curve_spec,
                                 "curve spec, e.g. parabola:a=1,b=0,c=0");
        auto* o2 = c->add_option("--interval", a.interval, "interval 'lo,hi'");
        if (required) {
            o1->required();
            o2->required();
        }
    };

    CLI::App* count = app.add_subcommand("count", "count rational near-points");
    add_curve(count);
    count->add_option("--Q", a.Q, "denominator bound")->required();
    count->add_option("--delta", a.delta, "distance threshold (decimal or p/q)")
        ->required();
    count->add_option("--mode", a.mode, "raw | reduced | tilde")
        ->capture_default_str();
    count->add_flag("--exact", a.exact, "demand the exact-integer path");
    count->add_option("--list", a.list_n, "also list the first N near-points");

    CLI::App* dual = app.add_subcommand("dual", "Legendre dual curve");
    add_curve(dual);
    dual->add_option("--y", a.ys, "evaluate the dual at y (repeatable)");
    dual->add_option("--grid", a.grid, "grid size for the involution residual")
        ->capture_default_str();

    CLI::App* oscint = app.add_subcommand("oscint", "oscillatory integral");
    add_curve(oscint);
    oscint->add_option("--k", a.k, "frequency index k >= 1")->required();
    oscint->add_option("--j", a.j, "linear twist j")->required();
    oscint->add_option("--q", a.q, "denominator scale q >= 1")->required();
    oscint->add_option("--method", a.method, "direct | stationary | both")
        ->capture_default_str();

    CLI::App* expsum = app.add_subcommand("expsum", "exponential sum over a/q");
    add_curve(expsum);
    expsum->add_option("--k", a.k, "frequency index k >= 1")->required();
    expsum->add_option("--q", a.q, "denominator q >= 1")->required();
    expsum->add_flag("--poisson", a.poisson,
                     "also evaluate the truncated integral expansion");

    CLI::App* et = app.add_subcommand("et-bound", "discrepancy vs Weyl-sum bound");
    add_curve(et, false);
    et->add_option("--source", a.source, "curve | sqrt2")->capture_default_str();
    et->add_option("--Q", a.Q, "denominator bound (curve source)");
    et->add_option("--N", a.N, "length (sqrt2 source)")->capture_default_str();
    et->add_option("--K", a.K, "Weyl-sum truncation")->capture_default_str();
    et->add_option("--alpha", a.alpha, "window start")->capture_default_str();
    et->add_option("--beta", a.beta, "window end")->capture_default_str();

    CLI::App* disc = app.add_subcommand("discrepancy", "star discrepancy of a sample");
    add_curve(disc, false);
    disc->add_option("--source", a.source, "curve | sqrt2")->capture_default_str();
    disc->add_option("--Q", a.Q, "denominator bound (curve source)");
    disc->add_option("--N", a.N, "length (sqrt2 source)")->capture_default_str();

    CLI::App* sweep = app.add_subcommand("sweep", "experiment grids emitting CSV");
    add_curve(sweep, false);
    sweep
        ->add_option("--experiment", a.experiment,
                     "asymptotic | sandwich | floor | discrepancy | sp-error")
        ->required();
    sweep->add_option("--mode", a.mode, "count mode (asymptotic)")
        ->capture_default_str();
    sweep->add_option("--Q-list", a.q_list, "comma-separated Q grid");
    sweep->add_option("--delta", a.delta, "fixed delta (decimal or p/q)");
    auto* dp = sweep->add_option("--delta-p", a.delta_p,
                                 "power rule delta = Q^p (overrides --delta)");
    sweep->add_option("--delta-list", a.delta_list, "comma-separated deltas (floor)");
    sweep->add_option("--lambda-list", a.lambda_list,
                      "comma-separated lambda grid (sp-error)");
    sweep->add_option("--plot", a.plot, "also write a log-log SVG chart here");

    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_flag("--quick", a.quick, "trimmed grids, < 60 s");
    verify->add_option("--only", a.only, "run only criteria whose name contains this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems exit 2; --help exits 0
    }

    a.has_delta_p = dp->count() > 0;

    try {
        exec::set_threads(a.threads);
        if (count->parsed()) return do_count(a);
        if (dual->parsed()) return do_dual(a);
        if (oscint->parsed()) return do_oscint(a);
        if (expsum->parsed()) return do_expsum(a);
        if (et->parsed()) return do_et_bound(a);
        if (disc->parsed()) return do_discrepancy(a);
        if (sweep->parsed()) return do_sweep(a);
        if (verify->parsed()) return do_verify(a);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const TieError& e) {
        std::cerr << "tie failure: " << e.what() << "\n";
        return 1;
    } catch (const ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace nearcurve
