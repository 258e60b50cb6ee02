#include "nearcurve/curve.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nearcurve/errors.hpp"

namespace nearcurve {

namespace {

// Triple Horner: value, first and second derivative of an ascending-coefficient
// polynomial in one pass (descending iteration; ddp uses old dp, dp uses old p).
struct Horner3 {
    long double p, dp, ddp;
};
Horner3 horner3(const std::vector<long double>& c, long double x) {
    long double p = 0, dp = 0, ddp = 0;
    for (size_t i = c.size(); i-- > 0;) {
        ddp = ddp * x + 2 * dp;
        dp = dp * x + p;
        p = p * x + c[i];
    }
    return {p, dp, ddp};
}

long double sq(long double x) { return x * x; }

} // namespace

const char* family_name(CurveFamily f) {
    switch (f) {
    case CurveFamily::parabola: return "parabola";
    case CurveFamily::power: return "power";
    case CurveFamily::circle_arc: return "circle-arc";
    case CurveFamily::exponential: return "exponential";
    case CurveFamily::logarithm: return "logarithm";
    case CurveFamily::cubic: return "cubic";
    case CurveFamily::fermat3: return "fermat3";
    }
    return "?";
}

std::vector<CurveFamily> builtin_families() {
    return {CurveFamily::parabola,    CurveFamily::power,     CurveFamily::circle_arc,
            CurveFamily::exponential, CurveFamily::logarithm, CurveFamily::cubic,
            CurveFamily::fermat3};
}

long double PlanarCurve::value(long double x) const {
    switch (family_) {
    case CurveFamily::parabola:
    case CurveFamily::cubic:
        return horner3(lp_, x).p;
    case CurveFamily::power:
        if (!poly_.empty()) return horner3(lp_, x).p;
        return std::pow(x, lp_[0]);
    case CurveFamily::circle_arc:
        return std::sqrt(lp_[1] - x * x);
    case CurveFamily::exponential:
        return std::exp(x);
    case CurveFamily::logarithm:
        return std::log(x);
    case CurveFamily::fermat3:
        return std::cbrt(1 - x * x * x);
    }
    return 0;
}

long double PlanarCurve::deriv(long double x) const {
    switch (family_) {
    case CurveFamily::parabola:
    case CurveFamily::cubic:
        return horner3(lp_, x).dp;
    case CurveFamily::power: {
        if (!poly_.empty()) return horner3(lp_, x).dp;
        long double a = lp_[0];
        return a * std::pow(x, a - 1);
    }
    case CurveFamily::circle_arc:
        return -x / std::sqrt(lp_[1] - x * x);
    case CurveFamily::exponential:
        return std::exp(x);
    case CurveFamily::logarithm:
        return 1 / x;
    case CurveFamily::fermat3: {
        long double c = std::cbrt(1 - x * x * x);
        return -x * x / (c * c);
    }
    }
    return 0;
}

long double PlanarCurve::second(long double x) const {
    switch (family_) {
    case CurveFamily::parabola:
    case CurveFamily::cubic:
        return horner3(lp_, x).ddp;
    case CurveFamily::power: {
        if (!poly_.empty()) return horner3(lp_, x).ddp;
        long double a = lp_[0];
        return a * (a - 1) * std::pow(x, a - 2);
    }
    case CurveFamily::circle_arc: {
        long double s = std::sqrt(lp_[1] - x * x);
        return -lp_[1] / (s * s * s);
    }
    case CurveFamily::exponential:
        return std::exp(x);
    case CurveFamily::logarithm:
        return -1 / (x * x);
    case CurveFamily::fermat3: {
        long double c = std::cbrt(1 - x * x * x);
        return -2 * x / (c * c * c * c * c);
    }
    }
    return 0;
}

Range PlanarCurve::deriv_range() const {
    double d0 = static_cast<double>(deriv(interval_.lo()));
    double d1 = static_cast<double>(deriv(interval_.hi()));
    return {std::min(d0, d1), std::max(d0, d1)};
}

Rat PlanarCurve::deriv_rat(const Rat& x) const {
    if (poly_.empty()) throw DomainError("deriv_rat requires an exact-capable curve");
    Rat acc(0);
    for (size_t i = poly_.size(); i-- > 1;) {
        acc = acc * x + Rat(static_cast<long long>(i)) * poly_[i];
    }
    return acc;
}

std::string PlanarCurve::spec_string() const {
    std::string s = family_name(family_);
    const char* keys2[] = {"a", "b", "c"};
    const char* keys4[] = {"c3", "c2", "c1", "c0"};
    switch (family_) {
    case CurveFamily::parabola:
        for (int i = 0; i < 3; ++i)
            s += std::string(i ? "," : ":") + keys2[i] + "=" + params_[i].str();
        break;
    case CurveFamily::cubic:
        for (int i = 0; i < 4; ++i)
            s += std::string(i ? "," : ":") + keys4[i] + "=" + params_[i].str();
        break;
    case CurveFamily::power:
        s += ":alpha=" + params_[0].str();
        break;
    case CurveFamily::circle_arc:
        s += ":r=" + params_[0].str();
        break;
    default:
        break;
    }
    return s;
}

PlanarCurve make_curve(CurveFamily family, const std::vector<Rat>& params,
                       const Interval& interval, int sampling_n) {
    if (sampling_n < 64) throw DomainError("sampling_n must be >= 64");

    auto expect_params = [&](size_t n) {
        if (params.size() != n)
            throw DomainError(std::string(family_name(family)) + " expects " +
                              std::to_string(n) + " parameter(s), got " +
                              std::to_string(params.size()));
    };

    PlanarCurve c(family, params, interval);

    // Family-specific domain checks and exact/float evaluation setup.
    switch (family) {
    case CurveFamily::parabola: {
        expect_params(3);
        if (params[0].is_zero()) throw DomainError("parabola requires a != 0");
        c.poly_ = {params[2], params[1], params[0]};
        break;
    }
    case CurveFamily::cubic: {
        expect_params(4);
        c.poly_ = {params[3], params[2], params[1], params[0]};
        break;
    }
    case CurveFamily::power: {
        expect_params(1);
        const Rat& alpha = params[0];
        if (alpha == Rat(0) || alpha == Rat(1))
            throw DomainError("power requires alpha outside {0,1} (f'' vanishes)");
        if (alpha.is_integer() && alpha >= Rat(2) && alpha <= Rat(40)) {
            auto deg = static_cast<size_t>(static_cast<long long>(alpha.num()));
            c.poly_.assign(deg + 1, Rat(0));
            c.poly_[deg] = Rat(1);
        } else {
            if (!(interval.rlo() > Rat(0)))
                throw DomainError("power with non-integer alpha requires lo > 0");
            c.lp_ = {alpha.to_long_double()};
        }
        break;
    }
    case CurveFamily::circle_arc: {
        expect_params(1);
        const Rat& r = params[0];
        if (!(r > Rat(0))) throw DomainError("circle-arc requires r > 0");
        Rat guard = Rat(9, 10) * r;
        if (interval.rlo() < -guard || interval.rhi() > guard)
            throw DomainError("circle-arc requires |x| <= 0.9 r on the interval");
        long double lr = r.to_long_double();
        c.lp_ = {lr, lr * lr};
        break;
    }
    case CurveFamily::exponential:
        expect_params(0);
        break;
    case CurveFamily::logarithm:
        expect_params(0);
        if (!(interval.rlo() > Rat(0))) throw DomainError("logarithm requires lo > 0");
        break;
    case CurveFamily::fermat3:
        expect_params(0);
        if (!(interval.rhi() < Rat(1))) throw DomainError("fermat3 requires hi < 1");
        break;
    }
    if (!c.poly_.empty()) {
        c.lp_.clear();
        for (const Rat& r : c.poly_) c.lp_.push_back(r.to_long_double());
    }

    // Sampled sign/degeneracy sweep over sampling_n+1 equispaced points. Also
    // collects the extrema and the max divided difference for the sampled band.
    const long double lo = interval.lo(), hi = interval.hi();
    const long double step = (hi - lo) / sampling_n;
    long double smin = 0, smax = 0, maxdd = 0, prev = 0;
    int sign = 0;
    for (int i = 0; i <= sampling_n; ++i) {
        long double x = (i == sampling_n) ? hi : lo + i * step;
        long double s = c.second(x);
        long double as = std::fabs(s);
        if (as < 1e-9L)
            throw DomainError(std::string(family_name(family)) +
                              ": curvature degenerate (|f''| < 1e-9 at a sample)");
        int sg = s > 0 ? 1 : -1;
        if (i == 0) {
            sign = sg;
            smin = smax = as;
        } else {
            if (sg != sign)
                throw DomainError(std::string(family_name(family)) +
                                  ": f'' changes sign on the interval");
            smin = std::min(smin, as);
            smax = std::max(smax, as);
            maxdd = std::max(maxdd, std::fabs(s - prev) / step);
        }
        prev = s;
    }
    c.sign_second_ = sign;

    // Curvature band: closed-form extrema of f'' (monotone or constant for every
    // family below), sampled band with a safety factor for fermat3.
    long double c1 = 0, c2 = 0, lip = 0;
    switch (family) {
    case CurveFamily::parabola:
        c1 = c2 = std::fabs(2 * c.lp_[2]);
        lip = 0;
        break;
    case CurveFamily::cubic: {
        long double e0 = std::fabs(c.second(lo)), e1 = std::fabs(c.second(hi));
        c1 = std::min(e0, e1);
        c2 = std::max(e0, e1);
        lip = std::fabs(6 * c.lp_[3]);
        break;
    }
    case CurveFamily::power: {
        long double a = c.poly_.empty() ? c.lp_[0]
                                        : static_cast<long double>(c.poly_.size() - 1);
        long double e0 = std::fabs(c.second(lo)), e1 = std::fabs(c.second(hi));
        c1 = std::min(e0, e1);
        c2 = std::max(e0, e1);
        long double t0 = std::fabs(a * (a - 1) * (a - 2) * std::pow(std::fabs(lo), a - 3));
        long double t1 = std::fabs(a * (a - 1) * (a - 2) * std::pow(std::fabs(hi), a - 3));
        lip = std::max(t0, t1);
        break;
    }
    case CurveFamily::circle_arc: {
        long double r2 = c.lp_[1];
        long double xa = std::max(std::fabs(lo), std::fabs(hi));
        long double xi = (lo <= 0 && 0 <= hi) ? 0 : std::min(std::fabs(lo), std::fabs(hi));
        c1 = r2 / std::pow(r2 - sq(xi), 1.5L);
        c2 = r2 / std::pow(r2 - sq(xa), 1.5L);
        lip = 3 * r2 * xa / std::pow(r2 - sq(xa), 2.5L);
        break;
    }
    case CurveFamily::exponential:
        c1 = std::exp(lo);
        c2 = std::exp(hi);
        lip = c2;
        break;
    case CurveFamily::logarithm:
        c1 = 1 / sq(hi);
        c2 = 1 / sq(lo);
        lip = 2 / (lo * lo * lo);
        break;
    case CurveFamily::fermat3:
        c1 = smin * 0.98L;
        c2 = smax * 1.02L;
        lip = maxdd * 1.5L;
        break;
    }
    c.c1_ = static_cast<double>(c1);
    c.c2_ = static_cast<double>(c2);
    c.lip_ = static_cast<double>(lip);
    if (!(c.c1_ > 0 && c.c1_ <= c.c2_))
        throw DomainError("internal: curvature band certification failed");
    return c;
}

PlanarCurve make_curve(CurveFamily family, const std::vector<double>& params,
                       const Interval& interval, int sampling_n) {
    std::vector<Rat> rp;
    rp.reserve(params.size());
    for (double p : params) rp.push_back(Rat::from_double(p));
    return make_curve(family, rp, interval, sampling_n);
}

PlanarCurve parse_curve_spec(const std::string& spec, const Interval& interval,
                             int sampling_n) {
    static const char* kValid =
        "parabola, power, circle-arc, exponential, logarithm, cubic, fermat3";
    std::string name = spec;
    std::string rest;
    if (auto colon = spec.find(':'); colon != std::string::npos) {
        name = spec.substr(0, colon);
        rest = spec.substr(colon + 1);
    }

    CurveFamily family;
    if (name == "parabola") family = CurveFamily::parabola;
    else if (name == "power") family = CurveFamily::power;
    else if (name == "circle-arc") family = CurveFamily::circle_arc;
    else if (name == "exponential") family = CurveFamily::exponential;
    else if (name == "logarithm") family = CurveFamily::logarithm;
    else if (name == "cubic") family = CurveFamily::cubic;
    else if (name == "fermat3") family = CurveFamily::fermat3;
    else
        throw DomainError("unknown curve family '" + name + "' (valid: " + kValid + ")");

    std::map<std::string, Rat> kv;
    size_t pos = 0;
    while (pos < rest.size()) {
        size_t comma = rest.find(',', pos);
        std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                       : comma - pos);
        pos = comma == std::string::npos ? rest.size() : comma + 1;
        if (item.empty()) continue;
        size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw DomainError("curve spec item '" + item + "' is not key=value");
        kv.emplace(item.substr(0, eq), Rat::parse(item.substr(eq + 1)));
    }

    auto take = [&](const char* key, const Rat& dflt) {
        auto it = kv.find(key);
        if (it == kv.end()) return dflt;
        Rat v = it->second;
        kv.erase(it);
        return v;
    };

    std::vector<Rat> params;
    switch (family) {
    case CurveFamily::parabola:
        params = {take("a", Rat(1)), take("b", Rat(0)), take("c", Rat(0))};
        break;
    case CurveFamily::power:
        params = {take("alpha", Rat(2))};
        break;
    case CurveFamily::circle_arc:
        params = {take("r", Rat(1))};
        break;
    case CurveFamily::cubic:
        params = {take("c3", Rat(1)), take("c2", Rat(0)), take("c1", Rat(0)),
                  take("c0", Rat(0))};
        break;
    default:
        break;
    }
    if (!kv.empty())
        throw DomainError("curve spec key '" + kv.begin()->first + "' not valid for " + name);
    return make_curve(family, params, interval, sampling_n);
}

} // namespace nearcurve
