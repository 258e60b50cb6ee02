#include "nearcurve/dual.hpp"

#include <cmath>

#include "nearcurve/errors.hpp"

namespace nearcurve {

namespace {

// Bisection on a strictly monotone function g over [a, b] for g(x) = target,
// to width 1e-14 * (b - a), then up to 3 Newton polish steps using dg.
template <typename G, typename DG>
long double solve_monotone(G g, DG dg, long double a, long double b, long double target) {
    long double ga = g(a), gb = g(b);
    bool increasing = gb > ga;
    long double lo = a, hi = b;
    const long double width_goal = 1e-14L * (b - a);
    for (int it = 0; it < 200 && (hi - lo) > width_goal; ++it) {
        long double mid = 0.5L * (lo + hi);
        long double gm = g(mid);
        if ((gm < target) == increasing)
            lo = mid;
        else
            hi = mid;
    }
    long double x = 0.5L * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        long double d = dg(x);
        if (d == 0) break;
        x -= (g(x) - target) / d;
        if (x < a) x = a;
        if (x > b) x = b;
    }
    return x;
}

} // namespace

double dprime_inverse(const PlanarCurve& curve, double y, double tol) {
    Range J = curve.deriv_range();
    double slack = tol * std::max(1.0, std::fabs(y));
    if (y < J.lo - slack || y > J.hi + slack)
        throw DomainError("dprime_inverse: y outside the derivative range J");
    const Interval& I = curve.interval();
    long double x = solve_monotone([&](long double t) { return curve.deriv(t); },
                                   [&](long double t) { return curve.second(t); },
                                   I.lo(), I.hi(), y);
    return static_cast<double>(x);
}

DualCurve make_dual(const PlanarCurve& curve, double tol) {
    return DualCurve(curve, curve.deriv_range(), tol);
}

DualEval DualCurve::eval(double y) const {
    double x0 = dprime_inverse(base_, y, tol_);
    long double lx = x0;
    long double fs = static_cast<long double>(y) * lx - base_.value(lx);
    long double d2 = 1.0L / base_.second(lx);
    return {static_cast<double>(fs), x0, static_cast<double>(d2)};
}

Rat DualCurve::exact_value(const Rat& y) const {
    if (!exact_capable())
        throw DomainError("exact dual values require a rational parabola");
    const auto& p = base_.params(); // {a, b, c}
    Rat t = y - p[1];
    return t * t / (Rat(4) * p[0]) - p[2];
}

std::optional<std::pair<Rat, Rat>> DualCurve::exact_domain() const {
    if (!base_.exact_capable()) return std::nullopt;
    Rat d0 = base_.deriv_rat(base_.interval().rlo());
    Rat d1 = base_.deriv_rat(base_.interval().rhi());
    if (d1 < d0) std::swap(d0, d1);
    return std::make_pair(d0, d1);
}

double double_dual_residual(const PlanarCurve& curve, int grid_n) {
    if (grid_n < 16) throw DomainError("double_dual_residual requires grid_n >= 16");
    DualCurve dual = make_dual(curve);
    Range J = dual.domain();
    const long double jshrink = 1e-3L * (J.hi - J.lo);
    const long double ja = J.lo + jshrink, jb = J.hi - jshrink;

    // f**(x) = x g(x) - f*(g(x)) with g the inverse of (f*)' = h; h is monotone
    // because h' = 1/(f'' o h) keeps one sign.
    auto h_of = [&](long double y) {
        return static_cast<long double>(dual.eval(static_cast<double>(y)).fstar_d1);
    };
    auto hp_of = [&](long double y) {
        return static_cast<long double>(dual.eval(static_cast<double>(y)).fstar_d2);
    };

    // The image of [ja, jb] under h: stay strictly inside it so the outer
    // bisection brackets its target.
    long double xa = h_of(ja), xb = h_of(jb);
    if (xb < xa) std::swap(xa, xb);
    const long double xshrink = 1e-3L * (xb - xa);
    xa += xshrink;
    xb -= xshrink;

    long double worst = 0;
    for (int i = 0; i < grid_n; ++i) {
        long double x = xa + (xb - xa) * (i + 0.5L) / grid_n;
        long double y = solve_monotone(h_of, hp_of, ja, jb, x);
        DualEval de = dual.eval(static_cast<double>(y));
        long double fss = x * y - static_cast<long double>(de.fstar);
        worst = std::max(worst, std::fabs(fss - curve.value(x)));
    }
    return static_cast<double>(worst);
}

} // namespace nearcurve
