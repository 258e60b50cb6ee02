// Legendre transform of a curvature-banded curve.
//
// With h the inverse of f' (well-defined: |f''| >= c1 > 0 makes f' strictly
// monotone), the dual curve on J = [min f', max f'] is
//
//     f*(y) = y h(y) - f(h(y)),   (f*)' = h,   (f*)'' = 1 / f''(h(y)),
//
// so the dual's curvature band is [1/c2, 1/c1] and the transform is an
// involution. The dual drives the stationary-phase values (the phase at the
// critical point is -qk f*(j/k)) and the Huxley-type sums over ||k F(j/k)||.
//
// h(y) is solved by bisection (unconditional, since f' is monotone with slope
// at least c1) followed by a few Newton polish steps. For rational-coefficient
// parabolas f*(y) = (y-b)^2/(4a) - c is evaluated in exact rational arithmetic,
// which the phase-mod-1 paths rely on.
#pragma once

#include <optional>

#include "nearcurve/curve.hpp"

namespace nearcurve {

// x in [lo, hi] with f'(x) = y, for y in J (endpoints included).
double dprime_inverse(const PlanarCurve& curve, double y, double tol = 1e-12);

struct DualEval {
    double fstar, fstar_d1, fstar_d2;
};

class DualCurve {
public:
    DualEval eval(double y) const;
    Range domain() const { return dom_; }
    const PlanarCurve& base() const { return base_; }
    double solver_tol() const { return tol_; }

    // Exact f*(y): available iff the base curve is a rational parabola.
    bool exact_capable() const { return base_.family() == CurveFamily::parabola; }
    Rat exact_value(const Rat& y) const;
    // Exact dual domain endpoints (f' at the interval endpoints) for any
    // exact-capable base curve.
    std::optional<std::pair<Rat, Rat>> exact_domain() const;

private:
    friend DualCurve make_dual(const PlanarCurve&, double);
    DualCurve(PlanarCurve base, Range dom, double tol)
        : base_(std::move(base)), dom_(dom), tol_(tol) {}

    PlanarCurve base_;
    Range dom_;
    double tol_;
};

DualCurve make_dual(const PlanarCurve& curve, double tol = 1e-12);

inline DualEval dual_eval(const DualCurve& dual, double y) { return dual.eval(y); }

// max over an interior grid of |f**(x) - f(x)|, where f** is the numeric dual of
// the numeric dual (domains shrunk by 1e-3 of their lengths to keep both
// inversions away from the boundary).
double double_dual_residual(const PlanarCurve& curve, int grid_n = 1000);

} // namespace nearcurve
