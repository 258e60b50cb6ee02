// Panel Gauss-Legendre quadrature for oscillatory integrals int e(phase(x)) dx.
//
// The caller supplies `units`, an upper bound on the total phase variation in
// periods; the engine allocates at least nodes_per_unit nodes per period (never
// fewer than min_nodes), split into fixed-order 32-node panels. A 32-node rule
// resolves the ~24 periods its node budget implies to spectral accuracy, so
// panels are sized at 24 effective nodes each (mild oversampling). The node cap
// turns runaway phase budgets into a visible ResourceError instead of a silent
// accuracy loss or a multi-hour run.
//
// phase() returns the full phase in periods; it is reduced mod 1 in long double
// before the double-precision sin/cos, so phases of magnitude ~1e7 lose nothing.
#pragma once

#include <array>
#include <complex>
#include <functional>

namespace nearcurve {

struct PanelQuadOptions {
    double nodes_per_unit = 8.0;
    long long min_nodes = 64;
    long long node_cap = 20'000'000;
};

std::complex<double>
oscillatory_quadrature(const std::function<long double(long double)>& phase, double a,
                       double b, double units, const PanelQuadOptions& opts = {});

// Nodes/weights of the 32-point Gauss-Legendre rule on [-1,1], computed once by
// Newton iteration on P_32 (exposed for tests).
const std::array<std::pair<double, double>, 32>& gauss_legendre_32();

} // namespace nearcurve
