// Numerical constants computed from scratch rather than transcribed.
#pragma once

namespace nearcurve {

// Apery's constant, by direct Kahan summation of n^-3 descending from N with a
// proven tail bound: sum_{n>N} n^-3 < 1/(2 N^2) <= 1e-15. Computed once, cached.
double zeta3();

} // namespace nearcurve
