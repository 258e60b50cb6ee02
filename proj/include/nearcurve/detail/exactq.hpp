// Exact evaluation of q f(a/q) for rational-coefficient polynomials.
//
// With f = sum c_i x^i, c_i = p_i / s_i and S = lcm(s_i),
//
//     q f(a/q) = n / m0,   m0 = S q^(d-1),   n = sum (S/s_i) p_i a^i q^(d-i),
//
// where n is a Horner evaluation in a with per-q precomputed coefficients.
// All arithmetic is checked 128-bit: overflow raises ResourceError, never a
// wrong numerator.
#pragma once

#include <vector>

#include "nearcurve/rational.hpp"

namespace nearcurve::detail {

struct ExactQ {
    i128 m0;
    std::vector<i128> u; // u[i] multiplies a^i

    i128 num(long long a) const {
        i128 n = u.back();
        for (size_t i = u.size() - 1; i-- > 0;) n = checked_add(checked_mul(n, a), u[i]);
        return n;
    }
};

inline ExactQ exact_setup(const std::vector<Rat>& poly, long long q) {
    size_t d = poly.size() - 1;
    i128 S = 1;
    for (const Rat& c : poly) S = checked_mul(S / gcd128(S, c.den()), c.den());
    ExactQ e;
    e.u.resize(d + 1);
    i128 qpow = 1; // q^(d-i), built from i = d downward
    for (size_t i = d + 1; i-- > 0;) {
        e.u[i] = checked_mul(checked_mul(S / poly[i].den(), poly[i].num()), qpow);
        if (i > 0) qpow = checked_mul(qpow, q);
    }
    e.m0 = S;
    for (size_t i = 1; i < d; ++i) e.m0 = checked_mul(e.m0, q);
    return e;
}

} // namespace nearcurve::detail
