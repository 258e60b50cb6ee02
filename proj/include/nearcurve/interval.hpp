// Closed interval [lo, hi] with exact rational endpoints.
//
// Whether a/q lies in the interval must be decided identically everywhere (raw
// count, reduced count, exponential sum, sequence sample), or the exact Mobius
// identity between them falls apart at the boundary. So endpoints are carried as
// exact rationals and membership is integer cross-multiplication; the double view
// is only for analysis (lengths, quadrature panels, plotting).
#pragma once

#include "nearcurve/errors.hpp"
#include "nearcurve/rational.hpp"

namespace nearcurve {

class Interval {
public:
    Interval(const Rat& lo, const Rat& hi) : rlo_(lo), rhi_(hi) {
        if (!(lo < hi)) throw DomainError("interval requires lo < hi");
        lo_ = lo.to_double();
        hi_ = hi.to_double();
    }
    Interval(double lo, double hi) : Interval(Rat::from_double(lo), Rat::from_double(hi)) {}

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double length() const { return hi_ - lo_; }
    double midpoint() const { return 0.5 * (lo_ + hi_); }

    const Rat& rlo() const { return rlo_; }
    const Rat& rhi() const { return rhi_; }

    bool contains(double x) const { return lo_ <= x && x <= hi_; }

    // Integer range of a with a/q in [lo, hi], exact. q > 0.
    struct ARange {
        long long first, last; // inclusive; empty iff last < first
        long long count() const { return last < first ? 0 : last - first + 1; }
    };
    ARange a_range(long long q) const {
        i128 amin = ceil_div(checked_mul(static_cast<i128>(q), rlo_.num()), rlo_.den());
        i128 amax = floor_div(checked_mul(static_cast<i128>(q), rhi_.num()), rhi_.den());
        return ARange{static_cast<long long>(amin), static_cast<long long>(amax)};
    }

private:
    double lo_, hi_;
    Rat rlo_, rhi_;
};

} // namespace nearcurve
