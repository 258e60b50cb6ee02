// Error taxonomy. Three classes matter downstream:
//   DomainError   - caller handed us something invalid (bad interval, delta out of
//                   range, frequency with no stationary point, ...); CLI exit 2 when
//                   raised during argument handling, else part of a failed check.
//   ResourceError - a guard rail tripped (quadrature node cap, sequence memory cap,
//                   checked 128-bit overflow); CLI exit 3.
//   TieError      - a floating-point distance landed inside the guard band around the
//                   counting threshold, so the count is ambiguous at working precision.
//                   Raised only where ambiguity would silently corrupt an exact
//                   identity (Mobius residual); plain counts just report ties.
#pragma once

#include <stdexcept>
#include <string>

namespace nearcurve {

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

struct TieError : std::runtime_error {
    explicit TieError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace nearcurve
