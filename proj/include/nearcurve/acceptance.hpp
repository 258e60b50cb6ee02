// The verification gate: thirteen checks tying the implementation to the
// quantities it claims to compute. Each check prints one PASS/FAIL line with
// the measured values; the suite passes only if every line passes. Tolerances
// are pinned here, in code, and recorded in each line's detail string.
//
//   c01-mobius             gcd-factoring identity, exactly 0 on seeded instances
//   c02-reduced-constant   reduced-count ratio converging to 1/zeta(3)
//   c03-raw-constant       raw-count ratio converging to 1
//   c04-sandwich           tilde-count ratio inside the proven sandwich
//   c05-floor-parabola     tiny-delta count collapses to the on-curve points
//   c06-floor-fermat       x^3 + y^3 = 1 has no rational near-points at all
//   c07-dual-involution    f** = f and the dual curvature band
//   c08-stationary-phase   leading-term error decays like 1/lambda
//   c09-erdos-turan        |D| never exceeds the truncated Weyl-sum bound
//   c10-poisson            exp_sum vs truncated Poisson, log-normalized gap
//   c11-discrepancy        2 N D*(N) grows no faster than N^0.8
//   c12-fresnel            int_0^inf e(t^2) dt = (1/4, 1/4)
//   c13-determinism        c01..c03 payloads byte-identical at 1 and 8 workers
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nearcurve {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail; // measured values, or the failure/exception message
    double wall_ms = 0;
};

struct AcceptanceOptions {
    bool quick = false;     // trimmed grids (Q <= 1000), total < 60 s
    std::string only;       // substring filter on criterion names; empty = all
    std::uint64_t seed = 2026; // drives instance generation and (alpha, beta) draws
};

// Runs the selected criteria in order. Exceptions inside a criterion are
// caught and reported as failures; the remaining criteria still run.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

inline bool all_pass(const std::vector<CriterionResult>& rs) {
    for (const auto& r : rs)
        if (!r.pass) return false;
    return !rs.empty();
}

} // namespace nearcurve
