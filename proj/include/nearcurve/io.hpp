// Output plumbing: shortest round-trip double formatting, the fixed CSV
// schemas, and a dependency-free log-log SVG line chart. Byte-identical output
// across runs and worker counts is part of the contract, so everything routes
// through fmt_double (never stream-state-dependent operator<<).
#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "nearcurve/counting.hpp"
#include "nearcurve/experiments.hpp"

namespace nearcurve {

// Shortest decimal string that parses back to exactly the same double
// (tries 15, 16, then 17 significant digits).
std::string fmt_double(double v);

// Schema: Q,delta,mode,count,main_term,ratio,abs_error,wall_ms
void write_asymptotic_csv(const std::vector<SweepRow>& rows, CountMode mode,
                          std::ostream& out);

// Schema: Q,delta,count,main_term,observed_ratio,lower_const,upper_const,conjectured
struct SandwichRow {
    long long Q = 0;
    double delta = 0;
    SandwichReport report;
};
void write_sandwich_csv(const std::vector<SandwichRow>& rows, std::ostream& out);

// Schema: Q,delta,count,on_curve_count
void write_floor_csv(const std::vector<FloorRow>& rows, std::ostream& out);

// Schema: Q,N,D_surrogate,D_over_N34
void write_discrepancy_csv(const std::vector<DiscrepancyRow>& rows, std::ostream& out);

// Schema: lambda,direct_re,direct_im,sp_re,sp_im,abs_diff,budget
void write_sp_error_csv(const std::vector<SpErrorRow>& rows, std::ostream& out);

// ---- SVG ---------------------------------------------------------------------

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points; // non-positive entries skipped
};

// Minimal self-contained log-log line chart (no external renderer, fonts, or
// scripts). Throws DomainError when no series has a positive point.
std::string svg_loglog_plot(const std::vector<PlotSeries>& series,
                            const std::string& title, const std::string& x_label,
                            const std::string& y_label);

} // namespace nearcurve
