#include "nearcurve/quadrature.hpp"

#include <cmath>
#include <vector>

#include "nearcurve/errors.hpp"
#include "nearcurve/parallel.hpp"

namespace nearcurve {

namespace {
constexpr int kPanelNodes = 32;
constexpr double kEffectiveNodesPerPanel = 24.0;
constexpr long double kTwoPi = 6.283185307179586476925286766559L;
} // namespace

const std::array<std::pair<double, double>, 32>& gauss_legendre_32() {
    static const auto table = [] {
        std::array<std::pair<double, double>, 32> t{};
        const int n = kPanelNodes;
        for (int i = 0; i < n; ++i) {
            // Tricomi initial guess, then Newton on P_n via the three-term
            // recurrence. Converges in a handful of steps for every root.
            long double x = std::cos(3.14159265358979323846L * (i + 0.75L) / (n + 0.5L));
            long double dp = 0;
            for (int it = 0; it < 60; ++it) {
                long double p0 = 1, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1);
                long double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-19L) break;
            }
            long double w = 2 / ((1 - x * x) * dp * dp);
            t[static_cast<size_t>(i)] = {static_cast<double>(x), static_cast<double>(w)};
        }
        return t;
    }();
    return table;
}

std::complex<double>
oscillatory_quadrature(const std::function<long double(long double)>& phase, double a,
                       double b, double units, const PanelQuadOptions& opts) {
    if (!(b > a)) throw DomainError("oscillatory_quadrature requires a < b");
    if (!(units >= 0) || !std::isfinite(units))
        throw DomainError("oscillatory_quadrature: invalid phase budget");

    double want = std::max(static_cast<double>(opts.min_nodes),
                           std::ceil(units * opts.nodes_per_unit));
    auto panels = static_cast<long long>(std::ceil(want / kEffectiveNodesPerPanel));
    if (panels < 1) panels = 1;
    if (panels * kPanelNodes > opts.node_cap)
        throw ResourceError("quadrature node cap exceeded (" +
                            std::to_string(panels * kPanelNodes) + " nodes needed, cap " +
                            std::to_string(opts.node_cap) +
                            "); phase variation too large for this configuration");

    const auto& gl = gauss_legendre_32();
    const long double h = (static_cast<long double>(b) - a) / panels;

    // Fixed 256-panel blocks, each summed sequentially in long double, combined
    // in block order: bitwise identical at any worker count.
    const long long block = 256;
    const long long n_blocks = (panels + block - 1) / block;
    std::vector<std::complex<long double>> partial(static_cast<size_t>(n_blocks));

    exec::run_blocks(n_blocks, [&](long long bi) {
        long double sre = 0, sim = 0;
        long long p0 = bi * block, p1 = std::min(panels, p0 + block);
        for (long long p = p0; p < p1; ++p) {
            long double mid = a + h * (p + 0.5L);
            long double half = 0.5L * h;
            long double pre = 0, pim = 0;
            for (const auto& [xi, wi] : gl) {
                long double x = mid + half * xi;
                long double th = phase(x);
                th -= nearbyintl(th); // exact reduction while still in long double
                auto arg = static_cast<double>(kTwoPi * th);
                pre += wi * std::cos(arg);
                pim += wi * std::sin(arg);
            }
            sre += pre * half;
            sim += pim * half;
        }
        partial[static_cast<size_t>(bi)] = {sre, sim};
    });

    std::complex<long double> total = 0;
    for (const auto& c : partial) total += c;
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

} // namespace nearcurve
