#include "vgp/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vgp::stats {

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

double chi2_sf_1dof(double x) {
    if (!(x > 0.0)) return 1.0;
    return std::erfc(std::sqrt(0.5 * x));
}

KruskalWallis kruskal_wallis(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("kruskal_wallis: each sample needs >= 2 values");
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    for (double v : pooled) {
        if (std::isnan(v)) throw std::invalid_argument("kruskal_wallis: NaN observation");
    }
    const auto ranks = average_ranks(pooled);
    const double n = static_cast<double>(pooled.size());

    double ra = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) ra += ranks[i];
    const double rb = n * (n + 1.0) / 2.0 - ra;
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double h = 12.0 / (n * (n + 1.0)) * (ra * ra / na + rb * rb / nb) - 3.0 * (n + 1.0);

    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double ties = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i + 1;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        ties += t * t * t - t;
        i = j;
    }
    const double correction = 1.0 - ties / (n * n * n - n);
    if (correction <= 0.0) return {0.0, 1.0};
    h = std::max(0.0, h / correction);

    // Keep p strictly positive even when erfc underflows.
    const double p = std::clamp(chi2_sf_1dof(h), std::numeric_limits<double>::min(), 1.0);
    return {h, p};
}

double kruskal_wallis_p(std::span<const double> a, std::span<const double> b) { return kruskal_wallis(a, b).p; }

double nemenyi_q05(std::size_t k) {
    // Studentized range statistic divided by sqrt(2), alpha = 0.05.
    static constexpr std::array<double, 9> q = {1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164};
    if (k < 2 || k > 10) throw std::invalid_argument("nemenyi_q05: supported for 2..10 methods");
    return q[k - 2];
}

RankSummary mean_ranks(const std::vector<std::vector<double>>& scores) {
    const std::size_t k = scores.size();
    if (k < 2) throw std::invalid_argument("mean_ranks: need at least 2 methods");
    const std::size_t n = scores.front().size();
    if (n < 2) throw std::invalid_argument("mean_ranks: need at least 2 seeds");
    for (const auto& row : scores) {
        if (row.size() != n) throw std::invalid_argument("mean_ranks: unequal seed counts");
    }

    RankSummary out;
    out.mean_ranks.assign(k, 0.0);
    std::vector<double> column(k);
    for (std::size_t s = 0; s < n; ++s) {
        // Negate so the best score gets rank 1.
        for (std::size_t m = 0; m < k; ++m) column[m] = -scores[m][s];
        const auto r = average_ranks(column);
        for (std::size_t m = 0; m < k; ++m) out.mean_ranks[m] += r[m];
    }
    for (double& r : out.mean_ranks) r /= static_cast<double>(n);

    const double kd = static_cast<double>(k);
    out.critical_distance = nemenyi_q05(k) * std::sqrt(kd * (kd + 1.0) / (6.0 * static_cast<double>(n)));

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return out.mean_ranks[a] < out.mean_ranks[b]; });
    std::size_t last_end = 0;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i;
        while (j + 1 < k && out.mean_ranks[order[j + 1]] - out.mean_ranks[order[i]] < out.critical_distance) ++j;
        if (j > i && j + 1 > last_end) {
            out.groups.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                                    order.begin() + static_cast<std::ptrdiff_t>(j + 1));
            last_end = j + 1;
        }
    }
    return out;
}

Quartiles quartiles(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("quartiles: empty sample");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    auto at = [&v](double q) {
        const double pos = q * static_cast<double>(v.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, v.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        if (frac == 0.0 || v[lo] == v[hi]) return v[lo];
        // Inactive runs enter as -inf; interpolating across them is meaningless.
        if (std::isinf(v[lo]) || std::isinf(v[hi])) return frac < 0.5 ? v[lo] : v[hi];
        return v[lo] + frac * (v[hi] - v[lo]);
    };
    return {v.front(), at(0.25), at(0.5), at(0.75), v.back()};
}

} // namespace vgp::stats
