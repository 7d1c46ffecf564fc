#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vgp::stats {

/// Average ranks (1-based, ascending) with ties sharing their mean rank.
std::vector<double> average_ranks(std::span<const double> values);

struct KruskalWallis {
    double h = 0.0;
    double p = 1.0;
};

/// Two-group Kruskal-Wallis test with tie correction and a chi-square(1)
/// p-value. Identical pooled values give H = 0, p = 1. Requires two or more
/// observations per group; -infinity is a valid (lowest) observation.
KruskalWallis kruskal_wallis(std::span<const double> a, std::span<const double> b);
double kruskal_wallis_p(std::span<const double> a, std::span<const double> b);

/// Upper-tail probability of chi-square with one degree of freedom.
double chi2_sf_1dof(double x);

/// Two-tailed Nemenyi critical value q_alpha at alpha = 0.05 for k methods (2..10).
double nemenyi_q05(std::size_t k);

struct RankSummary {
    std::vector<double> mean_ranks;  ///< per method; 1 is best
    double critical_distance = 0.0;
    /// Maximal sets of methods (indices, best first) whose mean ranks lie
    /// within the critical distance of each other.
    std::vector<std::vector<std::size_t>> groups;
};

/// `scores[m][s]` is method m's fitness on seed s; higher is better.
RankSummary mean_ranks(const std::vector<std::vector<double>>& scores);

struct Quartiles {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

/// Order statistics with linear interpolation between closest ranks.
Quartiles quartiles(std::span<const double> values);

} // namespace vgp::stats
