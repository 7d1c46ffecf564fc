#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace vgp::indicators {

/// Indicator output aligned with its input; leading positions without a
/// full lookback are empty.
using Series = std::vector<std::optional<double>>;

inline constexpr std::size_t kDefaultRsiPeriod = 14;

/// Simple moving average over the trailing `n` prices.
Series sma(std::span<const double> prices, std::size_t n);

/// Exponential moving average with weight 2/(n+1), seeded at index n-1 with
/// the SMA of the first n prices.
Series ema(std::span<const double> prices, std::size_t n);

/// Relative strength index from plain (unsmoothed) averages of the trailing
/// `period` day-over-day gains and losses. A loss-free window gives 100 and a
/// completely flat window gives 50.
Series rsi(std::span<const double> prices, std::size_t period = kDefaultRsiPeriod);

} // namespace vgp::indicators
