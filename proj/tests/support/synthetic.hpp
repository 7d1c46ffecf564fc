#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "vgp/market_data.hpp"

namespace vgp::testkit {

/// Consecutive daily candles with close = level + amplitude * sin(2 pi t / period).
/// Each open is the previous close; high/low bracket the body by 0.5.
std::vector<Candle> sinusoid_candles(std::size_t n, double period = 20.0, double level = 100.0,
                                     double amplitude = 10.0);

/// Geometric random walk with consistent OHLC construction.
std::vector<Candle> random_walk_candles(std::size_t n, std::uint64_t seed, double start = 100.0,
                                        double volatility = 0.02);

void write_ohlcv_csv(const std::filesystem::path& path, const std::vector<Candle>& candles);

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

} // namespace vgp::testkit
