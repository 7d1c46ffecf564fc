#include "vgp/indicators.hpp"

#include <stdexcept>
#include <string>

namespace vgp::indicators {
namespace {

void require_length(std::span<const double> prices, std::size_t needed, const char* what) {
    if (prices.size() < needed) {
        throw std::invalid_argument(std::string(what) + ": series of length " +
                                    std::to_string(prices.size()) + " is shorter than " +
                                    std::to_string(needed));
    }
}

} // namespace

Series sma(std::span<const double> prices, std::size_t n) {
    if (n == 0) throw std::invalid_argument("sma: period must be positive");
    require_length(prices, n, "sma");
    Series out(prices.size());
    // Each window is summed directly; a running sum drifts over long series.
    for (std::size_t t = n - 1; t < prices.size(); ++t) {
        double sum = 0.0;
        for (std::size_t k = t + 1 - n; k <= t; ++k) sum += prices[k];
        out[t] = sum / static_cast<double>(n);
    }
    return out;
}

Series ema(std::span<const double> prices, std::size_t n) {
    if (n == 0) throw std::invalid_argument("ema: period must be positive");
    require_length(prices, n, "ema");
    Series out(prices.size());
    const double w = 2.0 / (static_cast<double>(n) + 1.0);

    double seed = 0.0;
    for (std::size_t k = 0; k < n; ++k) seed += prices[k];
    double prev = seed / static_cast<double>(n);
    out[n - 1] = prev;
    for (std::size_t t = n; t < prices.size(); ++t) {
        prev = w == 1.0 ? prices[t] : prev + w * (prices[t] - prev);
        out[t] = prev;
    }
    return out;
}

Series rsi(std::span<const double> prices, std::size_t period) {
    if (period == 0) throw std::invalid_argument("rsi: period must be positive");
    require_length(prices, period + 1, "rsi");
    Series out(prices.size());
    for (std::size_t t = period; t < prices.size(); ++t) {
        double gain = 0.0;
        double loss = 0.0;
        for (std::size_t k = t + 1 - period; k <= t; ++k) {
            const double change = prices[k] - prices[k - 1];
            if (change > 0.0) gain += change;
            else loss -= change;
        }
        const double avg_gain = gain / static_cast<double>(period);
        const double avg_loss = loss / static_cast<double>(period);
        if (avg_loss == 0.0) {
            out[t] = avg_gain == 0.0 ? 50.0 : 100.0;
        } else {
            out[t] = 100.0 - 100.0 / (1.0 + avg_gain / avg_loss);
        }
    }
    return out;
}

} // namespace vgp::indicators
