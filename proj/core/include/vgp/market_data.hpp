#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "vgp/value.hpp"

namespace vgp {

/// Agent-visible features. The first twelve are static columns of a
/// FeatureTable; ProfitPercentage is supplied by the backtester at run time.
enum class Feature : std::uint8_t {
    Open,
    Close,
    High,
    Low,
    Volume,
    Ema5,
    Ema13,
    Ema50,
    Ema200,
    Rsi14,
    SmallEmaDiff,
    BigEmaDiff,
    ProfitPercentage,
};

inline constexpr std::size_t kStaticFeatureCount = 12;
inline constexpr std::size_t kFeatureCount = 13;

/// Raw rows consumed before the first enriched row: 200 to seed EMA200 plus
/// 20 rows of history so every retained row has a full 21-day window.
inline constexpr std::size_t kWarmupRows = 220;

std::string_view feature_name(Feature f) noexcept;
std::optional<Feature> feature_from_name(std::string_view name) noexcept;

struct Candle {
    std::chrono::year_month_day date;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double volume = 0.0;
};

/// Reads a `date,open,high,low,close,volume` CSV. Throws InputError with the
/// file line number on malformed rows, OHLC inconsistencies or non-increasing dates.
std::vector<Candle> load_ohlcv(const std::filesystem::path& path);
std::vector<Candle> parse_ohlcv(std::istream& in, std::string_view source = "<stream>");

/// Immutable, column-major table of the twelve static features.
///
/// A table is a view `[offset, offset + size)` over shared storage. Rows
/// before `offset` are history: they are reachable through windows but are
/// not part of the table. Slices share storage, so a test split can look back
/// into the last training rows.
class FeatureTable {
public:
    using Columns = std::array<std::vector<double>, kStaticFeatureCount>;

    FeatureTable() = default;

    /// Builds a table without history; `columns` must all be `dates.size()` long.
    static FeatureTable from_columns(std::vector<std::chrono::year_month_day> dates, Columns columns);

    /// Builds a table whose first `history` rows are lookback only.
    static FeatureTable with_history(std::vector<std::chrono::year_month_day> dates, Columns columns,
                                     std::size_t history);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    /// Number of storage rows available before row 0.
    std::size_t history() const noexcept { return offset_; }

    double at(Feature f, std::size_t row) const;
    std::chrono::year_month_day date(std::size_t row) const;

    /// Rows `[0, size())` of a static feature.
    std::span<const double> column(Feature f) const;

    /// Values ending at `end_row`, oldest first; `length` may reach into history.
    /// Returns an empty span when the window would start before the storage.
    std::span<const double> trailing(Feature f, std::size_t end_row, std::size_t length) const noexcept;

    /// Sub-table `[begin, end)` sharing storage; earlier rows become history.
    FeatureTable slice(std::size_t begin, std::size_t end) const;

private:
    struct Storage {
        std::vector<std::chrono::year_month_day> dates;
        Columns columns;
    };

    std::shared_ptr<const Storage> storage_;
    std::size_t offset_ = 0;
    std::size_t size_ = 0;
};

struct WindowView {
    Feature feature = Feature::Close;
    std::size_t end_row = 0;
    std::size_t length = 1;
};

/// Length-1 views yield a RealScalar, length-21 views a RealVector.
/// Throws std::out_of_range if the window does not fit the available rows.
Value window(const FeatureTable& table, const WindowView& view);

/// Computes the EMA/RSI features from closing prices and drops the warm-up rows.
FeatureTable enrich(std::span<const Candle> candles);

/// Sequential 80/20 split: the first floor(0.8 n) rows train, the rest test.
std::pair<FeatureTable, FeatureTable> split_train_test(const FeatureTable& table);

/// Enriched CSV: OHLCV columns followed by the seven indicator columns, with
/// shortest round-trip decimal formatting. History rows are not written.
void write_enriched_csv(std::ostream& out, const FeatureTable& table);
FeatureTable parse_enriched_csv(std::istream& in, std::string_view source = "<stream>");
FeatureTable load_enriched_csv(const std::filesystem::path& path);

} // namespace vgp
