#include "vgp/market_data.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "vgp/error.hpp"
#include "vgp/indicators.hpp"
#include "vgp/text.hpp"

namespace vgp {
namespace {

constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "open",  "close", "high",  "low",   "volume",       "ema5",       "ema13",
    "ema50", "ema200", "rsi14", "smallEmaDiff", "bigEmaDiff", "profitPercentage",
};

constexpr std::string_view kOhlcvHeader = "date,open,high,low,close,volume";

// Enriched CSV column order after the date.
constexpr std::array<Feature, kStaticFeatureCount> kEnrichedOrder = {
    Feature::Open,  Feature::High,   Feature::Low,   Feature::Close,
    Feature::Volume, Feature::Ema5,  Feature::Ema13, Feature::Ema50,
    Feature::Ema200, Feature::Rsi14, Feature::SmallEmaDiff, Feature::BigEmaDiff,
};

std::string enriched_header() {
    std::string header = "date";
    for (Feature f : kEnrichedOrder) {
        header += ',';
        header += feature_name(f);
    }
    return header;
}

[[noreturn]] void fail_at(std::string_view source, std::size_t line, const std::string& what) {
    throw InputError(std::string(source) + ": line " + std::to_string(line) + ": " + what);
}

std::size_t index_of(Feature f) { return static_cast<std::size_t>(f); }

} // namespace

std::string_view feature_name(Feature f) noexcept { return kFeatureNames[index_of(f)]; }

std::optional<Feature> feature_from_name(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i) {
        if (kFeatureNames[i] == name) return static_cast<Feature>(i);
    }
    return std::nullopt;
}

std::vector<Candle> parse_ohlcv(std::istream& in, std::string_view source) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<Candle> candles;

    if (!std::getline(in, line)) fail_at(source, 1, "missing header");
    ++line_no;
    if (text::trim(line) != kOhlcvHeader) {
        fail_at(source, line_no, "expected header '" + std::string(kOhlcvHeader) + "'");
    }

    while (std::getline(in, line)) {
        ++line_no;
        const auto body = text::trim(line);
        if (body.empty()) continue;
        const auto fields = text::split(body, ',');
        if (fields.size() != 6) {
            fail_at(source, line_no, "expected 6 fields, got " + std::to_string(fields.size()));
        }
        Candle c;
        const auto date = text::parse_iso_date(fields[0]);
        if (!date) fail_at(source, line_no, "unparsable date '" + std::string(fields[0]) + "'");
        c.date = *date;
        double* targets[] = {&c.open, &c.high, &c.low, &c.close, &c.volume};
        for (std::size_t i = 0; i < 5; ++i) {
            const auto v = text::parse_double(fields[i + 1]);
            if (!v || !std::isfinite(*v)) {
                fail_at(source, line_no, "unparsable number '" + std::string(fields[i + 1]) + "'");
            }
            *targets[i] = *v;
        }
        if (!(c.low <= c.high && c.low <= c.open && c.open <= c.high && c.low <= c.close &&
              c.close <= c.high)) {
            fail_at(source, line_no, "inconsistent OHLC values");
        }
        if (c.volume < 0.0) fail_at(source, line_no, "negative volume");
        if (!candles.empty() && !(candles.back().date < c.date)) {
            fail_at(source, line_no,
                    "date " + text::format_iso_date(c.date) + " does not follow " +
                        text::format_iso_date(candles.back().date));
        }
        candles.push_back(c);
    }
    return candles;
}

std::vector<Candle> load_ohlcv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return parse_ohlcv(in, path.string());
}

FeatureTable FeatureTable::from_columns(std::vector<std::chrono::year_month_day> dates, Columns columns) {
    return with_history(std::move(dates), std::move(columns), 0);
}

FeatureTable FeatureTable::with_history(std::vector<std::chrono::year_month_day> dates, Columns columns,
                                        std::size_t history) {
    for (const auto& col : columns) {
        if (col.size() != dates.size()) throw std::invalid_argument("FeatureTable: ragged columns");
    }
    if (history > dates.size()) throw std::invalid_argument("FeatureTable: history exceeds rows");
    FeatureTable t;
    const std::size_t total = dates.size();
    t.storage_ = std::make_shared<const Storage>(Storage{std::move(dates), std::move(columns)});
    t.offset_ = history;
    t.size_ = total - history;
    return t;
}

double FeatureTable::at(Feature f, std::size_t row) const {
    if (index_of(f) >= kStaticFeatureCount) throw std::invalid_argument("FeatureTable: not a static feature");
    if (row >= size_) throw std::out_of_range("FeatureTable: row out of range");
    return storage_->columns[index_of(f)][offset_ + row];
}

std::chrono::year_month_day FeatureTable::date(std::size_t row) const {
    if (row >= size_) throw std::out_of_range("FeatureTable: row out of range");
    return storage_->dates[offset_ + row];
}

std::span<const double> FeatureTable::column(Feature f) const {
    if (index_of(f) >= kStaticFeatureCount) throw std::invalid_argument("FeatureTable: not a static feature");
    if (!storage_) return {};
    return std::span<const double>(storage_->columns[index_of(f)]).subspan(offset_, size_);
}

std::span<const double> FeatureTable::trailing(Feature f, std::size_t end_row, std::size_t length) const noexcept {
    const std::size_t abs_end = offset_ + end_row;
    if (length == 0 || end_row >= size_ || abs_end + 1 < length) return {};
    return {storage_->columns[index_of(f)].data() + abs_end + 1 - length, length};
}

FeatureTable FeatureTable::slice(std::size_t begin, std::size_t end) const {
    if (begin > end || end > size_) throw std::out_of_range("FeatureTable: bad slice");
    FeatureTable t;
    t.storage_ = storage_;
    t.offset_ = offset_ + begin;
    t.size_ = end - begin;
    return t;
}

Value window(const FeatureTable& table, const WindowView& view) {
    if (view.length != 1 && view.length != kWindowLength) {
        throw std::invalid_argument("window: length must be 1 or 21");
    }
    if (static_cast<std::size_t>(view.feature) >= kStaticFeatureCount) {
        throw std::invalid_argument("window: not a static feature");
    }
    const auto values = table.trailing(view.feature, view.end_row, view.length);
    if (values.empty()) {
        throw std::out_of_range("window: " + std::to_string(view.length) + "-row window ending at row " +
                                std::to_string(view.end_row) + " exceeds available rows");
    }
    if (view.length == 1) return values[0];
    return RealVector(values);
}

FeatureTable enrich(std::span<const Candle> candles) {
    if (candles.size() <= kWarmupRows) {
        throw InputError("enrich: need more than " + std::to_string(kWarmupRows) + " rows, got " +
                         std::to_string(candles.size()));
    }
    const std::size_t n = candles.size();
    std::vector<double> close(n);
    for (std::size_t i = 0; i < n; ++i) close[i] = candles[i].close;

    const auto ema5 = indicators::ema(close, 5);
    const auto ema13 = indicators::ema(close, 13);
    const auto ema50 = indicators::ema(close, 50);
    const auto ema200 = indicators::ema(close, 200);
    const auto rsi14 = indicators::rsi(close, indicators::kDefaultRsiPeriod);

    // Keep the last (kWindowLength - 1) warm-up rows as window history.
    const std::size_t history = kWindowLength - 1;
    const std::size_t first = kWarmupRows - history;

    std::vector<std::chrono::year_month_day> dates;
    FeatureTable::Columns cols;
    dates.reserve(n - first);
    for (auto& c : cols) c.reserve(n - first);

    auto put = [&cols](Feature f, double v) { cols[index_of(f)].push_back(v); };
    for (std::size_t i = first; i < n; ++i) {
        const Candle& c = candles[i];
        dates.push_back(c.date);
        put(Feature::Open, c.open);
        put(Feature::Close, c.close);
        put(Feature::High, c.high);
        put(Feature::Low, c.low);
        put(Feature::Volume, c.volume);
        put(Feature::Ema5, *ema5[i]);
        put(Feature::Ema13, *ema13[i]);
        put(Feature::Ema50, *ema50[i]);
        put(Feature::Ema200, *ema200[i]);
        put(Feature::Rsi14, *rsi14[i]);
        put(Feature::SmallEmaDiff, *ema5[i] - *ema13[i]);
        put(Feature::BigEmaDiff, *ema50[i] - *ema200[i]);
    }
    return FeatureTable::with_history(std::move(dates), std::move(cols), history);
}

std::pair<FeatureTable, FeatureTable> split_train_test(const FeatureTable& table) {
    const std::size_t n = table.size();
    if (n < 2) throw InputError("split_train_test: need at least 2 rows");
    // floor(0.8 n) in integer arithmetic.
    const std::size_t cut = (n * 4) / 5;
    return {table.slice(0, cut), table.slice(cut, n)};
}

void write_enriched_csv(std::ostream& out, const FeatureTable& table) {
    out << enriched_header() << '\n';
    for (std::size_t r = 0; r < table.size(); ++r) {
        out << text::format_iso_date(table.date(r));
        for (Feature f : kEnrichedOrder) out << ',' << text::format_double(table.at(f, r));
        out << '\n';
    }
}

FeatureTable parse_enriched_csv(std::istream& in, std::string_view source) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) fail_at(source, 1, "missing header");
    if (text::trim(line) != enriched_header()) fail_at(source, 1, "expected header '" + enriched_header() + "'");

    std::vector<std::chrono::year_month_day> dates;
    FeatureTable::Columns cols;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = text::trim(line);
        if (body.empty()) continue;
        const auto fields = text::split(body, ',');
        if (fields.size() != kEnrichedOrder.size() + 1) {
            fail_at(source, line_no, "expected " + std::to_string(kEnrichedOrder.size() + 1) + " fields");
        }
        const auto date = text::parse_iso_date(fields[0]);
        if (!date) fail_at(source, line_no, "unparsable date '" + std::string(fields[0]) + "'");
        if (!dates.empty() && !(dates.back() < *date)) fail_at(source, line_no, "dates not increasing");
        dates.push_back(*date);
        for (std::size_t i = 0; i < kEnrichedOrder.size(); ++i) {
            const auto v = text::parse_double(fields[i + 1]);
            if (!v) fail_at(source, line_no, "unparsable number '" + std::string(fields[i + 1]) + "'");
            cols[index_of(kEnrichedOrder[i])].push_back(*v);
        }
    }
    return FeatureTable::from_columns(std::move(dates), std::move(cols));
}

FeatureTable load_enriched_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return parse_enriched_csv(in, path.string());
}

} // namespace vgp
