#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vgp/market_data.hpp"
#include "vgp/primitives.hpp"

namespace vgp {

class ExprTree;

/// Money committed to every trade. Profits are never reinvested.
inline constexpr double kStake = 1000.0;

enum class Side : std::uint8_t { Flat, Long, Short };

std::string_view side_name(Side s) noexcept;

struct Position {
    Side side = Side::Flat;
    double shares = 0.0;       ///< kStake / entry_price while in a position
    double entry_price = 0.0;
};

struct TradeState {
    Position position;
    std::optional<Side> pending;     ///< reversal to open at the next row's open
    std::vector<double> realized;    ///< profit of every closed trade
    double profit_percentage = 0.0;  ///< mark-to-close of the open position
};

struct PriceBar {
    double open = 0.0;
    double close = 0.0;
};

/// Unrealized profit of `position` at `close`, in percent of the stake.
double profit_percentage(const Position& position, double close) noexcept;

enum class Action : std::uint8_t { None, OpenLong, OpenShort, CloseLong, CloseShort };

std::string_view action_name(Action a) noexcept;

struct StepOutcome {
    Action opened_pending = Action::None;  ///< a deferred reversal opened at this row's open
    Action action = Action::None;          ///< what the signal caused
    std::optional<double> realized;        ///< profit realized at this row's close
};

/// Advances the ledger by one row:
///  - a pending reversal opens at `bar.open`;
///  - Buy/Sell while flat opens long/short at `bar.open`;
///  - the opposite signal while positioned closes at `bar.close` and schedules
///    the opposite position for the next row;
///  - Hold or a same-direction signal does nothing;
///  - profit_percentage is then marked at `bar.close`.
StepOutcome step(TradeState& state, Signal signal, PriceBar bar);

/// Selection score. The inactive marker ranks below every numeric fitness.
class Fitness {
public:
    static Fitness inactive() noexcept { return Fitness(); }
    static Fitness of(double value) noexcept { return Fitness(value); }

    bool is_inactive() const noexcept { return !value_.has_value(); }
    double value() const { return value_.value(); }

    /// Numeric view for statistics: the inactive marker maps to -infinity.
    double ordinal() const noexcept;

    std::string to_string() const;
    static std::optional<Fitness> parse(std::string_view text);

    friend std::partial_ordering operator<=>(const Fitness& a, const Fitness& b) noexcept;
    friend bool operator==(const Fitness& a, const Fitness& b) noexcept { return a.value_ == b.value_; }

private:
    Fitness() = default;
    explicit Fitness(double v) : value_(v) {}
    std::optional<double> value_;
};

/// ROI times win rate for positive ROI, plain ROI otherwise, inactive without trades.
Fitness fitness_of(double roi, double win_rate, std::size_t n_trades) noexcept;

struct BacktestResult {
    double roi = 0.0;
    double win_rate = 0.0;
    std::size_t n_trades = 0;
    Fitness fitness = Fitness::inactive();
};

/// Half-open row interval of a FeatureTable.
struct RowRange {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const noexcept { return end - begin; }
};

struct LedgerRow {
    std::chrono::year_month_day date;
    Signal signal = Signal::Hold;
    double profit_percentage_in = 0.0;  ///< value the agent saw on this row
    Action opened_pending = Action::None;
    Action action = Action::None;
    bool force_closed = false;          ///< open position closed at the end of the range
    Side position = Side::Flat;         ///< after the row
    std::optional<double> realized;     ///< total profit realized on this row
    double cumulative_roi = 0.0;
};

/// Produces the signal for `row` given the profitPercentage the agent observes.
using SignalSource = std::function<Signal(std::size_t row, double profit_percentage)>;

/// Runs a signal source over `rows` and force-closes any open position at the
/// last close. Throws std::invalid_argument for ranges shorter than two rows.
BacktestResult run_backtest(const SignalSource& agent, const FeatureTable& table, RowRange rows,
                            std::vector<LedgerRow>* ledger = nullptr);

/// Same, with signals from evaluating `agent` row by row.
BacktestResult run_backtest(const ExprTree& agent, const FeatureTable& table, RowRange rows,
                            std::vector<LedgerRow>* ledger = nullptr);

void write_ledger_csv(std::ostream& out, std::span<const LedgerRow> ledger);

} // namespace vgp
