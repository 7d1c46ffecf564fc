#include "vgp/backtest.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "vgp/text.hpp"
#include "vgp/tree.hpp"

namespace vgp {
namespace {

void open_position(Position& p, Side side, double price) {
    p.side = side;
    p.entry_price = price;
    p.shares = kStake / price;
}

// Realizes the open position at `price`.
double close_position(Position& p, double price) {
    const double value = p.shares * price;
    const double profit = p.side == Side::Long ? value - kStake : kStake - value;
    p = Position{};
    return profit;
}

} // namespace

std::string_view side_name(Side s) noexcept {
    switch (s) {
    case Side::Flat: return "FLAT";
    case Side::Long: return "LONG";
    case Side::Short: return "SHORT";
    }
    return "?";
}

std::string_view action_name(Action a) noexcept {
    switch (a) {
    case Action::None: return "NONE";
    case Action::OpenLong: return "OPEN_LONG";
    case Action::OpenShort: return "OPEN_SHORT";
    case Action::CloseLong: return "CLOSE_LONG";
    case Action::CloseShort: return "CLOSE_SHORT";
    }
    return "?";
}

double profit_percentage(const Position& position, double close) noexcept {
    switch (position.side) {
    case Side::Flat: return 0.0;
    case Side::Long: return 100.0 * (position.shares * close - kStake) / kStake;
    case Side::Short: return 100.0 * (kStake - position.shares * close) / kStake;
    }
    return 0.0;
}

StepOutcome step(TradeState& state, Signal signal, PriceBar bar) {
    StepOutcome out;
    Position& pos = state.position;
    if (state.pending) {
        open_position(pos, *state.pending, bar.open);
        out.opened_pending = *state.pending == Side::Long ? Action::OpenLong : Action::OpenShort;
        state.pending.reset();
    }

    if (pos.side == Side::Flat) {
        if (signal == Signal::Buy) {
            open_position(pos, Side::Long, bar.open);
            out.action = Action::OpenLong;
        } else if (signal == Signal::Sell) {
            open_position(pos, Side::Short, bar.open);
            out.action = Action::OpenShort;
        }
    } else if (pos.side == Side::Long && signal == Signal::Sell) {
        out.realized = close_position(pos, bar.close);
        out.action = Action::CloseLong;
        state.pending = Side::Short;
    } else if (pos.side == Side::Short && signal == Signal::Buy) {
        out.realized = close_position(pos, bar.close);
        out.action = Action::CloseShort;
        state.pending = Side::Long;
    }

    if (out.realized) state.realized.push_back(*out.realized);
    state.profit_percentage = profit_percentage(pos, bar.close);
    return out;
}

double Fitness::ordinal() const noexcept {
    return value_ ? *value_ : -std::numeric_limits<double>::infinity();
}

std::string Fitness::to_string() const { return value_ ? text::format_double(*value_) : "inactive"; }

std::optional<Fitness> Fitness::parse(std::string_view s) {
    s = text::trim(s);
    if (s == "inactive") return Fitness::inactive();
    const auto v = text::parse_double(s);
    if (!v) return std::nullopt;
    return Fitness::of(*v);
}

std::partial_ordering operator<=>(const Fitness& a, const Fitness& b) noexcept {
    if (a.is_inactive() || b.is_inactive()) {
        return static_cast<int>(!a.is_inactive()) <=> static_cast<int>(!b.is_inactive());
    }
    return *a.value_ <=> *b.value_;
}

Fitness fitness_of(double roi, double win_rate, std::size_t n_trades) noexcept {
    if (n_trades == 0) return Fitness::inactive();
    return Fitness::of(roi > 0.0 ? roi * win_rate : roi);
}

BacktestResult run_backtest(const SignalSource& agent, const FeatureTable& table, RowRange rows,
                            std::vector<LedgerRow>* ledger) {
    if (rows.end > table.size() || rows.begin >= rows.end || rows.size() < 2) {
        throw std::invalid_argument("run_backtest: need a range of at least 2 rows inside the table");
    }
    const auto open = table.column(Feature::Open);
    const auto close = table.column(Feature::Close);

    TradeState state;
    double profit_sum = 0.0;
    if (ledger) ledger->clear();

    for (std::size_t r = rows.begin; r < rows.end; ++r) {
        const double seen = state.profit_percentage;
        const Signal signal = agent(r, seen);
        const StepOutcome outcome = step(state, signal, PriceBar{open[r], close[r]});
        if (outcome.realized) profit_sum += *outcome.realized;
        if (ledger) {
            ledger->push_back(LedgerRow{table.date(r), signal, seen, outcome.opened_pending, outcome.action, false,
                                        state.position.side, outcome.realized, 100.0 * profit_sum / kStake});
        }
    }

    if (state.position.side != Side::Flat) {
        const double profit = close_position(state.position, close[rows.end - 1]);
        state.realized.push_back(profit);
        profit_sum += profit;
        if (ledger) {
            LedgerRow& last = ledger->back();
            last.force_closed = true;
            last.realized = last.realized.value_or(0.0) + profit;
            last.position = Side::Flat;
            last.cumulative_roi = 100.0 * profit_sum / kStake;
        }
    }

    BacktestResult result;
    result.n_trades = state.realized.size();
    result.roi = 100.0 * profit_sum / kStake;
    if (result.n_trades > 0) {
        std::size_t wins = 0;
        for (double p : state.realized) wins += p > 0.0 ? 1 : 0;
        result.win_rate = static_cast<double>(wins) / static_cast<double>(result.n_trades);
    }
    result.fitness = fitness_of(result.roi, result.win_rate, result.n_trades);
    return result;
}

BacktestResult run_backtest(const ExprTree& agent, const FeatureTable& table, RowRange rows,
                            std::vector<LedgerRow>* ledger) {
    EvalContext ctx{&table, 0, 0.0};
    const Variant variant = agent.variant();
    return run_backtest(
        [&](std::size_t row, double pp) {
            ctx.row = row;
            ctx.profit_percentage = pp;
            return interpret_signal(evaluate(agent, ctx), variant);
        },
        table, rows, ledger);
}

void write_ledger_csv(std::ostream& out, std::span<const LedgerRow> ledger) {
    out << "date,signal,profit_percentage,action,position,realized_profit,cumulative_roi\n";
    for (const LedgerRow& row : ledger) {
        std::string action;
        for (Action a : {row.opened_pending, row.action}) {
            if (a == Action::None) continue;
            if (!action.empty()) action += '+';
            action += action_name(a);
        }
        if (row.force_closed) action += action.empty() ? "FORCE_CLOSE" : "+FORCE_CLOSE";
        if (action.empty()) action = "NONE";
        out << text::format_iso_date(row.date) << ',' << signal_name(row.signal) << ','
            << text::format_double(row.profit_percentage_in) << ',' << action << ',' << side_name(row.position) << ','
            << (row.realized ? text::format_double(*row.realized) : "") << ','
            << text::format_double(row.cumulative_roi) << '\n';
    }
}

} // namespace vgp
