#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vgp/market_data.hpp"
#include "vgp/value.hpp"

namespace vgp {

enum class Variant : std::uint8_t { GP, VGP, CVGP, STVGP };

inline constexpr std::array<Variant, 4> kAllVariants = {Variant::GP, Variant::VGP, Variant::CVGP,
                                                        Variant::STVGP};

std::string_view variant_name(Variant v) noexcept;
std::optional<Variant> variant_from_name(std::string_view name) noexcept;

/// Static type of a node. Real covers both scalars and 21-vectors; the
/// shape is resolved at run time by broadcasting.
enum class Kind : std::uint8_t { Real, Complex, Boolean };

std::string_view kind_name(Kind k) noexcept;
Kind kind_of(const Value& v) noexcept;

enum class Signal : std::uint8_t { Buy, Sell, Hold };

std::string_view signal_name(Signal s) noexcept;

using SymbolId = std::uint16_t;
using Evaluator = Value (*)(std::span<const Value>);

/// A function (arity > 0) or feature terminal (arity 0) of a primitive set.
struct Symbol {
    std::string name;
    std::uint8_t arity = 0;
    std::array<Kind, 3> args{};
    Kind result = Kind::Real;
    Evaluator eval = nullptr;
    Feature feature = Feature::Close;
    bool windowed = false;

    bool is_terminal() const noexcept { return arity == 0; }
    std::span<const Kind> arg_kinds() const noexcept { return {args.data(), arity}; }
};

/// Function and terminal set of one GP variant. Immutable; obtain the shared
/// instance through `of`.
class PrimitiveSet {
public:
    static const PrimitiveSet& of(Variant v);

    Variant variant() const noexcept { return variant_; }
    Kind root_kind() const noexcept { return root_kind_; }

    std::span<const Symbol> symbols() const noexcept { return symbols_; }
    const Symbol& symbol(SymbolId id) const { return symbols_.at(id); }
    std::optional<SymbolId> find(std::string_view name) const noexcept;

    std::span<const SymbolId> terminals(Kind k) const noexcept { return terminals_[index(k)]; }
    std::span<const SymbolId> functions(Kind k) const noexcept { return functions_[index(k)]; }

    /// Other symbols with identical arity, argument kinds and result kind.
    std::span<const SymbolId> alternatives(SymbolId id) const { return alternatives_.at(id); }

    /// Smallest tree depth (edges) that can produce `k`; nullopt if impossible.
    std::optional<std::size_t> min_depth(Kind k) const noexcept { return kind_depth_[index(k)]; }
    /// Smallest depth of a tree rooted at `id`; nullopt if unreachable.
    std::optional<std::size_t> min_depth(SymbolId id) const { return symbol_depth_.at(id); }

private:
    explicit PrimitiveSet(Variant v);
    static std::size_t index(Kind k) noexcept { return static_cast<std::size_t>(k); }

    void add_function(std::string name, std::initializer_list<Kind> args, Kind result, Evaluator eval);
    void add_terminals(Kind kind, bool with_windows);
    void finalize();

    Variant variant_;
    Kind root_kind_;
    std::vector<Symbol> symbols_;
    std::array<std::vector<SymbolId>, 3> terminals_;
    std::array<std::vector<SymbolId>, 3> functions_;
    std::vector<std::vector<SymbolId>> alternatives_;
    std::array<std::optional<std::size_t>, 3> kind_depth_;
    std::vector<std::optional<std::size_t>> symbol_depth_;
};

/// Evaluates a named function of `variant` on concrete arguments. Throws
/// std::invalid_argument for unknown names, wrong arity, or kinds that
/// broadcasting cannot reconcile.
Value apply_primitive(Variant variant, std::string_view name, std::span<const Value> args);
Value apply_primitive(Variant variant, std::string_view name, std::initializer_list<Value> args);

/// Replicates a real or complex scalar to a vector of `length`.
Value broadcast(const Value& scalar, std::size_t length = kWindowLength);

/// Division returning 1 when the denominator is exactly zero.
double protected_div(double a, double b) noexcept;
Complex protected_div(Complex a, Complex b) noexcept;

/// Maps an agent output to a trading signal. Numeric outputs are reduced to
/// their (real-part) mean: >= 1 buys, <= -1 sells, anything else, including
/// non-finite values, holds. Boolean outputs buy on true and sell on false.
Signal interpret_signal(const Value& output, Variant variant);

} // namespace vgp
