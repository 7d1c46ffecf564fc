#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vgp/market_data.hpp"
#include "vgp/primitives.hpp"
#include "vgp/value.hpp"

namespace vgp {

/// Expression tree stored as a prefix-order sequence of symbol ids of one
/// variant's primitive set. Depth counts edges: a lone terminal has depth 0.
class ExprTree {
public:
    ExprTree() = default;

    /// Throws std::invalid_argument if `prefix` is not exactly one well-formed tree.
    ExprTree(Variant variant, std::vector<SymbolId> prefix);

    Variant variant() const noexcept { return variant_; }
    const PrimitiveSet& primitives() const { return PrimitiveSet::of(variant_); }

    std::span<const SymbolId> nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::size_t depth() const noexcept { return depth_; }
    bool empty() const noexcept { return nodes_.empty(); }

    /// One past the last node of the subtree rooted at `pos`.
    std::size_t subtree_end(std::size_t pos) const;

    /// Depth of node `pos` below the root.
    std::size_t node_level(std::size_t pos) const;

    /// Returns a copy where nodes `[begin, end)` (a whole subtree) are replaced.
    ExprTree replace(std::size_t begin, std::size_t end, std::span<const SymbolId> subtree) const;

    friend bool operator==(const ExprTree& a, const ExprTree& b) {
        return a.variant_ == b.variant_ && a.nodes_ == b.nodes_;
    }

private:
    Variant variant_ = Variant::GP;
    std::vector<SymbolId> nodes_;
    std::size_t depth_ = 0;
};

/// Functional notation, e.g. `SUM_GT(close_w21, ema50_w21)`.
std::string to_string(const ExprTree& tree);

/// Inverse of to_string. Throws ParseError naming the offending token.
ExprTree parse_tree(std::string_view text, Variant variant);

struct TypeViolation {
    std::vector<std::size_t> path;  ///< child indices from the root
    std::string message;
};

/// Checks the root kind and every parent/child kind pair; returns the first
/// violation in prefix order.
std::optional<TypeViolation> typecheck(const ExprTree& tree, const PrimitiveSet& set);

/// Terminal environment for one row.
struct EvalContext {
    const FeatureTable* table = nullptr;
    std::size_t row = 0;
    double profit_percentage = 0.0;
};

Value evaluate(const ExprTree& tree, const EvalContext& ctx);

} // namespace vgp
