#include "vgp/tree.hpp"

#include <cctype>
#include <stdexcept>

#include "vgp/error.hpp"

namespace vgp {

ExprTree::ExprTree(Variant variant, std::vector<SymbolId> prefix) : variant_(variant), nodes_(std::move(prefix)) {
    const PrimitiveSet& set = primitives();
    if (nodes_.empty()) throw std::invalid_argument("ExprTree: empty prefix");
    // Stack of remaining child slots per open node; its height is the level.
    std::vector<std::size_t> open;
    std::size_t deepest = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (i > 0 && open.empty()) throw std::invalid_argument("ExprTree: trailing nodes after complete tree");
        if (nodes_[i] >= set.symbols().size()) throw std::invalid_argument("ExprTree: symbol id out of range");
        deepest = std::max(deepest, open.size());
        if (!open.empty()) --open.back();
        const std::size_t arity = set.symbol(nodes_[i]).arity;
        if (arity > 0) open.push_back(arity);
        while (!open.empty() && open.back() == 0) open.pop_back();
    }
    if (!open.empty()) throw std::invalid_argument("ExprTree: incomplete tree");
    depth_ = deepest;
}

std::size_t ExprTree::subtree_end(std::size_t pos) const {
    const PrimitiveSet& set = primitives();
    std::size_t pending = 1;
    while (pending > 0) {
        if (pos >= nodes_.size()) throw std::out_of_range("ExprTree: malformed subtree");
        pending += set.symbol(nodes_[pos]).arity;
        --pending;
        ++pos;
    }
    return pos;
}

std::size_t ExprTree::node_level(std::size_t pos) const {
    const PrimitiveSet& set = primitives();
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (i == pos) return open.size();
        if (!open.empty()) --open.back();
        const std::size_t arity = set.symbol(nodes_[i]).arity;
        if (arity > 0) open.push_back(arity);
        while (!open.empty() && open.back() == 0) open.pop_back();
    }
    throw std::out_of_range("ExprTree: node index out of range");
}

ExprTree ExprTree::replace(std::size_t begin, std::size_t end, std::span<const SymbolId> subtree) const {
    std::vector<SymbolId> out;
    out.reserve(nodes_.size() - (end - begin) + subtree.size());
    out.insert(out.end(), nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(begin));
    out.insert(out.end(), subtree.begin(), subtree.end());
    out.insert(out.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(end), nodes_.end());
    return ExprTree(variant_, std::move(out));
}

namespace {

void render(const ExprTree& tree, const PrimitiveSet& set, std::size_t& pos, std::string& out) {
    const Symbol& s = set.symbol(tree.nodes()[pos++]);
    out += s.name;
    if (s.is_terminal()) return;
    out += '(';
    for (std::size_t i = 0; i < s.arity; ++i) {
        if (i > 0) out += ", ";
        render(tree, set, pos, out);
    }
    out += ')';
}

class Parser {
public:
    Parser(std::string_view text, const PrimitiveSet& set) : text_(text), set_(set) {}

    std::vector<SymbolId> parse() {
        std::vector<SymbolId> out;
        node(out);
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input", std::string(text_.substr(pos_)));
        return out;
    }

private:
    void node(std::vector<SymbolId>& out) {
        const std::string name = identifier();
        const auto id = set_.find(name);
        if (!id) fail("unknown primitive or terminal '" + name + "'", name);
        const Symbol& s = set_.symbol(*id);
        out.push_back(*id);
        skip_ws();
        const bool has_parens = pos_ < text_.size() && text_[pos_] == '(';
        if (s.is_terminal()) {
            if (has_parens) fail("terminal '" + name + "' takes no arguments", name);
            return;
        }
        if (!has_parens) fail("'" + name + "' expects " + std::to_string(s.arity) + " arguments", name);
        ++pos_;
        for (std::size_t i = 0; i < s.arity; ++i) {
            if (i > 0) expect(',');
            node(out);
        }
        expect(')');
    }

    std::string identifier() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_) {
            const std::string tok = pos_ < text_.size() ? std::string(1, text_[pos_]) : "<end>";
            fail("expected a name, found '" + tok + "'", tok);
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            const std::string tok = pos_ < text_.size() ? std::string(1, text_[pos_]) : "<end>";
            fail(std::string("expected '") + c + "', found '" + tok + "'", tok);
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& what, std::string token) const {
        throw ParseError("parse error at offset " + std::to_string(pos_) + ": " + what, std::move(token));
    }

    std::string_view text_;
    const PrimitiveSet& set_;
    std::size_t pos_ = 0;
};

std::string path_string(const std::vector<std::size_t>& path) {
    if (path.empty()) return "root";
    std::string s = "root";
    for (std::size_t i : path) s += "/" + std::to_string(i);
    return s;
}

std::optional<TypeViolation> check(const ExprTree& tree, const PrimitiveSet& set, std::size_t& pos, Kind expected,
                                   std::vector<std::size_t>& path) {
    const Symbol& s = set.symbol(tree.nodes()[pos++]);
    if (s.result != expected) {
        return TypeViolation{path, path_string(path) + " (" + s.name + "): expected " +
                                       std::string(kind_name(expected)) + ", got " + std::string(kind_name(s.result))};
    }
    for (std::size_t i = 0; i < s.arity; ++i) {
        path.push_back(i);
        if (auto v = check(tree, set, pos, s.args[i], path)) return v;
        path.pop_back();
    }
    return std::nullopt;
}

Value terminal_value(const Symbol& s, const EvalContext& ctx) {
    const bool complex = s.result == Kind::Complex;
    if (s.feature == Feature::ProfitPercentage) {
        return complex ? Value{Complex{ctx.profit_percentage, 0.0}} : Value{ctx.profit_percentage};
    }
    const std::size_t len = s.windowed ? kWindowLength : 1;
    const auto values = ctx.table->trailing(s.feature, ctx.row, len);
    if (values.empty()) {
        throw std::out_of_range("evaluate: terminal " + s.name + " undefined at row " + std::to_string(ctx.row));
    }
    if (!s.windowed) return complex ? Value{Complex{values[0], 0.0}} : Value{values[0]};
    if (!complex) return RealVector(values);
    ComplexVector v;
    v.resize(len);
    for (std::size_t i = 0; i < len; ++i) v[i] = Complex{values[i], 0.0};
    return v;
}

Value eval_node(std::span<const SymbolId> nodes, const PrimitiveSet& set, std::size_t& pos, const EvalContext& ctx) {
    const Symbol& s = set.symbol(nodes[pos++]);
    if (s.is_terminal()) return terminal_value(s, ctx);
    std::array<Value, 3> args;
    for (std::size_t i = 0; i < s.arity; ++i) args[i] = eval_node(nodes, set, pos, ctx);
    return s.eval(std::span<const Value>(args.data(), s.arity));
}

} // namespace

std::string to_string(const ExprTree& tree) {
    std::string out;
    if (tree.empty()) return out;
    std::size_t pos = 0;
    render(tree, tree.primitives(), pos, out);
    return out;
}

ExprTree parse_tree(std::string_view text, Variant variant) {
    Parser parser(text, PrimitiveSet::of(variant));
    return ExprTree(variant, parser.parse());
}

std::optional<TypeViolation> typecheck(const ExprTree& tree, const PrimitiveSet& set) {
    if (tree.variant() != set.variant()) {
        return TypeViolation{{}, "tree variant " + std::string(variant_name(tree.variant())) +
                                     " does not match primitive set " + std::string(variant_name(set.variant()))};
    }
    if (tree.empty()) return TypeViolation{{}, "empty tree"};
    std::size_t pos = 0;
    std::vector<std::size_t> path;
    return check(tree, set, pos, set.root_kind(), path);
}

Value evaluate(const ExprTree& tree, const EvalContext& ctx) {
    if (ctx.table == nullptr) throw std::invalid_argument("evaluate: no feature table");
    std::size_t pos = 0;
    return eval_node(tree.nodes(), tree.primitives(), pos, ctx);
}

} // namespace vgp
