#include "vgp/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace vgp {
namespace {

template <class T>
using Vec = FixedVector<T>;

[[noreturn]] void kind_mismatch(const char* op) {
    throw std::invalid_argument(std::string(op) + ": argument kinds do not match the signature");
}

// Element-wise binary operation with scalar broadcasting.
template <class T, class Op>
Value zip(const Value& a, const Value& b, Op op, const char* name) {
    const T* sa = std::get_if<T>(&a);
    const T* sb = std::get_if<T>(&b);
    const Vec<T>* va = std::get_if<Vec<T>>(&a);
    const Vec<T>* vb = std::get_if<Vec<T>>(&b);
    if (sa && sb) return op(*sa, *sb);

    Vec<T> out;
    if (sa && vb) {
        out.resize(vb->size());
        for (std::size_t i = 0; i < vb->size(); ++i) out[i] = op(*sa, (*vb)[i]);
    } else if (va && sb) {
        out.resize(va->size());
        for (std::size_t i = 0; i < va->size(); ++i) out[i] = op((*va)[i], *sb);
    } else if (va && vb) {
        if (va->size() != vb->size()) throw std::invalid_argument(std::string(name) + ": vector lengths differ");
        out.resize(va->size());
        for (std::size_t i = 0; i < va->size(); ++i) out[i] = op((*va)[i], (*vb)[i]);
    } else {
        kind_mismatch(name);
    }
    return out;
}

template <class T, class Op>
Value map(const Value& a, Op op, const char* name) {
    if (const T* s = std::get_if<T>(&a)) return op(*s);
    const Vec<T>* v = std::get_if<Vec<T>>(&a);
    if (!v) kind_mismatch(name);
    Vec<T> out;
    out.resize(v->size());
    for (std::size_t i = 0; i < v->size(); ++i) out[i] = op((*v)[i]);
    return out;
}

// Views a scalar as a length-1 vector.
template <class T>
std::span<const T> elements(const Value& a, const char* name) {
    if (const T* s = std::get_if<T>(&a)) return {s, 1};
    if (const Vec<T>* v = std::get_if<Vec<T>>(&a)) return v->span();
    kind_mismatch(name);
}

template <class T>
T mean_of(std::span<const T> xs) {
    T sum{};
    for (const T& x : xs) sum += x;
    return xs.empty() ? T{} : sum / static_cast<double>(xs.size());
}

// Both operands after broadcasting a scalar against a vector.
template <class T, class Fn>
auto paired(const Value& a, const Value& b, const char* name, Fn fn) {
    auto xs = elements<T>(a, name);
    auto ys = elements<T>(b, name);
    Vec<T> tmp;
    if (xs.size() == 1 && ys.size() > 1) {
        tmp = Vec<T>::filled(ys.size(), xs[0]);
        xs = tmp.span();
    } else if (ys.size() == 1 && xs.size() > 1) {
        tmp = Vec<T>::filled(xs.size(), ys[0]);
        ys = tmp.span();
    } else if (xs.size() != ys.size()) {
        throw std::invalid_argument(std::string(name) + ": vector lengths differ");
    }
    return fn(xs, ys);
}

bool as_bool(const Value& v, const char* name) {
    const bool* b = std::get_if<bool>(&v);
    if (!b) kind_mismatch(name);
    return *b;
}

// ---- real-valued primitives (GP, VGP, STVGP) ----

Value r_add(std::span<const Value> a) { return zip<double>(a[0], a[1], std::plus<>{}, "ADD"); }
Value r_sub(std::span<const Value> a) { return zip<double>(a[0], a[1], std::minus<>{}, "SUB"); }
Value r_mul(std::span<const Value> a) { return zip<double>(a[0], a[1], std::multiplies<>{}, "MULT"); }
Value r_div(std::span<const Value> a) {
    return zip<double>(a[0], a[1], [](double x, double y) { return protected_div(x, y); }, "DIV");
}
Value r_neg(std::span<const Value> a) { return map<double>(a[0], std::negate<>{}, "NEG"); }
Value r_sin(std::span<const Value> a) { return map<double>(a[0], [](double x) { return std::sin(x); }, "SIN"); }
Value r_cos(std::span<const Value> a) { return map<double>(a[0], [](double x) { return std::cos(x); }, "COS"); }
Value r_tan(std::span<const Value> a) { return map<double>(a[0], [](double x) { return std::tan(x); }, "TAN"); }

Value r_signum(std::span<const Value> a) {
    return map<double>(a[0], [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }, "SIGNUM");
}

Value r_gt(std::span<const Value> a) {
    return zip<double>(a[0], a[1], [](double x, double y) { return x > y ? 1.0 : -1.0; }, "GT");
}

Value r_dot(std::span<const Value> a) {
    return paired<double>(a[0], a[1], "DOT", [](auto xs, auto ys) {
        double s = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) s += xs[i] * ys[i];
        return Value{s};
    });
}

Value r_mean(std::span<const Value> a) { return mean_of(elements<double>(a[0], "MEAN")); }

Value r_std(std::span<const Value> a) {
    const auto xs = elements<double>(a[0], "STD_VAR");
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

template <class T>
Value cumulative_mean(const Value& a, const char* name) {
    if (std::holds_alternative<T>(a)) return a;
    const auto xs = elements<T>(a, name);
    Vec<T> out;
    out.resize(xs.size());
    T sum{};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sum += xs[i];
        out[i] = sum / static_cast<double>(i + 1);
    }
    return out;
}

Value r_cum_mean(std::span<const Value> a) { return cumulative_mean<double>(a[0], "CUM_MEAN"); }

Value r_gt_than(std::span<const Value> a) {
    const double x = mean_of(elements<double>(a[0], "GT_THAN"));
    const double y = mean_of(elements<double>(a[1], "GT_THAN"));
    return x > y ? 1.0 : (x < y ? -1.0 : 0.0);
}

// ---- boolean-valued primitives (STVGP) ----

Value b_gt_than(std::span<const Value> a) {
    return mean_of(elements<double>(a[0], "GT_THAN")) > mean_of(elements<double>(a[1], "GT_THAN"));
}

Value b_sum_gt(std::span<const Value> a) {
    return paired<double>(a[0], a[1], "SUM_GT", [](auto xs, auto ys) {
        const double sx = std::accumulate(xs.begin(), xs.end(), 0.0);
        const double sy = std::accumulate(ys.begin(), ys.end(), 0.0);
        return Value{sx > sy};
    });
}

Value b_and(std::span<const Value> a) { return as_bool(a[0], "AND") && as_bool(a[1], "AND"); }
Value b_or(std::span<const Value> a) { return as_bool(a[0], "OR") || as_bool(a[1], "OR"); }
Value b_xor(std::span<const Value> a) { return as_bool(a[0], "XOR") != as_bool(a[1], "XOR"); }
Value b_not(std::span<const Value> a) { return !as_bool(a[0], "NOT"); }
Value b_if_else(std::span<const Value> a) { return as_bool(a[0], "IF_ELSE") ? a[1] : a[2]; }

// ---- complex primitives (CVGP) ----

Value c_add(std::span<const Value> a) { return zip<Complex>(a[0], a[1], std::plus<>{}, "ADD"); }
Value c_sub(std::span<const Value> a) { return zip<Complex>(a[0], a[1], std::minus<>{}, "SUB"); }
Value c_mul(std::span<const Value> a) { return zip<Complex>(a[0], a[1], std::multiplies<>{}, "MULT"); }
Value c_div(std::span<const Value> a) {
    return zip<Complex>(a[0], a[1], [](Complex x, Complex y) { return protected_div(x, y); }, "DIV");
}
Value c_neg(std::span<const Value> a) { return map<Complex>(a[0], std::negate<>{}, "NEG"); }
Value c_log(std::span<const Value> a) { return map<Complex>(a[0], [](Complex x) { return std::log(x); }, "LOG"); }
Value c_sqrt(std::span<const Value> a) { return map<Complex>(a[0], [](Complex x) { return std::sqrt(x); }, "SQRT"); }
Value c_sin(std::span<const Value> a) { return map<Complex>(a[0], [](Complex x) { return std::sin(x); }, "SIN"); }
Value c_cos(std::span<const Value> a) { return map<Complex>(a[0], [](Complex x) { return std::cos(x); }, "COS"); }
Value c_tan(std::span<const Value> a) { return map<Complex>(a[0], [](Complex x) { return std::tan(x); }, "TAN"); }

// Hermitian inner product: the first operand is conjugated.
Value c_dot(std::span<const Value> a) {
    return paired<Complex>(a[0], a[1], "DOT", [](auto xs, auto ys) {
        Complex s{};
        for (std::size_t i = 0; i < xs.size(); ++i) s += std::conj(xs[i]) * ys[i];
        return Value{s};
    });
}

Value c_mean(std::span<const Value> a) { return mean_of(elements<Complex>(a[0], "MEAN")); }
Value c_cum_mean(std::span<const Value> a) { return cumulative_mean<Complex>(a[0], "CUM_MEAN"); }

Value c_gt_real(std::span<const Value> a) {
    const Complex x = mean_of(elements<Complex>(a[0], "GT_THAN_REAL"));
    const Complex y = mean_of(elements<Complex>(a[1], "GT_THAN_REAL"));
    return Complex{x.real() > y.real() ? 1.0 : -1.0, 0.0};
}

Value c_gt_complex(std::span<const Value> a) {
    const Complex x = mean_of(elements<Complex>(a[0], "GT_THAN_COMPLEX"));
    const Complex y = mean_of(elements<Complex>(a[1], "GT_THAN_COMPLEX"));
    return Complex{0.0, x.imag() > y.imag() ? 1.0 : -1.0};
}

// Order-independent mean so the signal depends only on the multiset of values.
double canonical_mean(std::span<const double> xs) {
    RealVector sorted(xs);
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    for (double x : sorted) sum += x;
    return sum / static_cast<double>(xs.size());
}

Signal threshold(double x) {
    if (!std::isfinite(x)) return Signal::Hold;
    if (x >= 1.0) return Signal::Buy;
    if (x <= -1.0) return Signal::Sell;
    return Signal::Hold;
}

} // namespace

std::string_view variant_name(Variant v) noexcept {
    switch (v) {
    case Variant::GP: return "GP";
    case Variant::VGP: return "VGP";
    case Variant::CVGP: return "CVGP";
    case Variant::STVGP: return "STVGP";
    }
    return "?";
}

std::optional<Variant> variant_from_name(std::string_view name) noexcept {
    for (Variant v : kAllVariants) {
        if (variant_name(v) == name) return v;
    }
    return std::nullopt;
}

std::string_view kind_name(Kind k) noexcept {
    switch (k) {
    case Kind::Real: return "Real";
    case Kind::Complex: return "Complex";
    case Kind::Boolean: return "Boolean";
    }
    return "?";
}

Kind kind_of(const Value& v) noexcept {
    switch (shape_of(v)) {
    case Shape::RealScalar:
    case Shape::RealVector: return Kind::Real;
    case Shape::ComplexScalar:
    case Shape::ComplexVector: return Kind::Complex;
    case Shape::Boolean: return Kind::Boolean;
    }
    return Kind::Real;
}

std::string_view signal_name(Signal s) noexcept {
    switch (s) {
    case Signal::Buy: return "BUY";
    case Signal::Sell: return "SELL";
    case Signal::Hold: return "HOLD";
    }
    return "?";
}

PrimitiveSet::PrimitiveSet(Variant v) : variant_(v) {
    constexpr Kind R = Kind::Real;
    constexpr Kind C = Kind::Complex;
    constexpr Kind B = Kind::Boolean;
    switch (v) {
    case Variant::GP:
        root_kind_ = R;
        add_function("ADD", {R, R}, R, r_add);
        add_function("MULT", {R, R}, R, r_mul);
        add_function("SUB", {R, R}, R, r_sub);
        add_function("DIV", {R, R}, R, r_div);
        add_function("NEG", {R}, R, r_neg);
        add_function("SIN", {R}, R, r_sin);
        add_function("COS", {R}, R, r_cos);
        add_function("TAN", {R}, R, r_tan);
        add_function("SIGNUM", {R}, R, r_signum);
        add_function("GT", {R, R}, R, r_gt);
        add_terminals(R, false);
        break;
    case Variant::VGP:
    case Variant::STVGP:
        root_kind_ = v == Variant::VGP ? R : B;
        add_function("ADD", {R, R}, R, r_add);
        add_function("MULT", {R, R}, R, r_mul);
        add_function("SUB", {R, R}, R, r_sub);
        add_function("DIV", {R, R}, R, r_div);
        add_function("DOT", {R, R}, R, r_dot);
        add_function("NEG", {R}, R, r_neg);
        add_function("SIN", {R}, R, r_sin);
        add_function("COS", {R}, R, r_cos);
        add_function("TAN", {R}, R, r_tan);
        add_function("MEAN", {R}, R, r_mean);
        add_function("STD_VAR", {R}, R, r_std);
        add_function("CUM_MEAN", {R}, R, r_cum_mean);
        if (v == Variant::VGP) {
            add_function("GT_THAN", {R, R}, R, r_gt_than);
        } else {
            add_function("GT_THAN", {R, R}, B, b_gt_than);
            add_function("SUM_GT", {R, R}, B, b_sum_gt);
            add_function("AND", {B, B}, B, b_and);
            add_function("OR", {B, B}, B, b_or);
            add_function("XOR", {B, B}, B, b_xor);
            add_function("NOT", {B}, B, b_not);
            add_function("IF_ELSE", {B, R, R}, R, b_if_else);
        }
        add_terminals(R, true);
        break;
    case Variant::CVGP:
        root_kind_ = C;
        add_function("ADD", {C, C}, C, c_add);
        add_function("MULT", {C, C}, C, c_mul);
        add_function("SUB", {C, C}, C, c_sub);
        add_function("DIV", {C, C}, C, c_div);
        add_function("DOT", {C, C}, C, c_dot);
        add_function("NEG", {C}, C, c_neg);
        add_function("LOG", {C}, C, c_log);
        add_function("SQRT", {C}, C, c_sqrt);
        add_function("SIN", {C}, C, c_sin);
        add_function("COS", {C}, C, c_cos);
        add_function("TAN", {C}, C, c_tan);
        add_function("MEAN", {C}, C, c_mean);
        add_function("CUM_MEAN", {C}, C, c_cum_mean);
        add_function("GT_THAN_REAL", {C, C}, C, c_gt_real);
        add_function("GT_THAN_COMPLEX", {C, C}, C, c_gt_complex);
        add_terminals(C, true);
        break;
    }
    finalize();
}

const PrimitiveSet& PrimitiveSet::of(Variant v) {
    static const std::array<PrimitiveSet, 4> sets = {PrimitiveSet(Variant::GP), PrimitiveSet(Variant::VGP),
                                                     PrimitiveSet(Variant::CVGP), PrimitiveSet(Variant::STVGP)};
    return sets.at(static_cast<std::size_t>(v));
}

std::optional<SymbolId> PrimitiveSet::find(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].name == name) return static_cast<SymbolId>(i);
    }
    return std::nullopt;
}

void PrimitiveSet::add_function(std::string name, std::initializer_list<Kind> args, Kind result, Evaluator eval) {
    Symbol s;
    s.name = std::move(name);
    s.arity = static_cast<std::uint8_t>(args.size());
    std::copy(args.begin(), args.end(), s.args.begin());
    s.result = result;
    s.eval = eval;
    symbols_.push_back(std::move(s));
}

void PrimitiveSet::add_terminals(Kind kind, bool with_windows) {
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        Symbol s;
        s.feature = static_cast<Feature>(i);
        s.name = std::string(feature_name(s.feature));
        s.result = kind;
        symbols_.push_back(std::move(s));
    }
    if (!with_windows) return;
    // profitPercentage depends on the agent's own history, so it has no window.
    for (std::size_t i = 0; i < kStaticFeatureCount; ++i) {
        Symbol s;
        s.feature = static_cast<Feature>(i);
        s.name = std::string(feature_name(s.feature)) + "_w21";
        s.result = kind;
        s.windowed = true;
        symbols_.push_back(std::move(s));
    }
}

void PrimitiveSet::finalize() {
    const std::size_t n = symbols_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Symbol& s = symbols_[i];
        (s.is_terminal() ? terminals_ : functions_)[index(s.result)].push_back(static_cast<SymbolId>(i));
    }

    alternatives_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Symbol& a = symbols_[i];
            const Symbol& b = symbols_[j];
            if (i != j && a.arity == b.arity && a.result == b.result &&
                std::equal(a.arg_kinds().begin(), a.arg_kinds().end(), b.arg_kinds().begin())) {
                alternatives_[i].push_back(static_cast<SymbolId>(j));
            }
        }
    }

    // Least fixed point of min depth per kind.
    symbol_depth_.assign(n, std::nullopt);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            const Symbol& s = symbols_[i];
            std::optional<std::size_t> d;
            if (s.is_terminal()) {
                d = 0;
            } else {
                std::size_t deepest = 0;
                bool ok = true;
                for (Kind k : s.arg_kinds()) {
                    if (!kind_depth_[index(k)]) { ok = false; break; }
                    deepest = std::max(deepest, *kind_depth_[index(k)]);
                }
                if (ok) d = deepest + 1;
            }
            if (d && (!symbol_depth_[i] || *d < *symbol_depth_[i])) {
                symbol_depth_[i] = d;
                auto& kd = kind_depth_[index(s.result)];
                if (!kd || *d < *kd) kd = d;
                changed = true;
            }
        }
    }
}

Value apply_primitive(Variant variant, std::string_view name, std::span<const Value> args) {
    const PrimitiveSet& set = PrimitiveSet::of(variant);
    const auto id = set.find(name);
    if (!id || set.symbol(*id).is_terminal()) {
        throw std::invalid_argument(std::string(variant_name(variant)) + " has no function " + std::string(name));
    }
    const Symbol& s = set.symbol(*id);
    if (args.size() != s.arity) {
        throw std::invalid_argument(std::string(name) + ": expected " + std::to_string(s.arity) + " arguments");
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (kind_of(args[i]) != s.args[i]) kind_mismatch(s.name.c_str());
        if (variant == Variant::GP && shape_of(args[i]) != Shape::RealScalar) {
            throw std::invalid_argument(s.name + ": standard GP operates on scalars only");
        }
    }
    return s.eval(args);
}

Value apply_primitive(Variant variant, std::string_view name, std::initializer_list<Value> args) {
    return apply_primitive(variant, name, std::span<const Value>(args.begin(), args.size()));
}

Value broadcast(const Value& scalar, std::size_t length) {
    if (const double* x = std::get_if<double>(&scalar)) return RealVector::filled(length, *x);
    if (const Complex* z = std::get_if<Complex>(&scalar)) return ComplexVector::filled(length, *z);
    throw std::invalid_argument("broadcast: argument is not a scalar");
}

double protected_div(double a, double b) noexcept { return b == 0.0 ? 1.0 : a / b; }

Complex protected_div(Complex a, Complex b) noexcept {
    return b == Complex{0.0, 0.0} ? Complex{1.0, 0.0} : a / b;
}

Signal interpret_signal(const Value& output, Variant variant) {
    switch (variant) {
    case Variant::GP:
    case Variant::VGP:
        if (const double* x = std::get_if<double>(&output)) return threshold(*x);
        if (const RealVector* v = std::get_if<RealVector>(&output); v && variant == Variant::VGP && !v->empty()) {
            return threshold(canonical_mean(v->span()));
        }
        break;
    case Variant::CVGP:
        if (const Complex* z = std::get_if<Complex>(&output)) return threshold(z->real());
        if (const ComplexVector* v = std::get_if<ComplexVector>(&output); v && !v->empty()) {
            RealVector re;
            re.resize(v->size());
            for (std::size_t i = 0; i < v->size(); ++i) re[i] = (*v)[i].real();
            return threshold(canonical_mean(re.span()));
        }
        break;
    case Variant::STVGP:
        if (const bool* b = std::get_if<bool>(&output)) return *b ? Signal::Buy : Signal::Sell;
        break;
    }
    throw std::invalid_argument("interpret_signal: output kind is not legal for " +
                                std::string(variant_name(variant)));
}

} // namespace vgp
