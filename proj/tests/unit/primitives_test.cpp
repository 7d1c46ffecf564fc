#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "vgp/primitives.hpp"

using namespace vgp;
using namespace std::complex_literals;

namespace {

Value rv(std::initializer_list<double> x) { return RealVector(x); }
Value cv(std::initializer_list<Complex> x) { return ComplexVector(x); }

void expect_real_vector(const Value& v, std::initializer_list<double> want, double tol = 0.0) {
    ASSERT_EQ(shape_of(v), Shape::RealVector);
    const auto& got = std::get<RealVector>(v);
    ASSERT_EQ(got.size(), want.size());
    std::size_t i = 0;
    for (double w : want) EXPECT_NEAR(got[i++], w, tol);
}

void expect_complex_vector(const Value& v, std::initializer_list<Complex> want, double tol) {
    ASSERT_EQ(shape_of(v), Shape::ComplexVector);
    const auto& got = std::get<ComplexVector>(v);
    ASSERT_EQ(got.size(), want.size());
    std::size_t i = 0;
    for (Complex w : want) {
        EXPECT_NEAR(got[i].real(), w.real(), tol) << "element " << i;
        EXPECT_NEAR(got[i].imag(), w.imag(), tol) << "element " << i;
        ++i;
    }
}

RealVector random_vector(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    RealVector v = RealVector::filled(kWindowLength, 0.0);
    for (double& x : v) x = d(rng);
    return v;
}

} // namespace

TEST(GpTable, Examples) {
    const auto gp = [](std::string_view n, std::initializer_list<Value> a) {
        return std::get<double>(apply_primitive(Variant::GP, n, a));
    };
    EXPECT_EQ(gp("ADD", {1.0, 2.0}), 3.0);
    EXPECT_EQ(gp("MULT", {2.0, 2.0}), 4.0);
    EXPECT_EQ(gp("SUB", {2.0, 1.0}), 1.0);
    EXPECT_EQ(gp("DIV", {10.0, 5.0}), 2.0);
    EXPECT_EQ(gp("DIV", {7.0, 0.0}), 1.0);
    EXPECT_EQ(gp("NEG", {10.0}), -10.0);
    EXPECT_EQ(gp("SIN", {0.0}), 0.0);
    EXPECT_EQ(gp("COS", {0.0}), 1.0);
    EXPECT_EQ(gp("TAN", {0.0}), 0.0);
    EXPECT_EQ(gp("SIGNUM", {10.0}), 1.0);
    EXPECT_EQ(gp("SIGNUM", {-3.0}), -1.0);
    EXPECT_EQ(gp("SIGNUM", {0.0}), 0.0);
    EXPECT_EQ(gp("GT", {10.0, 5.0}), 1.0);
    EXPECT_EQ(gp("GT", {5.0, 5.0}), -1.0);
}

TEST(GpTable, RejectsVectors) {
    EXPECT_THROW(apply_primitive(Variant::GP, "ADD", {rv({1, 2}), 1.0}), std::invalid_argument);
    EXPECT_THROW(apply_primitive(Variant::GP, "DOT", {1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(apply_primitive(Variant::GP, "ADD", {1.0}), std::invalid_argument);
}

TEST(VgpTable, Examples) {
    expect_real_vector(apply_primitive(Variant::VGP, "ADD", {rv({1, 2, 3}), rv({4, 5, 6})}), {5, 7, 9});
    expect_real_vector(apply_primitive(Variant::VGP, "MULT", {rv({1, 2, 3}), rv({4, 5, 6})}), {4, 10, 18});
    expect_real_vector(apply_primitive(Variant::VGP, "SUB", {rv({4, 5, 6}), rv({1, 2, 3})}), {3, 3, 3});
    expect_real_vector(apply_primitive(Variant::VGP, "DIV", {rv({4, 9, 8}), rv({2, 3, 0})}), {2, 3, 1});
    EXPECT_EQ(std::get<double>(apply_primitive(Variant::VGP, "DOT", {rv({1, 2, 3}), rv({4, 5, 6})})), 32.0);
    expect_real_vector(apply_primitive(Variant::VGP, "NEG", {rv({-1, 2, -3})}), {1, -2, 3});
    const double pi = std::numbers::pi;
    expect_real_vector(apply_primitive(Variant::VGP, "SIN", {rv({0, pi / 2, pi})}), {0, 1, 0}, 1e-12);
    expect_real_vector(apply_primitive(Variant::VGP, "COS", {rv({0, pi / 2, pi})}), {1, 0, -1}, 1e-12);
    expect_real_vector(apply_primitive(Variant::VGP, "TAN", {rv({0, pi / 4})}), {0, 1}, 1e-12);
    // The printed table value 5 is a typo; the arithmetic mean is 2.5.
    EXPECT_EQ(std::get<double>(apply_primitive(Variant::VGP, "MEAN", {rv({1, 2, 3, 4})})), 2.5);
    EXPECT_NEAR(std::get<double>(apply_primitive(Variant::VGP, "STD_VAR", {rv({1, 2, 3, 4})})), 1.29, 1e-3);
    expect_real_vector(apply_primitive(Variant::VGP, "CUM_MEAN", {rv({1, 2, 3, 4})}), {1, 1.5, 2, 2.5});
    EXPECT_EQ(std::get<double>(apply_primitive(Variant::VGP, "GT_THAN", {rv({5, 3}), rv({1, 3})})), 1.0);
    EXPECT_EQ(std::get<double>(apply_primitive(Variant::VGP, "GT_THAN", {rv({1, 3}), rv({5, 3})})), -1.0);
    EXPECT_EQ(std::get<double>(apply_primitive(Variant::VGP, "GT_THAN", {rv({2, 2}), rv({1, 3})})), 0.0);
}

TEST(VgpTable, Reductions) {
    EXPECT_EQ(std::get<double>(apply_primitive(Variant::VGP, "STD_VAR", {rv({4})})), 0.0);
    EXPECT_EQ(std::get<double>(apply_primitive(Variant::VGP, "STD_VAR", {3.0})), 0.0);
    EXPECT_EQ(std::get<double>(apply_primitive(Variant::VGP, "MEAN", {3.0})), 3.0);
    EXPECT_EQ(std::get<double>(apply_primitive(Variant::VGP, "CUM_MEAN", {3.0})), 3.0);
    EXPECT_EQ(std::get<double>(apply_primitive(Variant::VGP, "ADD", {1.0, 2.0})), 3.0);
}

TEST(CvgpTable, Examples) {
    const Value a = cv({1.0 + 2i, 3.0 - 4i});
    const Value b = cv({5.0 - 1i, 2.0 + 3i});
    expect_complex_vector(apply_primitive(Variant::CVGP, "ADD", {a, b}), {6.0 + 1i, 5.0 - 1i}, 0.0);
    expect_complex_vector(apply_primitive(Variant::CVGP, "MULT", {a, b}), {7.0 + 9i, 18.0 + 1i}, 0.0);
    expect_complex_vector(apply_primitive(Variant::CVGP, "SUB", {a, b}), {-4.0 + 3i, 1.0 - 7i}, 0.0);
    expect_complex_vector(apply_primitive(Variant::CVGP, "DIV", {a, b}), {0.115 + 0.423i, -0.462 - 1.308i}, 1e-3);
    const Complex dot = std::get<Complex>(apply_primitive(Variant::CVGP, "DOT", {a, b}));
    EXPECT_NEAR(dot.real(), -3.0, 1e-12);
    EXPECT_NEAR(dot.imag(), 6.0, 1e-12);
    expect_complex_vector(apply_primitive(Variant::CVGP, "NEG", {a}), {-1.0 - 2i, -3.0 + 4i}, 0.0);
    expect_complex_vector(apply_primitive(Variant::CVGP, "LOG", {a}), {0.805 + 1.107i, 1.609 - 0.927i}, 1e-3);
    expect_complex_vector(apply_primitive(Variant::CVGP, "SQRT", {a}), {1.272 + 0.786i, 2.0 - 1i}, 1e-3);
    expect_complex_vector(apply_primitive(Variant::CVGP, "SIN", {a}), {3.166 + 1.960i, 3.854 + 27.017i}, 1e-3);
    // The table prints -2.033 for the first real part; cos(1+2i) = cos(1)cosh(2) - i sin(1)sinh(2) has a positive one.
    expect_complex_vector(apply_primitive(Variant::CVGP, "COS", {a}), {2.033 - 3.052i, -27.035 + 3.851i}, 1e-3);
    expect_complex_vector(apply_primitive(Variant::CVGP, "TAN", {a}), {0.034 + 1.015i, -0.0002 - 0.999i}, 1e-3);
    const Value c = cv({1.0 + 2i, 3.0 - 4i, 5.0 - 7i});
    const Complex mean = std::get<Complex>(apply_primitive(Variant::CVGP, "MEAN", {c}));
    EXPECT_NEAR(mean.real(), 3.0, 1e-12);
    EXPECT_NEAR(mean.imag(), -3.0, 1e-12);
    expect_complex_vector(apply_primitive(Variant::CVGP, "CUM_MEAN", {c}), {1.0 + 2i, 2.0 - 1i, 3.0 - 3i}, 1e-12);
    EXPECT_EQ(std::get<Complex>(apply_primitive(Variant::CVGP, "GT_THAN_REAL", {a, b})), Complex(-1.0, 0.0));
    EXPECT_EQ(std::get<Complex>(apply_primitive(Variant::CVGP, "GT_THAN_REAL", {b, a})), Complex(1.0, 0.0));
    EXPECT_EQ(std::get<Complex>(apply_primitive(Variant::CVGP, "GT_THAN_COMPLEX", {a, b})), Complex(0.0, -1.0));
    EXPECT_EQ(std::get<Complex>(apply_primitive(Variant::CVGP, "GT_THAN_COMPLEX", {b, a})), Complex(0.0, 1.0));
    EXPECT_EQ(std::get<Complex>(apply_primitive(Variant::CVGP, "GT_THAN_REAL", {a, a})), Complex(-1.0, 0.0));
}

TEST(CvgpTable, ProtectedDivision) {
    EXPECT_EQ(protected_div(Complex(3, 4), Complex(0, 0)), Complex(1, 0));
    EXPECT_EQ(protected_div(7.0, 0.0), 1.0);
    EXPECT_EQ(protected_div(10.0, 5.0), 2.0);
}

TEST(StvgpTable, Examples) {
    EXPECT_FALSE(std::get<bool>(apply_primitive(Variant::STVGP, "AND", {true, false})));
    EXPECT_TRUE(std::get<bool>(apply_primitive(Variant::STVGP, "OR", {false, true})));
    EXPECT_FALSE(std::get<bool>(apply_primitive(Variant::STVGP, "XOR", {true, true})));
    EXPECT_TRUE(std::get<bool>(apply_primitive(Variant::STVGP, "XOR", {true, false})));
    EXPECT_FALSE(std::get<bool>(apply_primitive(Variant::STVGP, "NOT", {true})));
    expect_real_vector(apply_primitive(Variant::STVGP, "IF_ELSE", {true, rv({1, 2, 3}), rv({4, 5, 6})}), {1, 2, 3});
    expect_real_vector(apply_primitive(Variant::STVGP, "IF_ELSE", {false, rv({1, 2, 3}), rv({4, 5, 6})}), {4, 5, 6});
    // The printed table value is false, but 10 > 7 under the stated rule.
    EXPECT_TRUE(std::get<bool>(apply_primitive(Variant::STVGP, "SUM_GT", {rv({1, 2, 3, 4}), rv({1, 1, 2, 3})})));
    EXPECT_FALSE(std::get<bool>(apply_primitive(Variant::STVGP, "SUM_GT", {rv({1, 1, 2, 3}), rv({1, 2, 3, 4})})));
    EXPECT_TRUE(std::get<bool>(apply_primitive(Variant::STVGP, "GT_THAN", {rv({5, 3}), rv({1, 3})})));
    EXPECT_FALSE(std::get<bool>(apply_primitive(Variant::STVGP, "GT_THAN", {rv({2, 2}), rv({1, 3})})));
    EXPECT_THROW(apply_primitive(Variant::STVGP, "AND", {true, 1.0}), std::invalid_argument);
}

TEST(Broadcast, Replicates) {
    const auto v = std::get<RealVector>(broadcast(2.5));
    ASSERT_EQ(v.size(), 21u);
    for (double x : v) EXPECT_EQ(x, 2.5);
    const auto c = std::get<ComplexVector>(broadcast(Complex(1, 1)));
    ASSERT_EQ(c.size(), 21u);
    for (Complex x : c) EXPECT_EQ(x, Complex(1, 1));
    EXPECT_THROW(broadcast(true), std::invalid_argument);
}

TEST(Broadcast, CommutesWithElementwiseOps) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const RealVector v = random_vector(rng);
        const double s = d(rng);
        for (const char* op : {"ADD", "SUB", "MULT", "DIV"}) {
            const Value lhs = apply_primitive(Variant::VGP, op, {s, v});
            const Value rhs = apply_primitive(Variant::VGP, op, {broadcast(s), v});
            EXPECT_EQ(std::get<RealVector>(lhs), std::get<RealVector>(rhs)) << op;
            const Value lhs2 = apply_primitive(Variant::VGP, op, {v, s});
            const Value rhs2 = apply_primitive(Variant::VGP, op, {v, broadcast(s)});
            EXPECT_EQ(std::get<RealVector>(lhs2), std::get<RealVector>(rhs2)) << op;
        }
    }
}

TEST(Cvgp, AgreesWithVgpOnRealInputs) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const RealVector a = random_vector(rng);
        const RealVector b = random_vector(rng);
        ComplexVector ca = ComplexVector::filled(a.size(), 0.0), cb = ComplexVector::filled(b.size(), 0.0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            ca[i] = a[i];
            cb[i] = b[i];
        }
        for (const char* op : {"ADD", "SUB", "MULT", "DIV"}) {
            const auto r = std::get<RealVector>(apply_primitive(Variant::VGP, op, {a, b}));
            const auto c = std::get<ComplexVector>(apply_primitive(Variant::CVGP, op, {ca, cb}));
            for (std::size_t i = 0; i < r.size(); ++i) {
                EXPECT_NEAR(c[i].real(), r[i], 1e-12 * std::max(1.0, std::abs(r[i]))) << op;
                EXPECT_EQ(c[i].imag(), 0.0) << op;
            }
        }
        for (const char* op : {"NEG", "CUM_MEAN"}) {
            const auto r = std::get<RealVector>(apply_primitive(Variant::VGP, op, {a}));
            const auto c = std::get<ComplexVector>(apply_primitive(Variant::CVGP, op, {ca}));
            for (std::size_t i = 0; i < r.size(); ++i) EXPECT_NEAR(c[i].real(), r[i], 1e-12) << op;
        }
        EXPECT_NEAR(std::get<Complex>(apply_primitive(Variant::CVGP, "MEAN", {ca})).real(),
                    std::get<double>(apply_primitive(Variant::VGP, "MEAN", {a})), 1e-12);
    }
}

TEST(InterpretSignal, Thresholds) {
    EXPECT_EQ(interpret_signal(1.0, Variant::GP), Signal::Buy);
    EXPECT_EQ(interpret_signal(-1.0, Variant::GP), Signal::Sell);
    EXPECT_EQ(interpret_signal(0.3, Variant::GP), Signal::Hold);
    EXPECT_EQ(interpret_signal(std::numeric_limits<double>::infinity(), Variant::GP), Signal::Hold);
    EXPECT_EQ(interpret_signal(std::nan(""), Variant::VGP), Signal::Hold);
    EXPECT_EQ(interpret_signal(RealVector::filled(21, -2.4), Variant::VGP), Signal::Sell);
    EXPECT_EQ(interpret_signal(Complex(-3, 100), Variant::CVGP), Signal::Sell);
    EXPECT_EQ(interpret_signal(false, Variant::STVGP), Signal::Sell);
    EXPECT_EQ(interpret_signal(true, Variant::STVGP), Signal::Buy);
}

TEST(InterpretSignal, PermutationInvariant) {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
        RealVector v = RealVector::filled(21, 0.0);
        // Bias the mean near the thresholds so boundary rounding is exercised.
        const double target = trial % 2 ? 1.0 : -1.0;
        for (double& x : v) x = target + d(rng);
        double shift = 0.0;
        for (double x : v) shift += x;
        shift = shift / 21.0 - target;
        for (double& x : v) x -= shift;
        const Signal s = interpret_signal(v, Variant::VGP);
        for (int p = 0; p < 10; ++p) {
            std::shuffle(v.begin(), v.end(), rng);
            EXPECT_EQ(interpret_signal(v, Variant::VGP), s);
        }
    }
}

TEST(PrimitiveSets, FunctionNamesMatchTables) {
    auto names = [](Variant v) {
        std::vector<std::string> out;
        for (const Symbol& s : PrimitiveSet::of(v).symbols()) {
            if (!s.is_terminal()) out.push_back(s.name);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    EXPECT_EQ(names(Variant::GP),
              (std::vector<std::string>{"ADD", "COS", "DIV", "GT", "MULT", "NEG", "SIGNUM", "SIN", "SUB", "TAN"}));
    EXPECT_EQ(names(Variant::VGP), (std::vector<std::string>{"ADD", "COS", "CUM_MEAN", "DIV", "DOT", "GT_THAN", "MEAN",
                                                             "MULT", "NEG", "SIN", "STD_VAR", "SUB", "TAN"}));
    EXPECT_EQ(names(Variant::CVGP),
              (std::vector<std::string>{"ADD", "COS", "CUM_MEAN", "DIV", "DOT", "GT_THAN_COMPLEX", "GT_THAN_REAL",
                                        "LOG", "MEAN", "MULT", "NEG", "SIN", "SQRT", "SUB", "TAN"}));
    EXPECT_EQ(names(Variant::STVGP),
              (std::vector<std::string>{"ADD", "AND", "COS", "CUM_MEAN", "DIV", "DOT", "GT_THAN", "IF_ELSE", "MEAN",
                                        "MULT", "NEG", "NOT", "OR", "SIN", "STD_VAR", "SUB", "SUM_GT", "TAN", "XOR"}));
}

TEST(PrimitiveSets, Terminals) {
    const auto& gp = PrimitiveSet::of(Variant::GP);
    EXPECT_EQ(gp.terminals(Kind::Real).size(), 13u);
    EXPECT_TRUE(gp.find("profitPercentage"));
    EXPECT_FALSE(gp.find("close_w21"));
    for (Variant v : {Variant::VGP, Variant::STVGP}) {
        EXPECT_EQ(PrimitiveSet::of(v).terminals(Kind::Real).size(), 25u);
        EXPECT_FALSE(PrimitiveSet::of(v).find("profitPercentage_w21"));
    }
    const auto& cvgp = PrimitiveSet::of(Variant::CVGP);
    EXPECT_EQ(cvgp.terminals(Kind::Complex).size(), 25u);
    EXPECT_TRUE(cvgp.terminals(Kind::Real).empty());
    EXPECT_EQ(PrimitiveSet::of(Variant::STVGP).root_kind(), Kind::Boolean);
    EXPECT_TRUE(PrimitiveSet::of(Variant::STVGP).terminals(Kind::Boolean).empty());
}

TEST(PrimitiveSets, AlternativesShareSignature) {
    for (Variant v : kAllVariants) {
        const auto& set = PrimitiveSet::of(v);
        for (SymbolId id = 0; id < set.symbols().size(); ++id) {
            const Symbol& s = set.symbol(id);
            for (SymbolId alt : set.alternatives(id)) {
                const Symbol& a = set.symbol(alt);
                EXPECT_NE(alt, id);
                EXPECT_EQ(a.arity, s.arity);
                EXPECT_EQ(a.result, s.result);
                EXPECT_TRUE(std::equal(a.arg_kinds().begin(), a.arg_kinds().end(), s.arg_kinds().begin()));
            }
        }
    }
}

TEST(PrimitiveSets, VariantNames) {
    for (Variant v : kAllVariants) EXPECT_EQ(variant_from_name(variant_name(v)), v);
    EXPECT_FALSE(variant_from_name("LGP"));
}
