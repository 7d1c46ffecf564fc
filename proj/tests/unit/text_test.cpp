#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "vgp/text.hpp"

using namespace vgp;

TEST(Text, FormatDoubleRoundTripsExactly) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        const double x = dist(rng) / 7.0;
        const auto back = text::parse_double(text::format_double(x));
        ASSERT_TRUE(back);
        EXPECT_EQ(*back, x);
    }
}

TEST(Text, FormatsSpecialValues) {
    EXPECT_EQ(text::format_double(0.5), "0.5");
    EXPECT_EQ(text::format_double(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(text::format_double(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(text::format_double(std::nan("")), "nan");
    EXPECT_EQ(*text::parse_double("-inf"), -std::numeric_limits<double>::infinity());
}

TEST(Text, RejectsTrailingGarbage) {
    EXPECT_FALSE(text::parse_double("1.5x"));
    EXPECT_FALSE(text::parse_double(""));
    EXPECT_FALSE(text::parse_int("12a"));
    EXPECT_EQ(*text::parse_int("42"), 42);
}

TEST(Text, SplitKeepsEmptyFields) {
    const auto parts = text::split("a,,b", ',');
    ASSERT_EQ(parts.size(), 3u);
    EXPECT_EQ(parts[1], "");
    EXPECT_EQ(text::trim("  x \t"), "x");
}

TEST(Text, IsoDates) {
    const auto d = text::parse_iso_date("2015-01-02");
    ASSERT_TRUE(d);
    EXPECT_EQ(text::format_iso_date(*d), "2015-01-02");
    EXPECT_FALSE(text::parse_iso_date("2015-02-30"));
    EXPECT_FALSE(text::parse_iso_date("2015/01/02"));
}
