#include "cflab/curve_table.hpp"
#include "cflab/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

namespace cflab {
namespace {

TEST(CurveTable, CsvLayout) {
    CurveTable t("b_new", {"a", "b"});
    t.add_row(1.0, {0.1, std::numeric_limits<double>::infinity()});
    t.add_row(2.5, {-3.0, 1e-300});
    EXPECT_EQ(t.to_csv(), "b_new,a,b\n1,0.1,inf\n2.5,-3,1e-300\n");
}

TEST(CurveTable, RejectsBadRows) {
    CurveTable t("x", {"y"});
    t.add_row(1.0, {2.0});
    EXPECT_THROW(t.add_row(1.0, {2.0}), InvalidInputError);
    EXPECT_THROW(t.add_row(2.0, {2.0, 3.0}), DimensionError);
    EXPECT_THROW(t.column("z"), InvalidInputError);
}

TEST(CurveTable, ParseRoundTripsExactly) {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    CurveTable t("x", {"p", "q"});
    double x = 0.0;
    for (int k = 0; k < 200; ++k) {
        x += std::abs(dist(rng)) * 1e-3 + 1e-9;
        t.add_row(x, {dist(rng) * 1e-7, k % 17 == 0 ? INFINITY : dist(rng)});
    }
    const CurveTable back = CurveTable::parse_csv(t.to_csv());
    EXPECT_EQ(back.abscissa_values(), t.abscissa_values());
    EXPECT_EQ(back.column("p"), t.column("p"));
    EXPECT_EQ(back.column("q"), t.column("q"));
    EXPECT_EQ(back.to_csv(), t.to_csv());
}

TEST(CurveTable, ParseErrorsNameTheLine) {
    try {
        CurveTable::parse_csv("x,y\n1,2\n2,abc\n");
        FAIL();
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(FormatReal, ShortestRoundTrip) {
    EXPECT_EQ(format_real(0.1), "0.1");
    EXPECT_EQ(format_real(1.0 / 3.0), "0.3333333333333333");
    EXPECT_EQ(format_real(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(format_real(240.0), "240");
}

}  // namespace
}  // namespace cflab
