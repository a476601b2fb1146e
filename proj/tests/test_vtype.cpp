#include <gtest/gtest.h>

#include <cmath>

#include "crlab/counterexample.hpp"
#include "crlab/errors.hpp"
#include "crlab/vtype.hpp"

using namespace crlab;

TEST(Radii, LogSpaced) {
  const auto r = default_radii();
  ASSERT_EQ(r.size(), 10u);
  EXPECT_DOUBLE_EQ(r.front(), 1e-3);
  EXPECT_DOUBLE_EQ(r.back(), 1e-1);
  for (std::size_t i = 2; i < r.size(); ++i) {
    EXPECT_NEAR(r[i] / r[i - 1], r[1] / r[0], 1e-12);
  }
  EXPECT_THROW(log_radii(0.1, 0.01, 10), ParameterError);
}

TEST(VanishingOrder, Calibration) {
  for (int k = 1; k <= 4; ++k) {
    const auto g = make_radial_power_germ(2 * k);
    const auto est = vanishing_order(g, 0.0);
    ASSERT_FALSE(est.infinite()) << k;
    EXPECT_EQ(*est.order, 2 * k);
    EXPECT_GE(est.r2, kFitR2);
    EXPECT_EQ(est.note, "");
  }
}

TEST(VanishingOrder, FlatGermsInfiniteAtOrigin) {
  for (auto kind : {GermKind::P1, GermKind::P2, GermKind::P3}) {
    const auto est = vanishing_order(make_catalog_germ(kind), 0.0);
    EXPECT_TRUE(est.infinite()) << germ_kind_id(kind) << " slope " << est.slope;
    EXPECT_EQ(est.window_lo, 1e-3);
    EXPECT_EQ(est.window_hi, 1e-1);
  }
}

TEST(VanishingOrder, ShrinkingWindowStaysInfinite) {
  const auto p1 = make_catalog_germ(GermKind::P1);
  for (double hi : {1e-1, 5e-2, 2e-2, 1e-2}) {
    const auto est = vanishing_order(p1, 0.0, kDefaultKMax, log_radii(hi / 100.0, hi, 10));
    EXPECT_TRUE(est.infinite()) << hi;
  }
}

TEST(VanishingOrder, RegularPoint) {
  const auto est = vanishing_order(make_catalog_germ(GermKind::P1), 0.5);
  ASSERT_FALSE(est.infinite());
  EXPECT_EQ(*est.order, 1);
}

TEST(VanishingOrder, ZeroGermByUnderflow) {
  const auto est = vanishing_order(make_catalog_germ(GermKind::Zero), Complex{0.2, 0.1});
  EXPECT_TRUE(est.infinite());
  EXPECT_EQ(est.note, "by-underflow");
}

TEST(VanishingOrder, Preconditions) {
  const auto p1 = make_catalog_germ(GermKind::P1);
  EXPECT_THROW(vanishing_order(p1, 0.0, 20, log_radii(1e-3, 1e-1, 5)), ParameterError);
  EXPECT_THROW(vanishing_order(p1, 0.7), DomainError);
}

TEST(VanishingOrder, CounterexampleStableAcrossWindows) {
  const CounterexampleParams params;
  const auto g = build_counterexample(params);
  const auto a = vanishing_order(g, params.z20, kDefaultKMax, log_radii(1e-3, 1e-2, 10));
  const auto b = vanishing_order(g, params.z20, kDefaultKMax, log_radii(1e-2, params.r / 2, 10));
  ASSERT_FALSE(a.infinite());
  ASSERT_FALSE(b.infinite());
  EXPECT_EQ(*a.order, 1);
  EXPECT_EQ(*a.order, *b.order);
}

TEST(Scan, P1OnlyOrigin) {
  std::vector<Complex> grid{0.0};
  for (double r : {0.2, 0.4}) {
    for (int k = 0; k < 8; ++k) grid.push_back(std::polar(r, k * 0.785398));
  }
  const auto s = scan_s_infinity(make_catalog_germ(GermKind::P1), grid);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], Complex{});
}

TEST(Scan, P3ImaginaryAxis) {
  std::vector<Complex> grid;
  for (double y : {-0.4, -0.2, 0.0, 0.2, 0.4}) {
    grid.emplace_back(0.0, y);
    grid.emplace_back(0.3, y);
  }
  const auto s = scan_s_infinity(make_catalog_germ(GermKind::P3), grid);
  ASSERT_EQ(s.size(), 5u);
  for (const Complex z : s) EXPECT_EQ(z.real(), 0.0);
}

TEST(Scan, ControlEmpty) {
  const std::vector<Complex> grid{0.0, 0.2, Complex{0.0, 0.3}};
  EXPECT_TRUE(scan_s_infinity(make_catalog_germ(GermKind::Control), grid).empty());
}

TEST(Candidates, ProductSet) {
  const auto m = ModelSpec::one_nonminimal(make_catalog_germ(GermKind::P1));
  const std::vector<Complex> s{0.0};
  const std::vector<double> ts{-0.1, 0.0, 0.1};
  const auto c = p_infinity_candidates(m, s, ts);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], Point(Complex(0.0, -0.1), 0.0));
  EXPECT_EQ(c[1], Point(0.0, 0.0));
  EXPECT_EQ(c[2], Point(Complex(0.0, 0.1), 0.0));
  EXPECT_TRUE(p_infinity_candidates(m, {}, ts).empty());
}

TEST(Candidates, P3Segment) {
  const auto m = ModelSpec::one_nonminimal(make_catalog_germ(GermKind::P3));
  const std::vector<Complex> s{0.0, Complex{0.0, 0.2}};
  const std::vector<double> ts{0.1};
  const auto c = p_infinity_candidates(m, s, ts);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0], Point(Complex(0.0, 0.1), 0.0));
  EXPECT_EQ(c[1], Point(Complex(0.0, 0.1), Complex(0.0, 0.2)));
}
