#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "crlab/errors.hpp"
#include "crlab/germ.hpp"

using namespace crlab;

namespace {

std::vector<Complex> random_disk(int n, double rmin, double rmax, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> r(rmin, rmax), th(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(std::polar(r(gen), th(gen)));
  return out;
}

}  // namespace

TEST(Germ, CatalogValues) {
  const auto p1 = make_catalog_germ(GermKind::P1);
  const auto p2 = make_catalog_germ(GermKind::P2);
  const auto p3 = make_catalog_germ(GermKind::P3);
  EXPECT_NEAR(p1(0.5), std::exp(-2.0), 1e-16);
  EXPECT_NEAR(p1(Complex{0.0, 0.5}), std::exp(-2.0), 1e-16);
  EXPECT_NEAR(p2(0.5), std::exp(-2.0 + 0.5), 1e-16);
  EXPECT_NEAR(p2(-0.5), std::exp(-2.5), 1e-16);
  EXPECT_NEAR(p3(Complex{0.25, 0.6}), std::exp(-4.0), 1e-16);
  EXPECT_EQ(p3(Complex{0.0, 0.6}), 0.0);
  EXPECT_EQ(p1(0.0), 0.0);
  EXPECT_EQ(p2(0.0), 0.0);
  EXPECT_EQ(make_catalog_germ(GermKind::Zero)(0.3), 0.0);
  EXPECT_DOUBLE_EQ(make_catalog_germ(GermKind::Control)(Complex{0.3, 0.4}), 0.25);
}

TEST(Germ, ExponentParameter) {
  const auto p1 = make_catalog_germ(GermKind::P1, 2.0);
  EXPECT_NEAR(p1(0.5), std::exp(-4.0), 1e-16);
  EXPECT_THROW(make_catalog_germ(GermKind::P1, 0.0), ParameterError);
  EXPECT_THROW(make_catalog_germ(GermKind::P1, -1.0), ParameterError);
}

TEST(Germ, DomainChecked) {
  const auto p1 = make_catalog_germ(GermKind::P1);
  EXPECT_THROW(p1(0.8), DomainError);
  EXPECT_THROW(p1.wirt(Complex{0.0, -0.9}), DomainError);
  EXPECT_NO_THROW(p1(0.75));
  EXPECT_FALSE(p1.contains(0.76));
}

TEST(Germ, ParseKinds) {
  for (auto k : {GermKind::P1, GermKind::P2, GermKind::P3, GermKind::Zero, GermKind::Control}) {
    EXPECT_EQ(parse_germ_kind(germ_kind_id(k)), k);
  }
  EXPECT_THROW(parse_germ_kind("p4"), ParameterError);
}

TEST(Germ, WirtingerMatchesFiniteDifference) {
  const double h = 1e-6;
  for (auto kind : {GermKind::P1, GermKind::P2, GermKind::P3, GermKind::Control}) {
    const auto germ = make_catalog_germ(kind);
    for (const Complex z : random_disk(200, 0.1, 0.7, 17)) {
      if (kind == GermKind::P3 && std::abs(z.real()) < 0.05) continue;
      const Complex exact = germ.wirt(z);
      const Complex fd = wirtinger_fd(germ, z, h);
      EXPECT_LE(std::abs(exact - fd), 1e-7 * std::max(1.0, std::abs(exact)))
          << germ.id() << " at " << z;
    }
  }
}

TEST(Germ, WirtingerVanishesAtOrigin) {
  for (auto kind : {GermKind::P1, GermKind::P2, GermKind::P3, GermKind::Control}) {
    EXPECT_EQ(make_catalog_germ(kind).wirt(0.0), Complex{}) << germ_kind_id(kind);
  }
}

TEST(Germ, SymmetryTraits) {
  const auto p1 = make_catalog_germ(GermKind::P1);
  const auto p3 = make_catalog_germ(GermKind::P3);
  EXPECT_TRUE(p1.rotational());
  EXPECT_TRUE(p3.tubular());
  EXPECT_FALSE(make_catalog_germ(GermKind::P2).rotational());
  for (const Complex z : random_disk(50, 0.05, 0.5, 3)) {
    EXPECT_EQ(p1(z), p1(std::abs(z)));
    const Complex shifted{z.real(), z.imag() * 0.3};
    EXPECT_EQ(p3(z), p3(shifted));
  }
}

TEST(Germ, FlatDecay) {
  const auto p1 = make_catalog_germ(GermKind::P1);
  // P1(r) / r^k -> 0 for every k
  for (int k : {2, 8, 20}) {
    EXPECT_LT(p1(0.01) / std::pow(0.01, k), 1e-3) << k;
  }
  EXPECT_EQ(flat_profile(1e-3, 1.0), 0.0);
  EXPECT_EQ(flat_profile_derivative(1e-3, 1.0), 0.0);
  EXPECT_NEAR(static_cast<double>(flat_profile<long double>(0.5L, 1.0L)), std::exp(-2.0), 1e-16);
}

TEST(Germ, RadialPower) {
  const auto g = make_radial_power_germ(4);
  EXPECT_NEAR(g(Complex{0.3, 0.4}), std::pow(0.5, 4), 1e-16);
  for (const Complex z : random_disk(50, 0.1, 0.6, 5)) {
    EXPECT_LE(std::abs(g.wirt(z) - wirtinger_fd(g, z, 1e-6)), 1e-8);
  }
  EXPECT_EQ(make_radial_power_germ(1).wirt(0.0), Complex{});
}

TEST(Bump, PlateauAndSupport) {
  const BumpFunction chi(0.1);
  EXPECT_EQ(chi(0.0), 1.0);
  EXPECT_EQ(chi(0.0999), 1.0);
  EXPECT_EQ(chi(Complex{0.0, 0.2}), 0.0);
  EXPECT_EQ(chi(0.35), 0.0);
  double prev = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double s = 0.1 + 0.1 * i / 100.0;
    const double v = chi.profile(s);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_LE(v, prev + 1e-15);
    prev = v;
  }
  EXPECT_NEAR(chi.profile(0.15), 0.5, 1e-14);
  EXPECT_THROW(BumpFunction(0.0), ParameterError);
}

TEST(Bump, DerivativeMatchesFiniteDifference) {
  const BumpFunction chi = make_bump(0.1);
  for (double s = 0.105; s < 0.2; s += 0.01) {
    const double h = 1e-7;
    const double fd = (chi.profile(s + h) - chi.profile(s - h)) / (2 * h);
    EXPECT_NEAR(chi.profile_derivative(s), fd, 1e-5);
  }
  const Complex z = std::polar(0.13, 0.7);
  const double h = 1e-7;
  const Complex fd = ((chi(z + h) - chi(z - h)) - Complex{0, 1} * (chi(z + Complex{0, h}) - chi(z - Complex{0, h}))) / (4 * h);
  EXPECT_LE(std::abs(chi.wirt(z) - fd), 1e-5);
  EXPECT_EQ(chi.wirt(0.05), Complex{});
}
