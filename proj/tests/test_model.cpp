#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "crlab/errors.hpp"
#include "crlab/model.hpp"

using namespace crlab;

namespace {

// d rho / d z by central differences of the real function rho.
Complex wirt_fd(const ModelSpec& m, Complex z1, Complex z2, int which, double h) {
  const Complex I{0.0, 1.0};
  auto f = [&](Complex dz) {
    return which == 0 ? rho(m, z1 + dz, z2) : rho(m, z1, z2 + dz);
  };
  return ((f(h) - f(-h)) - I * (f(I * h) - f(-I * h))) / (4.0 * h);
}

std::vector<ModelSpec> all_models() {
  std::vector<ModelSpec> out;
  for (auto kind : {GermKind::P1, GermKind::P2, GermKind::P3, GermKind::Control}) {
    const auto g = make_catalog_germ(kind);
    out.push_back(ModelSpec::one_nonminimal(g));
    out.push_back(ModelSpec::m_nonminimal(g, 2));
    out.push_back(ModelSpec::m_nonminimal(g, 3));
    out.push_back(ModelSpec::rigid(g));
  }
  return out;
}

}  // namespace

TEST(Model, RhoExamples) {
  const auto p1 = make_catalog_germ(GermKind::P1);
  const double p = std::exp(-2.0);
  EXPECT_NEAR(rho(ModelSpec::one_nonminimal(p1), Complex{0.2, 0.1}, 0.5), 0.2 + 0.1 * p, 1e-16);
  EXPECT_NEAR(rho(ModelSpec::m_nonminimal(p1, 2), Complex{0.2, 0.1}, 0.5), 0.1 - 0.04 * p, 1e-16);
  EXPECT_NEAR(rho(ModelSpec::rigid(p1), Complex{0.2, 0.1}, 0.5), 0.2 + p, 1e-16);
}

TEST(Model, FamilyIds) {
  for (auto f : {Family::OneNonminimal, Family::MNonminimal, Family::Rigid}) {
    EXPECT_EQ(parse_family(family_id(f)), f);
  }
  EXPECT_THROW(parse_family("rigid2"), ParameterError);
  EXPECT_THROW(ModelSpec::m_nonminimal(make_catalog_germ(GermKind::P1), 1), ParameterError);
  EXPECT_EQ(ModelSpec::m_nonminimal(make_catalog_germ(GermKind::P1), 2).describe(),
            "m-nonminimal(m=2) germ=p1");
}

TEST(Model, SurfacePointsAreExact) {
  for (const auto& m : all_models()) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double t = -0.3 + 0.6 * i / 49.0;
      for (int j = 0; j < 50; ++j) {
        const Complex z2 = std::polar(0.74 * (j + 1) / 50.0, 2.399963 * j);
        worst = std::max(worst, std::abs(rho(m, surface_point(m, t, z2))));
      }
    }
    EXPECT_LE(worst, 1e-16) << m.describe();
  }
}

TEST(Model, SurfacePointDomain) {
  const auto m = ModelSpec::one_nonminimal(make_catalog_germ(GermKind::P1));
  EXPECT_THROW(surface_point(m, 0.31, 0.1), DomainError);
  EXPECT_THROW(surface_point(m, 0.1, 0.8), DomainError);
  EXPECT_TRUE(m.z2_in_domain(0.7));
  EXPECT_FALSE(m.z2_in_domain(Complex{0.0, 0.76}));
}

TEST(Model, GradientMatchesFiniteDifference) {
  for (const auto& m : all_models()) {
    for (int i = 0; i < 20; ++i) {
      const Complex z1 = std::polar(0.2, 0.9 * i);
      const Complex z2 = std::polar(0.15 + 0.02 * i, 1.3 * i + 0.2);
      if (m.germ().id() == "p3" && std::abs(z2.real()) < 0.05) continue;
      const Point g = rho_gradient(m, z1, z2);
      EXPECT_LE(std::abs(g(0) - wirt_fd(m, z1, z2, 0, 1e-6)), 1e-8) << m.describe();
      EXPECT_LE(std::abs(g(1) - wirt_fd(m, z1, z2, 1, 1e-6)), 1e-8) << m.describe();
    }
  }
}

TEST(Model, OneNonminimalGradientClosedForm) {
  const auto g = make_catalog_germ(GermKind::P1);
  const auto m = ModelSpec::one_nonminimal(g);
  const Complex z1{0.1, 0.2}, z2{0.3, -0.1};
  const double p = g(z2);
  const Point grad = rho_gradient(m, z1, z2);
  EXPECT_NEAR(std::abs(grad(0) - Complex{0.5, -0.5 * p}), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(grad(1) - 0.2 * g.wirt(z2)), 0.0, 1e-16);
}
