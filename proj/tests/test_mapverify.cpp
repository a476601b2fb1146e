#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "crlab/errors.hpp"
#include "crlab/mapverify.hpp"

using namespace crlab;

namespace {

const Complex I{0.0, 1.0};

ModelSpec catalog(GermKind kind) { return ModelSpec::one_nonminimal(make_catalog_germ(kind)); }

std::vector<Complex> fit_grid() { return SampleGrid::shells({0.15, 0.25, 0.35, 0.45, 0.55}, 24); }

}  // namespace

TEST(PolyMap, EvaluateAndCompose) {
  const PolyMap f({1.0, 2.0});       // z + 2 z^2
  const PolyMap g({Complex{0, 1}});  // i z
  EXPECT_EQ(f(0.5), Complex(1.0));
  const PolyMap fg = compose(f, g);  // i z - 2 z^2
  ASSERT_EQ(fg.coefficients().size(), 2u);
  EXPECT_EQ(fg.coefficients()[0], I);
  EXPECT_EQ(fg.coefficients()[1], Complex(-2.0));
  EXPECT_EQ(PolyMap({1.0, 0.0, 0.0}).coefficients().size(), 1u);
}

TEST(Invariance, Examples) {
  const auto grid = SampleGrid::assembly_default();
  for (auto kind : {GermKind::P1, GermKind::P2, GermKind::P3}) {
    EXPECT_LE(invariance_residual(catalog(kind), Scale{2.5}, grid).residual, 1e-15);
  }
  EXPECT_LE(invariance_residual(catalog(GermKind::P1), Rotate{0.7}, grid).residual, 1e-14);
  EXPECT_LE(invariance_residual(catalog(GermKind::P3), TranslateIm{0.1}, grid).residual, 1e-14);
  EXPECT_LE(invariance_residual(catalog(GermKind::P3), Negate{}, grid).residual, 1e-14);
  const auto bad = invariance_residual(catalog(GermKind::P2), Rotate{std::numbers::pi / 2}, grid);
  EXPECT_GE(bad.residual, 1e-3);
}

TEST(Invariance, WitnessNearHalf) {
  // the largest defect of the quarter rotation on P2 sits on the outer shells
  const auto m = catalog(GermKind::P2);
  SampleGrid grid;
  grid.t_values = {0.3};
  grid.z2_values = {0.5};
  const auto rep = invariance_residual(m, Rotate{std::numbers::pi / 2}, grid);
  const double expected = 0.3 * std::abs(m.germ()(Complex{0.0, 0.5}) - m.germ()(0.5));
  EXPECT_NEAR(rep.residual, expected, 1e-15);
  EXPECT_EQ(rep.witness_z2, Complex(0.5));
}

TEST(Invariance, ImageLeavesDomain) {
  EXPECT_THROW(invariance_residual(catalog(GermKind::P3), TranslateIm{0.3}, SampleGrid::assembly_default()),
               DomainError);
}

TEST(MapCandidate, Validation) {
  EXPECT_THROW(MapCandidate(Scale{0.0}), ParameterError);
  EXPECT_THROW(MapCandidate(GeneralPair{0.0, PolyMap::identity()}), ParameterError);
}

TEST(MapCandidate, GroupAxioms) {
  const auto ss = compose(MapCandidate(Scale{2.0}), MapCandidate(Scale{-0.75}));
  ASSERT_TRUE(std::holds_alternative<Scale>(ss.kind));
  EXPECT_EQ(std::get<Scale>(ss.kind).s, -1.5);
  const auto rr = compose(MapCandidate(Rotate{0.3}), MapCandidate(Rotate{0.4}));
  ASSERT_TRUE(std::holds_alternative<Rotate>(rr.kind));
  EXPECT_EQ(std::get<Rotate>(rr.kind).theta, 0.3 + 0.4);
}

TEST(MapCandidate, ComposeOrder) {
  const MapCandidate f = compose(MapCandidate(TranslateIm{0.1}), MapCandidate(Negate{}));
  const Point p(1.0, Complex{0.2, 0.0});
  const Point q = f(p);
  EXPECT_EQ(q(1), Complex(-0.2, 0.1));
  EXPECT_EQ(q(0), Complex(1.0));
}

TEST(MapCandidate, CompositionClosure) {
  const auto grid = SampleGrid::assembly_default();
  const auto m = catalog(GermKind::P1);
  const MapCandidate f = Scale{-3.0};
  const MapCandidate g = Rotate{1.9};
  ASSERT_LE(invariance_residual(m, f, grid).residual, 1e-14);
  ASSERT_LE(invariance_residual(m, g, grid).residual, 1e-14);
  EXPECT_LE(invariance_residual(m, compose(f, g), grid).residual, 1e-12);
  const auto m3 = catalog(GermKind::P3);
  const MapCandidate h = Compose{{TranslateIm{0.05}, Negate{}, Scale{0.5}}};
  EXPECT_LE(invariance_residual(m3, h, grid).residual, 1e-12);
}

TEST(Reparam, Examples) {
  const auto p1 = make_catalog_germ(GermKind::P1);
  const auto rot = check_reparam(p1, PolyMap::rotation(0.9), fit_grid());
  EXPECT_LE(rot.sup_diff, 1e-15);
  EXPECT_NEAR(rot.delta_hat, 1.0, 1e-12);
  const auto p2 = make_catalog_germ(GermKind::P2);
  const auto id = check_reparam(p2, PolyMap::identity(), fit_grid());
  EXPECT_EQ(id.sup_diff, 0.0);
  EXPECT_EQ(id.delta_hat, 1.0);
  const auto dbl = check_reparam(p1, PolyMap::linear(2.0), SampleGrid::shells({0.1, 0.2, 0.3}, 8));
  EXPECT_GT(std::abs(dbl.delta_hat - 1.0), 0.1);
  EXPECT_GT(dbl.sup_diff, 0.01);
}

TEST(Reparam, InsufficientData) {
  EXPECT_THROW(check_reparam(make_catalog_germ(GermKind::Zero), PolyMap::identity(), fit_grid()),
               InsufficientDataError);
}

TEST(Reparam, DeltaIsOneWheneverDiffVanishes) {
  const auto grid = fit_grid();
  struct Case {
    GermKind kind;
    PolyMap g;
  };
  const std::vector<Case> cases{{GermKind::P1, PolyMap::rotation(0.2)},
                                {GermKind::P1, PolyMap::rotation(-2.5)},
                                {GermKind::P3, PolyMap::linear(-1.0)},
                                {GermKind::P2, PolyMap::identity()},
                                {GermKind::P3, PolyMap::linear(Complex{-1.0, 0.0})},
                                {GermKind::P2, PolyMap::rotation(1.0)},
                                {GermKind::P1, PolyMap({1.0, 0.3})}};
  int passed = 0;
  for (const auto& c : cases) {
    const auto rep = check_reparam(make_catalog_germ(c.kind), c.g, grid);
    if (rep.sup_diff <= 1e-12 * rep.max_abs_p) {
      ++passed;
      EXPECT_NEAR(rep.delta_hat, 1.0, 1e-8);
    }
  }
  EXPECT_EQ(passed, 5);
}

TEST(ModulusDerivative, Examples) {
  EXPECT_EQ(check_modulus_derivative(PolyMap::rotation(0.0)), 0.0);
  EXPECT_LE(check_modulus_derivative(PolyMap::rotation(1.234)), 1e-15);
  EXPECT_EQ(check_modulus_derivative(PolyMap::linear(-1.0)), 0.0);
  EXPECT_EQ(check_modulus_derivative(PolyMap::linear(2.0)), 1.0);
  EXPECT_THROW(check_modulus_derivative(PolyMap({0.0, 1.0})), DegenerateMapError);
}

TEST(Symmetries, Examples) {
  const std::vector<double> shells{0.2, 0.35, 0.5};
  const auto s1 = check_symmetries(make_catalog_germ(GermKind::P1), shells, 24);
  EXPECT_LE(s1.rot_defect, 1e-15);
  EXPECT_LE(s1.parity_defect, 1e-15);
  const auto s2 = check_symmetries(make_catalog_germ(GermKind::P2), {0.5}, 24);
  EXPECT_GE(s2.rot_defect, 1e-2);
  const auto s3 = check_symmetries(make_catalog_germ(GermKind::P3), shells, 24);
  EXPECT_LE(s3.parity_defect, 1e-15);
  EXPECT_GE(s3.rot_defect, 1e-2);
}
