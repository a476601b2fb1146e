#pragma once

#include <Eigen/Core>
#include <string>
#include <string_view>

#include "crlab/germ.hpp"

namespace crlab {

/// A point (z1, z2) of C^2.
using Point = Eigen::Vector2cd;

enum class Family {
  OneNonminimal,  ///< Re z1 + (Im z1) P(z2) = 0
  MNonminimal,    ///< Im z1 - (Re z1)^m P(z2) = 0, m >= 2
  Rigid,          ///< Re z1 + P(z2) = 0
};

std::string_view family_id(Family family);
/// Accepts "one-nonminimal", "m-nonminimal", "rigid".
Family parse_family(std::string_view id);

struct SampleBounds {
  double t_max = 0.3;      ///< |t| range of the surface parameter
  double z2_radius = 0.75; ///< disk in the z2 plane
};

class ModelSpec {
 public:
  static ModelSpec one_nonminimal(SmoothGerm germ, SampleBounds bounds = {});
  static ModelSpec m_nonminimal(SmoothGerm germ, int m, SampleBounds bounds = {});
  static ModelSpec rigid(SmoothGerm germ, SampleBounds bounds = {});
  /// m is ignored unless family == MNonminimal.
  static ModelSpec make(Family family, SmoothGerm germ, int m = 2, SampleBounds bounds = {});

  Family family() const { return family_; }
  int m() const { return m_; }
  const SmoothGerm& germ() const { return germ_; }
  const SampleBounds& bounds() const { return bounds_; }

  /// Effective radius of the z2 disk (the smaller of the bound and the germ domain).
  double z2_radius() const;
  bool z2_in_domain(Complex z2) const;

  std::string describe() const;

 private:
  ModelSpec(Family family, int m, SmoothGerm germ, SampleBounds bounds);

  Family family_;
  int m_;
  SmoothGerm germ_;
  SampleBounds bounds_;
};

/// Defining function of the model at (z1, z2).
double rho(const ModelSpec& model, Complex z1, Complex z2);
inline double rho(const ModelSpec& model, const Point& p) { return rho(model, p(0), p(1)); }

/// Exact on-surface parametrization:
///   OneNonminimal (it - tP(z2), z2), MNonminimal (t + i t^m P(z2), z2), Rigid (-P(z2) + it, z2).
Point surface_point(const ModelSpec& model, double t, Complex z2);

/// Wirtinger gradient (d rho/d z1, d rho/d z2).
Point rho_gradient(const ModelSpec& model, Complex z1, Complex z2);
inline Point rho_gradient(const ModelSpec& model, const Point& p) {
  return rho_gradient(model, p(0), p(1));
}

}  // namespace crlab
