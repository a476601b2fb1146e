#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <string_view>

namespace crlab {

using Complex = std::complex<double>;

/// exp(-1/s^a) for s > 0 and 0 at s = 0. Underflows to exactly 0 for small s.
template <typename Scalar>
Scalar flat_profile(Scalar s, Scalar a) {
  using std::exp;
  using std::pow;
  if (s <= Scalar(0)) return Scalar(0);
  return exp(-pow(s, -a));
}

/// d/ds of flat_profile; 0 wherever the profile itself has underflowed.
template <typename Scalar>
Scalar flat_profile_derivative(Scalar s, Scalar a) {
  using std::pow;
  const Scalar value = flat_profile(s, a);
  if (value == Scalar(0)) return Scalar(0);
  return value * a * pow(s, -a - Scalar(1));
}

/// A real-valued smooth germ P on the closed disk |z| <= radius, together
/// with its Wirtinger derivative dP/dz = (P_x - i P_y) / 2.
///
/// Evaluation outside the disk throws DomainError. Germs are immutable.
class SmoothGerm {
 public:
  using ValueFn = std::function<double(Complex)>;
  using WirtFn = std::function<Complex(Complex)>;

  struct Traits {
    bool flat_at_origin = false;
    bool tubular = false;
    bool rotational = false;
  };

  SmoothGerm(std::string id, double radius, ValueFn value, WirtFn wirt, Traits traits);

  const std::string& id() const { return id_; }
  double radius() const { return radius_; }
  bool flat_at_origin() const { return traits_.flat_at_origin; }
  bool tubular() const { return traits_.tubular; }
  bool rotational() const { return traits_.rotational; }

  bool contains(Complex z) const;

  double operator()(Complex z) const;
  double eval(Complex z) const { return (*this)(z); }
  Complex wirt(Complex z) const;

 private:
  void check_domain(Complex z) const;

  std::string id_;
  double radius_;
  ValueFn value_;
  WirtFn wirt_;
  Traits traits_;
};

enum class GermKind { P1, P2, P3, Zero, Control };

inline constexpr double kDefaultExponent = 1.0;
inline constexpr double kDefaultGermRadius = 0.75;

/// P1 = exp(-1/|z|^a), P2 = exp(-1/|z|^a + Re z), P3 = exp(-1/|Re z|^a),
/// Zero = 0, Control = |z|^2 (non-flat).
SmoothGerm make_catalog_germ(GermKind kind, double a = kDefaultExponent,
                             double radius = kDefaultGermRadius);

/// Accepts "p1", "p2", "p3", "zero", "control".
GermKind parse_germ_kind(std::string_view id);
std::string_view germ_kind_id(GermKind kind);

/// z -> |z|^degree; used to calibrate the vanishing-order estimator.
SmoothGerm make_radial_power_germ(int degree, double radius = kDefaultGermRadius);

/// Smooth cut-off equal to 1 on |z| < r, 0 on |z| > 2r.
///
/// chi(z) = phi(2r - |z|) / (phi(2r - |z|) + phi(|z| - r)), phi(s) = exp(-1/s) for s > 0.
class BumpFunction {
 public:
  explicit BumpFunction(double inner);

  double inner() const { return inner_; }
  double operator()(Complex z) const { return profile(std::abs(z)); }

  /// chi as a function of s = |z|.
  double profile(double s) const;
  double profile_derivative(double s) const;
  /// Wirtinger derivative of z -> chi(z).
  Complex wirt(Complex z) const;

 private:
  double inner_;
};

BumpFunction make_bump(double r);

/// Central-difference Wirtinger derivative
/// ((P(z+h)-P(z-h)) - i (P(z+ih)-P(z-ih))) / (4h).
Complex wirtinger_fd(const SmoothGerm& germ, Complex z, double h);

}  // namespace crlab
