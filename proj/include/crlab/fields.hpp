#pragma once

#include <Eigen/Core>
#include <compare>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "crlab/model.hpp"

namespace crlab {

enum class Component : int { H1 = 1, H2 = 2 };

/// Index of the monomial z1^j z2^k in component h1 or h2.
struct MonomialIndex {
  Component component;
  int j;
  int k;

  auto operator<=>(const MonomialIndex&) const = default;
};

/// Polynomial holomorphic vector field H = h1 d/dz1 + h2 d/dz2 with
/// deg(h1), deg(h2) <= degree_bound. Coefficients are stored sparsely.
class VectorFieldPoly {
 public:
  using CoefficientMap = std::map<MonomialIndex, Complex>;

  explicit VectorFieldPoly(int degree_bound = 0);

  /// c * z1^j z2^k d/dz_component, with the smallest sufficient degree bound.
  static VectorFieldPoly monomial(Component component, int j, int k, Complex c = 1.0);

  int degree_bound() const { return degree_bound_; }
  const CoefficientMap& coefficients() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  /// Sets a coefficient; a zero value erases the entry. Throws ParameterError
  /// when j + k exceeds the degree bound or an index is negative.
  VectorFieldPoly& set(Component component, int j, int k, Complex c);
  Complex coeff(Component component, int j, int k) const;

  /// Same field with a larger degree bound.
  VectorFieldPoly with_degree_bound(int degree_bound) const;

  double max_coefficient() const;
  double coefficient_norm() const;

  /// (h1, h2) at (z1, z2). Monomials are summed in index order from
  /// precomputed power tables, so results are reproducible bit for bit.
  template <typename Scalar>
  Eigen::Matrix<std::complex<Scalar>, 2, 1> evaluate(std::complex<Scalar> z1,
                                                     std::complex<Scalar> z2) const;

  VectorFieldPoly& operator+=(const VectorFieldPoly& other);
  VectorFieldPoly& operator*=(Complex s);

 private:
  int degree_bound_;
  CoefficientMap coeffs_;
};

VectorFieldPoly operator+(VectorFieldPoly a, const VectorFieldPoly& b);
VectorFieldPoly operator*(Complex s, VectorFieldPoly f);
VectorFieldPoly operator*(double s, VectorFieldPoly f);

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 1> VectorFieldPoly::evaluate(std::complex<Scalar> z1,
                                                                    std::complex<Scalar> z2) const {
  using C = std::complex<Scalar>;
  std::vector<C> pow1(static_cast<std::size_t>(degree_bound_) + 1);
  std::vector<C> pow2(pow1.size());
  pow1[0] = C(1);
  pow2[0] = C(1);
  for (std::size_t n = 1; n < pow1.size(); ++n) {
    pow1[n] = pow1[n - 1] * z1;
    pow2[n] = pow2[n - 1] * z2;
  }
  Eigen::Matrix<C, 2, 1> out(C(0), C(0));
  for (const auto& [index, c] : coeffs_) {
    const C coeff(static_cast<Scalar>(c.real()), static_cast<Scalar>(c.imag()));
    const C term = coeff * pow1[static_cast<std::size_t>(index.j)] *
                   pow2[static_cast<std::size_t>(index.k)];
    out(index.component == Component::H1 ? 0 : 1) += term;
  }
  return out;
}

/// (h1(z1, z2), h2(z1, z2)).
Point eval_field(const VectorFieldPoly& field, Complex z1, Complex z2);

/// Re[rho_z1 h1 + rho_z2 h2] at surface_point(model, t, z2). Zero for every
/// t and z2 exactly when Re H is tangent to the model along the sample set.
double tangency_residual(const ModelSpec& model, const VectorFieldPoly& field, double t, Complex z2);

/// Human-readable form, e.g. "z1 dz1 + i z2 dz2".
std::string to_string(const VectorFieldPoly& field);

}  // namespace crlab
