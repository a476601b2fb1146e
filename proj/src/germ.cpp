#include "crlab/germ.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "crlab/errors.hpp"

namespace crlab {

SmoothGerm::SmoothGerm(std::string id, double radius, ValueFn value, WirtFn wirt, Traits traits)
    : id_(std::move(id)),
      radius_(radius),
      value_(std::move(value)),
      wirt_(std::move(wirt)),
      traits_(traits) {
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
    throw ParameterError("germ radius must be positive and finite");
  }
}

bool SmoothGerm::contains(Complex z) const {
  return std::abs(z) <= radius_ * (1.0 + 1e-12);
}

void SmoothGerm::check_domain(Complex z) const {
  if (!contains(z)) {
    std::ostringstream os;
    os << "germ '" << id_ << "' evaluated at " << z << " outside |z| <= " << radius_;
    throw DomainError(os.str());
  }
}

double SmoothGerm::operator()(Complex z) const {
  check_domain(z);
  return value_(z);
}

Complex SmoothGerm::wirt(Complex z) const {
  check_domain(z);
  return wirt_(z);
}

namespace {

void require_exponent(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("germ exponent a must be positive");
}

SmoothGerm make_p1(double a, double radius) {
  auto value = [a](Complex z) { return flat_profile(std::abs(z), a); };
  auto wirt = [a](Complex z) -> Complex {
    const double s = std::abs(z);
    const double dp = flat_profile_derivative(s, a);
    if (dp == 0.0) return {0.0, 0.0};
    return dp / (2.0 * s) * std::conj(z);
  };
  return SmoothGerm("p1", radius, value, wirt, {.flat_at_origin = true, .rotational = true});
}

SmoothGerm make_p2(double a, double radius) {
  auto value = [a](Complex z) {
    const double s = std::abs(z);
    if (s == 0.0) return 0.0;
    return std::exp(-std::pow(s, -a) + z.real());
  };
  auto wirt = [a](Complex z) -> Complex {
    const double s = std::abs(z);
    if (s == 0.0) return {0.0, 0.0};
    const double p = std::exp(-std::pow(s, -a) + z.real());
    if (p == 0.0) return {0.0, 0.0};
    return p * (0.5 * a * std::pow(s, -a - 2.0) * std::conj(z) + 0.5);
  };
  return SmoothGerm("p2", radius, value, wirt, {.flat_at_origin = true});
}

SmoothGerm make_p3(double a, double radius) {
  auto value = [a](Complex z) { return flat_profile(std::abs(z.real()), a); };
  auto wirt = [a](Complex z) -> Complex {
    const double x = z.real();
    const double dp = flat_profile_derivative(std::abs(x), a);
    return {0.5 * std::copysign(dp, x), 0.0};
  };
  return SmoothGerm("p3", radius, value, wirt, {.flat_at_origin = true, .tubular = true});
}

}  // namespace

SmoothGerm make_catalog_germ(GermKind kind, double a, double radius) {
  require_exponent(a);
  switch (kind) {
    case GermKind::P1:
      return make_p1(a, radius);
    case GermKind::P2:
      return make_p2(a, radius);
    case GermKind::P3:
      return make_p3(a, radius);
    case GermKind::Zero:
      return SmoothGerm(
          "zero", radius, [](Complex) { return 0.0; }, [](Complex) { return Complex{}; },
          {.flat_at_origin = true, .tubular = true, .rotational = true});
    case GermKind::Control:
      return SmoothGerm(
          "control", radius, [](Complex z) { return std::norm(z); },
          [](Complex z) { return std::conj(z); }, {.rotational = true});
  }
  throw ParameterError("unknown germ kind");
}

GermKind parse_germ_kind(std::string_view id) {
  if (id == "p1") return GermKind::P1;
  if (id == "p2") return GermKind::P2;
  if (id == "p3") return GermKind::P3;
  if (id == "zero") return GermKind::Zero;
  if (id == "control") return GermKind::Control;
  throw ParameterError("unknown germ id '" + std::string(id) + "'");
}

std::string_view germ_kind_id(GermKind kind) {
  switch (kind) {
    case GermKind::P1:
      return "p1";
    case GermKind::P2:
      return "p2";
    case GermKind::P3:
      return "p3";
    case GermKind::Zero:
      return "zero";
    case GermKind::Control:
      return "control";
  }
  return "?";
}

SmoothGerm make_radial_power_germ(int degree, double radius) {
  if (degree < 1) throw ParameterError("radial power degree must be >= 1");
  auto value = [degree](Complex z) { return std::pow(std::abs(z), degree); };
  // d/dz |z|^d = (d/2) |z|^(d-2) conj(z)
  auto wirt = [degree](Complex z) -> Complex {
    const double s = std::abs(z);
    if (s == 0.0) return {0.0, 0.0};
    return 0.5 * degree * std::pow(s, degree - 2) * std::conj(z);
  };
  return SmoothGerm("abs^" + std::to_string(degree), radius, value, wirt, {.rotational = true});
}

BumpFunction::BumpFunction(double inner) : inner_(inner) {
  if (!(inner > 0.0) || !std::isfinite(inner)) throw ParameterError("bump radius must be positive");
}

namespace {

double phi(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
double phi_derivative(double s) { return s > 0.0 ? std::exp(-1.0 / s) / (s * s) : 0.0; }

}  // namespace

double BumpFunction::profile(double s) const {
  const double f = phi(2.0 * inner_ - s);
  const double g = phi(s - inner_);
  return f / (f + g);
}

double BumpFunction::profile_derivative(double s) const {
  const double f = phi(2.0 * inner_ - s);
  const double g = phi(s - inner_);
  const double df = -phi_derivative(2.0 * inner_ - s);
  const double dg = phi_derivative(s - inner_);
  const double denom = f + g;
  return (df * g - f * dg) / (denom * denom);
}

Complex BumpFunction::wirt(Complex z) const {
  const double s = std::abs(z);
  if (s <= inner_ || s >= 2.0 * inner_) return {0.0, 0.0};
  return profile_derivative(s) / (2.0 * s) * std::conj(z);
}

BumpFunction make_bump(double r) { return BumpFunction(r); }

Complex wirtinger_fd(const SmoothGerm& germ, Complex z, double h) {
  if (!(h > 0.0)) throw ParameterError("finite-difference step must be positive");
  if (std::abs(z) + h > germ.radius() * (1.0 + 1e-12)) {
    throw DomainError("finite-difference stencil leaves the germ domain");
  }
  const Complex ih{0.0, h};
  const double dx = (germ(z + h) - germ(z - h)) / (2.0 * h);
  const double dy = (germ(z + ih) - germ(z - ih)) / (2.0 * h);
  return 0.5 * Complex{dx, -dy};
}

}  // namespace crlab
