#include "crlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "crlab/errors.hpp"

namespace crlab {

std::string_view family_id(Family family) {
  switch (family) {
    case Family::OneNonminimal:
      return "one-nonminimal";
    case Family::MNonminimal:
      return "m-nonminimal";
    case Family::Rigid:
      return "rigid";
  }
  return "?";
}

Family parse_family(std::string_view id) {
  if (id == "one-nonminimal") return Family::OneNonminimal;
  if (id == "m-nonminimal") return Family::MNonminimal;
  if (id == "rigid") return Family::Rigid;
  throw ParameterError("unknown model family '" + std::string(id) + "'");
}

ModelSpec::ModelSpec(Family family, int m, SmoothGerm germ, SampleBounds bounds)
    : family_(family), m_(m), germ_(std::move(germ)), bounds_(bounds) {
  if (family_ == Family::MNonminimal && m_ < 2) {
    throw ParameterError("m-nonminimal models require integer m >= 2");
  }
  if (!(bounds_.t_max > 0.0) || !(bounds_.z2_radius > 0.0)) {
    throw ParameterError("sample bounds must be positive");
  }
}

ModelSpec ModelSpec::one_nonminimal(SmoothGerm germ, SampleBounds bounds) {
  return ModelSpec(Family::OneNonminimal, 1, std::move(germ), bounds);
}

ModelSpec ModelSpec::m_nonminimal(SmoothGerm germ, int m, SampleBounds bounds) {
  return ModelSpec(Family::MNonminimal, m, std::move(germ), bounds);
}

ModelSpec ModelSpec::rigid(SmoothGerm germ, SampleBounds bounds) {
  return ModelSpec(Family::Rigid, 1, std::move(germ), bounds);
}

ModelSpec ModelSpec::make(Family family, SmoothGerm germ, int m, SampleBounds bounds) {
  return ModelSpec(family, family == Family::MNonminimal ? m : 1, std::move(germ), bounds);
}

double ModelSpec::z2_radius() const { return std::min(bounds_.z2_radius, germ_.radius()); }

bool ModelSpec::z2_in_domain(Complex z2) const {
  return std::abs(z2) <= z2_radius() * (1.0 + 1e-12);
}

std::string ModelSpec::describe() const {
  std::ostringstream os;
  os << family_id(family_);
  if (family_ == Family::MNonminimal) os << "(m=" << m_ << ")";
  os << " germ=" << germ_.id();
  return os.str();
}

double rho(const ModelSpec& model, Complex z1, Complex z2) {
  const double p = model.germ()(z2);
  switch (model.family()) {
    case Family::OneNonminimal:
      return z1.real() + z1.imag() * p;
    case Family::MNonminimal:
      return z1.imag() - std::pow(z1.real(), model.m()) * p;
    case Family::Rigid:
      return z1.real() + p;
  }
  return 0.0;
}

Point surface_point(const ModelSpec& model, double t, Complex z2) {
  if (!(std::abs(t) <= model.bounds().t_max * (1.0 + 1e-12))) {
    std::ostringstream os;
    os << "surface parameter t=" << t << " outside |t| <= " << model.bounds().t_max;
    throw DomainError(os.str());
  }
  if (!model.z2_in_domain(z2)) {
    std::ostringstream os;
    os << "z2=" << z2 << " outside the model disk of radius " << model.z2_radius();
    throw DomainError(os.str());
  }
  const double p = model.germ()(z2);
  Point out;
  switch (model.family()) {
    case Family::OneNonminimal:
      out << Complex{-t * p, t}, z2;
      break;
    case Family::MNonminimal:
      out << Complex{t, std::pow(t, model.m()) * p}, z2;
      break;
    case Family::Rigid:
      out << Complex{-p, t}, z2;
      break;
  }
  return out;
}

Point rho_gradient(const ModelSpec& model, Complex z1, Complex z2) {
  const double p = model.germ()(z2);
  const Complex pz = model.germ().wirt(z2);
  // d(Re z1)/dz1 = 1/2, d(Im z1)/dz1 = 1/(2i) = -i/2
  const Complex half_re{0.5, 0.0};
  const Complex half_im{0.0, -0.5};
  Point g;
  switch (model.family()) {
    case Family::OneNonminimal:
      g << half_re + half_im * p, z1.imag() * pz;
      break;
    case Family::MNonminimal: {
      const int m = model.m();
      const double x = z1.real();
      g << half_im - 0.5 * m * std::pow(x, m - 1) * p, -std::pow(x, m) * pz;
      break;
    }
    case Family::Rigid:
      g << half_re, pz;
      break;
  }
  return g;
}

}  // namespace crlab
