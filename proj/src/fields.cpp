#include "crlab/fields.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "crlab/errors.hpp"

namespace crlab {

VectorFieldPoly::VectorFieldPoly(int degree_bound) : degree_bound_(degree_bound) {
  if (degree_bound < 0) throw ParameterError("degree bound must be >= 0");
}

VectorFieldPoly VectorFieldPoly::monomial(Component component, int j, int k, Complex c) {
  VectorFieldPoly f(j + k);
  f.set(component, j, k, c);
  return f;
}

VectorFieldPoly& VectorFieldPoly::set(Component component, int j, int k, Complex c) {
  if (j < 0 || k < 0 || j + k > degree_bound_) {
    std::ostringstream os;
    os << "monomial (" << j << "," << k << ") exceeds degree bound " << degree_bound_;
    throw ParameterError(os.str());
  }
  const MonomialIndex index{component, j, k};
  if (c == Complex{}) {
    coeffs_.erase(index);
  } else {
    coeffs_[index] = c;
  }
  return *this;
}

Complex VectorFieldPoly::coeff(Component component, int j, int k) const {
  const auto it = coeffs_.find(MonomialIndex{component, j, k});
  return it == coeffs_.end() ? Complex{} : it->second;
}

VectorFieldPoly VectorFieldPoly::with_degree_bound(int degree_bound) const {
  VectorFieldPoly out(degree_bound);
  for (const auto& [index, c] : coeffs_) out.set(index.component, index.j, index.k, c);
  return out;
}

double VectorFieldPoly::max_coefficient() const {
  double m = 0.0;
  for (const auto& entry : coeffs_) m = std::max(m, std::abs(entry.second));
  return m;
}

double VectorFieldPoly::coefficient_norm() const {
  double s = 0.0;
  for (const auto& entry : coeffs_) s += std::norm(entry.second);
  return std::sqrt(s);
}

VectorFieldPoly& VectorFieldPoly::operator+=(const VectorFieldPoly& other) {
  if (other.degree_bound_ > degree_bound_) *this = with_degree_bound(other.degree_bound_);
  for (const auto& [index, c] : other.coeffs_) {
    set(index.component, index.j, index.k, coeff(index.component, index.j, index.k) + c);
  }
  return *this;
}

VectorFieldPoly& VectorFieldPoly::operator*=(Complex s) {
  if (s == Complex{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& entry : coeffs_) entry.second *= s;
  return *this;
}

VectorFieldPoly operator+(VectorFieldPoly a, const VectorFieldPoly& b) {
  a += b;
  return a;
}

VectorFieldPoly operator*(Complex s, VectorFieldPoly f) {
  f *= s;
  return f;
}

VectorFieldPoly operator*(double s, VectorFieldPoly f) {
  f *= Complex{s, 0.0};
  return f;
}

Point eval_field(const VectorFieldPoly& field, Complex z1, Complex z2) {
  return field.evaluate<double>(z1, z2);
}

double tangency_residual(const ModelSpec& model, const VectorFieldPoly& field, double t, Complex z2) {
  const Point p = surface_point(model, t, z2);
  const Point grad = rho_gradient(model, p);
  const Point h = field.evaluate<double>(p(0), p(1));
  return (grad(0) * h(0) + grad(1) * h(1)).real();
}

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string format_coefficient(Complex c) {
  const double re = c.real();
  const double im = c.imag();
  if (im == 0.0) {
    if (re == 1.0) return "";
    if (re == -1.0) return "-";
    return format_number(re) + " ";
  }
  if (re == 0.0) {
    if (im == 1.0) return "i ";
    if (im == -1.0) return "-i ";
    return format_number(im) + "i ";
  }
  return "(" + format_number(re) + (im < 0 ? "-" : "+") + format_number(std::abs(im)) + "i) ";
}

std::string format_monomial(int j, int k) {
  std::string out;
  auto power = [&out](const char* var, int n) {
    if (n == 0) return;
    if (!out.empty()) out += " ";
    out += var;
    if (n > 1) out += "^" + std::to_string(n);
  };
  power("z1", j);
  power("z2", k);
  return out;
}

}  // namespace

std::string to_string(const VectorFieldPoly& field) {
  if (field.empty()) return "0";
  std::string out;
  for (const auto& [index, c] : field.coefficients()) {
    std::string term = format_coefficient(c);
    const std::string mono = format_monomial(index.j, index.k);
    if (!mono.empty()) term += mono + " ";
    term += index.component == Component::H1 ? "dz1" : "dz2";
    if (!out.empty()) out += term.front() == '-' ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out;
}

}  // namespace crlab
