#include "crlab/mapverify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "crlab/errors.hpp"

namespace crlab {

PolyMap::PolyMap(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Complex PolyMap::operator()(Complex z) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = (acc + *it) * z;
  return acc;
}

PolyMap compose(const PolyMap& f, const PolyMap& g) {
  // Horner in polynomial arithmetic: acc = (acc + f_n) * g, index = power of z.
  const auto& fc = f.coefficients();
  std::vector<Complex> gc{Complex{}};
  gc.insert(gc.end(), g.coefficients().begin(), g.coefficients().end());
  std::vector<Complex> acc;
  for (auto it = fc.rbegin(); it != fc.rend(); ++it) {
    if (acc.empty()) acc.push_back(Complex{});
    acc[0] += *it;
    std::vector<Complex> next(acc.size() + gc.size() - 1);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      for (std::size_t j = 0; j < gc.size(); ++j) next[i + j] += acc[i] * gc[j];
    }
    acc = std::move(next);
  }
  if (acc.empty()) return PolyMap({});
  return PolyMap(std::vector<Complex>(acc.begin() + 1, acc.end()));
}

MapCandidate::MapCandidate(Scale v) : kind(v) {
  if (v.s == 0.0 || !std::isfinite(v.s)) throw ParameterError("Scale needs s != 0");
}

MapCandidate::MapCandidate(GeneralPair v) : kind(std::move(v)) {
  if (std::get<GeneralPair>(kind).c == 0.0) throw ParameterError("GeneralPair needs c != 0");
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Point MapCandidate::operator()(const Point& p) const {
  return std::visit(
      Overloaded{
          [&](const Scale& m) { return Point(m.s * p(0), p(1)); },
          [&](const Rotate& m) { return Point(p(0), std::polar(1.0, m.theta) * p(1)); },
          [&](const TranslateIm& m) { return Point(p(0), p(1) + Complex{0.0, m.t}); },
          [&](const Negate&) { return Point(p(0), -p(1)); },
          [&](const GeneralPair& m) { return Point(m.c * p(0), m.g2(p(1))); },
          [&](const Compose& m) {
            Point q = p;
            for (auto it = m.maps.rbegin(); it != m.maps.rend(); ++it) q = (*it)(q);
            return q;
          },
      },
      kind);
}

std::string MapCandidate::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const Scale& m) { os << "scale:" << m.s; },
                 [&](const Rotate& m) { os << "rotate:" << m.theta; },
                 [&](const TranslateIm& m) { os << "translate-im:" << m.t; },
                 [&](const Negate&) { os << "negate"; },
                 [&](const GeneralPair& m) {
                   os << "pair:" << m.c;
                   for (const Complex& c : m.g2.coefficients()) os << ":" << c.real() << "," << c.imag();
                 },
                 [&](const Compose& m) {
                   os << "compose(";
                   for (std::size_t i = 0; i < m.maps.size(); ++i) {
                     if (i > 0) os << " o ";
                     os << m.maps[i].describe();
                   }
                   os << ")";
                 },
             },
             kind);
  return os.str();
}

MapCandidate compose(const MapCandidate& f, const MapCandidate& g) {
  if (const auto* a = std::get_if<Scale>(&f.kind)) {
    if (const auto* b = std::get_if<Scale>(&g.kind)) return Scale{a->s * b->s};
  }
  if (const auto* a = std::get_if<Rotate>(&f.kind)) {
    if (const auto* b = std::get_if<Rotate>(&g.kind)) return Rotate{a->theta + b->theta};
  }
  return Compose{{f, g}};
}

InvarianceReport invariance_residual(const ModelSpec& model, const MapCandidate& map,
                                     const SampleGrid& grid) {
  InvarianceReport report;
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const double t = grid.t_at(s);
    const Complex z2 = grid.z2_at(s);
    const Point image = map(surface_point(model, t, z2));
    if (!model.z2_in_domain(image(1))) {
      std::ostringstream os;
      os << "image of sample (t=" << t << ", z2=" << z2 << ") under " << map.describe()
         << " leaves the model disk";
      throw DomainError(os.str());
    }
    const double r = std::abs(rho(model, image));
    if (r > report.residual || s == 0) {
      report.residual = r;
      report.witness_t = t;
      report.witness_z2 = z2;
    }
  }
  return report;
}

ReparamReport check_reparam(const SmoothGerm& germ, const PolyMap& g2, std::span<const Complex> grid) {
  ReparamReport report;
  double num = 0.0;
  double den = 0.0;
  for (const Complex& z : grid) {
    const double p = germ(z);
    const double pg = germ(g2(z));
    report.sup_diff = std::max(report.sup_diff, std::abs(pg - p));
    report.max_abs_p = std::max(report.max_abs_p, std::abs(p));
    if (std::abs(p) >= kDeltaFitFloor) {
      num += pg * p;
      den += p * p;
      ++report.n_fit;
    }
  }
  if (report.n_fit < 3) {
    throw InsufficientDataError("reparametrization fit needs at least 3 samples with |P| >= 1e-100");
  }
  report.delta_hat = num / den;
  return report;
}

double check_modulus_derivative(const PolyMap& g2) {
  const Complex c = g2.linear_coefficient();
  if (c == Complex{}) throw DegenerateMapError("g2 has zero linear coefficient");
  return std::abs(std::abs(c) - 1.0);
}

SymmetryReport check_symmetries(const SmoothGerm& germ, const std::vector<double>& shells,
                                int n_angles) {
  SymmetryReport report;
  for (double r : shells) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Complex& z : SampleGrid::shells({r}, n_angles)) {
      const double p = germ(z);
      lo = std::min(lo, p);
      hi = std::max(hi, p);
      report.parity_defect = std::max(report.parity_defect, std::abs(p - germ(-z)));
    }
    report.rot_defect = std::max(report.rot_defect, hi - lo);
  }
  return report;
}

}  // namespace crlab
