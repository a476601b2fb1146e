#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "crlab/autsolve.hpp"
#include "crlab/germ.hpp"
#include "crlab/model.hpp"

namespace crlab {

/// Polynomial map g(z) = sum_{n>=1} c_n z^n (zero constant term).
class PolyMap {
 public:
  /// coeffs[n-1] multiplies z^n.
  explicit PolyMap(std::vector<Complex> coeffs);

  static PolyMap identity() { return PolyMap({Complex{1.0, 0.0}}); }
  static PolyMap rotation(double theta) { return PolyMap({std::polar(1.0, theta)}); }
  static PolyMap linear(Complex c) { return PolyMap({c}); }

  Complex operator()(Complex z) const;
  Complex linear_coefficient() const { return coeffs_.empty() ? Complex{} : coeffs_.front(); }
  const std::vector<Complex>& coefficients() const { return coeffs_; }

 private:
  std::vector<Complex> coeffs_;
};

/// f o g as a polynomial map.
PolyMap compose(const PolyMap& f, const PolyMap& g);

struct Scale { double s; };              ///< (s z1, z2)
struct Rotate { double theta; };         ///< (z1, e^{i theta} z2)
struct TranslateIm { double t; };        ///< (z1, z2 + i t)
struct Negate {};                        ///< (z1, -z2)
struct GeneralPair { double c; PolyMap g2; };  ///< (c z1, g2(z2))
struct MapCandidate;
/// maps[0] o maps[1] o ... : the last map is applied first.
struct Compose { std::vector<MapCandidate> maps; };

struct MapCandidate {
  std::variant<Scale, Rotate, TranslateIm, Negate, GeneralPair, Compose> kind;

  MapCandidate(Scale v);
  MapCandidate(Rotate v) : kind(v) {}
  MapCandidate(TranslateIm v) : kind(v) {}
  MapCandidate(Negate v) : kind(v) {}
  MapCandidate(GeneralPair v);
  MapCandidate(Compose v) : kind(std::move(v)) {}

  Point operator()(const Point& p) const;
  std::string describe() const;
};

/// f o g. Scale o Scale and Rotate o Rotate fold to a single map of the same kind.
MapCandidate compose(const MapCandidate& f, const MapCandidate& g);

struct InvarianceReport {
  double residual = 0.0;  ///< max |rho(f(p))| over on-surface samples p
  double witness_t = 0.0;
  Complex witness_z2;
};

/// Throws DomainError naming the sample when an image leaves the model disk.
InvarianceReport invariance_residual(const ModelSpec& model, const MapCandidate& map,
                                     const SampleGrid& grid);

struct ReparamReport {
  double sup_diff = 0.0;   ///< max |P(g2(z)) - P(z)|
  double delta_hat = 0.0;  ///< least-squares delta in P o g2 ~ delta P
  double max_abs_p = 0.0;
  std::size_t n_fit = 0;
};

inline constexpr double kDeltaFitFloor = 1e-100;

/// Throws InsufficientDataError when fewer than 3 samples have |P| >= 1e-100.
ReparamReport check_reparam(const SmoothGerm& germ, const PolyMap& g2, std::span<const Complex> grid);

/// ||g2'(0)| - 1|; throws DegenerateMapError when g2'(0) = 0.
double check_modulus_derivative(const PolyMap& g2);

struct SymmetryReport {
  double rot_defect = 0.0;     ///< max over shells of (max - min) of P on the shell
  double parity_defect = 0.0;  ///< max |P(z) - P(-z)|
};

SymmetryReport check_symmetries(const SmoothGerm& germ, const std::vector<double>& shells,
                                int n_angles);

}  // namespace crlab
