#pragma once

#include <functional>
#include <span>
#include <string>

#include "crlab/germ.hpp"
#include "crlab/model.hpp"
#include "crlab/vtype.hpp"

namespace crlab {

/// Parameters of the germ
///   P(z) = chi(z) exp(-1/|z|^2) + chi(z - z20) (C - (Re w + C Im w) / (t0 + Im w)),  w = z - z20,
/// whose model carries an analytic disc through (i t0 - t0 C, z20) although
/// z20 has finite vanishing order.
struct CounterexampleParams {
  Complex z20{0.5, 0.0};
  double C = 0.3;
  double t0 = 0.5;
  double r = 0.1;  ///< inner radius of the cut-off chi

  /// Throws ParameterError unless z20 != 0, t0 != 0, 0 < r < |z20|/4, 2r < |t0|.
  void validate() const;
};

/// The germ on the disk |z| <= max(0.75, |z20| + 3r), flat at the origin.
SmoothGerm build_counterexample(const CounterexampleParams& params);

/// max |(P(z20 + t) - P(z20)) + (Re t + Im t P(z20)) / (t0 + Im t)| over the samples.
/// Throws PreconditionError if some |t| >= r.
double verify_increment_identity(const SmoothGerm& germ, const CounterexampleParams& params,
                                 std::span<const Complex> t_samples);

using DiscMap = std::function<Complex(Complex)>;

/// Base point (i t0 - t0 P(z20), z20) of the disc.
Point disc_base_point(const ModelSpec& model, const CounterexampleParams& params);

/// max |rho(gamma(t))| for gamma(t) = (i t0 - t0 P(z20) + z1(t), z20 + z1(t)).
/// Throws PreconditionError when |z1(t)| >= r on the grid.
double verify_disc(const ModelSpec& model, const CounterexampleParams& params, const DiscMap& z1_of_t,
                   std::span<const Complex> t_grid);

/// Complex points t with |t| <= radius: `n_radii` shells x `n_angles` angles plus t = 0.
std::vector<Complex> disc_grid(double radius, int n_radii, int n_angles);

struct CounterexampleCertificate {
  CounterexampleParams params;
  double p_at_z20 = 0.0;
  double increment_max_dev = 0.0;
  std::vector<std::pair<std::string, double>> disc_residuals;
  VanishingOrderEstimate order_at_z20;
  VanishingOrderEstimate order_at_origin;
  bool pass = false;
};

inline constexpr double kIncrementTolerance = 1e-14;
inline constexpr double kDiscTolerance = 1e-13;

/// Runs every check of the construction: increment identity on 100 samples,
/// discs z1(t) in {t, t^2, 0.5 t}, and finite order at z20.
CounterexampleCertificate certify_counterexample(const CounterexampleParams& params);

}  // namespace crlab
