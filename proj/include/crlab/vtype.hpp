#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crlab/germ.hpp"
#include "crlab/model.hpp"

namespace crlab {

/// Estimate of the vanishing order of zeta -> P(z + zeta) - P(z) at zeta = 0.
///
/// `order` is empty for the INFINITE verdict. INFINITE is an estimator
/// verdict (slope >= K_max, or every sampled difference underflowed), not a
/// certificate; the fitted slope and window are always reported.
struct VanishingOrderEstimate {
  Complex point;
  std::optional<int> order;
  double slope = 0.0;
  double r2 = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t n_valid = 0;
  std::string note;  ///< "", "by-underflow", "poor-fit"

  bool infinite() const { return !order.has_value(); }
};

inline constexpr int kDefaultKMax = 20;
inline constexpr double kFitR2 = 0.999;
inline constexpr int kOrderAngles = 16;

/// n log-spaced radii on [lo, hi].
std::vector<double> log_radii(double lo, double hi, int n);
/// 10 log-spaced radii on [1e-3, 1e-1].
std::vector<double> default_radii();

/// Fits log(max over 16 angles |P(z + zeta) - P(z)|) against log|zeta|.
/// Requires >= 8 radii; throws DomainError if z + zeta leaves the germ disk.
VanishingOrderEstimate vanishing_order(const SmoothGerm& germ, Complex z, int k_max = kDefaultKMax,
                                       std::span<const double> radii = {});

/// Grid points whose estimate is INFINITE, in grid order.
std::vector<Complex> scan_s_infinity(const SmoothGerm& germ, std::span<const Complex> grid,
                                     int k_max = kDefaultKMax, std::span<const double> radii = {});

/// Inner approximation {surface_point(t, z2) : t in t_values, z2 in s_inf}
/// of the infinite-type locus; equality with the true locus can fail.
std::vector<Point> p_infinity_candidates(const ModelSpec& model, std::span<const Complex> s_inf,
                                         std::span<const double> t_values);

}  // namespace crlab
