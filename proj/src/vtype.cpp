#include "crlab/vtype.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "crlab/errors.hpp"

namespace crlab {

std::vector<double> log_radii(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo) || n < 2) throw ParameterError("invalid radius window");
  std::vector<double> out;
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) out.push_back(lo * std::exp(step * i));
  out.back() = hi;
  return out;
}

std::vector<double> default_radii() { return log_radii(1e-3, 1e-1, 10); }

VanishingOrderEstimate vanishing_order(const SmoothGerm& germ, Complex z, int k_max,
                                       std::span<const double> radii) {
  std::vector<double> owned;
  if (radii.empty()) {
    owned = default_radii();
    radii = owned;
  }
  if (radii.size() < 8) throw ParameterError("vanishing order needs at least 8 radii");
  if (k_max < 1) throw ParameterError("K_max must be >= 1");

  VanishingOrderEstimate est;
  est.point = z;
  est.window_lo = *std::min_element(radii.begin(), radii.end());
  est.window_hi = *std::max_element(radii.begin(), radii.end());

  const double base = germ(z);
  std::vector<double> xs;
  std::vector<double> ys;
  for (double r : radii) {
    double m = 0.0;
    for (int a = 0; a < kOrderAngles; ++a) {
      const Complex zeta = std::polar(r, 2.0 * std::numbers::pi * a / kOrderAngles);
      m = std::max(m, std::abs(germ(z + zeta) - base));
    }
    if (m > 0.0 && std::isfinite(m)) {
      xs.push_back(std::log(r));
      ys.push_back(std::log(m));
    }
  }
  est.n_valid = xs.size();
  if (xs.size() < 2) {
    est.note = "by-underflow";
    est.slope = std::numeric_limits<double>::infinity();
    return est;
  }

  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  est.slope = sxy / sxx;
  est.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;

  if (est.slope >= k_max) return est;
  est.order = static_cast<int>(std::lround(est.slope));
  if (est.r2 < kFitR2) est.note = "poor-fit";
  return est;
}

std::vector<Complex> scan_s_infinity(const SmoothGerm& germ, std::span<const Complex> grid,
                                     int k_max, std::span<const double> radii) {
  std::vector<Complex> out;
  for (const Complex& z : grid) {
    if (vanishing_order(germ, z, k_max, radii).infinite()) out.push_back(z);
  }
  return out;
}

std::vector<Point> p_infinity_candidates(const ModelSpec& model, std::span<const Complex> s_inf,
                                         std::span<const double> t_values) {
  std::vector<Point> out;
  out.reserve(s_inf.size() * t_values.size());
  for (const Complex& z2 : s_inf) {
    for (double t : t_values) out.push_back(surface_point(model, t, z2));
  }
  return out;
}

}  // namespace crlab
