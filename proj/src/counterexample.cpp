#include "crlab/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "crlab/errors.hpp"

namespace crlab {

void CounterexampleParams::validate() const {
  if (z20 == Complex{}) throw ParameterError("z20 must be nonzero");
  if (t0 == 0.0 || !std::isfinite(t0)) throw ParameterError("t0 must be nonzero");
  if (!std::isfinite(C)) throw ParameterError("C must be finite");
  if (!(r > 0.0 && r < std::abs(z20) / 4.0)) throw ParameterError("need 0 < r < |z20|/4");
  if (!(2.0 * r < std::abs(t0))) throw ParameterError("need 2r < |t0|");
}

SmoothGerm build_counterexample(const CounterexampleParams& params) {
  params.validate();
  const BumpFunction chi(params.r);
  const double support = 2.0 * params.r;
  const Complex z20 = params.z20;
  const double c = params.C;
  const double t0 = params.t0;

  auto value = [=](Complex z) {
    double out = 0.0;
    const double s = std::abs(z);
    if (s < support) out += chi.profile(s) * flat_profile(s, 2.0);
    const Complex w = z - z20;
    if (std::abs(w) < support) {
      const double x = w.real();
      const double y = w.imag();
      out += chi(w) * (c - (x + c * y) / (t0 + y));
    }
    return out;
  };

  auto wirt = [=](Complex z) -> Complex {
    Complex out{};
    const double s = std::abs(z);
    if (s < support && s > 0.0) {
      const double e = flat_profile(s, 2.0);
      const Complex de = flat_profile_derivative(s, 2.0) / (2.0 * s) * std::conj(z);
      out += chi.wirt(z) * e + chi.profile(s) * de;
    }
    const Complex w = z - z20;
    if (std::abs(w) < support) {
      const double x = w.real();
      const double y = w.imag();
      const double d = t0 + y;
      const double q = c - (x + c * y) / d;
      const double qx = -1.0 / d;
      const double qy = -(c * t0 - x) / (d * d);
      out += chi.wirt(w) * q + chi(w) * 0.5 * Complex{qx, -qy};
    }
    return out;
  };

  const double radius = std::max(kDefaultGermRadius, std::abs(z20) + 3.0 * params.r);
  return SmoothGerm("counterexample", radius, value, wirt, {.flat_at_origin = true});
}

double verify_increment_identity(const SmoothGerm& germ, const CounterexampleParams& params,
                                 std::span<const Complex> t_samples) {
  const double p0 = germ(params.z20);
  double worst = 0.0;
  for (const Complex& t : t_samples) {
    if (!(std::abs(t) < params.r)) {
      std::ostringstream os;
      os << "increment sample t=" << t << " violates |t| < r=" << params.r;
      throw PreconditionError(os.str());
    }
    const double lhs = germ(params.z20 + t) - p0;
    const double rhs = -(t.real() + t.imag() * p0) / (params.t0 + t.imag());
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

Point disc_base_point(const ModelSpec& model, const CounterexampleParams& params) {
  const double p0 = model.germ()(params.z20);
  return Point(Complex{-params.t0 * p0, params.t0}, params.z20);
}

double verify_disc(const ModelSpec& model, const CounterexampleParams& params, const DiscMap& z1_of_t,
                   std::span<const Complex> t_grid) {
  const Point base = disc_base_point(model, params);
  double worst = 0.0;
  for (const Complex& t : t_grid) {
    const Complex shift = z1_of_t(t);
    if (!(std::abs(shift) < params.r)) {
      std::ostringstream os;
      os << "disc value z1(" << t << ")=" << shift << " leaves the plateau |z1| < r=" << params.r;
      throw PreconditionError(os.str());
    }
    worst = std::max(worst, std::abs(rho(model, base(0) + shift, base(1) + shift)));
  }
  return worst;
}

std::vector<Complex> disc_grid(double radius, int n_radii, int n_angles) {
  std::vector<Complex> out{Complex{}};
  for (int i = 1; i <= n_radii; ++i) {
    const double r = radius * i / n_radii;
    for (int a = 0; a < n_angles; ++a) {
      // irrational phase offset keeps shells from aligning with the axes
      out.push_back(std::polar(r, 2.0 * std::numbers::pi * a / n_angles + 0.1 * i));
    }
  }
  return out;
}

CounterexampleCertificate certify_counterexample(const CounterexampleParams& params) {
  CounterexampleCertificate cert;
  cert.params = params;
  const SmoothGerm germ = build_counterexample(params);
  const ModelSpec model = ModelSpec::one_nonminimal(germ, {.t_max = std::abs(params.t0),
                                                           .z2_radius = germ.radius()});
  cert.p_at_z20 = germ(params.z20);

  const auto increments = disc_grid(0.9 * params.r, 9, 11);
  cert.increment_max_dev = verify_increment_identity(germ, params, increments);

  const auto ts = disc_grid(0.45 * params.r, 6, 12);
  cert.disc_residuals.emplace_back("t", verify_disc(model, params, [](Complex t) { return t; }, ts));
  cert.disc_residuals.emplace_back(
      "t^2", verify_disc(model, params, [](Complex t) { return t * t; }, ts));
  cert.disc_residuals.emplace_back(
      "0.5 t", verify_disc(model, params, [](Complex t) { return 0.5 * t; }, ts));

  const auto radii = log_radii(1e-3, std::min(1e-1, params.r), 10);
  cert.order_at_z20 = vanishing_order(germ, params.z20, kDefaultKMax, radii);
  cert.order_at_origin = vanishing_order(germ, Complex{}, kDefaultKMax, radii);

  cert.pass = cert.increment_max_dev <= kIncrementTolerance && !cert.order_at_z20.infinite() &&
              cert.order_at_origin.infinite() &&
              std::all_of(cert.disc_residuals.begin(), cert.disc_residuals.end(),
                          [](const auto& d) { return d.second <= kDiscTolerance; });
  return cert;
}

}  // namespace crlab
