#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "crlab/errors.hpp"

namespace crlab {

/// Step-control settings for DormandPrince45.
struct StepControl {
  double tol = 1e-10;
  double initial_step = 1e-3;
  double min_step = 1e-14;
  double max_step = 0.1;
  long max_steps = 2'000'000;
};

/// Embedded Runge-Kutta 5(4) pair of Dormand and Prince with PI step-size
/// control. The state is a real vector; complex states are packed as
/// (re, im) pairs by the caller. Integration runs forward or backward.
///
/// The error of an attempted step is max_i |err_i| / (tol * max(1, |y_i|)),
/// and the step is accepted when it does not exceed 1.
template <int Dim>
class DormandPrince45 {
 public:
  using State = Eigen::Matrix<double, Dim, 1>;
  using Rhs = std::function<State(double, const State&)>;
  /// Called after every accepted step; return false to stop.
  using Observer = std::function<bool(double, const State&)>;

  DormandPrince45(Rhs rhs, StepControl control) : rhs_(std::move(rhs)), control_(control) {
    if (!(control_.tol > 0.0)) throw ParameterError("integration tolerance must be positive");
  }

  /// Integrates from (t0, y0) to t1. Returns the time reached.
  double integrate(double t0, State& y, double t1, const Observer& observe) const {
    const double direction = t1 >= t0 ? 1.0 : -1.0;
    double t = t0;
    double h = std::min(control_.initial_step, std::abs(t1 - t0));
    double err_prev = 1e-4;
    State k1 = rhs_(t, y);
    long steps = 0;
    while (direction * (t1 - t) > 0.0) {
      if (++steps > control_.max_steps) throw IntegrationError("maximum number of steps exceeded");
      h = std::min(h, std::abs(t1 - t));
      const double hs = direction * h;

      const State k2 = rhs_(t + c2 * hs, y + hs * (a21 * k1));
      const State k3 = rhs_(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
      const State k4 = rhs_(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
      const State k5 = rhs_(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const State k6 =
          rhs_(t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      const State y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const State k7 = rhs_(t + hs, y_new);
      const State err_vec =
          hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double err = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double scale = control_.tol * std::max({1.0, std::abs(y(i)), std::abs(y_new(i))});
        err = std::max(err, std::abs(err_vec(i)) / scale);
      }
      if (!std::isfinite(err) || !y_new.allFinite()) {
        err = 1e10;
      }

      if (err <= 1.0) {
        t = (h == std::abs(t1 - t)) ? t1 : t + hs;
        y = y_new;
        k1 = k7;  // first-same-as-last
        const double factor =
            err == 0.0 ? kMaxGrowth
                       : std::clamp(kSafety * std::pow(err, -kAlpha) * std::pow(err_prev, kBeta),
                                    kMinShrink, kMaxGrowth);
        err_prev = std::max(err, 1e-4);
        h = std::min(h * factor, control_.max_step);
        if (observe && !observe(t, y)) return t;
      } else {
        h *= std::max(kMinShrink, kSafety * std::pow(err, -0.2));
      }
      if (h < control_.min_step) {
        std::ostringstream os;
        os << "step size underflow at t=" << t;
        throw IntegrationError(os.str());
      }
    }
    return t;
  }

 private:
  static constexpr double kSafety = 0.9;
  static constexpr double kAlpha = 0.7 / 5.0;
  static constexpr double kBeta = 0.4 / 5.0;
  static constexpr double kMinShrink = 0.2;
  static constexpr double kMaxGrowth = 5.0;

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b - b_hat (fifth minus fourth order weights)
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Rhs rhs_;
  StepControl control_;
};

}  // namespace crlab
