#include "crlab/flow.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>

#include "crlab/errors.hpp"
#include "crlab/ode.hpp"

namespace crlab {

std::string_view flow_status_id(FlowStatus status) {
  switch (status) {
    case FlowStatus::Completed:
      return "completed";
    case FlowStatus::LeftDomain:
      return "left-domain";
    case FlowStatus::ReachedOrigin:
      return "reached-origin";
  }
  return "?";
}

double FlowTrajectory::max_abs_rho() const {
  double m = 0.0;
  for (double r : rho_residuals) m = std::max(m, std::abs(r));
  return m;
}

namespace {

void check_tolerance(double tol) {
  if (!(tol > 1e-14 && tol < 1e-2)) throw ParameterError("tolerance must lie in (1e-14, 1e-2)");
}

void check_span(std::pair<double, double> span) {
  if (!std::isfinite(span.first) || !std::isfinite(span.second)) {
    throw ParameterError("time span must be finite");
  }
}

}  // namespace

FlowTrajectory integrate_field(const VectorFieldPoly& field, const Point& z0,
                               std::pair<double, double> t_span, const FlowOptions& options) {
  check_tolerance(options.tol);
  check_span(t_span);
  using Solver = DormandPrince45<4>;
  using State = Solver::State;

  auto pack = [](const Point& p) {
    return State(p(0).real(), p(0).imag(), p(1).real(), p(1).imag());
  };
  auto unpack = [](const State& y) {
    return Point(Complex{y(0), y(1)}, Complex{y(2), y(3)});
  };

  Solver solver(
      [&](double, const State& y) {
        const Point p = unpack(y);
        return pack(field.evaluate<double>(p(0), p(1)));
      },
      StepControl{.tol = options.tol});

  FlowTrajectory traj;
  auto record = [&](double t, const State& y) {
    const Point p = unpack(y);
    if (options.model != nullptr) {
      if (!options.model->z2_in_domain(p(1))) {
        traj.status = FlowStatus::LeftDomain;
        return false;
      }
      traj.rho_residuals.push_back(rho(*options.model, p));
    }
    traj.times.push_back(t);
    traj.states.emplace_back(p);
    return true;
  };

  State y = pack(z0);
  if (!record(t_span.first, y)) return traj;
  solver.integrate(t_span.first, y, t_span.second, record);
  return traj;
}

FlowTrajectory characteristic_flow(Complex b, int l, const std::function<Complex(Complex)>& g0,
                                   Complex z0, std::pair<double, double> t_span,
                                   const CharacteristicOptions& options) {
  if (z0 == Complex{}) throw PreconditionError("characteristic flow needs z0 != 0");
  if (l < 0) throw ParameterError("exponent l must be >= 0");
  check_tolerance(options.tol);
  check_span(t_span);
  using Solver = DormandPrince45<2>;
  using State = Solver::State;

  Solver solver(
      [&](double, const State& y) {
        const Complex g{y(0), y(1)};
        Complex rhs = b * std::pow(g, l);
        if (g0) rhs *= 1.0 + g0(g);
        return State(rhs.real(), rhs.imag());
      },
      StepControl{.tol = options.tol});

  FlowTrajectory traj;
  auto record = [&](double t, const State& y) {
    const Complex g{y(0), y(1)};
    traj.times.push_back(t);
    traj.states.emplace_back(Eigen::VectorXcd::Constant(1, g));
    if (std::abs(g) < options.origin_radius) {
      traj.status = FlowStatus::ReachedOrigin;
      return false;
    }
    if (std::abs(g) > options.domain_radius) {
      traj.status = FlowStatus::LeftDomain;
      return false;
    }
    return true;
  };

  State y(z0.real(), z0.imag());
  if (!record(t_span.first, y)) return traj;
  solver.integrate(t_span.first, y, t_span.second, record);
  return traj;
}

LogPFit log_p_diagnostic(const SmoothGerm& germ, const FlowTrajectory& trajectory) {
  LogPFit fit;
  fit.u_values.reserve(trajectory.size());
  std::vector<double> ts;
  std::vector<double> us;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const auto& s = trajectory.states[i];
    const double p = std::abs(germ(s(s.size() - 1)));
    if (p < kLogPUnderflow) {
      fit.u_values.emplace_back(std::nullopt);
      continue;
    }
    const double u = 0.5 * std::log(p);
    fit.u_values.emplace_back(u);
    ts.push_back(trajectory.times[i]);
    us.push_back(u);
  }
  fit.n_valid = ts.size();
  if (fit.n_valid < 10) {
    throw InsufficientDataError("log|P| diagnostic needs at least 10 samples with |P| above underflow");
  }

  const auto n = static_cast<Eigen::Index>(ts.size());
  Eigen::MatrixXd a(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, 0) = ts[static_cast<std::size_t>(i)];
    a(i, 1) = 1.0;
    rhs(i) = us[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(rhs);
  fit.slope = coef(0);
  fit.intercept = coef(1);
  fit.fit_residual = std::sqrt((a * coef - rhs).squaredNorm() / static_cast<double>(n));
  const auto [lo, hi] = std::minmax_element(us.begin(), us.end());
  fit.nonlinear = fit.fit_residual > 1e-6 * (1.0 + (*hi - *lo));
  return fit;
}

}  // namespace crlab
