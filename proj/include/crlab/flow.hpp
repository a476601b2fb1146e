#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "crlab/fields.hpp"
#include "crlab/model.hpp"

namespace crlab {

enum class FlowStatus { Completed, LeftDomain, ReachedOrigin };
std::string_view flow_status_id(FlowStatus status);

/// Sampled integral curve. States have one complex entry (scalar
/// characteristic ODE) or two (flow on C^2).
struct FlowTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXcd> states;
  std::vector<double> rho_residuals;          ///< empty when no model was attached
  std::vector<std::optional<double>> u_values; ///< filled by attach_u_values
  FlowStatus status = FlowStatus::Completed;

  std::size_t size() const { return times.size(); }
  double max_abs_rho() const;
};

inline constexpr double kDefaultFlowTol = 1e-10;

struct FlowOptions {
  double tol = kDefaultFlowTol;
  /// When set, rho is recorded per sample and the flow stops with
  /// LeftDomain once z2 leaves the model disk.
  const ModelSpec* model = nullptr;
};

/// One-parameter subgroup of H: d(z1, z2)/dt = (h1, h2), t from t_span.first to t_span.second.
FlowTrajectory integrate_field(const VectorFieldPoly& field, const Point& z0,
                               std::pair<double, double> t_span, const FlowOptions& options = {});

struct CharacteristicOptions {
  double tol = kDefaultFlowTol;
  double domain_radius = 0.75;   ///< LeftDomain once |gamma| exceeds this
  double origin_radius = 1e-12;  ///< ReachedOrigin once |gamma| drops below this
};

/// gamma' = b gamma^l (1 + g0(gamma)), gamma(t_span.first) = z0.
/// Throws PreconditionError when z0 = 0.
FlowTrajectory characteristic_flow(Complex b, int l, const std::function<Complex(Complex)>& g0,
                                   Complex z0, std::pair<double, double> t_span,
                                   const CharacteristicOptions& options = {});

inline constexpr double kLogPUnderflow = 1e-290;

struct LogPFit {
  std::vector<std::optional<double>> u_values;  ///< (1/2) log|P(gamma(t))|, empty below kLogPUnderflow
  double slope = 0.0;         ///< least-squares delta_hat
  double intercept = 0.0;
  double fit_residual = 0.0;  ///< RMS deviation from the fitted line
  std::size_t n_valid = 0;
  bool nonlinear = false;     ///< fit_residual > 1e-6 * (1 + range of u)
};

/// Fits u(t) = (1/2) log|P(gamma(t))| by a line over the valid window.
/// gamma is the last complex entry of each state (z2 for flows on C^2).
/// Throws InsufficientDataError with fewer than 10 valid samples.
LogPFit log_p_diagnostic(const SmoothGerm& germ, const FlowTrajectory& trajectory);

}  // namespace crlab
