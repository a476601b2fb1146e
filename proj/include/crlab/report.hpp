#pragma once

#include <string>

#include "json.hpp"

#include "crlab/autsolve.hpp"
#include "crlab/counterexample.hpp"
#include "crlab/fields.hpp"
#include "crlab/flow.hpp"
#include "crlab/mapverify.hpp"
#include "crlab/vtype.hpp"

namespace crlab {

using Json = nlohmann::json;

/// [{component, j, k, re, im}, ...] in coefficient order; component is 1 or 2.
Json field_to_json(const VectorFieldPoly& field);
/// Inverse of field_to_json. The degree bound is the largest j + k present
/// unless `degree_bound` is larger. Throws ParameterError on malformed records.
VectorFieldPoly field_from_json(const Json& records, int degree_bound = 0);

Json complex_to_json(Complex z);
Json grid_to_json(const SampleGrid& grid);

/// {model, jet_order, n_samples, n_unknowns, singular_values, dimension,
///  confident, confidence, gap, tau, basis, labels, validation_residuals, ...}
Json aut_report(const ModelSpec& model, const SolveOptions& options, const AutBasis& basis);

/// Columns t, re_z1, im_z1, re_z2, im_z2, rho, u; empty cells where undefined.
/// A scalar (characteristic) trajectory lives in the z2 plane and fills the z2 columns.
std::string trajectory_csv(const FlowTrajectory& trajectory);

/// Columns point, slope, order_or_inf, r2, note.
std::string vanishing_order_csv(const std::vector<VanishingOrderEstimate>& estimates);
Json vanishing_order_to_json(const VanishingOrderEstimate& est);

Json certificate_to_json(const CounterexampleCertificate& cert);

/// Shortest decimal form that round-trips (as used by the JSON writer).
std::string format_double(double v);

}  // namespace crlab
