#pragma once

#include <Eigen/Core>
#include <string>
#include <string_view>
#include <vector>

#include "crlab/fields.hpp"
#include "crlab/model.hpp"

namespace crlab {

/// Product grid of surface parameters t and z2 sample points.
///
/// Sample s = i * z2_values.size() + j is (t_values[i], z2_values[j]).
struct SampleGrid {
  std::vector<double> t_values;
  std::vector<Complex> z2_values;
  std::vector<double> row_weights;  ///< empty means all ones
  std::string description;

  std::size_t size() const { return t_values.size() * z2_values.size(); }
  double t_at(std::size_t sample) const { return t_values[sample / z2_values.size()]; }
  Complex z2_at(std::size_t sample) const { return z2_values[sample % z2_values.size()]; }
  double weight_at(std::size_t sample) const {
    return row_weights.empty() ? 1.0 : row_weights[sample];
  }

  /// t in {0, +-0.05, ..., +-0.3}; |z2| in {0.15, 0.25, ..., 0.55} x 24 angles.
  static SampleGrid assembly_default();
  /// Disjoint from the assembly grid: shifted t values, shells and half-step angles.
  static SampleGrid validation_default();
  /// Shells x equispaced angles starting at angle_offset.
  static std::vector<Complex> shells(const std::vector<double>& radii, int n_angles,
                                     double angle_offset = 0.0);
  /// n x n grid: n values of t on [-t_max, t_max] and n z2 points in the disk
  /// of radius z2_radius (sqrt-spaced shells, golden-angle phases), avoiding 0.
  static SampleGrid uniform(double t_max, double z2_radius, int n);
};

/// Real unknown: real or imaginary part of the coefficient of z1^j z2^k in h_component.
struct ColumnKey {
  MonomialIndex monomial;
  bool imag;

  auto operator<=>(const ColumnKey&) const = default;
};

/// Sampled, linearized tangency identity. Row s holds the residual functional
/// at sample s applied to the unit coefficient basis, divided by its max-abs entry.
struct TangencySystem {
  Eigen::MatrixXd matrix;
  std::vector<ColumnKey> columns;
  Eigen::VectorXd row_scales;  ///< normalization divisors (1 for all-zero rows)
  bool vanish_at_origin = false;
  int jet_order = 0;
  std::size_t n_samples = 0;

  Eigen::Index n_unknowns() const { return static_cast<Eigen::Index>(columns.size()); }
  Eigen::Index column_of(const ColumnKey& key) const;  ///< -1 when absent

  VectorFieldPoly field_from_vector(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// Coefficients outside the column layout are dropped; `dropped` receives their norm.
  Eigen::VectorXd vector_from_field(const VectorFieldPoly& field, double* dropped = nullptr) const;
};

/// Column layout for jet order N, optionally without the constant terms.
std::vector<ColumnKey> column_layout(int jet_order, bool vanish_at_origin);

/// Builds the sampled tangency system. Rows are independent and written to
/// their own slots, so the matrix does not depend on the worker count.
/// Throws ConfigurationError when the grid has fewer than 4 samples per unknown.
TangencySystem assemble(const ModelSpec& model, int jet_order, const SampleGrid& grid,
                        bool vanish_at_origin, unsigned workers = 1);

enum class Confidence { Confident, Tentative, Ambiguous };
std::string_view confidence_id(Confidence c);

inline constexpr double kDefaultTau = 1e-8;
inline constexpr double kConfidentGap = 1e3;
inline constexpr double kAmbiguousGap = 10.0;
inline constexpr double kCertificateTolerance = 1e-8;
inline constexpr double kUnidentifiedResidual = 1e-4;

struct AutBasis {
  Eigen::VectorXd singular_values;  ///< descending
  std::vector<ColumnKey> columns;
  Eigen::MatrixXd coefficients;     ///< unknowns x dimension, orthonormal columns
  std::vector<VectorFieldPoly> basis;
  std::vector<std::string> labels;  ///< empty until canonicalize
  double gap = 0.0;
  Confidence confidence = Confidence::Ambiguous;
  double projection_residual = 0.0;
  /// sup |residual| / max coefficient per basis vector on the validation grid.
  std::vector<double> validation_residuals;

  int dimension() const { return static_cast<int>(basis.size()); }
  bool certified(double tolerance = kCertificateTolerance) const;
};

/// Null space = right singular vectors with sigma_i <= tau * sigma_1.
/// gap = smallest retained (above threshold) singular value / largest discarded one.
AutBasis nullspace(const TangencySystem& system, double tau = kDefaultTau);

/// Fills validation_residuals from a grid disjoint from the assembly grid.
void validate(AutBasis& basis, const ModelSpec& model, const SampleGrid& validation);

/// sup over the grid of |tangency_residual(field)| / max coefficient.
double validation_residual(const ModelSpec& model, const VectorFieldPoly& field,
                           const SampleGrid& grid);

struct DictionaryEntry {
  std::string label;
  VectorFieldPoly field;
};

/// z1 dz1, i z2 dz2, i dz2, dz2, z2 dz2, i dz1, dz1, i z1 dz1, z1^2 dz1, z2 dz1, z1 dz2.
std::vector<DictionaryEntry> default_dictionary();

/// Re-expresses the basis in terms of dictionary fields lying in its span.
/// Each labeled vector is the normalized projection of a dictionary field
/// onto span(basis), orthogonalized in selection order, so the span is kept.
/// Directions with no dictionary match within kUnidentifiedResidual are
/// labeled "unidentified".
AutBasis canonicalize(const AutBasis& basis, const std::vector<DictionaryEntry>& dictionary);

struct SolveOptions {
  int jet_order = 5;
  double tau = kDefaultTau;
  bool vanish_at_origin = false;
  unsigned workers = 1;
  SampleGrid grid = SampleGrid::assembly_default();
  SampleGrid validation = SampleGrid::validation_default();
};

/// assemble -> nullspace -> validate -> canonicalize(default_dictionary()).
AutBasis solve_aut(const ModelSpec& model, const SolveOptions& options = {});

}  // namespace crlab
