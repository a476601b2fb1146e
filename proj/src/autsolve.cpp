#include "crlab/autsolve.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "crlab/errors.hpp"

namespace crlab {

std::vector<Complex> SampleGrid::shells(const std::vector<double>& radii, int n_angles,
                                        double angle_offset) {
  std::vector<Complex> out;
  out.reserve(radii.size() * static_cast<std::size_t>(n_angles));
  for (double r : radii) {
    for (int a = 0; a < n_angles; ++a) {
      const double theta = angle_offset + 2.0 * std::numbers::pi * a / n_angles;
      out.push_back(std::polar(r, theta));
    }
  }
  return out;
}

SampleGrid SampleGrid::assembly_default() {
  SampleGrid g;
  g.t_values = {0.0};
  for (int i = 1; i <= 6; ++i) {
    g.t_values.push_back(0.05 * i);
    g.t_values.push_back(-0.05 * i);
  }
  g.z2_values = shells({0.15, 0.25, 0.35, 0.45, 0.55}, 24);
  g.description = "t in {0, +-0.05..+-0.3 step 0.05}; |z2| in {0.15,0.25,0.35,0.45,0.55} x 24 angles";
  return g;
}

SampleGrid SampleGrid::validation_default() {
  SampleGrid g;
  for (int i = 0; i < 5; ++i) {
    g.t_values.push_back(0.075 + 0.05 * i);
    g.t_values.push_back(-0.075 - 0.05 * i);
  }
  g.z2_values = shells({0.2, 0.3, 0.4, 0.5, 0.6}, 24, std::numbers::pi / 24.0);
  g.description =
      "t in {+-0.075..+-0.275 step 0.05}; |z2| in {0.2,0.3,0.4,0.5,0.6} x 24 angles offset pi/24";
  return g;
}

SampleGrid SampleGrid::uniform(double t_max, double z2_radius, int n) {
  if (n < 2) throw ParameterError("uniform grid needs n >= 2");
  SampleGrid g;
  for (int i = 0; i < n; ++i) g.t_values.push_back(-t_max + 2.0 * t_max * i / (n - 1));
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double r = z2_radius * std::sqrt((i + 0.5) / n);
    g.z2_values.push_back(std::polar(r, golden * i));
  }
  std::ostringstream os;
  os << n << "x" << n << " uniform: t on [-" << t_max << "," << t_max << "], z2 in disk r<="
     << z2_radius;
  g.description = os.str();
  return g;
}

std::vector<ColumnKey> column_layout(int jet_order, bool vanish_at_origin) {
  if (jet_order < 1) throw ConfigurationError("jet order must be >= 1");
  std::vector<ColumnKey> cols;
  for (Component c : {Component::H1, Component::H2}) {
    for (int total = 0; total <= jet_order; ++total) {
      if (total == 0 && vanish_at_origin) continue;
      for (int j = total; j >= 0; --j) {
        const MonomialIndex m{c, j, total - j};
        cols.push_back({m, false});
        cols.push_back({m, true});
      }
    }
  }
  return cols;
}

Eigen::Index TangencySystem::column_of(const ColumnKey& key) const {
  const auto it = std::find(columns.begin(), columns.end(), key);
  return it == columns.end() ? -1 : static_cast<Eigen::Index>(it - columns.begin());
}

VectorFieldPoly TangencySystem::field_from_vector(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  VectorFieldPoly f(jet_order);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto& key = columns[c];
    const double v = x(static_cast<Eigen::Index>(c));
    if (v == 0.0) continue;
    const auto& m = key.monomial;
    Complex current = f.coeff(m.component, m.j, m.k);
    current += key.imag ? Complex{0.0, v} : Complex{v, 0.0};
    f.set(m.component, m.j, m.k, current);
  }
  return f;
}

Eigen::VectorXd TangencySystem::vector_from_field(const VectorFieldPoly& field, double* dropped) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n_unknowns());
  double lost = 0.0;
  for (const auto& [index, c] : field.coefficients()) {
    const Eigen::Index re = column_of({index, false});
    const Eigen::Index im = column_of({index, true});
    if (re < 0 || im < 0) {
      lost += std::norm(c);
      continue;
    }
    x(re) = c.real();
    x(im) = c.imag();
  }
  if (dropped != nullptr) *dropped = std::sqrt(lost);
  return x;
}

namespace {

void fill_row(const ModelSpec& model, const SampleGrid& grid, std::size_t sample,
              const std::vector<ColumnKey>& columns, int jet_order, Eigen::MatrixXd& matrix,
              Eigen::VectorXd& scales) {
  const Point p = surface_point(model, grid.t_at(sample), grid.z2_at(sample));
  const Point grad = rho_gradient(model, p);
  const double w = grid.weight_at(sample);

  std::vector<Complex> pow1(static_cast<std::size_t>(jet_order) + 1);
  std::vector<Complex> pow2(pow1.size());
  pow1[0] = pow2[0] = 1.0;
  for (std::size_t n = 1; n < pow1.size(); ++n) {
    pow1[n] = pow1[n - 1] * p(0);
    pow2[n] = pow2[n - 1] * p(1);
  }

  const auto row = static_cast<Eigen::Index>(sample);
  double max_abs = 0.0;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto& m = columns[c].monomial;
    const Complex g = m.component == Component::H1 ? grad(0) : grad(1);
    const Complex gm = g * pow1[static_cast<std::size_t>(m.j)] * pow2[static_cast<std::size_t>(m.k)];
    // Re[g * mono * 1] and Re[g * mono * i]
    const double v = w * (columns[c].imag ? -gm.imag() : gm.real());
    matrix(row, static_cast<Eigen::Index>(c)) = v;
    max_abs = std::max(max_abs, std::abs(v));
  }
  const double scale = max_abs > 0.0 ? max_abs : 1.0;
  matrix.row(row) /= scale;
  scales(row) = scale;
}

}  // namespace

TangencySystem assemble(const ModelSpec& model, int jet_order, const SampleGrid& grid,
                        bool vanish_at_origin, unsigned workers) {
  TangencySystem sys;
  sys.columns = column_layout(jet_order, vanish_at_origin);
  sys.vanish_at_origin = vanish_at_origin;
  sys.jet_order = jet_order;
  sys.n_samples = grid.size();

  if (!grid.row_weights.empty() && grid.row_weights.size() != grid.size()) {
    throw ConfigurationError("row_weights must have one entry per sample");
  }
  for (const Complex& z : grid.z2_values) {
    if (z == Complex{}) throw ConfigurationError("sample grid must avoid z2 = 0");
  }
  if (grid.size() < 4 * sys.columns.size()) {
    std::ostringstream os;
    os << "grid has " << grid.size() << " samples but " << sys.columns.size()
       << " unknowns need at least " << 4 * sys.columns.size();
    throw ConfigurationError(os.str());
  }

  const auto rows = static_cast<Eigen::Index>(grid.size());
  sys.matrix.resize(rows, sys.n_unknowns());
  sys.row_scales.resize(rows);

  const std::size_t n = grid.size();
  const unsigned n_workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (n_workers == 1) {
    for (std::size_t s = 0; s < n; ++s) {
      fill_row(model, grid, s, sys.columns, jet_order, sys.matrix, sys.row_scales);
    }
    return sys;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + n_workers - 1) / n_workers;
    for (unsigned w = 0; w < n_workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back([&, begin, end] {
        try {
          for (std::size_t s = begin; s < end; ++s) {
            fill_row(model, grid, s, sys.columns, jet_order, sys.matrix, sys.row_scales);
          }
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return sys;
}

std::string_view confidence_id(Confidence c) {
  switch (c) {
    case Confidence::Confident:
      return "confident";
    case Confidence::Tentative:
      return "tentative";
    case Confidence::Ambiguous:
      return "ambiguous";
  }
  return "?";
}

bool AutBasis::certified(double tolerance) const {
  if (validation_residuals.size() != basis.size()) return false;
  return std::all_of(validation_residuals.begin(), validation_residuals.end(),
                     [tolerance](double r) { return r <= tolerance; });
}

namespace {

// Fix the sign so that the largest-magnitude entry is positive.
void normalize_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v(arg) < 0.0) v = -v;
}

}  // namespace

AutBasis nullspace(const TangencySystem& system, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw ParameterError("tau must lie in (0, 1)");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system.matrix, Eigen::ComputeThinV);

  AutBasis out;
  out.columns = system.columns;
  out.singular_values = svd.singularValues();
  const Eigen::Index n = out.singular_values.size();
  const double sigma1 = n > 0 ? out.singular_values(0) : 0.0;
  const double threshold = tau * sigma1;

  Eigen::Index rank = 0;
  while (rank < n && out.singular_values(rank) > threshold) ++rank;
  const Eigen::Index dim = system.n_unknowns() - rank;

  if (rank == 0) {
    out.gap = std::numeric_limits<double>::infinity();
  } else if (rank == n && dim == 0) {
    out.gap = out.singular_values(n - 1) / threshold;
  } else {
    const double discarded = rank < n ? out.singular_values(rank) : 0.0;
    out.gap = discarded > 0.0 ? out.singular_values(rank - 1) / discarded
                              : std::numeric_limits<double>::infinity();
  }
  out.confidence = out.gap >= kConfidentGap   ? Confidence::Confident
                   : out.gap >= kAmbiguousGap ? Confidence::Tentative
                                              : Confidence::Ambiguous;

  const Eigen::MatrixXd& v = svd.matrixV();
  out.coefficients.resize(system.n_unknowns(), dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    out.coefficients.col(i) = v.col(rank + i);
    normalize_sign(out.coefficients.col(i));
    out.basis.push_back(system.field_from_vector(out.coefficients.col(i)));
  }
  return out;
}

double validation_residual(const ModelSpec& model, const VectorFieldPoly& field,
                           const SampleGrid& grid) {
  const double scale = field.max_coefficient();
  if (scale == 0.0) return 0.0;
  double sup = 0.0;
  for (std::size_t s = 0; s < grid.size(); ++s) {
    sup = std::max(sup, std::abs(tangency_residual(model, field, grid.t_at(s), grid.z2_at(s))));
  }
  return sup / scale;
}

void validate(AutBasis& basis, const ModelSpec& model, const SampleGrid& validation) {
  basis.validation_residuals.clear();
  for (const auto& f : basis.basis) {
    basis.validation_residuals.push_back(validation_residual(model, f, validation));
  }
}

std::vector<DictionaryEntry> default_dictionary() {
  using C = Component;
  const Complex i{0.0, 1.0};
  return {
      {"z1 dz1", VectorFieldPoly::monomial(C::H1, 1, 0)},
      {"i z2 dz2", VectorFieldPoly::monomial(C::H2, 0, 1, i)},
      {"i dz2", VectorFieldPoly::monomial(C::H2, 0, 0, i)},
      {"dz2", VectorFieldPoly::monomial(C::H2, 0, 0)},
      {"z2 dz2", VectorFieldPoly::monomial(C::H2, 0, 1)},
      {"i dz1", VectorFieldPoly::monomial(C::H1, 0, 0, i)},
      {"dz1", VectorFieldPoly::monomial(C::H1, 0, 0)},
      {"i z1 dz1", VectorFieldPoly::monomial(C::H1, 1, 0, i)},
      {"z1^2 dz1", VectorFieldPoly::monomial(C::H1, 2, 0)},
      {"z2 dz1", VectorFieldPoly::monomial(C::H1, 0, 1)},
      {"z1 dz2", VectorFieldPoly::monomial(C::H2, 1, 0)},
  };
}

AutBasis canonicalize(const AutBasis& basis, const std::vector<DictionaryEntry>& dictionary) {
  TangencySystem layout;
  layout.columns = basis.columns;
  for (const auto& key : basis.columns) {
    layout.jet_order = std::max(layout.jet_order, key.monomial.j + key.monomial.k);
  }

  AutBasis out = basis;
  out.labels.clear();
  out.basis.clear();
  out.projection_residual = 0.0;
  const Eigen::Index n = layout.n_unknowns();
  const Eigen::Index d = basis.coefficients.cols();
  if (d == 0) return out;

  const Eigen::MatrixXd& b = basis.coefficients;

  struct Candidate {
    std::size_t entry;
    double distance;
    Eigen::VectorXd projection;
  };
  std::vector<Candidate> candidates;
  for (std::size_t e = 0; e < dictionary.size(); ++e) {
    double dropped = 0.0;
    Eigen::VectorXd v = layout.vector_from_field(dictionary[e].field, &dropped);
    const double norm = std::sqrt(v.squaredNorm() + dropped * dropped);
    if (norm == 0.0) continue;
    v /= norm;
    dropped /= norm;
    Eigen::VectorXd proj = b * (b.transpose() * v);
    const double dist = std::sqrt((v - proj).squaredNorm() + dropped * dropped);
    candidates.push_back({e, dist, std::move(proj)});
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& x, const Candidate& y) { return x.distance < y.distance; });

  Eigen::MatrixXd selected(n, 0);
  for (const auto& cand : candidates) {
    if (selected.cols() == d) break;
    if (cand.distance > kUnidentifiedResidual) break;
    Eigen::VectorXd w = cand.projection;
    if (selected.cols() > 0) w -= selected * (selected.transpose() * w);
    if (w.norm() < 1e-3 * cand.projection.norm()) continue;
    w.normalize();
    selected.conservativeResize(Eigen::NoChange, selected.cols() + 1);
    selected.col(selected.cols() - 1) = w;
    out.labels.push_back(dictionary[cand.entry].label);
    out.projection_residual = std::max(out.projection_residual, cand.distance);
  }

  // Complete with directions of span(b) orthogonal to the labeled ones.
  if (selected.cols() < d) {
    Eigen::MatrixXd rest = b;
    if (selected.cols() > 0) rest -= selected * (selected.transpose() * rest);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rest, Eigen::ComputeThinU);
    const Eigen::Index missing = d - selected.cols();
    for (Eigen::Index i = 0; i < missing; ++i) {
      Eigen::VectorXd u = svd.matrixU().col(i);
      normalize_sign(u);
      selected.conservativeResize(Eigen::NoChange, selected.cols() + 1);
      selected.col(selected.cols() - 1) = u;
      out.labels.push_back("unidentified");
    }
  }

  out.coefficients = selected;
  for (Eigen::Index i = 0; i < d; ++i) out.basis.push_back(layout.field_from_vector(selected.col(i)));
  return out;
}

AutBasis solve_aut(const ModelSpec& model, const SolveOptions& options) {
  const TangencySystem sys =
      assemble(model, options.jet_order, options.grid, options.vanish_at_origin, options.workers);
  AutBasis raw = nullspace(sys, options.tau);
  AutBasis out = canonicalize(raw, default_dictionary());
  validate(out, model, options.validation);
  return out;
}

}  // namespace crlab
