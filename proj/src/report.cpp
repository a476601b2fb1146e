#include "crlab/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "crlab/errors.hpp"

namespace crlab {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

Json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json field_to_json(const VectorFieldPoly& field) {
  Json out = Json::array();
  for (const auto& [index, c] : field.coefficients()) {
    out.push_back({{"component", static_cast<int>(index.component)},
                   {"j", index.j},
                   {"k", index.k},
                   {"re", c.real()},
                   {"im", c.imag()}});
  }
  return out;
}

VectorFieldPoly field_from_json(const Json& records, int degree_bound) {
  if (!records.is_array()) throw ParameterError("field JSON must be a list of records");
  int max_degree = degree_bound;
  for (const auto& rec : records) {
    if (!rec.is_object() || !rec.contains("j") || !rec.contains("k")) {
      throw ParameterError("field record needs component, j, k, re, im");
    }
    max_degree = std::max(max_degree, rec.at("j").get<int>() + rec.at("k").get<int>());
  }
  VectorFieldPoly field(max_degree);
  for (const auto& rec : records) {
    const int comp = rec.at("component").get<int>();
    if (comp != 1 && comp != 2) throw ParameterError("field component must be 1 or 2");
    const Complex c{rec.value("re", 0.0), rec.value("im", 0.0)};
    const auto component = comp == 1 ? Component::H1 : Component::H2;
    const int j = rec.at("j").get<int>();
    const int k = rec.at("k").get<int>();
    field.set(component, j, k, field.coeff(component, j, k) + c);
  }
  return field;
}

Json grid_to_json(const SampleGrid& grid) {
  return {{"description", grid.description},
          {"n_t", grid.t_values.size()},
          {"n_z2", grid.z2_values.size()},
          {"n_samples", grid.size()}};
}

Json aut_report(const ModelSpec& model, const SolveOptions& options, const AutBasis& basis) {
  Json sv = Json::array();
  for (Eigen::Index i = 0; i < basis.singular_values.size(); ++i) sv.push_back(basis.singular_values(i));
  Json fields = Json::array();
  Json pretty = Json::array();
  for (const auto& f : basis.basis) {
    fields.push_back(field_to_json(f));
    pretty.push_back(to_string(f));
  }
  return {
      {"model", model.describe()},
      {"jet_order", options.jet_order},
      {"vanish_at_origin", options.vanish_at_origin},
      {"tau", options.tau},
      {"n_samples", options.grid.size()},
      {"n_unknowns", basis.columns.size()},
      {"singular_values", sv},
      {"dimension", basis.dimension()},
      {"gap", number(basis.gap)},
      {"confidence", std::string(confidence_id(basis.confidence))},
      {"confident", basis.confidence == Confidence::Confident},
      {"basis", fields},
      {"basis_pretty", pretty},
      {"labels", basis.labels},
      {"projection_residual", basis.projection_residual},
      {"validation_residuals", basis.validation_residuals},
      {"certificate_tolerance", kCertificateTolerance},
      {"certified", basis.certified()},
      {"grid", grid_to_json(options.grid)},
      {"validation_grid", grid_to_json(options.validation)},
  };
}

std::string trajectory_csv(const FlowTrajectory& trajectory) {
  std::ostringstream os;
  os << "t,re_z1,im_z1,re_z2,im_z2,rho,u\n";
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const auto& s = trajectory.states[i];
    os << format_double(trajectory.times[i]) << ',';
    if (s.size() == 2) {
      os << format_double(s(0).real()) << ',' << format_double(s(0).imag()) << ','
         << format_double(s(1).real()) << ',' << format_double(s(1).imag());
    } else {
      os << ",," << format_double(s(0).real()) << ',' << format_double(s(0).imag());
    }
    os << ',';
    if (i < trajectory.rho_residuals.size()) os << format_double(trajectory.rho_residuals[i]);
    os << ',';
    if (i < trajectory.u_values.size() && trajectory.u_values[i]) {
      os << format_double(*trajectory.u_values[i]);
    }
    os << '\n';
  }
  return os.str();
}

namespace {

std::string point_string(Complex z) {
  return format_double(z.real()) + (z.imag() < 0 || std::signbit(z.imag()) ? "" : "+") +
         format_double(z.imag()) + "i";
}

}  // namespace

std::string vanishing_order_csv(const std::vector<VanishingOrderEstimate>& estimates) {
  std::ostringstream os;
  os << "point,slope,order_or_inf,r2,note\n";
  for (const auto& e : estimates) {
    os << point_string(e.point) << ',' << format_double(e.slope) << ','
       << (e.infinite() ? std::string("inf") : std::to_string(*e.order)) << ','
       << format_double(e.r2) << ',' << e.note << '\n';
  }
  return os.str();
}

Json vanishing_order_to_json(const VanishingOrderEstimate& est) {
  return {{"point", complex_to_json(est.point)},
          {"order", est.infinite() ? Json("inf") : Json(*est.order)},
          {"slope", number(est.slope)},
          {"r2", est.r2},
          {"window", {est.window_lo, est.window_hi}},
          {"n_valid", est.n_valid},
          {"note", est.note}};
}

Json certificate_to_json(const CounterexampleCertificate& cert) {
  Json discs = Json::object();
  for (const auto& [name, residual] : cert.disc_residuals) discs[name] = residual;
  return {{"params",
           {{"z20", complex_to_json(cert.params.z20)},
            {"C", cert.params.C},
            {"t0", cert.params.t0},
            {"r", cert.params.r}}},
          {"p_at_z20", cert.p_at_z20},
          {"increment_max_dev", cert.increment_max_dev},
          {"increment_tolerance", kIncrementTolerance},
          {"disc_residuals", discs},
          {"disc_tolerance", kDiscTolerance},
          {"order_at_z20", vanishing_order_to_json(cert.order_at_z20)},
          {"order_at_origin", vanishing_order_to_json(cert.order_at_origin)},
          {"verdict", cert.pass ? "pass" : "fail"}};
}

}  // namespace crlab
