#include "crlab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "crlab/errors.hpp"

namespace crlab {

namespace {

// ---------------------------------------------------------------------------
// flat key = value persistence

std::string trim(std::string s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParameterError("config key '" + key + "': not a number: '" + v + "'");
  }
}

long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long n = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ParameterError("config key '" + key + "': not an integer: '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ParameterError("config key '" + key + "': not a boolean: '" + v + "'");
}

struct Field {
  const char* key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

Field str_field(const char* key, std::string RunConfig::*member) {
  return {key, [member](const RunConfig& c) { return c.*member; },
          [member](RunConfig& c, const std::string& v) { c.*member = v; }};
}

Field dbl_field(const char* key, double RunConfig::*member) {
  return {key, [member](const RunConfig& c) { return format_double(c.*member); },
          [key, member](RunConfig& c, const std::string& v) { c.*member = parse_double(key, v); }};
}

Field int_field(const char* key, int RunConfig::*member) {
  return {key, [member](const RunConfig& c) { return std::to_string(c.*member); },
          [key, member](RunConfig& c, const std::string& v) {
            c.*member = static_cast<int>(parse_int(key, v));
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      str_field("command", &RunConfig::command),
      str_field("family", &RunConfig::family),
      str_field("germ", &RunConfig::germ),
      dbl_field("a", &RunConfig::a),
      int_field("m", &RunConfig::m),
      int_field("jet", &RunConfig::jet),
      dbl_field("tau", &RunConfig::tau),
      {"vanish_at_origin",
       [](const RunConfig& c) { return std::string(c.vanish_at_origin ? "true" : "false"); },
       [](RunConfig& c, const std::string& v) { c.vanish_at_origin = parse_bool("vanish_at_origin", v); }},
      {"workers", [](const RunConfig& c) { return std::to_string(c.workers); },
       [](RunConfig& c, const std::string& v) {
         const long n = parse_int("workers", v);
         if (n < 1) throw ParameterError("workers must be >= 1");
         c.workers = static_cast<unsigned>(n);
       }},
      dbl_field("alpha", &RunConfig::alpha),
      dbl_field("beta", &RunConfig::beta),
      dbl_field("gamma", &RunConfig::gamma),
      str_field("field_json", &RunConfig::field_json),
      dbl_field("start_t", &RunConfig::start_t),
      dbl_field("start_z2_re", &RunConfig::start_z2_re),
      dbl_field("start_z2_im", &RunConfig::start_z2_im),
      dbl_field("t_end", &RunConfig::t_end),
      dbl_field("tol", &RunConfig::tol),
      int_field("k_max", &RunConfig::k_max),
      dbl_field("radius_lo", &RunConfig::radius_lo),
      dbl_field("radius_hi", &RunConfig::radius_hi),
      int_field("n_radii", &RunConfig::n_radii),
      str_field("points", &RunConfig::points),
      str_field("map", &RunConfig::map),
      dbl_field("z20_re", &RunConfig::z20_re),
      dbl_field("z20_im", &RunConfig::z20_im),
      dbl_field("c", &RunConfig::c),
      dbl_field("t0", &RunConfig::t0),
      dbl_field("r", &RunConfig::r),
      {"which",
       [](const RunConfig& c) {
         std::string s;
         for (const auto& w : c.which) s += (s.empty() ? "" : ",") + w;
         return s;
       },
       [](RunConfig& c, const std::string& v) { c.which = split(v, ','); }},
      str_field("out_dir", &RunConfig::out_dir),
      str_field("out", &RunConfig::out),
      str_field("csv", &RunConfig::csv),
  };
  return table;
}

}  // namespace

std::string RunConfig::to_kv() const {
  std::string out;
  for (const auto& f : fields()) out += std::string(f.key) + " = " + f.get(*this) + "\n";
  return out;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  for (const auto& f : fields()) {
    if (key == f.key) {
      f.set(*this, value);
      return;
    }
  }
  throw ParameterError("unknown config key '" + key + "'");
}

RunConfig RunConfig::from_kv(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParameterError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

namespace {

Json config_to_json(const RunConfig& cfg) {
  Json out = Json::object();
  for (const auto& f : fields()) {
    const std::string key = f.key;
    if (key == "out_dir" || key == "out" || key == "csv") continue;
    out[key] = f.get(cfg);
  }
  return out;
}

// ---------------------------------------------------------------------------
// model construction

CounterexampleParams counterexample_params(const RunConfig& cfg) {
  return {.z20 = Complex{cfg.z20_re, cfg.z20_im}, .C = cfg.c, .t0 = cfg.t0, .r = cfg.r};
}

SmoothGerm make_germ(const RunConfig& cfg) {
  if (cfg.germ == "counterexample") return build_counterexample(counterexample_params(cfg));
  return make_catalog_germ(parse_germ_kind(cfg.germ), cfg.a);
}

ModelSpec make_model(const RunConfig& cfg) {
  return ModelSpec::make(parse_family(cfg.family), make_germ(cfg), cfg.m);
}

bool vanishes_identically(const SmoothGerm& germ) {
  const auto probe = SampleGrid::shells({0.05, 0.15, 0.25, 0.35, 0.45, 0.55}, 24);
  return std::all_of(probe.begin(), probe.end(), [&](Complex z) {
    return !germ.contains(z) || germ(z) == 0.0;
  });
}

std::vector<Complex> parse_points(const std::string& text) {
  std::vector<Complex> out;
  for (const auto& item : split(text, ';')) {
    const auto parts = split(item, ',');
    if (parts.size() != 2) throw ParameterError("point '" + item + "' must be re,im");
    out.emplace_back(parse_double("points", parts[0]), parse_double("points", parts[1]));
  }
  return out;
}

std::vector<Complex> default_scan_grid() {
  std::vector<Complex> grid{Complex{}};
  for (double r : {0.25, 0.5}) {
    for (int a = 0; a < 8; ++a) {
      // axis points are placed exactly so that Re z = 0 holds on the imaginary axis
      switch (a) {
        case 0: grid.emplace_back(r, 0.0); break;
        case 2: grid.emplace_back(0.0, r); break;
        case 4: grid.emplace_back(-r, 0.0); break;
        case 6: grid.emplace_back(0.0, -r); break;
        default: grid.push_back(std::polar(r, std::numbers::pi * a / 4.0));
      }
    }
  }
  return grid;
}

// ---------------------------------------------------------------------------
// map specs: "scale:s", "rotate:theta", "translate-im:t", "negate",
// "pair:c:re,im[:re,im...]", and "f|g" for f o g.

MapCandidate parse_single_map(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw ParameterError("empty map spec");
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i) {
    if (parts.size() <= i) throw ParameterError("map '" + spec + "' is missing an argument");
    return parse_double("map", parts[i]);
  };
  if (kind == "scale") return Scale{arg(1)};
  if (kind == "rotate") return Rotate{arg(1)};
  if (kind == "translate-im") return TranslateIm{arg(1)};
  if (kind == "negate") return Negate{};
  if (kind == "pair") {
    std::vector<Complex> coeffs;
    for (std::size_t i = 2; i < parts.size(); ++i) {
      const auto c = split(parts[i], ',');
      if (c.size() != 2) throw ParameterError("pair coefficient '" + parts[i] + "' must be re,im");
      coeffs.emplace_back(parse_double("map", c[0]), parse_double("map", c[1]));
    }
    return GeneralPair{arg(1), PolyMap(coeffs)};
  }
  throw ParameterError("unknown map kind '" + kind + "'");
}

MapCandidate parse_map(const std::string& spec) {
  const auto parts = split(spec, '|');
  if (parts.empty()) throw ParameterError("empty map spec");
  if (parts.size() == 1) return parse_single_map(parts[0]);
  Compose c;
  for (const auto& p : parts) c.maps.push_back(parse_single_map(p));
  return c;
}

/// The z2-component as a polynomial map, when the map has one.
std::optional<PolyMap> z2_component(const MapCandidate& map) {
  struct Visitor {
    std::optional<PolyMap> operator()(const Scale&) const { return PolyMap::identity(); }
    std::optional<PolyMap> operator()(const Rotate& m) const { return PolyMap::rotation(m.theta); }
    std::optional<PolyMap> operator()(const TranslateIm&) const { return std::nullopt; }
    std::optional<PolyMap> operator()(const Negate&) const { return PolyMap::linear(-1.0); }
    std::optional<PolyMap> operator()(const GeneralPair& m) const { return m.g2; }
    std::optional<PolyMap> operator()(const Compose& m) const {
      PolyMap acc = PolyMap::identity();
      for (const auto& inner : m.maps) {
        const auto g = z2_component(inner);
        if (!g) return std::nullopt;
        acc = compose(acc, *g);
      }
      return acc;
    }
  };
  return std::visit(Visitor{}, map.kind);
}

constexpr double kInvarianceTolerance = 1e-12;
constexpr double kModulusTolerance = 1e-12;
constexpr double kDeltaTolerance = 1e-8;

// ---------------------------------------------------------------------------
// commands

RunResult run_solve(const RunConfig& cfg) {
  const ModelSpec model = make_model(cfg);
  if (vanishes_identically(model.germ())) {
    throw ParameterError("germ '" + model.germ().id() +
                         "' vanishes identically; the solver requires P not identically 0 near 0");
  }
  SolveOptions opt;
  opt.jet_order = cfg.jet;
  opt.tau = cfg.tau;
  opt.vanish_at_origin = cfg.vanish_at_origin;
  opt.workers = cfg.workers;
  const AutBasis basis = solve_aut(model, opt);
  RunResult res;
  res.report = aut_report(model, opt, basis);
  res.pass = basis.certified();
  return res;
}

VectorFieldPoly flow_field(const RunConfig& cfg) {
  if (!cfg.field_json.empty()) {
    std::ifstream in(cfg.field_json);
    if (!in) throw ParameterError("cannot read field file '" + cfg.field_json + "'");
    Json j;
    try {
      in >> j;
    } catch (const Json::exception& e) {
      throw ParameterError(std::string("malformed field JSON: ") + e.what());
    }
    return field_from_json(j);
  }
  VectorFieldPoly f(1);
  f.set(Component::H1, 1, 0, cfg.alpha);
  f.set(Component::H2, 0, 1, Complex{0.0, cfg.beta});
  f.set(Component::H2, 0, 0, Complex{0.0, cfg.gamma});
  return f;
}

RunResult run_flow(const RunConfig& cfg) {
  const ModelSpec model = make_model(cfg);
  const VectorFieldPoly field = flow_field(cfg);
  const Point z0 = surface_point(model, cfg.start_t, Complex{cfg.start_z2_re, cfg.start_z2_im});

  FlowTrajectory forward = integrate_field(field, z0, {0.0, cfg.t_end}, {.tol = cfg.tol, .model = &model});
  std::optional<double> return_error;
  if (forward.status == FlowStatus::Completed) {
    const auto back = integrate_field(field, Point(forward.states.back()), {cfg.t_end, 0.0},
                                      {.tol = cfg.tol});
    return_error = (Point(back.states.back()) - z0).norm();
  }

  Json log_fit = nullptr;
  try {
    const LogPFit fit = log_p_diagnostic(model.germ(), forward);
    forward.u_values = fit.u_values;
    log_fit = {{"delta_hat", fit.slope},
               {"fit_residual", fit.fit_residual},
               {"n_valid", fit.n_valid},
               {"nonlinear", fit.nonlinear}};
  } catch (const InsufficientDataError& e) {
    log_fit = {{"error", e.what()}};
  }

  const double bound = 1e2 * cfg.tol;
  RunResult res;
  res.pass = forward.status == FlowStatus::Completed && forward.max_abs_rho() <= bound &&
             return_error && *return_error <= bound;
  const Point end(forward.states.back());
  res.report = {
      {"model", model.describe()},
      {"field", field_to_json(field)},
      {"field_pretty", to_string(field)},
      {"start", {complex_to_json(z0(0)), complex_to_json(z0(1))}},
      {"t_span", {0.0, cfg.t_end}},
      {"tol", cfg.tol},
      {"status", std::string(flow_status_id(forward.status))},
      {"n_samples", forward.size()},
      {"t_reached", forward.times.back()},
      {"end", {complex_to_json(end(0)), complex_to_json(end(1))}},
      {"max_abs_rho", forward.max_abs_rho()},
      {"return_error", return_error ? Json(*return_error) : Json(nullptr)},
      {"bound", bound},
      {"log_p", log_fit},
      {"verdict", res.pass ? "pass" : "fail"},
  };
  res.csv = trajectory_csv(forward);
  return res;
}

RunResult run_vtype(const RunConfig& cfg) {
  const ModelSpec model = make_model(cfg);
  const SmoothGerm& germ = model.germ();
  const auto grid = cfg.points.empty() ? default_scan_grid() : parse_points(cfg.points);
  const auto radii = log_radii(cfg.radius_lo, cfg.radius_hi, cfg.n_radii);

  std::vector<VanishingOrderEstimate> estimates;
  std::vector<Complex> s_inf;
  for (const Complex& z : grid) {
    estimates.push_back(vanishing_order(germ, z, cfg.k_max, radii));
    if (estimates.back().infinite()) s_inf.push_back(z);
  }
  const std::vector<double> ts = {-0.1, 0.0, 0.1};
  const auto candidates = p_infinity_candidates(model, s_inf, ts);

  Json est_json = Json::array();
  for (const auto& e : estimates) est_json.push_back(vanishing_order_to_json(e));
  Json s_json = Json::array();
  for (const Complex& z : s_inf) s_json.push_back(complex_to_json(z));
  Json cand_json = Json::array();
  for (const Point& p : candidates) cand_json.push_back({complex_to_json(p(0)), complex_to_json(p(1))});

  RunResult res;
  res.report = {{"model", model.describe()},
                {"k_max", cfg.k_max},
                {"radii", radii},
                {"estimates", est_json},
                {"s_infinity", s_json},
                {"p_infinity_t_values", ts},
                {"p_infinity_inner_approximation", cand_json}};
  res.csv = vanishing_order_csv(estimates);
  return res;
}

RunResult run_verify(const RunConfig& cfg) {
  const ModelSpec model = make_model(cfg);
  const MapCandidate map = parse_map(cfg.map);
  const SampleGrid grid = SampleGrid::assembly_default();
  const InvarianceReport inv = invariance_residual(model, map, grid);

  Json sup_diff = nullptr;
  Json delta_hat = nullptr;
  Json modulus = nullptr;
  bool pass = inv.residual <= kInvarianceTolerance;
  if (const auto g2 = z2_component(map)) {
    const double d = check_modulus_derivative(*g2);
    modulus = d;
    pass = pass && d <= kModulusTolerance;
    std::vector<Complex> pts;
    for (const Complex& z : SampleGrid::shells({0.1, 0.2, 0.3, 0.4}, 24)) {
      if (model.germ().contains((*g2)(z))) pts.push_back(z);
    }
    const ReparamReport rep = check_reparam(model.germ(), *g2, pts);
    sup_diff = rep.sup_diff;
    delta_hat = rep.delta_hat;
    if (rep.sup_diff <= 1e-12 * rep.max_abs_p) {
      pass = pass && std::abs(rep.delta_hat - 1.0) <= kDeltaTolerance;
    }
  }

  RunResult res;
  res.pass = pass;
  res.report = {{"model", model.describe()},
                {"map", map.describe()},
                {"residual", inv.residual},
                {"sup_diff", sup_diff},
                {"delta_hat", delta_hat},
                {"modulus_defect", modulus},
                {"tolerance", kInvarianceTolerance},
                {"grid", grid_to_json(grid)},
                {"verdict", pass ? "pass" : "fail"},
                {"witnesses", Json::array({{{"t", inv.witness_t},
                                            {"z2", complex_to_json(inv.witness_z2)},
                                            {"residual", inv.residual}}})}};
  return res;
}

RunResult run_counterexample(const RunConfig& cfg) {
  const auto cert = certify_counterexample(counterexample_params(cfg));
  RunResult res;
  res.report = certificate_to_json(cert);
  res.pass = cert.pass;
  return res;
}

}  // namespace
}  // namespace crlab

namespace crlab {
namespace {

// ---------------------------------------------------------------------------
// examples: reproduction of the catalogued models

struct SolveExpectation {
  std::string name;
  std::string germ;
  Family family;
  int m;
  bool vanish_at_origin;
  std::vector<std::string> labels;
};

Json check_solve(const RunConfig& cfg, const SolveExpectation& e, bool& pass) {
  const ModelSpec model = ModelSpec::make(e.family, make_catalog_germ(parse_germ_kind(e.germ), cfg.a), e.m);
  SolveOptions opt;
  opt.jet_order = cfg.jet;
  opt.tau = cfg.tau;
  opt.vanish_at_origin = e.vanish_at_origin;
  opt.workers = cfg.workers;
  const AutBasis basis = solve_aut(model, opt);

  auto got = basis.labels;
  auto want = e.labels;
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  const bool ok = basis.dimension() == static_cast<int>(want.size()) && got == want &&
                  basis.confidence == Confidence::Confident && basis.certified() &&
                  basis.projection_residual <= 1e-6;
  pass = pass && ok;
  return {{"case", e.name},
          {"model", model.describe()},
          {"vanish_at_origin", e.vanish_at_origin},
          {"expected_labels", e.labels},
          {"labels", basis.labels},
          {"dimension", basis.dimension()},
          {"gap", basis.gap},
          {"confidence", std::string(confidence_id(basis.confidence))},
          {"validation_residuals", basis.validation_residuals},
          {"pass", ok}};
}

Json check_map(const ModelSpec& model, const std::string& spec, bool& pass) {
  const auto inv = invariance_residual(model, parse_map(spec), SampleGrid::assembly_default());
  const bool ok = inv.residual <= kInvarianceTolerance;
  pass = pass && ok;
  return {{"map", spec}, {"model", model.describe()}, {"residual", inv.residual}, {"pass", ok}};
}

RunResult run_examples(const RunConfig& cfg) {
  RunResult res;
  Json items = Json::array();
  for (const auto& which : cfg.which) {
    bool pass = true;
    Json checks = Json::array();
    if (which == "4.1") {
      const auto cert = certify_counterexample(counterexample_params(cfg));
      pass = cert.pass;
      checks.push_back(certificate_to_json(cert));
    } else if (which == "4.2") {
      checks.push_back(check_solve(
          cfg, {"aut(M_P1)", "p1", Family::OneNonminimal, 1, false, {"z1 dz1", "i z2 dz2"}}, pass));
      const auto model = ModelSpec::one_nonminimal(make_catalog_germ(GermKind::P1, cfg.a));
      checks.push_back(check_map(model, "rotate:0.7", pass));
      checks.push_back(check_map(model, "scale:2.5|rotate:-1.3", pass));
    } else if (which == "4.3") {
      checks.push_back(
          check_solve(cfg, {"aut(M_P2)", "p2", Family::OneNonminimal, 1, false, {"z1 dz1"}}, pass));
    } else if (which == "4.4") {
      checks.push_back(check_solve(
          cfg, {"aut(M_P3)", "p3", Family::OneNonminimal, 1, false, {"z1 dz1", "i dz2"}}, pass));
      checks.push_back(
          check_solve(cfg, {"aut_0(M_P3)", "p3", Family::OneNonminimal, 1, true, {"z1 dz1"}}, pass));
      const auto model = ModelSpec::one_nonminimal(make_catalog_germ(GermKind::P3, cfg.a));
      checks.push_back(check_map(model, "translate-im:0.1", pass));
      checks.push_back(check_map(model, "negate", pass));
      checks.push_back(check_map(model, "scale:-3|negate", pass));
    } else if (which == "A") {
      checks.push_back(check_solve(
          cfg, {"aut_0(M_P1,2)", "p1", Family::MNonminimal, 2, true, {"i z2 dz2"}}, pass));
    } else {
      throw ParameterError("unknown example '" + which + "' (expected 4.1, 4.2, 4.3, 4.4, A)");
    }
    res.pass = res.pass && pass;
    items.push_back({{"example", which}, {"checks", checks}, {"pass", pass}});
  }
  res.report = {{"examples", items}, {"verdict", res.pass ? "pass" : "fail"}};
  return res;
}

std::filesystem::path output_dir(const RunConfig& cfg) {
  if (!cfg.out_dir.empty()) return cfg.out_dir;
  if (const char* env = std::getenv("CRLAB_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return ".";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write output file '" + path.string() + "'");
  out << content;
  if (!out) throw ParameterError("failed writing output file '" + path.string() + "'");
}

}  // namespace

RunResult execute(const RunConfig& config) {
  RunResult res;
  if (config.command == "solve") {
    res = run_solve(config);
  } else if (config.command == "flow") {
    res = run_flow(config);
  } else if (config.command == "vtype") {
    res = run_vtype(config);
  } else if (config.command == "verify") {
    res = run_verify(config);
  } else if (config.command == "counterexample") {
    res = run_counterexample(config);
  } else if (config.command == "examples") {
    res = run_examples(config);
  } else {
    throw ParameterError("unknown command '" + config.command +
                         "' (expected solve, flow, vtype, verify, counterexample, examples)");
  }
  res.report["command"] = config.command;
  res.report["config"] = config_to_json(config);
  res.report["pass"] = res.pass;
  return res;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunResult res;
  try {
    res = execute(config);
    const auto dir = output_dir(config);
    const std::filesystem::path report =
        config.out.empty() ? dir / (config.command + ".json") : std::filesystem::path(config.out);
    write_file(report, res.report.dump(2) + "\n");
    out << "report: " << report.string() << "\n";
    if (!res.csv.empty()) {
      const std::filesystem::path csv =
          config.csv.empty() ? dir / (config.command + ".csv") : std::filesystem::path(config.csv);
      write_file(csv, res.csv);
      out << "table: " << csv.string() << "\n";
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  out << config.command << ": " << (res.pass ? "pass" : "fail") << "\n";
  return res.pass ? 0 : 1;
}

int main_entry(int argc, char** argv) {
  RunConfig cfg;
  std::string config_path;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  }
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ParameterError("cannot read config '" + config_path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = RunConfig::from_kv(ss.str());
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"crlab: infinitesimal CR automorphisms of nonminimal infinite-type models"};
  std::string save_config;
  app.add_option("command", cfg.command, "solve | flow | vtype | verify | counterexample | examples");
  app.add_option("--config", config_path, "flat key = value config loaded before the flags");
  app.add_option("--save-config", save_config, "write the resolved config and exit");
  app.add_option("--model", cfg.family, "one-nonminimal | m-nonminimal | rigid");
  app.add_option("--germ", cfg.germ, "p1 | p2 | p3 | zero | control | counterexample");
  app.add_option("--a", cfg.a, "exponent of the flat germs");
  app.add_option("--m", cfg.m, "nonminimality order (m-nonminimal)");
  app.add_option("--jet", cfg.jet, "jet order N of the polynomial fields");
  app.add_option("--tau", cfg.tau, "relative singular-value threshold");
  app.add_flag("--origin", cfg.vanish_at_origin, "restrict to fields vanishing at the origin");
  app.add_option("--workers", cfg.workers, "row-assembly threads");
  app.add_option("--alpha", cfg.alpha, "flow field: alpha z1 dz1");
  app.add_option("--beta", cfg.beta, "flow field: i beta z2 dz2");
  app.add_option("--gamma", cfg.gamma, "flow field: i gamma dz2");
  app.add_option("--field-json", cfg.field_json, "flow field as [{component,j,k,re,im}]");
  app.add_option("--start-t", cfg.start_t, "surface parameter of the start point");
  app.add_option("--start-z2-re", cfg.start_z2_re);
  app.add_option("--start-z2-im", cfg.start_z2_im);
  app.add_option("--t-end", cfg.t_end, "flow time");
  app.add_option("--tol", cfg.tol, "integrator tolerance");
  app.add_option("--k-max", cfg.k_max, "slope treated as infinite order");
  app.add_option("--radius-lo", cfg.radius_lo);
  app.add_option("--radius-hi", cfg.radius_hi);
  app.add_option("--n-radii", cfg.n_radii);
  app.add_option("--points", cfg.points, "scan points 're,im;re,im'");
  app.add_option("--map", cfg.map, "scale:s | rotate:th | translate-im:t | negate | pair:c:re,im... ; f|g = f o g");
  app.add_option("--z20-re", cfg.z20_re);
  app.add_option("--z20-im", cfg.z20_im);
  app.add_option("--C", cfg.c);
  app.add_option("--t0", cfg.t0);
  app.add_option("--r", cfg.r);
  app.add_option("--which", cfg.which, "examples to run: 4.1 4.2 4.3 4.4 A");
  app.add_option("--out-dir", cfg.out_dir, "output directory (default $CRLAB_OUT_DIR or .)");
  app.add_option("--out", cfg.out, "report path");
  app.add_option("--csv", cfg.csv, "table path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!save_config.empty()) {
    try {
      write_file(save_config, cfg.to_kv());
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    return 0;
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace crlab
