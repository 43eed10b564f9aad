#include "netsync/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "netsync/error.hpp"

namespace netsync {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::scenario, path + ": " + msg);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const json& field(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(join(path, key), "missing required field");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::uint64_t seed_value(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    fail(path, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Rows matrix_rows(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  Rows out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(numbers(j[i], path + "[" + std::to_string(i) + "]"));
    if (out.back().size() != out.front().size()) {
      fail(path + "[" + std::to_string(i) + "]",
           "row has " + std::to_string(out.back().size()) + " entries, expected " +
               std::to_string(out.front().size()));
    }
  }
  return out;
}

Matrix to_matrix(const Rows& rows) {
  if (rows.empty()) return Matrix(0, 0);
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Rows to_rows(const Matrix& m) {
  Rows out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(m(i, j));
  }
  return out;
}

GraphSpec parse_graph(const json& j, const std::string& path) {
  GraphSpec g;
  if (!j.is_object()) fail(path, "expected a graph object");
  if (const json* m = optional_field(j, "matrix")) {
    g.generator = "matrix";
    g.matrix = matrix_rows(*m, join(path, "matrix"));
    return g;
  }
  g.generator = text(field(j, path, "generator"), join(path, "generator"));
  if (g.generator != "complete" && g.generator != "path" && g.generator != "zero") {
    fail(join(path, "generator"), "unknown generator '" + g.generator +
                                      "' (expected complete, path, zero or an explicit matrix)");
  }
  return g;
}

json graph_json(const GraphSpec& g) {
  if (g.generator == "matrix") return json{{"matrix", g.matrix}};
  return json{{"generator", g.generator}};
}

GainSpec parse_gains(const json& j, const std::string& path) {
  GainSpec g;
  if (!j.is_object()) fail(path, "expected a gain object (uniform, values or pins)");
  if (const json* u = optional_field(j, "uniform")) {
    g.kind = GainSpec::Kind::uniform;
    g.gain = number(*u, join(path, "uniform"));
  } else if (const json* v = optional_field(j, "values")) {
    g.kind = GainSpec::Kind::values;
    g.values = numbers(*v, join(path, "values"));
  } else if (const json* p = optional_field(j, "pins")) {
    g.gain = number(field(j, path, "gain"), join(path, "gain"));
    const std::string pins_path = join(path, "pins");
    if (p->is_string()) {
      const std::string spec = p->get<std::string>();
      constexpr std::string_view prefix = "greedy:";
      if (spec.rfind(prefix, 0) != 0) fail(pins_path, "expected a node list or \"greedy:k\"");
      g.kind = GainSpec::Kind::greedy;
      try {
        std::size_t used = 0;
        g.greedy_count = std::stoi(spec.substr(prefix.size()), &used);
        if (used != spec.size() - prefix.size()) throw std::invalid_argument(spec);
      } catch (const std::exception&) {
        fail(pins_path, "malformed greedy pin count in '" + spec + "'");
      }
    } else {
      if (!p->is_array()) fail(pins_path, "expected a node list or \"greedy:k\"");
      g.kind = GainSpec::Kind::pins;
      for (std::size_t i = 0; i < p->size(); ++i) {
        g.pins.push_back(integer((*p)[i], pins_path + "[" + std::to_string(i) + "]"));
      }
    }
  } else {
    fail(path, "expected one of 'uniform', 'values' or 'pins'");
  }
  return g;
}

json gains_json(const GainSpec& g) {
  switch (g.kind) {
    case GainSpec::Kind::uniform: return json{{"uniform", g.gain}};
    case GainSpec::Kind::values: return json{{"values", g.values}};
    case GainSpec::Kind::pins: return json{{"pins", g.pins}, {"gain", g.gain}};
    case GainSpec::Kind::greedy:
      return json{{"pins", "greedy:" + std::to_string(g.greedy_count)}, {"gain", g.gain}};
  }
  return json{};
}

Laplacian build_graph(const GraphSpec& g, int nodes, const std::string& path,
                      std::vector<std::string>& warnings) {
  try {
    Laplacian out = [&] {
      if (g.generator == "complete") return complete_laplacian(nodes);
      if (g.generator == "path") return path_laplacian(nodes);
      if (g.generator == "zero") return zero_laplacian(nodes);
      Laplacian l = Laplacian::from_matrix(to_matrix(g.matrix));
      if (static_cast<int>(l.size()) != nodes) {
        throw Error(ErrorCode::dimension_mismatch,
                    "matrix is " + std::to_string(l.size()) + "x" + std::to_string(l.size()) +
                        " but the network has " + std::to_string(nodes) + " nodes");
      }
      return l;
    }();
    if (out.has_negative_couplings()) {
      warnings.push_back(path + ": graph has negative coupling weights");
    }
    return out;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

GainDiagonal build_gains(const GainSpec& g, int nodes, const Matrix& pin_graph,
                         const std::string& path) {
  try {
    const auto n = static_cast<std::size_t>(nodes);
    switch (g.kind) {
      case GainSpec::Kind::uniform: return GainDiagonal::uniform(n, g.gain);
      case GainSpec::Kind::values:
        if (g.values.size() != n) {
          fail(path, "expected " + std::to_string(n) + " values, got " +
                         std::to_string(g.values.size()));
        }
        return GainDiagonal(to_vector(g.values));
      case GainSpec::Kind::pins: {
        std::vector<std::size_t> idx;
        for (int p : g.pins) {
          if (p < 1 || p > nodes) {
            fail(path, "pin " + std::to_string(p) + " outside 1.." + std::to_string(nodes));
          }
          idx.push_back(static_cast<std::size_t>(p - 1));
        }
        return GainDiagonal::pinned(n, idx, g.gain);
      }
      case GainSpec::Kind::greedy:
        return greedy_pin_selection(Laplacian::from_matrix(pin_graph), g.greedy_count, g.gain);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::scenario) throw;
    fail(path, e.what());
  }
  fail(path, "unsupported gain specification");
}

}  // namespace

Scenario scenario_from_json(const json& doc) {
  Scenario s;
  if (!doc.is_object()) fail("<root>", "expected a scenario object");

  const json& network = field(doc, "", "network");
  s.nodes = integer(field(network, "network", "nodes"), "network.nodes");
  if (s.nodes < 1) fail("network.nodes", "must be >= 1");
  s.plant = parse_graph(field(network, "network", "plant"), "network.plant");
  s.inner_coupling = matrix_rows(field(network, "network", "inner_coupling"),
                                 "network.inner_coupling");

  const json& model = field(doc, "", "model");
  s.model.name = text(field(model, "model", "name"), "model.name");
  if (s.model.name == "lorenz") {
    s.model.lorenz.a = number(field(model, "model", "a"), "model.a");
    s.model.lorenz.b = number(field(model, "model", "b"), "model.b");
    s.model.lorenz.c = number(field(model, "model", "c"), "model.c");
  } else if (s.model.name == "linear") {
    s.model.linear_a = matrix_rows(field(model, "model", "A"), "model.A");
  } else {
    fail("model.name", "unknown model '" + s.model.name + "' (expected lorenz or linear)");
  }

  const json& mismatch = field(doc, "", "mismatch");
  s.mismatch.bounds = numbers(field(mismatch, "mismatch", "bounds"), "mismatch.bounds");
  s.mismatch.seed = seed_value(field(mismatch, "mismatch", "seed"), "mismatch.seed");
  if (const json* tv = optional_field(mismatch, "time_varying")) {
    s.mismatch.omega = number(field(*tv, "mismatch.time_varying", "omega"),
                              "mismatch.time_varying.omega");
  }

  const json& assumptions = field(doc, "", "assumptions");
  if (const json* p = optional_field(assumptions, "preset")) {
    s.assumptions.preset = text(*p, "assumptions.preset");
    if (s.assumptions.preset != "lorenz-s4") {
      fail("assumptions.preset", "unknown preset '" + s.assumptions.preset + "'");
    }
  } else {
    s.assumptions.f = matrix_rows(field(assumptions, "assumptions", "F"), "assumptions.F");
    s.assumptions.gamma =
        matrix_rows(field(assumptions, "assumptions", "Gamma"), "assumptions.Gamma");
    s.assumptions.gamma_c =
        numbers(field(assumptions, "assumptions", "gamma_c"), "assumptions.gamma_c");
  }

  const json& controller = field(doc, "", "controller");
  s.controller.regime = text(field(controller, "controller", "regime"), "controller.regime");
  try {
    (void)regime_from_string(s.controller.regime);
  } catch (const Error& e) {
    fail("controller.regime", e.what());
  }
  if (const json* z = optional_field(controller, "z")) s.controller.z = parse_gains(*z, "controller.z");
  if (const json* z = optional_field(controller, "z_prime")) {
    s.controller.z_prime = parse_gains(*z, "controller.z_prime");
  }
  if (const json* k = optional_field(controller, "k")) s.controller.k = parse_gains(*k, "controller.k");
  if (const json* b = optional_field(controller, "B")) s.controller.b = parse_graph(*b, "controller.B");
  if (const json* c = optional_field(controller, "C")) s.controller.c = parse_graph(*c, "controller.C");

  const json& integration = field(doc, "", "integration");
  s.integration.dt = number(field(integration, "integration", "dt"), "integration.dt");
  s.integration.t_end = number(field(integration, "integration", "t_end"), "integration.t_end");
  s.integration.seed = seed_value(field(integration, "integration", "seed"), "integration.seed");
  const json& box = field(integration, "integration", "x0_box");
  if (!box.is_array()) fail("integration.x0_box", "expected an array of [lo, hi] pairs");
  for (std::size_t i = 0; i < box.size(); ++i) {
    const std::string p = "integration.x0_box[" + std::to_string(i) + "]";
    const std::vector<double> pair = numbers(box[i], p);
    if (pair.size() != 2) fail(p, "expected [lo, hi]");
    s.integration.x0_box.emplace_back(pair[0], pair[1]);
  }
  if (const json* s0 = optional_field(integration, "s0")) {
    s.integration.s0 = numbers(*s0, "integration.s0");
  }
  if (const json* g0 = optional_field(integration, "gamma_hat0")) {
    s.integration.gamma_hat0 = numbers(*g0, "integration.gamma_hat0");
  }

  const json& output = field(doc, "", "output");
  s.output.directory = text(field(output, "output", "directory"), "output.directory");
  s.output.stride = integer(field(output, "output", "stride"), "output.stride");
  if (const json* pn = optional_field(output, "per_node")) {
    if (!pn->is_boolean()) fail("output.per_node", "expected true or false");
    s.output.per_node = pn->get<bool>();
  }
  if (const json* th = optional_field(output, "settling_threshold")) {
    s.output.settling_threshold = number(*th, "output.settling_threshold");
  }
  return s;
}

Scenario parse_scenario(std::string_view text_in) {
  json doc;
  try {
    doc = json::parse(text_in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::scenario, std::string("parse error: ") + e.what());
  }
  return scenario_from_json(doc);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::scenario, path + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const Error& e) {
    throw Error(ErrorCode::scenario, path + ": " + e.what());
  }
}

json to_json(const Scenario& s) {
  json doc;
  doc["network"] = {{"nodes", s.nodes},
                    {"plant", graph_json(s.plant)},
                    {"inner_coupling", s.inner_coupling}};
  if (s.model.name == "lorenz") {
    doc["model"] = {{"name", "lorenz"},
                    {"a", s.model.lorenz.a},
                    {"b", s.model.lorenz.b},
                    {"c", s.model.lorenz.c}};
  } else {
    doc["model"] = {{"name", s.model.name}, {"A", s.model.linear_a}};
  }
  doc["mismatch"] = {{"bounds", s.mismatch.bounds}, {"seed", s.mismatch.seed}};
  if (s.mismatch.omega) doc["mismatch"]["time_varying"] = {{"omega", *s.mismatch.omega}};
  if (!s.assumptions.preset.empty()) {
    doc["assumptions"] = {{"preset", s.assumptions.preset}};
  } else {
    doc["assumptions"] = {{"F", s.assumptions.f},
                          {"Gamma", s.assumptions.gamma},
                          {"gamma_c", s.assumptions.gamma_c}};
  }
  json ctl = {{"regime", s.controller.regime}};
  if (s.controller.z) ctl["z"] = gains_json(*s.controller.z);
  if (s.controller.z_prime) ctl["z_prime"] = gains_json(*s.controller.z_prime);
  if (s.controller.k) ctl["k"] = gains_json(*s.controller.k);
  if (s.controller.b) ctl["B"] = graph_json(*s.controller.b);
  if (s.controller.c) ctl["C"] = graph_json(*s.controller.c);
  doc["controller"] = ctl;
  json box = json::array();
  for (const auto& [lo, hi] : s.integration.x0_box) box.push_back({lo, hi});
  doc["integration"] = {{"dt", s.integration.dt},
                        {"t_end", s.integration.t_end},
                        {"seed", s.integration.seed},
                        {"x0_box", box}};
  if (!s.integration.s0.empty()) doc["integration"]["s0"] = s.integration.s0;
  if (!s.integration.gamma_hat0.empty()) {
    doc["integration"]["gamma_hat0"] = s.integration.gamma_hat0;
  }
  doc["output"] = {{"directory", s.output.directory},
                   {"stride", s.output.stride},
                   {"per_node", s.output.per_node}};
  if (s.output.settling_threshold) {
    doc["output"]["settling_threshold"] = *s.output.settling_threshold;
  }
  return doc;
}

ResolvedScenario resolve(const Scenario& s) {
  std::vector<std::string> warnings;
  const int nodes = s.nodes;

  std::shared_ptr<const OscillatorModel> model;
  if (s.model.name == "lorenz") {
    model = std::make_shared<LorenzModel>(s.model.lorenz);
  } else {
    try {
      model = std::make_shared<LinearModel>(to_matrix(s.model.linear_a));
    } catch (const Error& e) {
      fail("model.A", e.what());
    }
  }
  const auto n = static_cast<std::size_t>(model->state_dim());
  const auto m = static_cast<std::size_t>(model->mismatch_dim());

  Laplacian plant = build_graph(s.plant, nodes, "network.plant", warnings);
  const Matrix h = to_matrix(s.inner_coupling);
  if (static_cast<std::size_t>(h.rows()) != n || static_cast<std::size_t>(h.cols()) != n) {
    fail("network.inner_coupling", "expected a " + std::to_string(n) + "x" +
                                       std::to_string(n) + " matrix for model " + model->name());
  }

  if (s.mismatch.bounds.size() != m) {
    fail("mismatch.bounds", "expected " + std::to_string(m) + " entries");
  }
  MismatchEnsemble mismatch;
  try {
    mismatch = sample_mismatches(nodes, to_vector(s.mismatch.bounds), s.mismatch.seed);
  } catch (const Error& e) {
    fail("mismatch.bounds", e.what());
  }
  if (s.mismatch.omega) attach_sinusoidal_variation(mismatch, *s.mismatch.omega);

  Matrix f_matrix;
  Matrix gamma_matrix;
  Vector gamma_c;
  if (s.assumptions.preset == "lorenz-s4") {
    f_matrix = presets::lorenz_quad_bound().f;
    gamma_matrix = presets::lorenz_gamma_matrix();
    gamma_c = corner_gamma_c(presets::lorenz_mismatch_caps());
  } else {
    f_matrix = to_matrix(s.assumptions.f);
    gamma_matrix = to_matrix(s.assumptions.gamma);
    gamma_c = to_vector(s.assumptions.gamma_c);
  }
  if (static_cast<std::size_t>(f_matrix.rows()) != n ||
      static_cast<std::size_t>(f_matrix.cols()) != n) {
    fail("assumptions.F", "expected an " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }
  std::optional<QuadBound> f;
  std::optional<UncertaintyBound> bound;
  try {
    f.emplace(f_matrix);
  } catch (const Error& e) {
    fail("assumptions.F", e.what());
  }
  if (static_cast<std::size_t>(gamma_matrix.rows()) != m) {
    fail("assumptions.Gamma", "expected an " + std::to_string(m) + "x" + std::to_string(m) +
                                  " matrix");
  }
  try {
    bound.emplace(gamma_matrix, gamma_c);
  } catch (const Error& e) {
    fail("assumptions.Gamma", e.what());
  }

  ControllerSpec ctl;
  const Regime regime = regime_from_string(s.controller.regime);
  const auto big_n = static_cast<std::size_t>(nodes);
  auto require = [&](const auto& opt, const std::string& path) -> const auto& {
    if (!opt) fail(path, "required for regime " + s.controller.regime);
    return *opt;
  };
  switch (regime) {
    case Regime::open_loop:
      ctl = ControllerSpec::open_loop(big_n);
      break;
    case Regime::decentralized: {
      GainDiagonal z = build_gains(require(s.controller.z, "controller.z"), nodes,
                                   plant.matrix(), "controller.z");
      GainDiagonal k = build_gains(require(s.controller.k, "controller.k"), nodes,
                                   plant.matrix(), "controller.k");
      ctl = ControllerSpec::decentralized(std::move(z), k.gains());
      break;
    }
    case Regime::distributed: {
      Laplacian b = build_graph(require(s.controller.b, "controller.B"), nodes, "controller.B",
                                warnings);
      Laplacian c = build_graph(require(s.controller.c, "controller.C"), nodes, "controller.C",
                                warnings);
      // Greedy pinning: Z against the physical coupling L + B, Z' against C.
      GainDiagonal z = build_gains(require(s.controller.z, "controller.z"), nodes,
                                   plant.matrix() + b.matrix(), "controller.z");
      GainDiagonal zp = build_gains(require(s.controller.z_prime, "controller.z_prime"), nodes,
                                    c.matrix(), "controller.z_prime");
      GainDiagonal k = build_gains(require(s.controller.k, "controller.k"), nodes,
                                   plant.matrix(), "controller.k");
      ctl = ControllerSpec::distributed(std::move(b), std::move(c), std::move(z), std::move(zp),
                                        k.gains());
      break;
    }
  }
  try {
    ctl.validate(big_n);
  } catch (const Error& e) {
    fail("controller", e.what());
  }

  IntegrationConfig cfg;
  cfg.dt = s.integration.dt;
  cfg.t_end = s.integration.t_end;
  cfg.seed = s.integration.seed;
  if (s.integration.x0_box.size() != n) {
    fail("integration.x0_box", "expected " + std::to_string(n) + " intervals");
  }
  cfg.x0_lo.resize(static_cast<Eigen::Index>(n));
  cfg.x0_hi.resize(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    cfg.x0_lo(static_cast<Eigen::Index>(j)) = s.integration.x0_box[j].first;
    cfg.x0_hi(static_cast<Eigen::Index>(j)) = s.integration.x0_box[j].second;
  }
  if (!s.integration.s0.empty()) {
    if (s.integration.s0.size() != n) fail("integration.s0", "expected " + std::to_string(n) + " entries");
    cfg.s0 = to_vector(s.integration.s0);
  }
  if (!s.integration.gamma_hat0.empty()) {
    if (s.integration.gamma_hat0.size() != m) {
      fail("integration.gamma_hat0", "expected " + std::to_string(m) + " entries");
    }
    cfg.gamma_hat0 = to_vector(s.integration.gamma_hat0);
  }
  cfg.stride = s.output.stride;
  cfg.per_node = s.output.per_node;
  if (s.output.settling_threshold && !(*s.output.settling_threshold > 0.0)) {
    fail("output.settling_threshold", "must be positive");
  }

  NetworkProblem problem{model, std::move(plant), h, std::move(mismatch), std::move(ctl), cfg};
  try {
    problem.validate();
  } catch (const Error& e) {
    fail("integration", e.what());
  }
  return ResolvedScenario{std::move(problem), std::move(*f), std::move(*bound),
                          s.output.settling_threshold, std::move(warnings)};
}

std::vector<std::string> preset_names() { return {"fig1", "fig2-3", "fig4-5"}; }

Scenario preset(std::string_view name) {
  const LorenzParams p = presets::lorenz_params();
  const Vector caps = presets::lorenz_mismatch_caps();

  Scenario s;
  s.nodes = 50;
  s.plant = GraphSpec{"complete", {}};
  s.inner_coupling = to_rows(10.0 * Matrix::Identity(3, 3));
  s.model.name = "lorenz";
  s.model.lorenz = p;
  s.mismatch.bounds = {caps(0), caps(1), caps(2)};
  s.mismatch.seed = 1;
  s.assumptions.f = to_rows(presets::lorenz_quad_bound().f);
  s.assumptions.gamma = to_rows(presets::lorenz_gamma_matrix());
  s.assumptions.gamma_c = s.mismatch.bounds;
  s.integration.dt = 1e-3;
  s.integration.t_end = 20.0;
  s.integration.seed = 1;
  s.integration.x0_box = {{-10.0, 10.0}, {-10.0, 10.0}, {-10.0, 10.0}};
  s.output.stride = 10;
  s.output.per_node = false;

  if (name == "fig1") {
    s.controller.regime = "open_loop";
    s.output.directory = "out/fig1";
  } else if (name == "fig2-3") {
    s.controller.regime = "decentralized";
    s.controller.z = GainSpec{GainSpec::Kind::uniform, 10.0, {}, {}, 0};
    s.controller.k = GainSpec{GainSpec::Kind::uniform, 1.0, {}, {}, 0};
    s.output.directory = "out/fig2-3";
  } else if (name == "fig4-5") {
    const std::vector<int> pins{5, 16, 26, 35, 46};
    s.controller.regime = "distributed";
    s.controller.z = GainSpec{GainSpec::Kind::pins, 1.0, {}, pins, 0};
    s.controller.z_prime = GainSpec{GainSpec::Kind::pins, 1.0, {}, pins, 0};
    s.controller.k = GainSpec{GainSpec::Kind::uniform, 10.0, {}, {}, 0};
    s.controller.b = GraphSpec{"zero", {}};
    s.controller.c = GraphSpec{"path", {}};
    s.integration.t_end = 40.0;
    s.output.directory = "out/fig4-5";
  } else {
    throw Error(ErrorCode::scenario,
                "unknown preset '" + std::string(name) + "' (expected fig1, fig2-3 or fig4-5)");
  }
  return s;
}

}  // namespace netsync
