#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "netsync/certification.hpp"
#include "netsync/control.hpp"
#include "netsync/dynamics.hpp"
#include "netsync/sim.hpp"

namespace netsync {

using Rows = std::vector<std::vector<double>>;

/// Named generator ("complete", "path", "zero") sized by the scenario node
/// count, or an explicit row-major matrix (generator "matrix").
struct GraphSpec {
  std::string generator;
  Rows matrix;

  friend bool operator==(const GraphSpec&, const GraphSpec&) = default;
};

/// Per-node gains: one value for all nodes, an explicit list, or a pin set
/// (1-based node list, or greedy placement of `greedy_count` pins) at `gain`.
struct GainSpec {
  enum class Kind { uniform, values, pins, greedy };
  Kind kind = Kind::uniform;
  double gain = 0.0;
  std::vector<double> values;
  std::vector<int> pins;
  int greedy_count = 0;

  friend bool operator==(const GainSpec&, const GainSpec&) = default;
};

struct ModelSpec {
  std::string name = "lorenz";
  LorenzParams lorenz;
  Rows linear_a;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

struct MismatchSpec {
  std::vector<double> bounds;
  std::uint64_t seed = 0;
  std::optional<double> omega;

  friend bool operator==(const MismatchSpec&, const MismatchSpec&) = default;
};

/// F, Γ and γ_c; a non-empty `preset` ("lorenz-s4") supplies all three.
struct AssumptionSpec {
  std::string preset;
  Rows f;
  Rows gamma;
  std::vector<double> gamma_c;

  friend bool operator==(const AssumptionSpec&, const AssumptionSpec&) = default;
};

struct ControllerConfig {
  std::string regime = "open_loop";
  std::optional<GainSpec> z;
  std::optional<GainSpec> z_prime;
  std::optional<GainSpec> k;
  std::optional<GraphSpec> b;
  std::optional<GraphSpec> c;

  friend bool operator==(const ControllerConfig&, const ControllerConfig&) = default;
};

struct IntegrationSpec {
  double dt = 0.0;
  double t_end = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::pair<double, double>> x0_box;
  std::vector<double> s0;
  std::vector<double> gamma_hat0;

  friend bool operator==(const IntegrationSpec&, const IntegrationSpec&) = default;
};

struct OutputSpec {
  std::string directory;
  int stride = 10;
  bool per_node = false;
  std::optional<double> settling_threshold;

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

/// A complete experiment description as read from a scenario file.
struct Scenario {
  int nodes = 0;
  GraphSpec plant;
  Rows inner_coupling;
  ModelSpec model;
  MismatchSpec mismatch;
  AssumptionSpec assumptions;
  ControllerConfig controller;
  IntegrationSpec integration;
  OutputSpec output;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Scenario with every matrix built and every hypothesis checked.
struct ResolvedScenario {
  NetworkProblem problem;
  QuadBound f;
  UncertaintyBound bound;
  std::optional<double> settling_threshold;
  std::vector<std::string> warnings;
};

/// Parses a scenario document. Errors are ErrorCode::scenario with the
/// offending field path in the message.
Scenario scenario_from_json(const nlohmann::json& doc);
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);
nlohmann::json to_json(const Scenario& scenario);

/// Builds matrices, draws the mismatch ensemble and runs every cross-field
/// check before any computation.
ResolvedScenario resolve(const Scenario& scenario);

/// Preset names: "fig1", "fig2-3", "fig4-5".
std::vector<std::string> preset_names();
Scenario preset(std::string_view name);

}  // namespace netsync
