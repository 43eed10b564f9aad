#include "netsync/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "netsync/error.hpp"

namespace netsync::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string format_optional(const json& v) {
  return v.is_null() ? std::string("n/a") : format_number(v.get<double>());
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + path.string());
  out << content;
}

/// Settling threshold: explicit output setting, else the certified ε of an
/// uncontrolled run.
std::optional<double> settling_threshold(const ResolvedScenario& rs, const json& cert) {
  if (rs.settling_threshold) return rs.settling_threshold;
  if (rs.problem.controller.regime != Regime::open_loop) return std::nullopt;
  if (!cert["epsilon"].is_null()) return cert["epsilon"].get<double>();
  return std::nullopt;
}

void print_certificate(const json& r, std::ostream& out) {
  out << "regime            " << r["regime"].get<std::string>() << '\n';
  out << "lambda*           " << format_optional(r["lambda_star"]) << '\n';
  out << "epsilon bound     " << format_optional(r["epsilon"]) << '\n';
  out << "mu threshold      " << format_optional(r["mu_threshold"]) << '\n';
  out << "theorem2 margin   " << format_optional(r["theorem2_margin"]) << '\n';
  out << "theorem3 margin   " << format_optional(r["theorem3_margin"]) << '\n';
  out << "binding mu        " << format_optional(r["binding_mu"]) << '\n';
  out << "requested         " << r["requested"].get<std::string>() << " -> "
      << (r["satisfied"].get<bool>() ? "SATISFIED" : "NOT SATISFIED") << '\n';
  for (const auto& w : r["warnings"]) out << "warning: " << w.get<std::string>() << '\n';
}

void print_summary(const json& s, std::ostream& out) {
  out << "final e_avg       " << format_number(s["final_e_avg"].get<double>()) << '\n';
  out << "final e_ref       " << format_number(s["final_e_ref"].get<double>()) << '\n';
  out << "final gamma_err   " << format_number(s["final_gamma_err"].get<double>()) << '\n';
  out << "settling time     " << format_optional(s["settling_time"]);
  if (!s["settling_threshold"].is_null()) {
    out << " (threshold " << format_number(s["settling_threshold"].get<double>()) << ")";
  }
  out << '\n';
  out << "diverged          " << (s["diverged"].get<bool>() ? "yes" : "no") << '\n';
  out << "mismatch energy   " << format_number(s["max_mismatch_energy"].get<double>())
      << " (bound " << format_number(s["mismatch_energy_bound"].get<double>()) << ")\n";
}

std::vector<std::string> split_values(const std::string& joined) {
  std::vector<std::string> out;
  if (joined.empty()) return out;
  std::stringstream in(joined);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

json* locate(json& doc, const std::string& axis) {
  json* node = &doc;
  std::stringstream in(axis);
  std::string key;
  while (std::getline(in, key, '.')) {
    if (node->is_object()) {
      auto it = node->find(key);
      if (it == node->end()) return nullptr;
      node = &*it;
    } else if (node->is_array()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(key);
      } catch (const std::exception&) {
        return nullptr;
      }
      if (idx >= node->size()) return nullptr;
      node = &(*node)[idx];
    } else {
      return nullptr;
    }
  }
  return node;
}

json substitute(const json& target, const std::string& raw, const std::string& axis) {
  if (target.is_string()) return raw;
  if (target.is_boolean()) {
    if (raw == "true") return true;
    if (raw == "false") return false;
    throw Error(ErrorCode::scenario, axis + ": expected true or false, got '" + raw + "'");
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != raw.size() || raw.empty()) {
    throw Error(ErrorCode::scenario, axis + ": '" + raw + "' is not a number");
  }
  if (target.is_number_integer()) {
    if (v != std::floor(v)) throw Error(ErrorCode::scenario, axis + ": expected an integer");
    if (target.is_number_unsigned()) return static_cast<std::uint64_t>(v);
    return static_cast<long long>(v);
  }
  return v;
}

struct SweepRow {
  std::string value;
  json epsilon;
  double e_avg = 0.0;
  double e_ref = 0.0;
  double gamma_err = 0.0;
  json settling;
  bool diverged = false;
};

SweepRow run_sweep_point(const json& doc, const std::string& value) {
  const ResolvedScenario rs = resolve(scenario_from_json(doc));
  const json cert = certificate_report(rs);
  const Trajectory traj = integrate(rs.problem);
  const json summary = run_summary(rs, traj);
  SweepRow row;
  row.value = value;
  row.epsilon = cert["epsilon"];
  row.e_avg = summary["final_e_avg"].get<double>();
  row.e_ref = summary["final_e_ref"].get<double>();
  row.gamma_err = summary["final_gamma_err"].get<double>();
  row.settling = summary["settling_time"];
  row.diverged = traj.diverged;
  return row;
}

int cmd_certify(const std::string& file, const std::string& out_dir, bool as_json,
                std::ostream& out, std::ostream& err) {
  const ResolvedScenario rs = resolve(load_scenario(file));
  const json report = certificate_report(rs);
  if (as_json) {
    out << report.dump(2) << '\n';
  } else {
    print_certificate(report, out);
  }
  if (!out_dir.empty()) {
    write_file(fs::path(out_dir) / "certificate.json", report.dump(2) + "\n");
  }
  (void)err;
  return report["satisfied"].get<bool>() ? kOk : kCertificateFailed;
}

int cmd_simulate(const std::string& file, const std::string& out_override,
                 std::optional<std::uint64_t> seed, bool per_node, std::ostream& out,
                 std::ostream& err) {
  Scenario scenario = load_scenario(file);
  if (seed) {
    scenario.integration.seed = *seed;
    scenario.mismatch.seed = *seed;
  }
  if (per_node) scenario.output.per_node = true;
  const std::string dir = out_override.empty() ? scenario.output.directory : out_override;
  const ResolvedScenario rs = resolve(scenario);
  for (const auto& w : rs.warnings) err << "warning: " << w << '\n';

  const Trajectory traj = integrate(rs.problem);
  std::ostringstream csv;
  write_trajectory_csv(traj, csv);
  const json summary = run_summary(rs, traj);
  write_file(fs::path(dir) / "trajectory.csv", csv.str());
  write_file(fs::path(dir) / "summary.json", summary.dump(2) + "\n");
  print_summary(summary, out);
  if (summary["mismatch_energy_exceeded"].get<bool>()) {
    err << "warning: observed mismatch energy exceeds gamma_c' Gamma gamma_c\n";
  }
  if (traj.diverged) {
    err << "error: integration diverged after t = " << format_number(traj.last_finite_t)
        << "; partial trajectory written\n";
    return kDiverged;
  }
  return kOk;
}

int cmd_sweep(const std::string& file, const std::string& axis, const std::string& values,
              const std::string& out_dir, unsigned jobs, std::ostream& out) {
  // Validate the base scenario before touching the axis.
  const Scenario base = load_scenario(file);
  json doc = to_json(base);
  json* target = locate(doc, axis);
  if (target == nullptr) throw Error(ErrorCode::scenario, axis + ": no such scenario field");
  if (target->is_object() || target->is_array() || target->is_null()) {
    throw Error(ErrorCode::scenario, axis + ": sweep axis must be a scalar field");
  }

  const std::vector<std::string> raw = split_values(values);
  std::vector<json> docs;
  for (const std::string& v : raw) {
    json copy = doc;
    *locate(copy, axis) = substitute(*target, v, axis);
    docs.push_back(std::move(copy));
  }

  std::vector<SweepRow> rows(docs.size());
  const unsigned workers = std::max(1u, jobs);
  for (std::size_t start = 0; start < docs.size(); start += workers) {
    std::vector<std::future<SweepRow>> batch;
    for (std::size_t i = start; i < std::min(docs.size(), start + workers); ++i) {
      batch.push_back(std::async(std::launch::async, run_sweep_point, std::cref(docs[i]),
                                 std::cref(raw[i])));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) rows[start + i] = batch[i].get();
  }

  std::ostringstream csv;
  csv << "value,epsilon,final_e_avg,final_e_ref,final_gamma_err,settling_time,diverged\n";
  for (const SweepRow& r : rows) {
    csv << r.value << ',' << (r.epsilon.is_null() ? "" : format_number(r.epsilon.get<double>()))
        << ',' << format_number(r.e_avg) << ',' << format_number(r.e_ref) << ','
        << format_number(r.gamma_err) << ','
        << (r.settling.is_null() ? "" : format_number(r.settling.get<double>())) << ','
        << (r.diverged ? 1 : 0) << '\n';
  }
  out << csv.str();
  if (!out_dir.empty()) write_file(fs::path(out_dir) / "sweep.csv", csv.str());
  return kOk;
}

}  // namespace

json certificate_report(const ResolvedScenario& rs) {
  const NetworkProblem& p = rs.problem;
  const Regime regime = p.controller.regime;
  json r;
  r["regime"] = std::string(to_string(regime));
  r["lambda_star"] = nullptr;
  r["epsilon"] = nullptr;
  r["theorem2_margin"] = nullptr;
  r["theorem2_binding_mu"] = nullptr;
  r["theorem3_margin"] = nullptr;
  r["theorem3_binding_mu"] = nullptr;
  r["theorem1_binding_mu"] = nullptr;
  r["mu_threshold"] = nullptr;
  json warnings = json::array();
  for (const auto& w : rs.warnings) warnings.push_back(w);

  bool theorem1 = false;
  if (is_connected(p.l)) {
    const CertificateReport t1 = check_bounded_error(rs.f, p.h, p.l, rs.bound);
    r["lambda_star"] = *t1.lambda_star;
    r["epsilon"] = optional_number(t1.epsilon_bound);
    r["theorem1_binding_mu"] = t1.binding_eigenvalue;
    theorem1 = t1.satisfied;
  } else {
    warnings.push_back("plant network is not connected: no lambda* or epsilon bound");
  }
  try {
    r["mu_threshold"] = mu_threshold(rs.f, p.h);
  } catch (const Error&) {
    warnings.push_back("symmetric part of H is not positive definite: no mu threshold");
  }

  bool theorem2 = false;
  bool theorem3 = false;
  if (regime != Regime::open_loop) {
    const CertificateReport t2 = check_decentralized(rs.f, p.h, p.l, p.controller.z);
    r["theorem2_margin"] = t2.margin;
    r["theorem2_binding_mu"] = t2.binding_eigenvalue;
    theorem2 = t2.satisfied;
    for (const auto& w : t2.warnings) warnings.push_back(w);
  }
  if (regime == Regime::distributed) {
    const CertificateReport t3 =
        check_distributed(rs.f, p.h, p.l, *p.controller.b, p.controller.z);
    r["theorem3_margin"] = t3.margin;
    r["theorem3_binding_mu"] = t3.binding_eigenvalue;
    theorem3 = t3.satisfied;
  }

  switch (regime) {
    case Regime::open_loop:
      r["requested"] = "theorem1";
      r["satisfied"] = theorem1;
      r["binding_mu"] = r["theorem1_binding_mu"];
      break;
    case Regime::decentralized:
      r["requested"] = "theorem2";
      r["satisfied"] = theorem2;
      r["binding_mu"] = r["theorem2_binding_mu"];
      break;
    case Regime::distributed:
      r["requested"] = "theorem3";
      r["satisfied"] = theorem3;
      r["binding_mu"] = r["theorem3_binding_mu"];
      break;
  }
  r["warnings"] = warnings;
  return r;
}

json run_summary(const ResolvedScenario& rs, const Trajectory& traj) {
  const TrajectorySample& last = traj.samples.back();
  json s;
  s["final_t"] = last.t;
  s["final_e_avg"] = last.e_avg;
  s["final_e_ref"] = last.e_ref;
  s["final_gamma_err"] = last.gamma_err;
  const json cert = certificate_report(rs);
  const std::optional<double> threshold = settling_threshold(rs, cert);
  s["settling_threshold"] = optional_number(threshold);
  s["settling_time"] = threshold ? optional_number(settling_time(traj, *threshold)) : json(nullptr);
  s["diverged"] = traj.diverged;
  s["last_finite_t"] = traj.last_finite_t;
  s["max_mismatch_energy"] = traj.max_mismatch_energy;
  s["mismatch_energy_bound"] = rs.bound.worst_case_energy();
  s["mismatch_energy_exceeded"] = traj.max_mismatch_energy > rs.bound.worst_case_energy();
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synchronization certificates and simulations for mismatched oscillator networks",
               "netsync"};
  app.require_subcommand(1);

  std::string file;
  std::string out_dir;
  bool as_json = false;
  auto* certify = app.add_subcommand("certify", "Print spectral certificates for a scenario");
  certify->add_option("file", file, "Scenario file")->required();
  certify->add_option("--out", out_dir, "Directory for certificate.json");
  certify->add_flag("--json", as_json, "Print the structured report instead of text");

  std::uint64_t seed = 0;
  bool per_node = false;
  auto* simulate = app.add_subcommand("simulate", "Integrate a scenario and write its trajectory");
  simulate->add_option("file", file, "Scenario file")->required();
  simulate->add_option("--out", out_dir, "Output directory (overrides output.directory)");
  auto* seed_opt = simulate->add_option("--seed", seed, "Seed for initial states and mismatches");
  simulate->add_flag("--per-node", per_node, "Add per-node error columns");

  std::string axis;
  std::string values;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* sweep = app.add_subcommand("sweep", "Run one simulation per value of a scalar field");
  sweep->add_option("file", file, "Scenario file")->required();
  sweep->add_option("--axis", axis, "Dotted scenario field path, e.g. integration.dt")->required();
  sweep->add_option("--values", values, "Comma-separated values")->required();
  sweep->add_option("--out", out_dir, "Directory for sweep.csv");
  sweep->add_option("--jobs", jobs, "Concurrent runs");

  std::string preset_name;
  bool print = false;
  auto* preset_cmd = app.add_subcommand("preset", "Emit a reference scenario");
  preset_cmd->add_option("name", preset_name, "fig1, fig2-3 or fig4-5")->required();
  preset_cmd->add_flag("--print", print, "Print the scenario document")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*certify) return cmd_certify(file, out_dir, as_json, out, err);
    if (*simulate) {
      std::optional<std::uint64_t> seed_override;
      if (seed_opt->count() > 0) seed_override = seed;
      return cmd_simulate(file, out_dir, seed_override, per_node, out, err);
    }
    if (*sweep) return cmd_sweep(file, axis, values, out_dir, jobs, out);
    if (*preset_cmd) {
      out << to_json(preset(preset_name)).dump(2) << '\n';
      return kOk;
    }
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace netsync::cli
