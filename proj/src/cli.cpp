// Copyright 2026 The hamest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hamest/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "hamest/errors.hpp"
#include "hamest/family.hpp"
#include "hamest/feedback.hpp"
#include "hamest/noisy.hpp"
#include "hamest/qfi.hpp"

namespace hamest::cli {

namespace {

const std::set<std::string> kCommands = {"qfi", "sweep", "noisy-sweep", "scaling", "bound"};

template <class T>
void read_if(const nlohmann::json& j, const char* key, T& target) {
  if (j.contains(key)) target = j.at(key).get<T>();
}

nlohmann::json interval_json(const std::optional<GainInterval>& gi) {
  if (!gi) return nullptr;
  return {{"lo", gi->lo}, {"hi", gi->hi}, {"lo_open", gi->lo_open}, {"hi_open", gi->hi_open}};
}

nlohmann::json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

QfiResult configured_qfi(const RunConfig& c, const HamiltonianFamily& family) {
  const FeedbackSchedule schedule =
      c.controlled ? optimal_schedule(family, Estimate{(1.0 + c.beta) * c.x}, c.segments, c.total_time)
                   : FeedbackSchedule::identity(1, c.total_time, family.dim());
  const UnitaryFamily evolution = controlled_family(family, schedule);
  if (c.method == "generator") return channel_qfi_generator(evolution, c.x, c.dx);
  return channel_qfi_fd(evolution, c.x, c.dx);
}

void emit_sweep(const RunConfig& c, const SweepResult& r, std::ostream& out) {
  if (c.format == "json") {
    nlohmann::json doc;
    doc["config"] = to_json(c);
    doc["betas"] = r.betas;
    doc["qfi_controlled"] = r.qfi_controlled;
    doc["qfi_uncontrolled"] = r.qfi_uncontrolled;
    doc["gain_interval"] = interval_json(r.gain_interval);
    out << doc.dump(2) << '\n';
    return;
  }
  out << "beta,qfi_controlled,qfi_uncontrolled,gain\n";
  for (std::size_t i = 0; i < r.betas.size(); ++i) {
    out << format_number(r.betas[i]) << ',' << format_number(r.qfi_controlled[i]) << ','
        << format_number(r.qfi_uncontrolled) << ',' << format_number(r.qfi_controlled[i] - r.qfi_uncontrolled)
        << '\n';
  }
}

int execute(const RunConfig& c, std::ostream& out) {
  const HamiltonianFamily family = family_from_json(c.family);

  if (c.command == "qfi" || c.command == "bound") {
    const QfiResult q = configured_qfi(c, family);
    const double bound = precision_bound(q.value, c.repetitions);
    if (c.format == "json") {
      nlohmann::json doc;
      doc["config"] = to_json(c);
      doc["qfi"] = q.value;
      doc["method"] = std::string(to_string(q.method));
      if (c.command == "bound") {
        doc["n"] = c.repetitions;
        doc["bound"] = number_json(bound);
      }
      out << doc.dump(2) << '\n';
    } else if (c.command == "qfi") {
      out << "x,T,m,beta,controlled,method,qfi\n"
          << format_number(c.x) << ',' << format_number(c.total_time) << ',' << (c.controlled ? c.segments : 1) << ','
          << format_number(c.beta) << ',' << (c.controlled ? 1 : 0) << ',' << to_string(q.method) << ','
          << format_number(q.value) << '\n';
    } else {
      out << "qfi,n,bound\n"
          << format_number(q.value) << ',' << c.repetitions << ',' << format_number(bound) << '\n';
    }
    return kExitOk;
  }

  if (c.command == "sweep") {
    const std::vector<double> grid = linspace(c.beta_min, c.beta_max, c.beta_steps);
    emit_sweep(c, beta_sweep(family, c.x, c.segments, c.total_time, grid, c.dx, c.threads), out);
    return kExitOk;
  }

  if (c.command == "noisy-sweep") {
    NoisySweepConfig nc;
    nc.eta = c.eta;
    nc.segments = c.segments;
    nc.total_time = c.total_time;
    nc.x_true = c.x;
    nc.beta_grid = linspace(c.beta_min, c.beta_max, c.beta_steps);
    nc.dx = c.dx;
    nc.search = {c.azimuth_points, c.polar_points, c.refine_rounds, ProbeSearch{}.min_step};
    nc.threads = c.threads;
    emit_sweep(c, noisy_beta_sweep(nc, family), out);
    return kExitOk;
  }

  // scaling
  const auto curve = scaling_curve(family, c.x, c.total_time, c.segment_values, c.dx, c.threads);
  const double limit = universal_qfi(family, c.x, c.total_time);
  if (c.format == "json") {
    nlohmann::json doc;
    doc["config"] = to_json(c);
    doc["limit"] = limit;
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : curve) points.push_back({{"m", p.segments}, {"qfi", p.qfi}});
    doc["points"] = points;
    out << doc.dump(2) << '\n';
  } else {
    out << "m,qfi,limit\n";
    for (const auto& p : curve) out << p.segments << ',' << format_number(p.qfi) << ',' << format_number(limit) << '\n';
  }
  return kExitOk;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void RunConfig::validate() const {
  if (!kCommands.contains(command)) throw UsageError("command", "expected one of qfi, sweep, noisy-sweep, scaling, bound");
  if (!std::isfinite(x)) throw UsageError("--x", "must be finite");
  if (!(total_time > 0.0) || !std::isfinite(total_time)) throw UsageError("--T", "must be positive");
  if (segments < 1) throw UsageError("--m", "must be >= 1");
  if (!(dx > 0.0)) throw UsageError("--dx", "must be positive");
  if (repetitions < 1) throw UsageError("--n", "must be >= 1");
  if (!(eta >= 0.0 && eta <= 1.0)) throw UsageError("--eta", "eta must lie in [0, 1]");
  if (method != "cte_fd" && method != "generator") throw UsageError("--method", "expected cte_fd or generator");
  if (!(beta_min <= beta_max)) throw UsageError("--beta-min", "must not exceed --beta-max");
  if (beta_steps < 2) throw UsageError("--beta-steps", "must be >= 2");
  if (segment_values.empty()) throw UsageError("--m-values", "needs at least one value");
  for (int m : segment_values)
    if (m < 1) throw UsageError("--m-values", "every value must be >= 1");
  if (azimuth_points < 1) throw UsageError("--azimuth-points", "must be >= 1");
  if (polar_points < 1) throw UsageError("--polar-points", "must be >= 1");
  if (refine_rounds < 0) throw UsageError("--refine-rounds", "must be >= 0");
  if (format != "csv" && format != "json") throw UsageError("--format", "expected csv or json");
  try {
    (void)family_from_json(family);
  } catch (const Error& e) {
    throw UsageError("family", e.what());
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("family", e.what());
  }
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"command", c.command},
          {"family", c.family},
          {"x", c.x},
          {"T", c.total_time},
          {"m", c.segments},
          {"dx", c.dx},
          {"n", c.repetitions},
          {"eta", c.eta},
          {"controlled", c.controlled},
          {"beta", c.beta},
          {"method", c.method},
          {"beta_min", c.beta_min},
          {"beta_max", c.beta_max},
          {"beta_steps", c.beta_steps},
          {"m_values", c.segment_values},
          {"azimuth_points", c.azimuth_points},
          {"polar_points", c.polar_points},
          {"refine_rounds", c.refine_rounds},
          {"threads", c.threads},
          {"output", {{"path", c.out_path}, {"format", c.format}}}};
}

RunConfig config_from_json(const nlohmann::json& input) {
  const nlohmann::json& j = input.contains("config") ? input.at("config") : input;
  if (!j.is_object()) throw UsageError("--config", "config must be a JSON object");
  static const std::set<std::string> known = {
      "command",    "family",     "x",          "T",      "m",           "dx",             "n",
      "eta",        "controlled", "beta",       "method", "beta_min",    "beta_max",       "beta_steps",
      "m_values",   "azimuth_points", "polar_points", "refine_rounds", "threads", "output"};
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw UsageError("--config", "unknown config key \"" + key + "\"");

  RunConfig c;
  try {
    read_if(j, "command", c.command);
    read_if(j, "family", c.family);
    read_if(j, "x", c.x);
    read_if(j, "T", c.total_time);
    read_if(j, "m", c.segments);
    read_if(j, "dx", c.dx);
    read_if(j, "n", c.repetitions);
    read_if(j, "eta", c.eta);
    read_if(j, "controlled", c.controlled);
    read_if(j, "beta", c.beta);
    read_if(j, "method", c.method);
    read_if(j, "beta_min", c.beta_min);
    read_if(j, "beta_max", c.beta_max);
    read_if(j, "beta_steps", c.beta_steps);
    read_if(j, "m_values", c.segment_values);
    read_if(j, "azimuth_points", c.azimuth_points);
    read_if(j, "polar_points", c.polar_points);
    read_if(j, "refine_rounds", c.refine_rounds);
    read_if(j, "threads", c.threads);
    if (j.contains("output")) {
      read_if(j.at("output"), "path", c.out_path);
      read_if(j.at("output"), "format", c.format);
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("--config", e.what());
  }
  return c;
}

RunConfig parse_and_validate(const std::vector<std::string>& args, std::ostream& help_out, bool& help_requested) {
  help_requested = false;
  CLI::App app{"Fisher information of Hamiltonian parameter estimation with feedback controls", "hamest"};
  app.fallthrough();

  std::string config_path, family_name, format, out_path, method;
  double x = 0, b = 0, t = 0, dx = 0, eta = 0, beta = 0, beta_min = 0, beta_max = 0;
  int m = 0, beta_steps = 0, azimuth = 0, polar = 0, rounds = 0;
  long long n = 0;
  unsigned threads = 0;
  std::vector<int> m_values;

  auto* o_config = app.add_option("--config", config_path, "JSON config file (flags override its values)");
  auto* o_family = app.add_option("--family", family_name, "direction-field or multiplicative (sigma3)");
  auto* o_b = app.add_option("--B", b, "field strength of the direction-field family");
  auto* o_t = app.add_option("--T", t, "total evolution time");
  auto* o_x = app.add_option("--x", x, "true parameter value");
  auto* o_m = app.add_option("--m", m, "number of segments");
  auto* o_dx = app.add_option("--dx", dx, "finite-difference step");
  auto* o_n = app.add_option("--n", n, "number of repetitions for the precision bound");
  auto* o_eta = app.add_option("--eta", eta, "per-segment dephasing coherence factor in [0, 1]");
  auto* o_controlled = app.add_flag("--controlled", "qfi/bound: use controls built from (1 + beta) x");
  auto* o_beta = app.add_option("--beta", beta, "estimate error for --controlled");
  auto* o_method = app.add_option("--method", method, "cte_fd or generator");
  auto* o_beta_min = app.add_option("--beta-min", beta_min, "sweep start");
  auto* o_beta_max = app.add_option("--beta-max", beta_max, "sweep end");
  auto* o_beta_steps = app.add_option("--beta-steps", beta_steps, "sweep points (>= 2)");
  auto* o_m_values = app.add_option("--m-values", m_values, "scaling: comma-separated segment counts")->delimiter(',');
  auto* o_azimuth = app.add_option("--azimuth-points", azimuth, "noisy-sweep probe grid, azimuth");
  auto* o_polar = app.add_option("--polar-points", polar, "noisy-sweep probe grid, polar");
  auto* o_rounds = app.add_option("--refine-rounds", rounds, "noisy-sweep probe refinement rounds");
  auto* o_threads = app.add_option("--threads", threads, "worker threads (0 = all cores)");
  auto* o_out = app.add_option("--out", out_path, "output path (default standard output)");
  auto* o_format = app.add_option("--format", format, "csv or json");

  app.require_subcommand(0, 1);
  for (const auto& name : kCommands) app.add_subcommand(name, "run the " + name + " experiment");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    help_out << app.help();
    help_requested = true;
    return {};
  } catch (const CLI::ParseError& e) {
    throw UsageError("arguments", e.what());
  }

  RunConfig c;
  if (o_config->count()) {
    std::ifstream in(config_path);
    if (!in) throw UsageError("--config", "cannot open " + config_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("--config", e.what());
    }
    c = config_from_json(j);
  }
  for (const auto* sub : app.get_subcommands()) c.command = sub->get_name();

  if (o_family->count()) {
    if (family_name == "direction-field" || family_name == "direction_field")
      c.family = {{"kind", "direction_field"}, {"B", c.family.value("B", 1.0)}};
    else if (family_name == "multiplicative")
      c.family = {{"kind", "multiplicative"}};
    else
      throw UsageError("--family", "expected direction-field or multiplicative");
  }
  if (o_b->count()) {
    if (c.family.value("kind", "") != "direction_field")
      throw UsageError("--B", "only applies to the direction-field family");
    c.family["B"] = b;
  }
  if (o_t->count()) c.total_time = t;
  if (o_x->count()) c.x = x;
  if (o_m->count()) c.segments = m;
  if (o_dx->count()) c.dx = dx;
  if (o_n->count()) c.repetitions = n;
  if (o_eta->count()) c.eta = eta;
  if (o_controlled->count()) c.controlled = true;
  if (o_beta->count()) c.beta = beta;
  if (o_method->count()) c.method = method;
  if (o_beta_min->count()) c.beta_min = beta_min;
  if (o_beta_max->count()) c.beta_max = beta_max;
  if (o_beta_steps->count()) c.beta_steps = beta_steps;
  if (o_m_values->count()) c.segment_values = m_values;
  if (o_azimuth->count()) c.azimuth_points = azimuth;
  if (o_polar->count()) c.polar_points = polar;
  if (o_rounds->count()) c.refine_rounds = rounds;
  if (o_threads->count()) c.threads = threads;
  if (o_out->count()) c.out_path = out_path;
  if (o_format->count()) c.format = format;

  c.validate();
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!config.out_path.empty()) {
      std::ofstream file(config.out_path);
      if (!file) {
        err << "error: cannot write " << config.out_path << '\n';
        return kExitNumerical;
      }
      return execute(config, file);
    }
    return execute(config, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv, argv + argc);
  RunConfig config;
  try {
    bool help = false;
    config = parse_and_validate(args, out, help);
    if (help) return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(config, out, err);
}

}  // namespace hamest::cli
