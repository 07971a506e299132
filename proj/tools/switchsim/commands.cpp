// Copyright 2026 The qswitch Authors
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

#include "switchsim/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qswitch/lindblad.hpp"
#include "qswitch/measures.hpp"
#include "qswitch/numerics.hpp"
#include "qswitch/random.hpp"

namespace switchsim {

using qswitch::DensityMatrix;
using qswitch::PauliRates;
using qswitch::SwitchConfig;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kDeviationFloor = -1e-10;

const std::vector<std::pair<std::string, Command>>& command_table() {
  static const std::vector<std::pair<std::string, Command>> table = {
      {"fig2", Command::kFig2},       {"fig3", Command::kFig3},
      {"fig4", Command::kFig4},       {"fig5", Command::kFig5},
      {"fig6", Command::kFig6},       {"statements", Command::kStatements},
      {"qsi", Command::kQsi},         {"nonmarkov", Command::kNonmarkov}};
  return table;
}

/// Runs body(i) for i in [0, n) on a small pool. Results must be written to
/// pre-sized storage indexed by i so row order does not depend on scheduling.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
  if (n == 0) return;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n_threads =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), n));
  std::vector<std::thread> threads;
  for (std::size_t k = 1; k < n_threads; ++k) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> gammas_or(const RunConfig& config, std::vector<double> fallback) {
  return config.gammas.empty() ? fallback : config.gammas;
}

DensityMatrix excited_state() { return DensityMatrix::basis_state(2, 1); }

std::vector<qswitch::QsiRecord> qsi_rows(double gamma, const std::vector<double>& times,
                                         const SwitchConfig& sc) {
  std::vector<qswitch::QsiRecord> records(times.size());
  const DensityMatrix rho = excited_state();
  parallel_for(times.size(), [&](std::size_t i) {
    records[i] = qswitch::qsi_series(rho, gamma, {times[i]}, sc).front();
  });
  return records;
}

void check_closed_form(const SwitchConfig& sc, double gamma, const std::vector<double>& times,
                       CommandResult& result) {
  try {
    const auto check = qswitch::check_closed_form_against_switch(sc, gamma, times);
    if (!check.agrees()) result.warnings.push_back(check.to_json());
  } catch (const qswitch::Error& e) {
    nlohmann::ordered_json j;
    j["warning"] = "closed_form_unavailable";
    j["config"] = sc.describe();
    j["gamma"] = gamma;
    j["reason"] = e.what();
    result.warnings.push_back(j.dump());
  }
}

/// Shared body of fig3, fig4 and qsi.
CommandResult noisy_qsi(const RunConfig& config, const std::vector<SwitchConfig>& configs,
                        std::vector<std::string> lead_columns,
                        const std::function<std::vector<Cell>(const SwitchConfig&)>& lead_cells) {
  std::vector<std::string> columns = {"t", "gamma"};
  columns.insert(columns.end(), lead_columns.begin(), lead_columns.end());
  for (const char* c : {"info_loss_switch", "qsm", "info_loss_ergodic", "deviation"}) columns.push_back(c);
  CommandResult result{Table(columns), {}, 0};
  for (double gamma : gammas_or(config, {1.0})) {
    const auto times = config.grid.points(gamma);
    for (const auto& sc : configs) {
      check_closed_form(sc, gamma, times, result);
      for (const auto& r : qsi_rows(gamma, times, sc)) {
        std::vector<Cell> row = {r.t, gamma};
        for (auto& c : lead_cells(sc)) row.push_back(std::move(c));
        row.insert(row.end(), {r.info_loss_switch, r.qsm, r.info_loss_ergodic, r.deviation});
        result.table.add_row(std::move(row));
        if (r.deviation < kDeviationFloor) ++result.failures;
      }
    }
  }
  return result;
}

}  // namespace

Command parse_command(const std::string& name) {
  for (const auto& [key, value] : command_table()) {
    if (key == name) return value;
  }
  throw std::invalid_argument("unknown command: " + name);
}

std::string command_name(Command c) {
  for (const auto& [key, value] : command_table()) {
    if (value == c) return key;
  }
  return "?";
}

std::vector<double> TimeGrid::points(double gamma) const {
  return qswitch::numerics::linspace(t_start, t_end.value_or(5.0 / gamma), steps);
}

void RunConfig::validate() const {
  for (double g : gammas) {
    if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("--gamma values must be positive");
  }
  if (!(gamma3 >= 0.0)) throw std::invalid_argument("--gamma3 must be non-negative");
  if (!(grid.t_start >= 0.0)) throw std::invalid_argument("--t-start must be non-negative");
  if (grid.steps < 2) throw std::invalid_argument("--steps must be at least 2");
  if (grid.t_end && !(*grid.t_end > grid.t_start)) {
    throw std::invalid_argument("--t-end must exceed --t-start");
  }
  for (const auto& [name, value] : {std::pair{"--p", p}, std::pair{"--q", q},
                                    std::pair{"--q1", q1}, std::pair{"--q2", q2}}) {
    if (value && !(*value >= 0.0 && *value <= 1.0)) {
      throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
  }
  if (q && (q1 || q2)) throw std::invalid_argument("--q cannot be combined with --q1/--q2");
  if (q && !p) throw std::invalid_argument("--q requires --p");
  if ((q1 || q2) && !(p && q1 && q2)) throw std::invalid_argument("--q1 and --q2 require --p and each other");
  if (p && !q && !q1) throw std::invalid_argument("--p requires --q or --q1/--q2");
  if (command == Command::kFig3 && (q1 || q2)) throw std::invalid_argument("fig3 takes --p --q");
  if (command == Command::kFig4 && q) throw std::invalid_argument("fig4 takes --p --q1 --q2");
  for (int d : dims) {
    if (d < 2 || d > 5) throw std::invalid_argument("--dims values must lie in 2..5");
  }
  if (trials < 1) throw std::invalid_argument("--trials must be positive");
}

std::optional<SwitchConfig> RunConfig::switch_config() const {
  if (p && q) return SwitchConfig::quantum_noise(*p, *q);
  if (p && q1 && q2) return SwitchConfig::classical_noise(*p, *q1, *q2);
  return std::nullopt;
}

CommandResult run_fig2(const RunConfig& config) {
  CommandResult result{Table({"t", "gamma", "deviation"}), {}, 0};
  for (double gamma : gammas_or(config, {0.6, 0.8, 1.0})) {
    for (const auto& r : qsi_rows(gamma, config.grid.points(gamma), SwitchConfig::ideal())) {
      result.table.add_row({r.t, gamma, r.deviation});
      if (r.deviation < kDeviationFloor) ++result.failures;
    }
  }
  return result;
}

CommandResult run_fig3(const RunConfig& config) {
  std::vector<SwitchConfig> configs;
  if (auto sc = config.switch_config()) {
    configs.push_back(*sc);
  } else {
    configs = {SwitchConfig::quantum_noise(0.5, 0.5), SwitchConfig::quantum_noise(0.4, 1.0),
               SwitchConfig::quantum_noise(0.8, 0.9)};
  }
  return noisy_qsi(config, configs, {"p", "q"}, [](const SwitchConfig& sc) {
    return std::vector<Cell>{sc.control.p(), sc.measurement.q()};
  });
}

CommandResult run_fig4(const RunConfig& config) {
  std::vector<SwitchConfig> configs;
  if (auto sc = config.switch_config()) {
    configs.push_back(*sc);
  } else {
    configs = {SwitchConfig::classical_noise(1.0, 1.0, 0.0),
               SwitchConfig::classical_noise(0.5, 0.5, 0.5),
               SwitchConfig::classical_noise(0.8, 0.1, 0.9)};
  }
  return noisy_qsi(config, configs, {"p", "q1", "q2"}, [](const SwitchConfig& sc) {
    return std::vector<Cell>{sc.control.p(), sc.measurement.q1(), sc.measurement.q2()};
  });
}

CommandResult run_qsi(const RunConfig& config) {
  const SwitchConfig sc = config.switch_config().value_or(SwitchConfig::ideal());
  return noisy_qsi(config, {sc}, {"config"},
                   [](const SwitchConfig& s) { return std::vector<Cell>{s.describe()}; });
}

CommandResult run_fig5(const RunConfig& config) {
  CommandResult result{Table({"t", "gamma", "g_rhp", "blp_rate"}), {}, 0};
  const SwitchConfig sc = config.switch_config().value_or(SwitchConfig::ideal());
  for (double gamma : gammas_or(config, {0.6, 0.8, 1.0})) {
    const auto family = qswitch::depolarizing_family(PauliRates::uniform(gamma));
    const auto maps = qswitch::switched_map_family(family, sc);
    const auto dynamics = qswitch::switched_dynamics(family, sc);
    const auto tau = DensityMatrix::maximally_mixed(2);
    const DensityMatrix rho = excited_state();
    const auto times = config.grid.points(gamma);
    std::vector<std::pair<double, double>> values(times.size());
    parallel_for(times.size(), [&](std::size_t i) {
      const double g = qswitch::rhp_g(maps, times[i], 1e-4 / gamma);
      const double b = qswitch::blp_rate(dynamics, rho, tau, times[i], 1e-3 / gamma);
      values[i] = {g, std::max(b, 0.0)};
    });
    const double t_minus = sc.is_ideal() ? qswitch::characteristic_time(gamma) : kNaN;
    const double spacing = times.size() > 1 ? times[1] - times[0] : 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      result.table.add_row({times[i], gamma, values[i].first, values[i].second});
      if (times[i] < t_minus - spacing && values[i].first > 1e-6) ++result.failures;
    }
  }
  return result;
}

CommandResult run_fig6(const RunConfig& config) {
  CommandResult result{Table({"gamma1", "gamma2", "gamma3", "n_s_normalized", "n_s", "error"}), {}, 0};
  const auto grid = gammas_or(config, {0.2, 0.4, 0.6, 0.8, 1.0});
  const auto surface = qswitch::sweep_ns_surface(grid, grid, config.gamma3);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const auto& error = surface.errors[i][j];
      const double value = surface.n_s_normalized(i, j);
      result.table.add_row({grid[i], grid[j], config.gamma3, value, surface.n_s(i, j),
                            error.value_or("")});
      if (error || !(value >= 0.0)) ++result.failures;
    }
  }
  return result;
}

CommandResult run_statements(const RunConfig& config) {
  CommandResult result{Table({"dim", "spec", "config", "fixed_point_deviation", "trace_spread",
                              "common_trace", "analytic_trace", "pass"}),
                       {}, 0};
  struct Job {
    int dim;
    std::string label;
    qswitch::GeneralizedPauliSpec spec;
    SwitchConfig switch_config;
    std::vector<DensityMatrix> states;
  };
  // All random draws happen here, sequentially, so results depend only on the seed.
  qswitch::Rng rng(config.seed);
  std::vector<Job> jobs;
  const std::vector<int> dims = config.dims.empty() ? std::vector<int>{2, 3, 4, 5} : config.dims;
  for (int d : dims) {
    std::vector<std::pair<std::string, qswitch::GeneralizedPauliSpec>> specs = {
        {"identity", qswitch::GeneralizedPauliSpec::identity(d)},
        {"uniform", qswitch::GeneralizedPauliSpec::uniform(d)}};
    for (int k = 0; k < config.trials; ++k) {
      specs.emplace_back("random#" + std::to_string(k), qswitch::random_generalized_pauli_spec(d, rng));
    }
    for (const auto& [label, spec] : specs) {
      std::vector<DensityMatrix> states;
      for (int s = 0; s < 4; ++s) states.push_back(qswitch::random_density_matrix(d, rng));
      std::vector<SwitchConfig> configs = {SwitchConfig::ideal()};
      for (int c = 0; c < 5; ++c) configs.push_back(qswitch::random_noisy_config(rng));
      for (const auto& sc : configs) jobs.push_back({d, label, spec, sc, states});
    }
  }

  struct Outcome {
    double fixed_point;
    qswitch::Statement2Result trace;
    double analytic;
  };
  std::vector<Outcome> outcomes(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    Outcome& o = outcomes[i];
    o.fixed_point = qswitch::verify_statement1(job.spec, job.switch_config);
    o.trace = qswitch::verify_statement2(job.spec, job.states, job.switch_config);
    o.analytic = job.switch_config.is_ideal() ? qswitch::ideal_switch_trace(job.spec) : kNaN;
  });

  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& job = jobs[i];
    const Outcome& o = outcomes[i];
    bool pass = o.fixed_point <= 1e-10 && o.trace.max_spread <= 1e-12;
    if (job.switch_config.is_ideal()) pass = pass && std::abs(o.trace.common_trace - o.analytic) <= 1e-12;
    result.table.add_row({static_cast<std::int64_t>(job.dim), job.label, job.switch_config.describe(),
                          o.fixed_point, o.trace.max_spread, o.trace.common_trace, o.analytic,
                          static_cast<std::int64_t>(pass)});
    if (!pass) {
      ++result.failures;
      nlohmann::ordered_json j;
      j["failure"] = "statement_check";
      j["dim"] = job.dim;
      j["spec"] = job.label;
      j["config"] = job.switch_config.describe();
      j["seed"] = config.seed;
      auto probabilities = nlohmann::json::array();
      const auto& p = job.spec.probabilities();
      for (int k = 0; k < p.rows(); ++k) {
        auto row = nlohmann::json::array();
        for (int l = 0; l < p.cols(); ++l) row.push_back(p(k, l));
        probabilities.push_back(row);
      }
      j["probabilities"] = probabilities;
      result.warnings.push_back(j.dump());
    }
  }
  return result;
}

CommandResult run_nonmarkov(const RunConfig& config) {
  CommandResult result{Table({"gamma", "t_minus", "n_s", "n_s_normalized", "n_inf", "n_inf_quadrature",
                              "n_blp_normalized", "d_at_t_minus", "q_s_infinity", "n_s_infinity"}),
                       {}, 0};
  const SwitchConfig sc = config.switch_config().value_or(SwitchConfig::ideal());
  const auto gammas = gammas_or(config, {0.5, 1.0, 2.0});
  std::vector<qswitch::NonMarkovReport> reports(gammas.size());
  parallel_for(gammas.size(), [&](std::size_t i) {
    reports[i] = qswitch::nonmarkov_report(excited_state(), gammas[i], sc);
  });
  for (const auto& r : reports) {
    result.table.add_row({r.gamma, r.t_minus, r.n_s, r.n_s_normalized, r.n_inf, r.n_inf_quadrature,
                          r.n_blp_normalized, r.d_at_t_minus, r.q_s_infinity, r.n_s_infinity});
  }
  return result;
}

CommandResult run_command(const RunConfig& config) {
  config.validate();
  switch (config.command) {
    case Command::kFig2: return run_fig2(config);
    case Command::kFig3: return run_fig3(config);
    case Command::kFig4: return run_fig4(config);
    case Command::kFig5: return run_fig5(config);
    case Command::kFig6: return run_fig6(config);
    case Command::kStatements: return run_statements(config);
    case Command::kQsi: return run_qsi(config);
    case Command::kNonmarkov: return run_nonmarkov(config);
  }
  throw std::logic_error("unhandled command");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum switch channel simulations", "switchsim"};
  RunConfig config;
  std::string command;
  std::string format = "csv";
  std::vector<std::string> names;
  for (const auto& entry : command_table()) names.push_back(entry.first);

  app.add_option("command", command, "One of: fig2 fig3 fig4 fig5 fig6 statements qsi nonmarkov")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("--gamma", config.gammas, "Decay rates (comma separated); the gamma1/gamma2 grid for fig6")
      ->delimiter(',');
  app.add_option("--gamma3", config.gamma3, "gamma3 for fig6");
  app.add_option("--p", config.p, "Control parameter");
  app.add_option("--q", config.q, "Measurement parameter (quantum noise)");
  app.add_option("--q1", config.q1, "Weight of |+><+| in the effect (classical noise)");
  app.add_option("--q2", config.q2, "Weight of |-><-| in the effect (classical noise)");
  app.add_option("--t-start", config.grid.t_start, "Grid start");
  app.add_option("--t-end", config.grid.t_end, "Grid end (default 5/gamma)");
  app.add_option("--steps", config.grid.steps, "Number of grid points");
  app.add_option("--out", config.out, "Output file (default stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", config.seed, "Seed for statements");
  app.add_option("--dims", config.dims, "Dimensions for statements")->delimiter(',');
  app.add_option("--trials", config.trials, "Random specs per dimension for statements");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return 2;
  }
  config.command = parse_command(command);
  config.format = format == "json" ? Format::kJson : Format::kCsv;

  CommandResult result{Table({}), {}, 0};
  try {
    result = run_command(config);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';

  auto emit = [&](std::ostream& os) {
    if (config.format == Format::kJson) {
      write_json(result.table, os);
    } else {
      write_csv(result.table, os);
    }
  };
  if (config.out) {
    std::ofstream file(*config.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << *config.out << " for writing\n";
      return 2;
    }
    emit(file);
    file.flush();
    if (!file) {
      err << "error: failed writing " << *config.out << '\n';
      return 2;
    }
  } else {
    emit(out);
  }
  if (result.failures > 0) {
    err << "error: " << result.failures << " invariant check(s) failed\n";
    return 1;
  }
  return 0;
}

}  // namespace switchsim
