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

#include "qswitch/measures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "qswitch/numerics.hpp"

namespace qswitch {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// g below this is treated as zero when locating non-divisible windows.
constexpr double kRhpThreshold = 1e-10;

void require_rate(double gamma, const char* what) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError(std::string(what) + ": gamma must be positive");
  }
}

}  // namespace

StateDynamics channel_dynamics(KrausFamily family) {
  return [family = std::move(family)](const DensityMatrix& rho, double t) {
    return apply_channel(family.kraus_at(t), rho);
  };
}

StateDynamics switched_dynamics(KrausFamily family, SwitchConfig config) {
  return [family = std::move(family), config](const DensityMatrix& rho, double t) {
    const KrausSet k = family.kraus_at(t);
    return switch_apply(k, k, rho, config).effect.state;
  };
}

MapFamily channel_map_family(KrausFamily family) {
  return [family = std::move(family)](double t) -> LinearMap {
    return [k = family.kraus_at(t)](const ComplexMatrix& x) { return apply_kraus(k, x); };
  };
}

MapFamily switched_map_family(KrausFamily family, SwitchConfig config) {
  return [family = std::move(family), config](double t) {
    const KrausSet k = family.kraus_at(t);
    return post_selected_map(k, k, config);
  };
}

double info_loss(const DensityMatrix& rho1_0, const DensityMatrix& rho2_0,
                 const DensityMatrix& rho1_t, const DensityMatrix& rho2_t) {
  return trace_distance(rho1_0, rho2_0) - trace_distance(rho1_t, rho2_t);
}

double qsm(const DensityMatrix& rho, double t, const StateDynamics& switched,
           const StateDynamics& ergodic) {
  return trace_distance(switched(rho, t), ergodic(rho, t));
}

std::vector<QsiRecord> qsi_series(const DensityMatrix& rho, double gamma,
                                  const std::vector<double>& times, const SwitchConfig& config) {
  require_rate(gamma, "qsi_series");
  if (rho.dim() != 2) throw ContractViolation("qsi_series: qubit state required");
  const auto family = depolarizing_family(PauliRates::uniform(gamma));
  const auto switched = switched_dynamics(family, config);
  const auto ergodic = channel_dynamics(family);
  const auto tau = DensityMatrix::maximally_mixed(2);
  const double d0 = trace_distance(rho, tau);

  std::vector<QsiRecord> out;
  out.reserve(times.size());
  for (double t : times) {
    if (max_abs(switched(tau, t).matrix() - tau.matrix()) > 1e-10) {
      throw ContractViolation("qsi_series: I/2 is not a fixed point of the switched map");
    }
    const DensityMatrix rho_s = switched(rho, t);
    const DensityMatrix rho_e = ergodic(rho, t);
    QsiRecord r;
    r.t = t;
    r.info_loss_switch = d0 - trace_distance(rho_s, tau);
    r.qsm = trace_distance(rho_s, rho_e);
    r.info_loss_ergodic = d0 - trace_distance(rho_e, tau);
    r.deviation = r.info_loss_switch + r.qsm - r.info_loss_ergodic;
    out.push_back(r);
  }
  return out;
}

TimeAverage time_averaged_state(const StateDynamics& map, const DensityMatrix& rho, double t_max,
                                double tol) {
  if (!(t_max > 0.0)) throw DomainError("time_averaged_state: T_max must be positive");
  auto f = [&](double t) -> ComplexMatrix { return map(rho, t).matrix(); };
  const double half = 0.5 * t_max;
  const double quad_tol = 1e-11 * t_max;
  const ComplexMatrix first = numerics::adaptive_simpson(f, 0.0, half, quad_tol, 40, 64).value;
  const ComplexMatrix second = numerics::adaptive_simpson(f, half, t_max, quad_tol, 40, 64).value;
  const ComplexMatrix avg_full = (first + second) / t_max;
  const ComplexMatrix avg_half = first / half;
  const double residual = max_abs(avg_full - avg_half);
  if (residual > tol) {
    std::ostringstream os;
    os << "time_averaged_state: averages over [0, " << t_max << "] and [0, " << half
       << "] differ by " << residual;
    throw ConvergenceError(os.str(), residual);
  }
  return {DensityMatrix::normalized(avg_full), residual};
}

TimeAverageEquality time_avg_equality_check(const DensityMatrix& rho, double gamma, double t_max,
                                            const SwitchConfig& config) {
  require_rate(gamma, "time_avg_equality_check");
  const auto family = depolarizing_family(PauliRates::uniform(gamma));
  const double tol = 1.0 / (gamma * t_max);
  const auto avg_s = time_averaged_state(switched_dynamics(family, config), rho, t_max, tol);
  const auto avg_e = time_averaged_state(channel_dynamics(family), rho, t_max, tol);
  const auto tau = DensityMatrix::maximally_mixed(rho.dim());
  TimeAverageEquality out;
  out.distance = trace_distance(rho, tau);
  out.info_loss_switch = out.distance - trace_distance(avg_s.state, tau);
  out.qsm = trace_distance(avg_s.state, avg_e.state);
  out.residual = std::abs(out.info_loss_switch + out.qsm - out.distance);
  return out;
}

double characteristic_time(double gamma) {
  require_rate(gamma, "characteristic_time");
  return numerics::bisect_root([gamma](double t) { return gamma_S_closed_form(t, gamma); },
                               1e-6 / gamma, 10.0 / gamma, 200);
}

double blp_rate(const StateDynamics& dynamics, const DensityMatrix& rho, const DensityMatrix& tau,
                double t, double h) {
  auto distance = [&](double s) { return trace_distance(dynamics(rho, s), tau); };
  return numerics::richardson_derivative(distance, t, h, t < h);
}

BlpResult blp_measure(const DensityMatrix& rho, double gamma, const SwitchConfig& config) {
  require_rate(gamma, "blp_measure");
  const auto dynamics = switched_dynamics(depolarizing_family(PauliRates::uniform(gamma)), config);
  const auto tau = DensityMatrix::maximally_mixed(rho.dim());
  const double t_inf = 50.0 / gamma;
  const double h = 1e-3 / gamma;

  const DensityMatrix at_inf = dynamics(rho, t_inf);
  const double drift = max_abs(at_inf.matrix() - dynamics(rho, 2.0 * t_inf).matrix());
  if (drift > 1e-12) {
    throw ConvergenceError("blp_measure: switched state has not reached its asymptote at 50/gamma",
                           drift);
  }

  auto rate = [&](double t) { return blp_rate(dynamics, rho, tau, t, h); };
  auto distance = [&](double t) { return trace_distance(dynamics(rho, t), tau); };

  BlpResult out{};
  out.d_at_infinity = trace_distance(at_inf, tau);
  if (config.is_ideal()) {
    out.t_minus = characteristic_time(gamma);
    out.has_backflow = true;
  } else {
    // Growth below 1e-12 is indistinguishable from rounding in the differences.
    auto shifted = [&](double t) { return rate(t) - 1e-12; };
    const auto bracket = numerics::first_sign_change(shifted, 1e-6 / gamma, 10.0 / gamma, 0.01 / gamma);
    out.has_backflow = bracket.has_value() && shifted(bracket->hi) > 0.0;
    out.t_minus = out.has_backflow ? numerics::bisect_root(shifted, bracket->lo, bracket->hi) : kNaN;
  }

  auto positive_part = [&](double t) { return std::max(rate(t), 0.0); };
  const double split = out.has_backflow ? out.t_minus : 0.0;
  double integral = 0.0, error = 0.0;
  for (auto [a, b] : {std::pair{0.0, split}, std::pair{split, t_inf}}) {
    if (!(b > a)) continue;
    const auto q = numerics::simpson_richardson(positive_part, a, b, std::min(0.01 / gamma, (b - a) / 1000.0));
    integral += q.value;
    error += q.error_estimate;
  }
  out.n_inf_quadrature = integral;
  out.quadrature_error = error;
  if (out.has_backflow) {
    out.d_at_t_minus = distance(out.t_minus);
    out.n_inf = out.d_at_infinity - out.d_at_t_minus;
  } else {
    out.d_at_t_minus = kNaN;
    out.n_inf = 0.0;
  }
  return out;
}

double rhp_g(const MapFamily& map_family, double t, double dt) {
  if (!(dt > 0.0)) throw DomainError("rhp_g: dt must be positive");
  const BasisSet basis = BasisSet::pauli();
  const RealMatrix f0 = f_matrix(map_family, t, basis);
  Eigen::JacobiSVD<RealMatrix> svd(f0);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (!(cond <= 1e10)) {
    std::ostringstream os;
    os << "rhp_g: F(t) is singular at t = " << t;
    throw InversionError(os.str(), cond);
  }
  const auto lu = f0.transpose().partialPivLu();
  auto g_for_step = [&](double step) {
    const RealMatrix f1 = f_matrix(map_family, t + step, basis);
    const RealMatrix increment = lu.solve(f1.transpose()).transpose();  // F1 F0^{-1}
    ComplexMatrix choi = choi_matrix(map_from_transfer(increment, basis), basis.dim());
    choi = 0.5 * (choi + choi.adjoint());
    return (hermitian_trace_norm(choi) - 1.0) / step;
  };
  return 2.0 * g_for_step(0.5 * dt) - g_for_step(dt);
}

RhpResult rhp_measure_for_family(const MapFamily& map_family, double time_scale, double horizon) {
  if (!(time_scale > 0.0) || !(horizon > 0.0)) {
    throw DomainError("rhp_measure_for_family: time scale and horizon must be positive");
  }
  const BasisSet basis = BasisSet::pauli();
  const double dt = 1e-4 * time_scale;
  const double step = 0.01 * time_scale;
  auto g = [&](double t) { return rhp_g(map_family, t, dt); };
  auto rates = [&](double t) {
    const RealMatrix l = l_matrix(map_family, t, basis, kDefaultRelativeStep * time_scale);
    return cp_divisibility_flag(l, basis).rates;
  };

  const auto n_steps = static_cast<int>(std::ceil(horizon / step));
  std::vector<double> grid(n_steps + 1);
  std::vector<double> values(n_steps + 1);
  std::vector<std::vector<double>> spectra(n_steps + 1);
  for (int i = 0; i <= n_steps; ++i) {
    grid[i] = std::min(horizon, i * step);
    values[i] = g(grid[i]);
    spectra[i] = rates(grid[i]);
  }

  // Zero crossings of every canonical rate. g has a kink at each of them, so
  // they serve both as window edges and as quadrature breakpoints.
  std::vector<double> breakpoints;
  for (int i = 0; i < n_steps; ++i) {
    for (std::size_t k = 0; k < spectra[i].size(); ++k) {
      const double lo = spectra[i][k];
      const double hi = spectra[i + 1][k];
      if ((lo < 0.0) == (hi < 0.0)) continue;
      try {
        breakpoints.push_back(numerics::bisect_root([&](double t) { return rates(t)[k]; }, grid[i], grid[i + 1]));
      } catch (const RootError&) {
        breakpoints.push_back(grid[i]);
      }
    }
  }
  std::sort(breakpoints.begin(), breakpoints.end());

  RhpResult out{};
  out.t_minus = kNaN;
  for (int i = 0; i <= n_steps;) {
    if (values[i] <= kRhpThreshold) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 <= n_steps && values[j + 1] > kRhpThreshold) ++j;
    // Edges: the breakpoint inside the bracketing scan interval, if any.
    auto edge = [&](double lo, double hi, double fallback) {
      const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), lo);
      return (it != breakpoints.end() && *it <= hi) ? *it : fallback;
    };
    const double begin = (i == 0) ? 0.0 : edge(grid[i - 1], grid[i], grid[i - 1]);
    const double end = (j == n_steps) ? horizon : edge(grid[j], grid[j + 1], grid[j + 1]);
    out.windows.push_back({begin, end});
    i = j + 1;
  }

  double error = 0.0;
  for (const auto& w : out.windows) {
    std::vector<double> cuts = {w.begin};
    for (double b : breakpoints) {
      if (b > w.begin && b < w.end) cuts.push_back(b);
    }
    cuts.push_back(w.end);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double a = cuts[c], b = cuts[c + 1];
      if (!(b > a)) continue;
      const auto q = numerics::simpson_richardson(g, a, b, std::min(step, (b - a) / 1000.0));
      out.n_s += q.value;
      error += q.error_estimate;
    }
  }
  out.quadrature_error = error;
  if (!out.windows.empty()) out.t_minus = out.windows.front().begin;

  // Tail beyond the horizon, assuming exponential decay of g.
  const double g_end = values.back();
  if (g_end <= kRhpThreshold) {
    out.tail_bound = kRhpThreshold * time_scale;
  } else {
    const double back = 10.0 * step;
    const double g_back = g(horizon - back);
    const double decay = std::log(g_back / g_end) / back;
    out.tail_bound = decay > 0.0 ? g_end / decay : std::numeric_limits<double>::infinity();
  }
  if (!(out.tail_bound <= 1e-8)) {
    throw ConvergenceError("rhp_measure: tail of g beyond the horizon is not certified", out.tail_bound);
  }
  out.n_s_normalized = out.n_s / (1.0 + out.n_s);
  return out;
}

RhpResult rhp_measure(double gamma, const SwitchConfig& config) {
  require_rate(gamma, "rhp_measure");
  const auto family = switched_map_family(depolarizing_family(PauliRates::uniform(gamma)), config);
  return rhp_measure_for_family(family, 1.0 / gamma, 10.0 / gamma);
}

BlpBridge qsm_blp_bridge(double n_inf, double d_at_t_minus) {
  if (!(n_inf >= 0.0) || !(d_at_t_minus >= 0.0)) {
    throw DomainError("qsm_blp_bridge: inputs must be non-negative");
  }
  BlpBridge out;
  out.q_s_infinity = n_inf + d_at_t_minus;
  out.n_s_infinity = out.q_s_infinity / (1.0 + out.q_s_infinity);
  const double n_blp = n_inf / (1.0 + n_inf);
  const double scaled = d_at_t_minus * (1.0 - n_blp);
  out.n_s_infinity_from_blp = (n_blp + scaled) / (1.0 + scaled);
  return out;
}

NonMarkovReport nonmarkov_report(const DensityMatrix& rho, double gamma, const SwitchConfig& config) {
  const auto blp = blp_measure(rho, gamma, config);
  const auto rhp = rhp_measure(gamma, config);
  NonMarkovReport out;
  out.gamma = gamma;
  out.t_minus = blp.has_backflow ? blp.t_minus : rhp.t_minus;
  out.n_s = rhp.n_s;
  out.n_s_normalized = rhp.n_s_normalized;
  out.n_inf = blp.n_inf;
  out.n_inf_quadrature = blp.n_inf_quadrature;
  out.n_blp_normalized = blp.n_inf / (1.0 + blp.n_inf);
  out.d_at_t_minus = blp.has_backflow ? blp.d_at_t_minus : 0.0;
  const auto bridge = qsm_blp_bridge(out.n_inf, out.d_at_t_minus);
  out.q_s_infinity = bridge.q_s_infinity;
  out.n_s_infinity = bridge.n_s_infinity;
  return out;
}

double ns_for_rates(const PauliRates& rates, double* n_s_raw) {
  rates.validate();
  // Bloch decay rates; 4 gamma each for the symmetric channel.
  double slowest = std::numeric_limits<double>::infinity();
  for (double k : {2.0 * (rates.gamma2 + rates.gamma3), 2.0 * (rates.gamma1 + rates.gamma3),
                   2.0 * (rates.gamma1 + rates.gamma2)}) {
    if (k > 0.0) slowest = std::min(slowest, k);
  }
  if (!std::isfinite(slowest)) {
    if (n_s_raw) *n_s_raw = 0.0;
    return 0.0;
  }
  // Resolution follows the fastest decay, the horizon the slowest.
  const double fastest = 2.0 * std::max({rates.gamma2 + rates.gamma3, rates.gamma1 + rates.gamma3,
                                         rates.gamma1 + rates.gamma2});
  const auto family = switched_map_family(pauli_channel_family(rates), SwitchConfig::ideal());
  const auto r = rhp_measure_for_family(family, 4.0 / fastest, 40.0 / slowest);
  if (n_s_raw) *n_s_raw = r.n_s;
  return r.n_s_normalized;
}

NsSurface sweep_ns_surface(const std::vector<double>& gamma1_grid,
                           const std::vector<double>& gamma2_grid, double gamma3) {
  const auto rows = static_cast<int>(gamma1_grid.size());
  const auto cols = static_cast<int>(gamma2_grid.size());
  NsSurface out{gamma1_grid, gamma2_grid, gamma3,
                RealMatrix::Constant(rows, cols, kNaN), RealMatrix::Constant(rows, cols, kNaN),
                std::vector<std::vector<std::optional<std::string>>>(
                    rows, std::vector<std::optional<std::string>>(cols))};

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int cell = next++; cell < rows * cols; cell = next++) {
      const int i = cell / cols;
      const int j = cell % cols;
      try {
        double raw = 0.0;
        const double normalized = ns_for_rates({gamma1_grid[i], gamma2_grid[j], gamma3}, &raw);
        out.n_s_normalized(i, j) = normalized;
        out.n_s(i, j) = raw;
      } catch (const std::exception& e) {
        out.errors[i][j] = e.what();
      }
    }
  };
  const unsigned n_threads =
      std::max(1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(rows * cols)));
  std::vector<std::thread> threads;
  for (unsigned k = 1; k < n_threads; ++k) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();
  return out;
}

}  // namespace qswitch
