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

#pragma once

// Scalar and matrix-valued quadrature, finite differences and bracketing root
// search. Everything here is generic over the integrand's value type: any type
// closed under +, - and scalar * works, as long as `magnitude` is overloaded.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include "qswitch/errors.hpp"

namespace qswitch::numerics {

inline double magnitude(double x) { return std::abs(x); }

template <typename Derived>
double magnitude(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename T>
struct Quadrature {
  T value;
  double error_estimate;
  std::int64_t evaluations;
};

/// Composite Simpson on [a, b] with step at most `h_max`, checked against the
/// half-resolution rule. The returned value is the Richardson-extrapolated
/// combination S_2n + (S_2n - S_n) / 15 and the error estimate |S_2n - S_n| / 15.
template <typename F>
auto simpson_richardson(F&& f, double a, double b, double h_max)
    -> Quadrature<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  if (!(b > a)) {
    T zero = f(a) * 0.0;
    return {zero, 0.0, 1};
  }
  // n coarse panels (even), 2n fine panels.
  auto n = static_cast<std::int64_t>(std::ceil((b - a) / (2.0 * h_max)));
  if (n < 2) n = 2;
  if (n % 2) ++n;
  const std::int64_t fine = 2 * n;
  const double h = (b - a) / static_cast<double>(fine);

  T f0 = f(a);
  T coarse = f0 * 1.0;
  T fine_sum = f0 * 1.0;
  for (std::int64_t i = 1; i < fine; ++i) {
    const T fi = f(a + h * static_cast<double>(i));
    fine_sum += fi * ((i % 2) ? 4.0 : 2.0);
    if (i % 2 == 0) coarse += fi * (((i / 2) % 2) ? 4.0 : 2.0);
  }
  const T fb = f(b);
  fine_sum += fb;
  coarse += fb;
  const T s_fine = fine_sum * (h / 3.0);
  const T s_coarse = coarse * (2.0 * h / 3.0);
  const T diff = s_fine - s_coarse;
  return {s_fine + diff * (1.0 / 15.0), magnitude(diff) / 15.0, fine + 1};
}

namespace detail {

template <typename F, typename T>
T adaptive_simpson_step(F& f, double a, double b, const T& fa, const T& fm, const T& fb,
                        const T& whole, double tol, int depth, std::int64_t& evals,
                        double& err) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const T flm = f(lm);
  const T frm = f(rm);
  evals += 2;
  const T left = (fa + flm * 4.0 + fm) * ((m - a) / 6.0);
  const T right = (fm + frm * 4.0 + fb) * ((b - m) / 6.0);
  const T sum = left + right;
  const double delta = magnitude(T(sum - whole));
  if (depth <= 0 || delta <= 15.0 * tol) {
    err += delta / 15.0;
    return sum + (sum - whole) * (1.0 / 15.0);
  }
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals, err) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals, err);
}

}  // namespace detail

/// Adaptive Simpson (Lyness). `initial_panels` uniform panels are refined
/// independently so that sharp features near `a` do not starve the tail.
template <typename F>
auto adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 40,
                      int initial_panels = 16) -> Quadrature<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  std::int64_t evals = 0;
  double err = 0.0;
  const double width = (b - a) / initial_panels;
  T total = f(a) * 0.0;
  T fa = f(a);
  ++evals;
  for (int p = 0; p < initial_panels; ++p) {
    const double lo = a + width * p;
    const double hi = (p + 1 == initial_panels) ? b : lo + width;
    const T fm = f(0.5 * (lo + hi));
    const T fb = f(hi);
    evals += 2;
    const T whole = (fa + fm * 4.0 + fb) * ((hi - lo) / 6.0);
    total += detail::adaptive_simpson_step(f, lo, hi, fa, fm, fb, whole, tol / initial_panels,
                                           max_depth, evals, err);
    fa = fb;
  }
  return {total, err, evals};
}

/// Derivative by Richardson extrapolation over step sizes h, h/2, h/4.
/// Central differences give O(h^6) truncation; with `forward` set only
/// f(t), f(t + .) are sampled and the result is O(h^3).
template <typename F>
auto richardson_derivative(F&& f, double t, double h, bool forward = false)
    -> std::decay_t<decltype(f(t))> {
  using T = std::decay_t<decltype(f(t))>;
  if (forward) {
    const T f0 = f(t);
    auto d = [&](double s) -> T { return (f(t + s) - f0) * (1.0 / s); };
    const T d1 = d(h), d2 = d(h / 2), d3 = d(h / 4);
    const T r1 = d2 * 2.0 - d1;
    const T r2 = d3 * 2.0 - d2;
    return (r2 * 4.0 - r1) * (1.0 / 3.0);
  }
  auto d = [&](double s) -> T { return (f(t + s) - f(t - s)) * (0.5 / s); };
  const T d1 = d(h), d2 = d(h / 2), d3 = d(h / 4);
  const T r1 = (d2 * 4.0 - d1) * (1.0 / 3.0);
  const T r2 = (d3 * 4.0 - d2) * (1.0 / 3.0);
  return (r2 * 16.0 - r1) * (1.0 / 15.0);
}

struct Bracket {
  double lo;
  double hi;
};

/// Scans [a, b] in steps of `step` and returns the first interval where `f`
/// changes sign (a sample equal to zero counts as a change).
template <typename F>
std::optional<Bracket> first_sign_change(F&& f, double a, double b, double step) {
  double x0 = a;
  double f0 = f(x0);
  while (x0 < b) {
    const double x1 = std::min(b, x0 + step);
    const double f1 = f(x1);
    if ((f0 <= 0.0 && f1 > 0.0) || (f0 >= 0.0 && f1 < 0.0)) return Bracket{x0, x1};
    x0 = x1;
    f0 = f1;
  }
  return std::nullopt;
}

/// Bisection on a sign change inside [lo, hi]. Throws RootError when the
/// endpoint values share a sign.
template <typename F>
double bisect_root(F&& f, double lo, double hi, int max_iterations = 200) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw RootError("bisect_root: no sign change in bracket");
  }
  std::uintmax_t iterations = static_cast<std::uintmax_t>(max_iterations);
  const auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 1);
  const auto [a, b] = boost::math::tools::bisect(std::forward<F>(f), lo, hi, tol, iterations);
  return 0.5 * (a + b);
}

/// n evenly spaced points covering [a, b] inclusive.
inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {a};
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
  return out;
}

}  // namespace qswitch::numerics
