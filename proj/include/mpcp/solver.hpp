#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "multiplex.hpp"
#include "numeric.hpp"

namespace mpcp {

// Parameters of the alternating nonlinear power iteration. alpha controls the
// smoothed-max coupling along edges, p and q the norm constraints on node and
// layer scores. All three must exceed 1.
struct SolverParams {
  double alpha = 10.0;
  double p = 2.0;
  double q = 2.0;
  double tol = 1e-8;
  std::size_t max_iter = 1000;
  // Keep c fixed at the equal-weights point (the q -> infinity limit) and
  // skip its update entirely.
  bool fixed_equal_layer_weights = false;

  double p_star() const { return p / (p - 1.0); }
  double q_star() const { return q / (q - 1.0); }

  void validate() const {
    if (!(alpha > 1.0) || !std::isfinite(alpha))
      throw InputError("solver params: alpha must be finite and > 1");
    if (!(p > 1.0) || !std::isfinite(p)) throw InputError("solver params: p must be finite and > 1");
    if (!(q > 1.0) || !std::isfinite(q)) throw InputError("solver params: q must be finite and > 1");
    if (!(tol > 0.0)) throw InputError("solver params: tol must be positive");
    if (max_iter == 0) throw InputError("solver params: max_iter must be at least 1");
  }

  static SolverParams preset_global() { return {10.0, 22.0, 2.0, 1e-8, 1000, false}; }
  static SolverParams preset_local() { return {10.0, 2.0, 2.0, 1e-8, 1000, false}; }
  static SolverParams preset_equal_weights() { return {10.0, 22.0, 2.0, 1e-8, 1000, true}; }
};

// Node coreness x (unit p-norm on output) and layer coreness c (unit q-norm).
struct CorenessState {
  std::vector<double> x;
  std::vector<double> c;
};

struct SolverReport {
  CorenessState state;
  std::size_t iterations = 0;
  bool converged = false;
  double objective = 0.0;             // f at the final state
  std::vector<double> g_trace;        // quotient at start + after each iteration
  std::vector<double> step_norm_x;    // infinity-norm steps per iteration
  std::vector<double> step_norm_c;
};

enum class ConvergenceRegime { GlobalContraction, LocalAscentOnly };

struct ContractionReport {
  std::array<std::array<double, 2>, 2> theta{};  // homogeneity bounds of the gradient maps
  std::array<std::array<double, 2>, 2> m{};      // after the norm-scaling
  double rho = 0.0;                              // spectral radius of m
  ConvergenceRegime regime = ConvergenceRegime::LocalAscentOnly;
};

namespace detail {

// (a^alpha + b^alpha)^(1/alpha) for a,b >= 0, factored by the larger argument
// so pow never sees anything outside [0,1] x [1,2]. Exact 0 when both are 0.
inline double smoothed_max(double a, double b, double alpha) {
  double hi = std::max(a, b), lo = std::min(a, b);
  if (hi == 0.0) return 0.0;
  double t = lo / hi;
  return hi * std::pow(1.0 + std::pow(t, alpha), 1.0 / alpha);
}

// Partial derivative of smoothed_max with respect to its first argument:
// a^(alpha-1) (a^alpha + b^alpha)^(1/alpha - 1). Zero-homogeneous, so it is
// evaluated on the ratio of the arguments only; this is what keeps alpha in
// the tens usable without overflow.
inline double smoothed_max_dx(double a, double b, double alpha) {
  if (a == 0.0) return 0.0;
  if (b == 0.0) return 1.0;
  if (a >= b) {
    double t = b / a;
    return std::pow(1.0 + std::pow(t, alpha), (1.0 - alpha) / alpha);
  }
  double t = a / b;
  return std::pow(t, alpha - 1.0) * std::pow(1.0 + std::pow(t, alpha), (1.0 - alpha) / alpha);
}

inline void check_views(std::span<const LayerView> views) {
  if (views.empty()) throw InputError("solver: no layers");
  for (const auto& v : views)
    if (v.n != views[0].n) throw InputError("solver: layers disagree on node count");
}

}  // namespace detail

// Per-layer sums sum_ij W_ij (x_i^alpha + x_j^alpha)^(1/alpha). This is both
// the layer slice of the objective and the gradient of f in c.
inline std::vector<double> layer_kernel_sums(std::span<const LayerView> views,
                                             std::span<const double> x, double alpha) {
  detail::check_views(views);
  std::vector<double> s(views.size(), 0.0);
  for (std::size_t k = 0; k < views.size(); ++k) {
    const auto& v = views[k];
    num::Accumulator acc;
    for (NodeId i = 0; i < v.n; ++i) {
      const std::uint32_t lo = v.row_ptr[i], hi = v.row_ptr[i + 1];
      for (std::uint32_t t = lo; t < hi; ++t) {
        double w = v.weighted() ? v.vals[t] : 1.0;
        acc.add(w * detail::smoothed_max(x[i], x[v.cols[t]], alpha));
      }
    }
    s[k] = acc.value();
  }
  return s;
}

// f(x, c) = sum_k c_k sum_ij W^(k)_ij (x_i^alpha + x_j^alpha)^(1/alpha),
// the double sum running over ordered pairs (every undirected edge counts
// twice). 1-homogeneous in x and in c separately.
inline double objective_f(std::span<const LayerView> views, const CorenessState& state,
                          const SolverParams& params) {
  detail::check_views(views);
  if (state.x.size() != views[0].n) throw InputError("objective: x has wrong length");
  if (state.c.size() != views.size()) throw InputError("objective: c has wrong length");
  auto s = layer_kernel_sums(views, state.x, params.alpha);
  num::Accumulator acc;
  for (std::size_t k = 0; k < s.size(); ++k) acc.add(state.c[k] * s[k]);
  return acc.value();
}

// Scale-invariant quotient g = f / (||x||_p ||c||_q).
inline double quotient_g(std::span<const LayerView> views, const CorenessState& state,
                         const SolverParams& params) {
  double nx = num::lp_norm(state.x, params.p);
  double nc = num::lp_norm(state.c, params.q);
  if (nx == 0.0 || nc == 0.0) throw InputError("quotient: zero vector input");
  return objective_f(views, state, params) / (nx * nc);
}

// [grad_x f]_m = 2 sum_j W_mj (sum over layers, weighted by c) d/dx_m of the
// edge kernel. Entry m is zero iff node m is isolated in every layer with
// positive weight, or x vanishes on its whole neighborhood.
inline std::vector<double> grad_x(std::span<const LayerView> views, const CorenessState& state,
                                  const SolverParams& params) {
  detail::check_views(views);
  const NodeId n = views[0].n;
  if (state.x.size() != n) throw InputError("grad_x: x has wrong length");
  if (state.c.size() != views.size()) throw InputError("grad_x: c has wrong length");
  std::vector<double> g(n, 0.0), comp(n, 0.0);
  for (std::size_t k = 0; k < views.size(); ++k) {
    const double ck = state.c[k];
    if (ck == 0.0) continue;
    const auto& v = views[k];
    for (NodeId i = 0; i < n; ++i) {
      const std::uint32_t lo = v.row_ptr[i], hi = v.row_ptr[i + 1];
      for (std::uint32_t t = lo; t < hi; ++t) {
        double w = v.weighted() ? v.vals[t] : 1.0;
        num::add_compensated(g[i], comp[i],
                             2.0 * ck * w *
                                 detail::smoothed_max_dx(state.x[i], state.x[v.cols[t]],
                                                         params.alpha));
      }
    }
  }
  for (NodeId i = 0; i < n; ++i) g[i] += comp[i];
  return g;
}

// [grad_c f]_l = sum_ij W^(l)_ij kernel(x_i, x_j); independent of c.
inline std::vector<double> grad_c(std::span<const LayerView> views, std::span<const double> x,
                                  const SolverParams& params) {
  detail::check_views(views);
  if (x.size() != views[0].n) throw InputError("grad_c: x has wrong length");
  return layer_kernel_sums(views, x, params.alpha);
}

// J_{r*}(y) = (y / ||y||_{r*})^(1/(r-1)) for entrywise non-negative y; the
// image has unit r-norm (renormalised once to pin the invariant to 1e-12
// even after the pow round-off).
inline std::vector<double> dual_norm_map(std::span<const double> y, double r) {
  if (!(r > 1.0)) throw InputError("dual norm map: r must exceed 1");
  for (double v : y)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw InputError("dual norm map: input must be entrywise non-negative and finite");
  const double rs = r / (r - 1.0);
  const double nrm = num::lp_norm(y, rs);
  if (nrm == 0.0) throw InputError("dual norm map: zero input vector");
  const double e = 1.0 / (r - 1.0);
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    out[i] = y[i] == 0.0 ? 0.0 : std::pow(y[i] / nrm, e);
  const double unit = num::lp_norm(out, r);
  for (double& v : out) v /= unit;
  return out;
}

// Homogeneity matrices of the two gradient maps and the contraction factor
// of the combined iteration. rho < 1 certifies convergence to the unique
// positive maximiser from any positive start; otherwise only monotone ascent
// is guaranteed.
inline ContractionReport contraction_report(const SolverParams& params) {
  params.validate();
  ContractionReport r;
  const double am1 = std::abs(params.alpha - 1.0);
  r.theta = {{{am1, 1.0}, {2.0, 0.0}}};
  const double m01 = 1.0 / (params.p - 1.0);
  const double m10 = params.fixed_equal_layer_weights ? 0.0 : 2.0 / (params.q - 1.0);
  r.m = {{{2.0 * am1 / (params.p - 1.0), m01}, {m10, 0.0}}};
  r.rho = (r.m[0][0] + std::sqrt(r.m[0][0] * r.m[0][0] + 4.0 * m01 * m10)) / 2.0;
  r.regime = r.rho < 1.0 ? ConvergenceRegime::GlobalContraction
                         : ConvergenceRegime::LocalAscentOnly;
  return r;
}

// Alternating power iteration on the quotient g. Both updates read the same
// incoming state (Jacobi style); each maps a gradient through the dual-norm
// map of the respective constraint. Stops when both infinity-norm steps drop
// below tol. Throws NumericalError if an iterate goes non-finite or the
// quotient ever decreases beyond a 1e-12 relative slack (that would
// contradict the ascent guarantee and signals a numerics bug).
inline SolverReport solve(std::span<const LayerView> views, const SolverParams& params,
                          const std::optional<CorenessState>& start = std::nullopt) {
  params.validate();
  detail::check_views(views);
  const NodeId n = views[0].n;
  const std::size_t L = views.size();

  std::vector<double> x, c;
  if (start) {
    if (start->x.size() != n || (!params.fixed_equal_layer_weights && start->c.size() != L))
      throw InputError("solver: starting state has wrong dimensions");
    for (double v : start->x)
      if (!(v > 0.0) || !std::isfinite(v))
        throw InputError("solver: starting x must be entrywise positive and finite");
    if (!params.fixed_equal_layer_weights)
      for (double v : start->c)
        if (!(v > 0.0) || !std::isfinite(v))
          throw InputError("solver: starting c must be entrywise positive and finite");
    x = start->x;
  } else {
    x.assign(n, 1.0);
  }

  // Prenormalise with the conjugate norms; the first iteration then lands on
  // the unit p/q spheres and stays there.
  double nx = num::lp_norm(x, params.p_star());
  for (double& v : x) v /= nx;

  if (params.fixed_equal_layer_weights) {
    c.assign(L, std::pow(static_cast<double>(L), -1.0 / params.q));
  } else {
    c = start ? start->c : std::vector<double>(L, 1.0);
    double nc = num::lp_norm(c, params.q_star());
    for (double& v : c) v /= nc;
  }

  SolverReport rep;
  auto s = layer_kernel_sums(views, x, params.alpha);  // == grad_c at x
  auto weighted = [&](const std::vector<double>& cc, const std::vector<double>& ss) {
    num::Accumulator acc;
    for (std::size_t k = 0; k < L; ++k) acc.add(cc[k] * ss[k]);
    return acc.value();
  };
  double g_prev = weighted(c, s) / (num::lp_norm(x, params.p) * num::lp_norm(c, params.q));
  rep.g_trace.push_back(g_prev);

  CorenessState cur{std::move(x), std::move(c)};
  for (std::size_t it = 1; it <= params.max_iter; ++it) {
    auto gx = grad_x(views, cur, params);
    auto x_new = dual_norm_map(gx, params.p);
    auto c_new = params.fixed_equal_layer_weights ? cur.c : dual_norm_map(s, params.q);
    if (!num::all_finite(x_new) || !num::all_finite(c_new))
      throw NumericalError("solver: non-finite iterate at iteration " + std::to_string(it));

    s = layer_kernel_sums(views, x_new, params.alpha);
    double f = weighted(c_new, s);
    double g_now = f / (num::lp_norm(x_new, params.p) * num::lp_norm(c_new, params.q));
    if (!std::isfinite(g_now))
      throw NumericalError("solver: non-finite quotient at iteration " + std::to_string(it));
    if (g_now + 1e-12 * std::abs(g_prev) < g_prev)
      throw NumericalError("solver: quotient decreased at iteration " + std::to_string(it) +
                           " (" + std::to_string(g_prev) + " -> " + std::to_string(g_now) +
                           "), ascent guarantee violated");

    double step_x = num::inf_norm_diff(x_new, cur.x);
    double step_c = params.fixed_equal_layer_weights ? 0.0 : num::inf_norm_diff(c_new, cur.c);
    rep.g_trace.push_back(g_now);
    rep.step_norm_x.push_back(step_x);
    rep.step_norm_c.push_back(step_c);
    cur.x = std::move(x_new);
    cur.c = std::move(c_new);
    g_prev = g_now;
    rep.iterations = it;
    rep.objective = f;
    if (step_x < params.tol && step_c < params.tol) {
      rep.converged = true;
      break;
    }
  }

  // The emitted state must sit on the unit spheres; anything else means the
  // dual map lost the invariant.
  if (std::abs(num::lp_norm(cur.x, params.p) - 1.0) > 1e-12 ||
      std::abs(num::lp_norm(cur.c, params.q) - 1.0) > 1e-12)
    throw NumericalError("solver: final state drifted off the unit spheres");
  rep.state = std::move(cur);
  return rep;
}

inline SolverReport solve(const MultiplexAdjacency& a, const SolverParams& params,
                          const std::optional<CorenessState>& start = std::nullopt) {
  auto views = a.views();
  return solve(std::span<const LayerView>(views), params, start);
}

inline double objective_f(const MultiplexAdjacency& a, const CorenessState& state,
                          const SolverParams& params) {
  auto views = a.views();
  return objective_f(std::span<const LayerView>(views), state, params);
}

inline double quotient_g(const MultiplexAdjacency& a, const CorenessState& state,
                         const SolverParams& params) {
  auto views = a.views();
  return quotient_g(std::span<const LayerView>(views), state, params);
}

}  // namespace mpcp
