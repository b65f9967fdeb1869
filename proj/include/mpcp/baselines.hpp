#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "multiplex.hpp"
#include "numeric.hpp"
#include "quality.hpp"
#include "solver.hpp"

namespace mpcp {

struct BaselineResult {
  std::string method;
  std::vector<double> x;
  LayerWeights c;  // the weights the scores were computed under
};

namespace detail {

// Power iteration with 2-norm normalisation and an infinity-norm step test.
// The operators fed in here are shifted to be PSD, so no sign flipping and
// no oscillation on bipartite structures.
template <class Apply>
std::vector<double> power_iteration(NodeId n, Apply&& apply, double tol, std::size_t max_steps,
                                    const char* what) {
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> w(n, 0.0);
  for (std::size_t step = 0; step < max_steps; ++step) {
    apply(v, w);
    double nrm = num::lp_norm(w, 2.0);
    if (nrm == 0.0)
      throw NumericalError(std::string(what) + ": operator annihilated the iterate");
    for (double& e : w) e /= nrm;
    if (num::inf_norm_diff(w, v) < tol) {
      v.swap(w);
      return v;
    }
    v.swap(w);
  }
  throw NumericalError(std::string(what) + ": power iteration did not settle within " +
                       std::to_string(max_steps) + " steps");
}

}  // namespace detail

// Weighted multiplex degree: x_i = sum_k c_k deg_k(i). Identical to the row
// sums of aggregate(a, c).
inline BaselineResult ml_degree(const MultiplexAdjacency& a, const LayerWeights& c) {
  validate_layer_weights(c, a.num_layers());
  BaselineResult r{"ml-degree", std::vector<double>(a.num_nodes(), 0.0), c};
  for (std::size_t k = 0; k < a.num_layers(); ++k) {
    if (c[k] == 0.0) continue;
    for (NodeId i = 0; i < a.num_nodes(); ++i)
      r.x[i] += c[k] * static_cast<double>(a.degree(k, i));
  }
  return r;
}

// Dominant eigenvector of the weighted aggregate. Power iteration runs on
// sigma I + W with sigma = max weighted row sum: same Perron vector, but
// convergent even on bipartite aggregates, where the unshifted iteration
// bounces between the two eigenvectors of +-lambda_1.
inline BaselineResult eig_a(const MultiplexAdjacency& a, const LayerWeights& c,
                            double tol = 1e-10, std::size_t max_steps = 10000) {
  WeightedGraph w = aggregate(a, c);
  if (w.nnz() == 0) throw InputError("eig-a: the weighted aggregate has no edges");
  const NodeId n = w.n;
  double sigma = 0.0;
  for (NodeId i = 0; i < n; ++i) {
    double row = 0.0;
    for (double e : w.weights(i)) row += e;
    sigma = std::max(sigma, row);
  }
  auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
    for (NodeId i = 0; i < n; ++i) {
      double acc = sigma * v[i];
      auto nb = w.neighbors(i);
      auto wt = w.weights(i);
      for (std::size_t t = 0; t < nb.size(); ++t) acc += wt[t] * v[nb[t]];
      out[i] = acc;
    }
  };
  BaselineResult r{"eig-a", detail::power_iteration(n, apply, tol, max_steps, "eig-a"), c};
  return r;
}

// Dominant eigenvector of the weighted quality matrix sum_k (c_k/||c||_1)
// Q^(k), applied matrix-free in O(nnz + n) per step. The matrix is
// indefinite, so the iteration runs on sigma I + Q with sigma its exact
// infinity norm; the converged vector is shifted by its minimum so the
// reported coreness is non-negative (an affine, rank-preserving change).
inline BaselineResult eig_q(const MultiplexAdjacency& a, const LayerWeights& c,
                            const QuboOptions& opt = {}, double tol = 1e-10,
                            std::size_t max_steps = 10000) {
  const NodeId n = a.num_nodes();
  auto inc = detail::select_layers(a, c, opt);
  const auto nf = static_cast<double>(n);

  // Per-layer coefficients: adjacency entries carry -(1/n1 + 1/n2'), the
  // all-ones coupling carries 1/n2'.
  std::vector<double> adj_coef(inc.idx.size()), ones_coef(inc.idx.size());
  double B = 0.0;
  for (std::size_t t = 0; t < inc.idx.size(); ++t) {
    auto counts = detail::layer_counts(a, inc.idx[t]);
    double wk = c[inc.idx[t]] / inc.weight_sum;
    adj_coef[t] = wk * (1.0 / static_cast<double>(counts.present) +
                        1.0 / static_cast<double>(counts.missing_pairs));
    ones_coef[t] = wk / static_cast<double>(counts.missing_pairs);
    B += ones_coef[t];
  }

  // Exact infinity norm of Q: per row, |diagonal| plus |B - sum of adjacency
  // coefficients| over union neighbors plus B for every non-neighbor.
  double sigma = 0.0;
  {
    std::vector<double> acc(n, 0.0);
    std::vector<NodeId> touched;
    for (NodeId i = 0; i < n; ++i) {
      touched.clear();
      double diag = -2.0 * (nf - 1.0) * B;
      for (std::size_t t = 0; t < inc.idx.size(); ++t) {
        diag += 2.0 * adj_coef[t] * static_cast<double>(a.degree(inc.idx[t], i));
        for (NodeId j : a.neighbors(inc.idx[t], i)) {
          if (acc[j] == 0.0) touched.push_back(j);
          acc[j] += adj_coef[t];
        }
      }
      double row = std::abs(diag);
      std::size_t distinct = 0;
      for (NodeId j : touched) {
        if (acc[j] != 0.0) {
          ++distinct;
          row += std::abs(B - acc[j]);
          acc[j] = 0.0;
        }
      }
      row += (nf - 1.0 - static_cast<double>(distinct)) * B;
      sigma = std::max(sigma, row);
    }
  }

  auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
    double sum_v = 0.0;
    for (double e : v) sum_v += e;
    for (NodeId i = 0; i < n; ++i)
      out[i] = (sigma - 2.0 * (nf - 1.0) * B - B) * v[i] + B * sum_v;
    for (std::size_t t = 0; t < inc.idx.size(); ++t) {
      const std::size_t k = inc.idx[t];
      for (NodeId i = 0; i < n; ++i) {
        double acc = 2.0 * adj_coef[t] * static_cast<double>(a.degree(k, i)) * v[i];
        for (NodeId j : a.neighbors(k, i)) acc -= adj_coef[t] * v[j];
        out[i] += acc;
      }
    }
  };

  auto v = detail::power_iteration(n, apply, tol, max_steps, "eig-q");
  double total = 0.0;
  for (double e : v) total += e;
  if (total < 0.0)
    for (double& e : v) e = -e;
  double lo = *std::min_element(v.begin(), v.end());
  if (lo < 0.0)
    for (double& e : v) e -= lo;
  return BaselineResult{"eig-q", std::move(v), c};
}

// Multiplex h-index on the binarised aggregate: start from the degree, then
// repeatedly replace h_i by the largest y such that at least y neighbors
// have h >= y, until nothing changes. Monotone non-increasing, so it stops
// after at most n rounds.
inline BaselineResult h_index(const MultiplexAdjacency& a, const LayerWeights& c) {
  WeightedGraph w = aggregate(a, c);
  const NodeId n = w.n;
  std::vector<std::uint32_t> h(n), next(n);
  for (NodeId i = 0; i < n; ++i) h[i] = static_cast<std::uint32_t>(w.neighbors(i).size());
  std::vector<std::uint32_t> vals;
  // Each changed round lowers sum(h) by at least one, and sum(h) starts at
  // the ordered edge count, so this terminates well inside the bound.
  const std::uint64_t round_bound = w.nnz() + 2;
  for (std::uint64_t round = 0; round < round_bound; ++round) {
    bool changed = false;
    for (NodeId i = 0; i < n; ++i) {
      auto nb = w.neighbors(i);
      vals.assign(nb.size(), 0);
      for (std::size_t t = 0; t < nb.size(); ++t) vals[t] = h[nb[t]];
      std::sort(vals.begin(), vals.end(), std::greater<>());
      std::uint32_t y = 0;
      while (y < vals.size() && vals[y] >= y + 1) ++y;
      next[i] = y;
      changed |= next[i] != h[i];
    }
    h.swap(next);
    if (!changed) break;
  }
  BaselineResult r{"h-index", std::vector<double>(n), c};
  for (NodeId i = 0; i < n; ++i) r.x[i] = static_cast<double>(h[i]);
  return r;
}

// The nonlinear spectral method on one (weighted) graph: the multiplex
// solver with a single layer and the layer weight pinned at 1. With
// binarise set, positive weights collapse to unit weights first.
inline BaselineResult nsm_single_layer(const WeightedGraph& w, const SolverParams& params,
                                       bool binarise = false) {
  LayerView view = w.view();
  if (binarise) view.vals = {};
  std::vector<LayerView> views{view};
  auto rep = solve(views, params);
  return BaselineResult{"nsm-aggregate", std::move(rep.state.x), {1.0}};
}

}  // namespace mpcp
