#pragma once

// Shared fixtures for the test suite: scratch directories, random instances,
// and independent dense reference implementations that the fast paths are
// checked against.

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <mpcp/generators.hpp>
#include <mpcp/multiplex.hpp>
#include <mpcp/quality.hpp>
#include <mpcp/rng.hpp>

namespace testutil {

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("mpcp_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

inline std::filesystem::path write_file(const std::filesystem::path& dir,
                                        const std::string& name, const std::string& content) {
  auto p = dir / name;
  std::ofstream out(p);
  out << content;
  return p;
}

inline std::filesystem::path write_file(const std::filesystem::path& full,
                                        const std::string& content) {
  std::ofstream out(full);
  out << content;
  return full;
}

// Random multiplex with roughly edge_prob density per layer, at least one
// edge per layer (re-rolls the seed until every layer is non-degenerate).
inline mpcp::MultiplexAdjacency random_multiplex(mpcp::NodeId n, std::size_t L,
                                                 double edge_prob, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    mpcp::SplitMix64 rng(mpcp::derive_seed(seed + 1000003 * attempt, 7));
    std::vector<std::vector<mpcp::Edge>> layers(L);
    for (std::size_t k = 0; k < L; ++k)
      for (mpcp::NodeId i = 0; i < n; ++i)
        for (mpcp::NodeId j = i + 1; j < n; ++j)
          if (rng.next_bernoulli(edge_prob)) layers[k].emplace_back(i, j);
    bool ok = true;
    for (const auto& l : layers) {
      std::uint64_t max_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
      if (l.empty() || l.size() == max_pairs) ok = false;
    }
    if (ok) return mpcp::MultiplexAdjacency::from_edges(n, layers);
  }
}

inline std::vector<double> random_positive_vector(std::size_t n, std::uint64_t seed,
                                                  double lo = 0.2, double hi = 1.2) {
  mpcp::SplitMix64 rng(seed);
  std::vector<double> v(n);
  for (auto& e : v) e = lo + (hi - lo) * rng.next_double();
  return v;
}

// ---- dense quality references ------------------------------------------
//
// Three independent dense routes to the same partition score; the library's
// count-based fast path must agree with each to 1e-12.

// Per-layer coefficients: present pairs weighted 1/n1, missing ordered pairs
// (i != j) weighted 1/n2 with n2 the count of missing off-diagonal pairs (a
// zero diagonal offers no edge slots).
struct DenseLayerStats {
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
};

inline DenseLayerStats dense_stats(const mpcp::MultiplexAdjacency& a, std::size_t k) {
  DenseLayerStats s;
  s.n1 = a.n1(k);
  std::uint64_t n = a.num_nodes();
  s.n2 = n * (n - 1) - s.n1;
  return s;
}

// Route 1: explicit dense matrix, value = y^T Q y over the 0/1 vector.
inline double dense_q_form(const mpcp::MultiplexAdjacency& a, const mpcp::LayerWeights& c,
                           const std::vector<std::uint8_t>& y) {
  const mpcp::NodeId n = a.num_nodes();
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.num_layers(); ++k) {
    auto st = dense_stats(a, k);
    if (st.n1 == 0 || st.n2 == 0) continue;  // caller filters; be safe
    den += c[k];
    const double a_coef = 1.0 / double(st.n1) + 1.0 / double(st.n2);
    const double b_coef = 1.0 / double(st.n2);
    std::vector<std::vector<double>> Q(n, std::vector<double>(n, 0.0));
    for (mpcp::NodeId i = 0; i < n; ++i) {
      Q[i][i] = 2.0 * a_coef * a.degree(k, i) - 2.0 * (double(n) - 1.0) * b_coef;
      for (mpcp::NodeId j = 0; j < n; ++j) {
        if (i == j) continue;
        Q[i][j] = b_coef - (a.has_edge(k, i, j) ? a_coef : 0.0);
      }
    }
    double v = 0.0;
    for (mpcp::NodeId i = 0; i < n; ++i)
      for (mpcp::NodeId j = 0; j < n; ++j)
        if (y[i] && y[j]) v += Q[i][j];
    num += c[k] * v;
  }
  return num / den;
}

// Route 2: elementwise form, sum over ordered pairs i != j of
// A_ij/n1 - (1-A_ij)/n2 times max(y_i, y_j).
inline double dense_elementwise(const mpcp::MultiplexAdjacency& a, const mpcp::LayerWeights& c,
                                const std::vector<std::uint8_t>& y) {
  const mpcp::NodeId n = a.num_nodes();
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.num_layers(); ++k) {
    auto st = dense_stats(a, k);
    if (st.n1 == 0 || st.n2 == 0) continue;
    den += c[k];
    double v = 0.0;
    for (mpcp::NodeId i = 0; i < n; ++i)
      for (mpcp::NodeId j = 0; j < n; ++j) {
        if (i == j) continue;
        double m = (y[i] || y[j]) ? 1.0 : 0.0;
        v += (a.has_edge(k, i, j) ? 1.0 / double(st.n1) : -1.0 / double(st.n2)) * m;
      }
    num += c[k] * v;
  }
  return num / den;
}

// Route 3: agreement form (edges inside the hull count for, absent pairs
// outside count for) minus its partition-independent constant, which is
// exactly 1.
inline double dense_agreement_minus_const(const mpcp::MultiplexAdjacency& a,
                                          const mpcp::LayerWeights& c,
                                          const std::vector<std::uint8_t>& y) {
  const mpcp::NodeId n = a.num_nodes();
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.num_layers(); ++k) {
    auto st = dense_stats(a, k);
    if (st.n1 == 0 || st.n2 == 0) continue;
    den += c[k];
    double v = 0.0;
    for (mpcp::NodeId i = 0; i < n; ++i)
      for (mpcp::NodeId j = 0; j < n; ++j) {
        if (i == j) continue;
        double m = (y[i] || y[j]) ? 1.0 : 0.0;
        if (a.has_edge(k, i, j))
          v += m / double(st.n1);
        else
          v += (1.0 - m) / double(st.n2);
      }
    num += c[k] * (v - 1.0);
  }
  return num / den;
}

// Naive O(n * nnz) sweep used to validate the incremental one.
inline std::vector<double> naive_sweep_scores(const mpcp::MultiplexAdjacency& a,
                                              const mpcp::LayerWeights& c,
                                              std::span<const double> x) {
  auto order = mpcp::ranking_desc(x);
  const mpcp::NodeId n = a.num_nodes();
  std::vector<std::uint8_t> y(n, 0);
  std::vector<double> scores(n, 0.0);
  for (mpcp::NodeId s = 1; s <= n; ++s) {
    y[order[s - 1]] = 1;
    mpcp::BinaryPartition part = mpcp::BinaryPartition::from_flags(y);
    mpcp::QuboOptions opt;
    opt.exclude_degenerate_layers = true;
    scores[s - 1] = mpcp::qubo_value(a, c, part, opt);
  }
  return scores;
}

}  // namespace testutil
