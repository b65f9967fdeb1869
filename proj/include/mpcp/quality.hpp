#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <span>
#include <vector>

#include "csv.hpp"
#include "multiplex.hpp"

namespace mpcp {

// Core/periphery split as an indicator vector plus its popcount.
struct BinaryPartition {
  std::vector<std::uint8_t> in_core;
  NodeId core_size = 0;

  static BinaryPartition from_flags(std::vector<std::uint8_t> flags) {
    BinaryPartition p;
    p.core_size = static_cast<NodeId>(std::count(flags.begin(), flags.end(), std::uint8_t{1}));
    for (auto f : flags)
      if (f > 1) throw InputError("partition: flags must be 0 or 1");
    p.in_core = std::move(flags);
    return p;
  }
  static BinaryPartition from_core_set(NodeId n, std::span<const NodeId> core) {
    std::vector<std::uint8_t> flags(n, 0);
    for (NodeId v : core) {
      if (v >= n) throw InputError("partition: core node out of range");
      flags[v] = 1;
    }
    return from_flags(std::move(flags));
  }
};

struct QuboOptions {
  // Layers with no edges (or with every possible edge) have an undefined
  // score; with this flag they are skipped and the weight renormalisation
  // runs over the remaining layers. Without it they are an error.
  bool exclude_degenerate_layers = false;
  // When set, indices of skipped layers are appended here so callers can warn.
  std::vector<std::size_t>* excluded_out = nullptr;
};

namespace detail {

struct LayerCounts {
  std::uint64_t present = 0;       // ordered nonzeros n1
  std::uint64_t missing_pairs = 0; // ordered missing pairs i != j
};

inline LayerCounts layer_counts(const MultiplexAdjacency& a, std::size_t k) {
  const auto n = static_cast<std::uint64_t>(a.num_nodes());
  LayerCounts c;
  c.present = a.n1(k);
  c.missing_pairs = n * (n - 1) - c.present;
  return c;
}

// Ordered pairs (i,j), i != j, with at least one endpoint in a set of size s.
inline std::uint64_t pairs_touching(std::uint64_t n, std::uint64_t s) {
  return s * (2 * n - s - 1);
}

// Score of one layer given E = ordered nonzeros touching the core. Exact in
// the corner cases: every edge inside an ideal L-shape gives 1.0, the s = n
// partition gives 0.0, both without float cancellation.
inline double layer_value(const LayerCounts& c, std::uint64_t n, std::uint64_t s,
                          std::uint64_t touching_nonzeros) {
  const std::uint64_t miss = pairs_touching(n, s) - touching_nonzeros;
  return static_cast<double>(touching_nonzeros) / static_cast<double>(c.present) -
         static_cast<double>(miss) / static_cast<double>(c.missing_pairs);
}

// Which layers take part, and the weight mass over them.
struct IncludedLayers {
  std::vector<std::size_t> idx;
  double weight_sum = 0.0;
};

inline IncludedLayers select_layers(const MultiplexAdjacency& a, const LayerWeights& c,
                                    const QuboOptions& opt) {
  validate_layer_weights(c, a.num_layers());
  IncludedLayers inc;
  for (std::size_t k = 0; k < a.num_layers(); ++k) {
    auto counts = layer_counts(a, k);
    if (counts.present == 0 || counts.missing_pairs == 0) {
      if (!opt.exclude_degenerate_layers)
        throw InputError("qubo: layer " + std::to_string(k) +
                         " is empty or complete; pass the exclusion flag to skip it");
      if (opt.excluded_out) opt.excluded_out->push_back(k);
      continue;
    }
    inc.idx.push_back(k);
    inc.weight_sum += c[k];
  }
  if (inc.idx.empty() || inc.weight_sum <= 0.0)
    throw InputError("qubo: no scorable layer with positive weight");
  return inc;
}

}  // namespace detail

// Weighted core-periphery quality of one partition: per layer, the fraction
// of edges touching the core minus the fraction of missing pairs touching
// the core, combined with weights c / sum(c). Lies in [-1, 1]; the maximum 1
// is attained exactly when every scored layer is an ideal L-shape whose core
// is the partition's core.
inline double qubo_value(const MultiplexAdjacency& a, const LayerWeights& c,
                         const BinaryPartition& part, const QuboOptions& opt = {}) {
  const NodeId n = a.num_nodes();
  if (part.in_core.size() != n) throw InputError("qubo: partition has wrong length");
  auto inc = detail::select_layers(a, c, opt);
  double num = 0.0;
  for (std::size_t k : inc.idx) {
    std::uint64_t touching = 0;
    for (NodeId i = 0; i < n; ++i) {
      if (part.in_core[i]) {
        touching += a.degree(k, i);
      } else {
        for (NodeId j : a.neighbors(k, i)) touching += part.in_core[j];
      }
    }
    num += c[k] * detail::layer_value(detail::layer_counts(a, k), n, part.core_size, touching);
  }
  return num / inc.weight_sum;
}

// Descending order, ties broken toward the smaller index. This is the one
// ranking everything downstream (sweep, spy plots, profiles-reversed) uses,
// so results are reproducible across runs and platforms.
inline std::vector<NodeId> ranking_desc(std::span<const double> x) {
  std::vector<NodeId> idx(x.size());
  std::iota(idx.begin(), idx.end(), NodeId{0});
  std::sort(idx.begin(), idx.end(), [&](NodeId l, NodeId r) {
    if (x[l] != x[r]) return x[l] > x[r];
    return l < r;
  });
  return idx;
}

// Ascending order, ties toward the smaller index.
inline std::vector<NodeId> ranking_asc(std::span<const double> x) {
  std::vector<NodeId> idx(x.size());
  std::iota(idx.begin(), idx.end(), NodeId{0});
  std::sort(idx.begin(), idx.end(), [&](NodeId l, NodeId r) {
    if (x[l] != x[r]) return x[l] < x[r];
    return l < r;
  });
  return idx;
}

struct QuboSweepResult {
  std::vector<double> scores;     // scores[s-1] = value with the top-s nodes as core
  std::vector<NodeId> ordering;   // descending coreness
  NodeId s_star = 0;              // arg max, smallest s on ties
  double max_score = 0.0;
};

// Scores every prefix of the descending-coreness ordering in one pass,
// maintaining per-layer touching-edge counts incrementally (O(nnz + n L)
// total). Adding node v to the core adds two ordered pairs per neighbor not
// already inside.
inline QuboSweepResult qubo_sweep(const MultiplexAdjacency& a, const LayerWeights& c,
                                  std::span<const double> x, const QuboOptions& opt = {}) {
  const NodeId n = a.num_nodes();
  if (x.size() != n) throw InputError("qubo sweep: coreness vector has wrong length");
  auto inc = detail::select_layers(a, c, opt);

  QuboSweepResult res;
  res.ordering = ranking_desc(x);
  res.scores.assign(n, 0.0);

  std::vector<detail::LayerCounts> counts;
  counts.reserve(inc.idx.size());
  for (std::size_t k : inc.idx) counts.push_back(detail::layer_counts(a, k));
  std::vector<std::uint64_t> touching(inc.idx.size(), 0);
  std::vector<std::uint8_t> in_core(n, 0);

  res.max_score = -2.0;
  for (NodeId s = 1; s <= n; ++s) {
    const NodeId v = res.ordering[s - 1];
    double num = 0.0;
    for (std::size_t t = 0; t < inc.idx.size(); ++t) {
      std::uint64_t fresh = 0;
      for (NodeId j : a.neighbors(inc.idx[t], v)) fresh += 1 - in_core[j];
      touching[t] += 2 * fresh;
      num += c[inc.idx[t]] * detail::layer_value(counts[t], n, s, touching[t]);
    }
    in_core[v] = 1;
    const double score = num / inc.weight_sum;
    res.scores[s - 1] = score;
    if (score > res.max_score) {
      res.max_score = score;
      res.s_star = s;
    }
  }
  return res;
}

struct ProfileCurve {
  std::vector<NodeId> ordering;            // ascending coreness
  std::vector<std::vector<double>> values; // values[k][m-1], m = 1..n
};

// Random-walk persistence of the m least-core nodes: the probability that a
// stationary random walk on layer k stays inside the set, i.e. (ordered
// pairs inside) / (degree sum). Defined as 0 while the set has no incident
// edges; reaches exactly 1 at m = n.
inline ProfileCurve persistence_profile(const MultiplexAdjacency& a, std::span<const double> x) {
  const NodeId n = a.num_nodes();
  if (x.size() != n) throw InputError("persistence profile: coreness vector has wrong length");
  ProfileCurve curve;
  curve.ordering = ranking_asc(x);
  curve.values.assign(a.num_layers(), std::vector<double>(n, 0.0));
  std::vector<std::uint8_t> inside(n, 0);
  std::vector<std::uint64_t> pairs_inside(a.num_layers(), 0);
  std::vector<std::uint64_t> degree_sum(a.num_layers(), 0);
  for (NodeId m = 1; m <= n; ++m) {
    const NodeId v = curve.ordering[m - 1];
    for (std::size_t k = 0; k < a.num_layers(); ++k) {
      std::uint64_t to_inside = 0;
      for (NodeId j : a.neighbors(k, v)) to_inside += inside[j];
      pairs_inside[k] += 2 * to_inside;
      degree_sum[k] += a.degree(k, v);
      curve.values[k][m - 1] =
          degree_sum[k] == 0 ? 0.0
                             : static_cast<double>(pairs_inside[k]) /
                                   static_cast<double>(degree_sum[k]);
    }
    inside[v] = 1;
  }
  return curve;
}

// s,score rows for the sweep curve.
inline void write_sweep_csv(const std::filesystem::path& path, const QuboSweepResult& res) {
  auto out = open_output(path);
  out << "s,score\n";
  for (std::size_t s = 1; s <= res.scores.size(); ++s)
    out << s << ',' << format_double(res.scores[s - 1]) << '\n';
}

// m,layer,P rows, layer-major.
inline void write_profile_csv(const std::filesystem::path& path, const ProfileCurve& curve) {
  auto out = open_output(path);
  out << "m,layer,P\n";
  for (std::size_t k = 0; k < curve.values.size(); ++k)
    for (std::size_t m = 1; m <= curve.values[k].size(); ++m)
      out << m << ',' << k << ',' << format_double(curve.values[k][m - 1]) << '\n';
}

}  // namespace mpcp
