#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "multiplex.hpp"
#include "rng.hpp"

namespace mpcp {

namespace detail {

inline std::uint64_t pair_key(NodeId n, NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return static_cast<std::uint64_t>(u) * n + v;
}

// `count` distinct undirected non-self pairs, uniform, by rejection against
// `taken`. Caller guarantees count <= C(n,2) - |taken restricted to pairs|.
inline std::vector<Edge> sample_distinct_pairs(NodeId n, std::uint64_t count,
                                               std::unordered_set<std::uint64_t>& taken,
                                               SplitMix64& rng) {
  std::vector<Edge> edges;
  edges.reserve(count);
  while (edges.size() < count) {
    NodeId u = static_cast<NodeId>(rng.next_below(n));
    NodeId v = static_cast<NodeId>(rng.next_below(n));
    if (u == v) continue;
    std::uint64_t key = pair_key(n, u, v);
    if (taken.insert(key).second)
      edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  return edges;
}

}  // namespace detail

// Appends one extra layer of round(noise_level * m) uniform random edges,
// where m is the undirected edge count of the single existing layer. Noise
// edges are distinct among themselves but may duplicate base-layer edges
// (the layers are independent). noise_level 0 appends an empty layer, which
// downstream scoring treats via its empty-layer flag.
inline MultiplexAdjacency add_noise_layer(const MultiplexAdjacency& a, double noise_level,
                                          std::uint64_t seed) {
  if (a.num_layers() != 1)
    throw InputError("add_noise_layer: expects a single-layer multiplex");
  if (!(noise_level >= 0.0))
    throw InputError("add_noise_layer: noise level must be non-negative");
  const NodeId n = a.num_nodes();
  const std::uint64_t m = a.n1(0) / 2;
  const auto target = static_cast<std::uint64_t>(std::llround(noise_level * static_cast<double>(m)));
  const std::uint64_t max_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (target > max_pairs)
    throw InputError("add_noise_layer: requested more noise edges than node pairs");

  SplitMix64 rng(derive_seed(seed, kNoiseStream));
  std::unordered_set<std::uint64_t> taken;
  taken.reserve(target * 2);
  std::vector<std::vector<Edge>> layers(2);
  layers[0].reserve(m);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j : a.neighbors(0, i))
      if (j > i) layers[0].emplace_back(i, j);
  layers[1] = detail::sample_distinct_pairs(n, target, taken, rng);
  return MultiplexAdjacency::from_edges(n, layers);
}

// Per-layer block probabilities of a planted core-periphery SBM:
// core-core, core-periphery, periphery-periphery.
struct SbmLayerProbs {
  double p_cc = 0.0;
  double p_cp = 0.0;
  double p_pp = 0.0;
};

// L-layer stochastic block model with a planted core per layer. By default
// every layer shares the core {0, .., core_size-1}; with
// permute_core_membership each layer plants its own random core of the same
// size (sub-seeded per layer, reproducible).
inline MultiplexAdjacency generate_sbm_multiplex(NodeId n, std::span<const NodeId> core_sizes,
                                                 std::span<const SbmLayerProbs> probs,
                                                 std::uint64_t seed,
                                                 bool permute_core_membership = false) {
  if (core_sizes.size() != probs.size())
    throw InputError("sbm: core_sizes and probs must have one entry per layer");
  const std::size_t L = probs.size();
  if (L == 0) throw InputError("sbm: at least one layer");
  std::vector<std::vector<Edge>> layers(L);
  std::vector<std::uint8_t> in_core(n, 0);
  std::vector<NodeId> ids(n);
  for (std::size_t k = 0; k < L; ++k) {
    const auto& pr = probs[k];
    for (double p : {pr.p_cc, pr.p_cp, pr.p_pp})
      if (!(p >= 0.0 && p <= 1.0)) throw InputError("sbm: probabilities must lie in [0,1]");
    if (core_sizes[k] > n) throw InputError("sbm: core size exceeds node count");

    std::fill(in_core.begin(), in_core.end(), 0);
    if (permute_core_membership) {
      SplitMix64 pick(derive_seed(seed, kSbmStreamBase + 2 * k + 1));
      for (NodeId i = 0; i < n; ++i) ids[i] = i;
      for (NodeId i = 0; i < core_sizes[k]; ++i) {
        NodeId j = i + static_cast<NodeId>(pick.next_below(n - i));
        std::swap(ids[i], ids[j]);
        in_core[ids[i]] = 1;
      }
    } else {
      for (NodeId i = 0; i < core_sizes[k]; ++i) in_core[i] = 1;
    }

    SplitMix64 rng(derive_seed(seed, kSbmStreamBase + 2 * k));
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) {
        double p = in_core[i] ? (in_core[j] ? pr.p_cc : pr.p_cp)
                              : (in_core[j] ? pr.p_cp : pr.p_pp);
        if (p >= 1.0 || (p > 0.0 && rng.next_bernoulli(p)))
          layers[k].emplace_back(i, j);
      }
    }
  }
  return MultiplexAdjacency::from_edges(n, layers);
}

// Ideal L-shaped layer(s): every pair touching the planted core
// {0, .., core_size-1} is an edge, nothing else. The degenerate SBM
// (p_cc = p_cp = 1, p_pp = 0), built directly without randomness.
inline MultiplexAdjacency generate_ideal_lshape(NodeId n, NodeId core_size,
                                                std::size_t num_layers = 1) {
  if (core_size > n) throw InputError("ideal lshape: core size exceeds node count");
  std::vector<std::vector<Edge>> layers(num_layers);
  for (std::size_t k = 0; k < num_layers; ++k)
    for (NodeId i = 0; i < core_size; ++i)
      for (NodeId j = i + 1; j < n; ++j) layers[k].emplace_back(i, j);
  return MultiplexAdjacency::from_edges(n, layers);
}

// Uniform multiplex: each layer gets `edges_per_layer` distinct undirected
// edges drawn uniformly (G(n,m) per layer, independent across layers).
inline MultiplexAdjacency generate_uniform_multiplex(NodeId n, std::size_t num_layers,
                                                     std::uint64_t edges_per_layer,
                                                     std::uint64_t seed) {
  const std::uint64_t max_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (edges_per_layer > max_pairs)
    throw InputError("uniform multiplex: more edges than node pairs");
  std::vector<std::vector<Edge>> layers(num_layers);
  for (std::size_t k = 0; k < num_layers; ++k) {
    SplitMix64 rng(derive_seed(seed, kEdgeStreamBase + k));
    std::unordered_set<std::uint64_t> taken;
    taken.reserve(edges_per_layer * 2);
    layers[k] = detail::sample_distinct_pairs(n, edges_per_layer, taken, rng);
  }
  return MultiplexAdjacency::from_edges(n, layers);
}

}  // namespace mpcp
