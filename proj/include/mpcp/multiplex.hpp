#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace mpcp {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// Per-layer coupling strengths c. Non-negative, at least one positive.
using LayerWeights = std::vector<double>;

// One symmetric binary layer in CSR form: zero diagonal, rows sorted,
// both (i,j) and (j,i) stored. cols.size() equals the ordered nonzero count.
struct LayerPattern {
  std::vector<std::uint32_t> row_ptr;  // size n+1
  std::vector<NodeId> cols;

  std::uint64_t nnz() const { return cols.size(); }
};

// Read-only view of one (possibly weighted) layer; the solver and the
// baselines are written against this so a binary multiplex layer and a
// weighted aggregate go through the same code path. Empty `vals` means
// unit weights.
struct LayerView {
  NodeId n = 0;
  std::span<const std::uint32_t> row_ptr;
  std::span<const NodeId> cols;
  std::span<const double> vals;

  std::span<const NodeId> neighbors(NodeId i) const {
    return cols.subspan(row_ptr[i], row_ptr[i + 1] - row_ptr[i]);
  }
  std::span<const double> weights(NodeId i) const {
    return vals.subspan(row_ptr[i], row_ptr[i + 1] - row_ptr[i]);
  }
  bool weighted() const { return !vals.empty(); }
  std::uint64_t nnz() const { return cols.size(); }
};

// Node-aligned multiplex adjacency: L symmetric binary layers over the same
// n nodes. Immutable once built; every construction funnels through
// from_edges(), which normalises input pairs (drops self-loops, deduplicates,
// symmetrises) and then re-checks the structural invariants.
class MultiplexAdjacency {
 public:
  // Empty placeholder so result structs are default-constructible; anything
  // usable comes out of from_edges, which enforces the invariants.
  MultiplexAdjacency() = default;

  static MultiplexAdjacency from_edges(NodeId n,
                                       const std::vector<std::vector<Edge>>& layer_edges) {
    if (n == 0) throw InputError("multiplex: node count must be positive");
    MultiplexAdjacency a;
    a.n_ = n;
    a.layers_.reserve(layer_edges.size());
    std::vector<std::vector<NodeId>> rows;
    for (std::size_t k = 0; k < layer_edges.size(); ++k) {
      rows.assign(n, {});
      std::vector<Edge> canon;
      canon.reserve(layer_edges[k].size());
      for (auto [u, v] : layer_edges[k]) {
        if (u >= n || v >= n)
          throw InputError("multiplex: node id out of range in layer " + std::to_string(k));
        if (u == v) continue;  // zero diagonal by construction
        canon.emplace_back(std::min(u, v), std::max(u, v));
      }
      std::sort(canon.begin(), canon.end());
      canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
      for (auto [u, v] : canon) {
        rows[u].push_back(v);
        rows[v].push_back(u);
      }
      LayerPattern layer;
      layer.row_ptr.assign(n + 1, 0);
      std::uint64_t total = 2 * static_cast<std::uint64_t>(canon.size());
      if (total > 0xFFFFFFFFull) throw InputError("multiplex: layer too large for 32-bit offsets");
      layer.cols.reserve(total);
      for (NodeId i = 0; i < n; ++i) {
        std::sort(rows[i].begin(), rows[i].end());
        layer.cols.insert(layer.cols.end(), rows[i].begin(), rows[i].end());
        layer.row_ptr[i + 1] = static_cast<std::uint32_t>(layer.cols.size());
      }
      a.layers_.push_back(std::move(layer));
    }
    a.check_invariants();
    return a;
  }

  NodeId num_nodes() const { return n_; }
  std::size_t num_layers() const { return layers_.size(); }
  const LayerPattern& layer(std::size_t k) const { return layers_[k]; }

  std::span<const NodeId> neighbors(std::size_t k, NodeId i) const {
    const auto& l = layers_[k];
    return {l.cols.data() + l.row_ptr[i], l.cols.data() + l.row_ptr[i + 1]};
  }
  std::uint32_t degree(std::size_t k, NodeId i) const {
    return layers_[k].row_ptr[i + 1] - layers_[k].row_ptr[i];
  }

  // Ordered nonzero count (each undirected edge counted twice).
  std::uint64_t n1(std::size_t k) const { return layers_[k].nnz(); }
  // Ordered zero count including the diagonal; n1 + n2 == n^2.
  std::uint64_t n2(std::size_t k) const {
    return static_cast<std::uint64_t>(n_) * n_ - n1(k);
  }

  std::uint64_t total_nnz() const {
    std::uint64_t t = 0;
    for (const auto& l : layers_) t += l.nnz();
    return t;
  }

  std::vector<double> degree_vector(std::size_t k) const {
    std::vector<double> d(n_);
    for (NodeId i = 0; i < n_; ++i) d[i] = static_cast<double>(degree(k, i));
    return d;
  }

  LayerView view(std::size_t k) const {
    const auto& l = layers_[k];
    return {n_, l.row_ptr, l.cols, {}};
  }
  std::vector<LayerView> views() const {
    std::vector<LayerView> v;
    v.reserve(layers_.size());
    for (std::size_t k = 0; k < layers_.size(); ++k) v.push_back(view(k));
    return v;
  }

  bool has_edge(std::size_t k, NodeId u, NodeId v) const {
    auto nb = neighbors(k, u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

 private:
  void check_invariants() const {
    for (std::size_t k = 0; k < layers_.size(); ++k) {
      const auto& l = layers_[k];
      if (l.row_ptr.size() != n_ + 1u || l.row_ptr.front() != 0 ||
          l.row_ptr.back() != l.cols.size())
        throw InputError("multiplex: inconsistent CSR offsets in layer " + std::to_string(k));
      for (NodeId i = 0; i < n_; ++i) {
        if (l.row_ptr[i] > l.row_ptr[i + 1])
          throw InputError("multiplex: non-monotone offsets in layer " + std::to_string(k));
        auto nb = neighbors(k, i);
        for (std::size_t t = 0; t < nb.size(); ++t) {
          if (nb[t] == i)
            throw InputError("multiplex: self-loop survived in layer " + std::to_string(k));
          if (t > 0 && nb[t] <= nb[t - 1])
            throw InputError("multiplex: unsorted/duplicate row in layer " + std::to_string(k));
          if (!has_edge(k, nb[t], i))
            throw InputError("multiplex: asymmetric layer " + std::to_string(k));
        }
      }
    }
  }

  NodeId n_ = 0;
  std::vector<LayerPattern> layers_;
};

inline void validate_layer_weights(const LayerWeights& c, std::size_t num_layers) {
  if (c.size() != num_layers)
    throw InputError("layer weights: expected " + std::to_string(num_layers) + " entries, got " +
                     std::to_string(c.size()));
  bool any_positive = false;
  for (double w : c) {
    if (!(w >= 0.0))  // catches NaN too
      throw InputError("layer weights: entries must be non-negative");
    if (w > 0.0) any_positive = true;
  }
  if (!any_positive) throw InputError("layer weights: at least one entry must be positive");
}

// Symmetric weighted graph (the weighted aggregate of a multiplex). Positive
// entries only; zero-weight pairs are simply absent.
struct WeightedGraph {
  NodeId n = 0;
  std::vector<std::uint32_t> row_ptr;
  std::vector<NodeId> cols;
  std::vector<double> vals;

  LayerView view() const { return {n, row_ptr, cols, vals}; }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {cols.data() + row_ptr[i], cols.data() + row_ptr[i + 1]};
  }
  std::span<const double> weights(NodeId i) const {
    return {vals.data() + row_ptr[i], vals.data() + row_ptr[i + 1]};
  }
  std::uint64_t nnz() const { return cols.size(); }
};

// Weighted aggregate W = sum_k c_k A^(k). Zero-weight layers contribute
// nothing (their pattern does not appear with weight 0).
inline WeightedGraph aggregate(const MultiplexAdjacency& a, const LayerWeights& c) {
  validate_layer_weights(c, a.num_layers());
  const NodeId n = a.num_nodes();
  WeightedGraph g;
  g.n = n;
  g.row_ptr.assign(n + 1, 0);
  std::vector<double> scratch(n, 0.0);
  std::vector<NodeId> touched;
  for (NodeId i = 0; i < n; ++i) {
    touched.clear();
    for (std::size_t k = 0; k < a.num_layers(); ++k) {
      if (c[k] == 0.0) continue;
      for (NodeId j : a.neighbors(k, i)) {
        if (scratch[j] == 0.0) touched.push_back(j);
        scratch[j] += c[k];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (NodeId j : touched) {
      g.cols.push_back(j);
      g.vals.push_back(scratch[j]);
      scratch[j] = 0.0;
    }
    g.row_ptr[i + 1] = static_cast<std::uint32_t>(g.cols.size());
  }
  return g;
}

}  // namespace mpcp
