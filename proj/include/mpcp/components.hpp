#pragma once

#include <cstdint>
#include <vector>

#include "multiplex.hpp"

namespace mpcp {

// Which graph the connectivity is measured on: the union of all layers, or a
// single designated layer.
enum class LccMode { Aggregated, SingleLayer };

struct LccResult {
  MultiplexAdjacency adjacency;   // restricted to the component, ids compacted
  std::vector<NodeId> kept;       // new id -> old id, ascending
};

// Largest connected component. Ties between equally sized components go to
// the one containing the smallest node id, so the result is deterministic.
// Singleton components are legitimate; an edgeless graph yields node 0 alone.
inline LccResult largest_connected_component(const MultiplexAdjacency& a, LccMode mode,
                                             std::size_t layer = 0) {
  const NodeId n = a.num_nodes();
  if (mode == LccMode::SingleLayer && layer >= a.num_layers())
    throw InputError("largest_connected_component: layer index out of range");

  std::vector<std::int32_t> comp(n, -1);
  std::vector<NodeId> queue;
  std::int32_t num_comp = 0;
  std::size_t best_size = 0;
  std::int32_t best_comp = -1;

  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::size_t size = 0;
    queue.clear();
    queue.push_back(s);
    comp[s] = num_comp;
    while (!queue.empty()) {
      NodeId u = queue.back();
      queue.pop_back();
      ++size;
      auto visit = [&](NodeId v) {
        if (comp[v] < 0) {
          comp[v] = num_comp;
          queue.push_back(v);
        }
      };
      if (mode == LccMode::SingleLayer) {
        for (NodeId v : a.neighbors(layer, u)) visit(v);
      } else {
        for (std::size_t k = 0; k < a.num_layers(); ++k)
          for (NodeId v : a.neighbors(k, u)) visit(v);
      }
    }
    // Strict '>' keeps the earliest (smallest seed id) component on ties.
    if (size > best_size) {
      best_size = size;
      best_comp = num_comp;
    }
    ++num_comp;
  }

  LccResult res;
  std::vector<NodeId> old_to_new(n, 0);
  res.kept.reserve(best_size);
  for (NodeId i = 0; i < n; ++i) {
    if (comp[i] == best_comp) {
      old_to_new[i] = static_cast<NodeId>(res.kept.size());
      res.kept.push_back(i);
    }
  }

  std::vector<std::vector<Edge>> layer_edges(a.num_layers());
  for (std::size_t k = 0; k < a.num_layers(); ++k)
    for (NodeId i : res.kept)
      for (NodeId j : a.neighbors(k, i))
        if (j > i && comp[j] == best_comp)
          layer_edges[k].emplace_back(old_to_new[i], old_to_new[j]);
  res.adjacency =
      MultiplexAdjacency::from_edges(static_cast<NodeId>(res.kept.size()), layer_edges);
  return res;
}

}  // namespace mpcp
