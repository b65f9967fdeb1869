#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "multiplex.hpp"

namespace mpcp {

// Text edge lists: one edge per line, "layer u v" or "layer u v w" when a
// weight column is declared. Lines whose first non-blank character is '#'
// are comments. Node and layer ids may be arbitrary non-negative integers;
// they are remapped to dense 0-based ids in sorted order.
struct LoadOptions {
  char delimiter = ' ';  // ' ' means "any run of blanks/tabs"
  int id_base = 0;       // 0- or 1-based ids in the file
  bool has_weight_column = false;
};

struct LoadedMultiplex {
  MultiplexAdjacency adjacency;
  std::vector<std::int64_t> node_ids;   // internal id -> original id
  std::vector<std::int64_t> layer_ids;  // internal layer -> original layer
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  if (delim == ' ') {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) out.push_back(line.substr(i, j - i));
      i = j;
    }
  } else {
    std::size_t start = 0;
    while (true) {
      std::size_t pos = line.find(delim, start);
      out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  }
  return out;
}

inline std::int64_t parse_id(std::string_view field, std::size_t line_no, const char* what) {
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || p != field.data() + field.size())
    throw InputError("edge list line " + std::to_string(line_no) + ": cannot parse " + what +
                     " '" + std::string(field) + "'");
  return v;
}

inline double parse_weight(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || p != field.data() + field.size())
    throw InputError("edge list line " + std::to_string(line_no) + ": cannot parse weight '" +
                     std::string(field) + "'");
  return v;
}

}  // namespace detail

// Reads, validates and remaps an edge list. Weights, when present, only gate
// edge existence: w > 0 keeps the edge (the layers are binary), w == 0 drops
// it, w < 0 is an error. Self-loops are dropped, duplicates merged, layers
// symmetrised.
inline LoadedMultiplex load_edge_list(const std::filesystem::path& path,
                                      const LoadOptions& opt = {}) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list: " + path.string());

  std::map<std::int64_t, std::vector<std::pair<std::int64_t, std::int64_t>>> by_layer;
  std::map<std::int64_t, NodeId> node_map;
  std::string line;
  std::size_t line_no = 0;
  std::size_t data_lines = 0;
  const std::size_t want = opt.has_weight_column ? 4 : 3;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view sv(line);
    std::size_t first = sv.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (sv[first] == '#') continue;
    auto fields = detail::split_fields(sv, opt.delimiter);
    if (fields.size() != want)
      throw InputError("edge list line " + std::to_string(line_no) + ": expected " +
                       std::to_string(want) + " columns, got " + std::to_string(fields.size()));
    ++data_lines;
    std::int64_t layer = detail::parse_id(fields[0], line_no, "layer id");
    std::int64_t u = detail::parse_id(fields[1], line_no, "node id");
    std::int64_t v = detail::parse_id(fields[2], line_no, "node id");
    // Ids stay as written in the file (the index maps report them verbatim);
    // the base only bounds them from below.
    if (layer < opt.id_base || u < opt.id_base || v < opt.id_base)
      throw InputError("edge list line " + std::to_string(line_no) +
                       ": id below the declared base");
    if (opt.has_weight_column) {
      double w = detail::parse_weight(fields[3], line_no);
      if (!(w >= 0.0))  // also rejects NaN
        throw InputError("edge list line " + std::to_string(line_no) + ": negative weight");
      if (w == 0.0) continue;  // explicit zero entry: no edge
    }
    node_map.emplace(u, 0);
    node_map.emplace(v, 0);
    by_layer[layer].emplace_back(u, v);
  }
  if (data_lines == 0) throw InputError("edge list is empty: " + path.string());

  LoadedMultiplex out;
  out.node_ids.reserve(node_map.size());
  NodeId next = 0;
  for (auto& [orig, internal] : node_map) {
    internal = next++;
    out.node_ids.push_back(orig);
  }
  out.layer_ids.reserve(by_layer.size());
  std::vector<std::vector<Edge>> layer_edges;
  layer_edges.reserve(by_layer.size());
  for (auto& [orig_layer, pairs] : by_layer) {
    out.layer_ids.push_back(orig_layer);
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (auto [u, v] : pairs)
      edges.emplace_back(node_map.at(u), node_map.at(v));
    layer_edges.push_back(std::move(edges));
  }
  out.adjacency = MultiplexAdjacency::from_edges(static_cast<NodeId>(node_map.size()),
                                                 layer_edges);
  return out;
}

// Writes each undirected edge once per layer, internal ids shifted by
// id_base. load(save(A)) reproduces the same adjacency.
inline void save_edge_list(const std::filesystem::path& path, const MultiplexAdjacency& a,
                           int id_base = 0) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write edge list: " + path.string());
  for (std::size_t k = 0; k < a.num_layers(); ++k)
    for (NodeId i = 0; i < a.num_nodes(); ++i)
      for (NodeId j : a.neighbors(k, i))
        if (j > i)
          out << (k + static_cast<std::size_t>(id_base)) << ' ' << (i + id_base) << ' '
              << (j + id_base) << '\n';
  if (!out) throw InputError("failed writing edge list: " + path.string());
}

// original,internal map for post-hoc joins against the source data.
inline void write_index_map_csv(const std::filesystem::path& path,
                                std::span<const std::int64_t> originals) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write index map: " + path.string());
  out << "original,internal\n";
  for (std::size_t i = 0; i < originals.size(); ++i) out << originals[i] << ',' << i << '\n';
  if (!out) throw InputError("failed writing index map: " + path.string());
}

}  // namespace mpcp
