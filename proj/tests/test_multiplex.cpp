#include <catch2/catch_amalgamated.hpp>

#include <mpcp/components.hpp>
#include <mpcp/multiplex.hpp>

#include "helpers.hpp"

using namespace mpcp;

TEST_CASE("from_edges normalises input", "[multiplex]") {
  // duplicates, reversed copies and self-loops all collapse away
  std::vector<std::vector<Edge>> layers{{{0, 1}, {1, 0}, {0, 1}, {2, 2}, {1, 2}}};
  auto a = MultiplexAdjacency::from_edges(3, layers);
  REQUIRE(a.num_nodes() == 3);
  REQUIRE(a.num_layers() == 1);
  REQUIRE(a.n1(0) == 4);
  REQUIRE(a.n2(0) == 9 - 4);
  REQUIRE(a.degree(0, 0) == 1);
  REQUIRE(a.degree(0, 1) == 2);
  REQUIRE(a.degree(0, 2) == 1);
  REQUIRE(a.has_edge(0, 0, 1));
  REQUIRE(a.has_edge(0, 1, 0));
  REQUIRE_FALSE(a.has_edge(0, 0, 2));
}

TEST_CASE("from_edges validates ids", "[multiplex]") {
  REQUIRE_THROWS_AS(MultiplexAdjacency::from_edges(2, {{{0, 5}}}), InputError);
  REQUIRE_THROWS_AS(MultiplexAdjacency::from_edges(0, {}), InputError);
}

TEST_CASE("edge stats sum to n squared", "[multiplex]") {
  auto a = testutil::random_multiplex(17, 3, 0.2, 99);
  for (std::size_t k = 0; k < a.num_layers(); ++k) {
    REQUIRE(a.n1(k) + a.n2(k) == 17ull * 17ull);
    std::uint64_t degsum = 0;
    for (NodeId i = 0; i < a.num_nodes(); ++i) degsum += a.degree(k, i);
    REQUIRE(degsum == a.n1(k));
  }
}

TEST_CASE("neighbor rows are sorted and symmetric", "[multiplex]") {
  auto a = testutil::random_multiplex(23, 2, 0.3, 1234);
  for (std::size_t k = 0; k < a.num_layers(); ++k)
    for (NodeId i = 0; i < a.num_nodes(); ++i) {
      auto nb = a.neighbors(k, i);
      for (std::size_t t = 0; t + 1 < nb.size(); ++t) REQUIRE(nb[t] < nb[t + 1]);
      for (NodeId j : nb) REQUIRE(a.has_edge(k, j, i));
    }
}

TEST_CASE("layer weights validation", "[multiplex]") {
  auto a = testutil::random_multiplex(6, 2, 0.5, 5);
  REQUIRE_THROWS_AS(validate_layer_weights({1.0}, a.num_layers()), InputError);
  REQUIRE_THROWS_AS(validate_layer_weights({1.0, -0.5}, a.num_layers()), InputError);
  REQUIRE_THROWS_AS(validate_layer_weights({0.0, 0.0}, a.num_layers()), InputError);
  const double nan = std::nan("");
  REQUIRE_THROWS_AS(validate_layer_weights({1.0, nan}, a.num_layers()), InputError);
  REQUIRE_NOTHROW(validate_layer_weights({0.0, 2.0}, a.num_layers()));
}

TEST_CASE("aggregate with a unit weight vector returns the layer", "[multiplex]") {
  auto a = testutil::random_multiplex(12, 3, 0.25, 42);
  auto w = aggregate(a, {0.0, 1.0, 0.0});
  REQUIRE(w.nnz() == a.n1(1));
  for (NodeId i = 0; i < a.num_nodes(); ++i) {
    auto nb_w = w.neighbors(i);
    auto nb_a = a.neighbors(1, i);
    REQUIRE(nb_w.size() == nb_a.size());
    for (std::size_t t = 0; t < nb_w.size(); ++t) {
      REQUIRE(nb_w[t] == nb_a[t]);
      REQUIRE(w.weights(i)[t] == 1.0);
    }
  }
}

TEST_CASE("aggregate of identical layers scales like the weight sum", "[multiplex]") {
  std::vector<Edge> tri{{0, 1}, {1, 2}, {0, 2}};
  auto a = MultiplexAdjacency::from_edges(3, {tri, tri});
  auto w = aggregate(a, {0.5, 0.5});
  REQUIRE(w.nnz() == 6);
  for (NodeId i = 0; i < 3; ++i)
    for (double v : w.weights(i)) REQUIRE(v == 1.0);
}

TEST_CASE("aggregate merges disjoint layers", "[multiplex]") {
  auto a = MultiplexAdjacency::from_edges(3, {{{0, 1}}, {{1, 2}}});
  auto w = aggregate(a, {2.0, 3.0});
  REQUIRE(w.neighbors(1).size() == 2);
  REQUIRE(w.weights(1)[0] == 2.0);  // towards node 0
  REQUIRE(w.weights(1)[1] == 3.0);  // towards node 2
}

TEST_CASE("aggregate is linear in the weights", "[multiplex]") {
  auto a = testutil::random_multiplex(15, 3, 0.3, 77);
  LayerWeights c1{0.3, 1.2, 0.0}, c2{0.7, 0.1, 2.0};
  LayerWeights csum{1.0, 1.3, 2.0};
  auto w1 = aggregate(a, c1), w2 = aggregate(a, c2), ws = aggregate(a, csum);
  // compare as dense maps
  for (NodeId i = 0; i < a.num_nodes(); ++i) {
    std::vector<double> dense1(15, 0.0), dense2(15, 0.0), denseS(15, 0.0);
    auto fill = [&](const WeightedGraph& g, std::vector<double>& d) {
      auto nb = g.neighbors(i);
      auto wt = g.weights(i);
      for (std::size_t t = 0; t < nb.size(); ++t) d[nb[t]] = wt[t];
    };
    fill(w1, dense1);
    fill(w2, dense2);
    fill(ws, denseS);
    for (NodeId j = 0; j < 15; ++j)
      REQUIRE(denseS[j] == Catch::Approx(dense1[j] + dense2[j]).margin(1e-14));
  }
}

TEST_CASE("ml degree equals aggregate row sums", "[multiplex]") {
  auto a = testutil::random_multiplex(20, 3, 0.2, 11);
  LayerWeights c{0.5, 1.5, 0.25};
  auto w = aggregate(a, c);
  for (NodeId i = 0; i < a.num_nodes(); ++i) {
    double row = 0.0;
    for (double v : w.weights(i)) row += v;
    double expect = 0.0;
    for (std::size_t k = 0; k < 3; ++k) expect += c[k] * a.degree(k, i);
    REQUIRE(row == Catch::Approx(expect).margin(1e-12));
  }
}

TEST_CASE("lcc picks the larger component", "[components]") {
  // triangle {0,1,2} and path {3,4} in one layer
  auto a = MultiplexAdjacency::from_edges(5, {{{0, 1}, {1, 2}, {0, 2}, {3, 4}}});
  auto res = largest_connected_component(a, LccMode::Aggregated);
  REQUIRE(res.kept == std::vector<NodeId>{0, 1, 2});
  REQUIRE(res.adjacency.num_nodes() == 3);
  REQUIRE(res.adjacency.n1(0) == 6);
}

TEST_CASE("lcc tie-break goes to the smallest node id", "[components]") {
  // two triangles of equal size; the one containing node 0 wins
  auto a = MultiplexAdjacency::from_edges(
      6, {{{3, 4}, {4, 5}, {3, 5}, {0, 1}, {1, 2}, {0, 2}}});
  auto res = largest_connected_component(a, LccMode::Aggregated);
  REQUIRE(res.kept == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("lcc aggregated unions layers", "[components]") {
  // connectivity only exists across layers: 0-1 in layer 0, 1-2 in layer 1
  auto a = MultiplexAdjacency::from_edges(4, {{{0, 1}}, {{1, 2}}});
  auto res = largest_connected_component(a, LccMode::Aggregated);
  REQUIRE(res.kept == std::vector<NodeId>{0, 1, 2});
  REQUIRE(res.adjacency.num_layers() == 2);
}

TEST_CASE("lcc single-layer mode restricts other layers to the component", "[components]") {
  // layer 0: path 0-1-2, plus 3-4 off to the side; layer 1 has an edge 3-4
  // and an edge 1-2 -- only the latter survives a layer-0 LCC
  auto a = MultiplexAdjacency::from_edges(5, {{{0, 1}, {1, 2}, {3, 4}}, {{3, 4}, {1, 2}}});
  auto res = largest_connected_component(a, LccMode::SingleLayer, 0);
  REQUIRE(res.kept == std::vector<NodeId>{0, 1, 2});
  REQUIRE(res.adjacency.n1(0) == 4);
  REQUIRE(res.adjacency.n1(1) == 2);
  REQUIRE(res.adjacency.has_edge(1, 1, 2));
}

TEST_CASE("lcc of an edgeless graph is a singleton", "[components]") {
  auto a = MultiplexAdjacency::from_edges(4, {{}});
  auto res = largest_connected_component(a, LccMode::Aggregated);
  REQUIRE(res.kept == std::vector<NodeId>{0});
  REQUIRE(res.adjacency.num_nodes() == 1);
  REQUIRE(res.adjacency.n1(0) == 0);
}

TEST_CASE("lcc rejects a bad layer index", "[components]") {
  auto a = MultiplexAdjacency::from_edges(3, {{{0, 1}}});
  REQUIRE_THROWS_AS(largest_connected_component(a, LccMode::SingleLayer, 3), InputError);
}
