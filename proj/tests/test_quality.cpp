#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include <mpcp/generators.hpp>
#include <mpcp/quality.hpp>

#include "helpers.hpp"

using namespace mpcp;

namespace {

std::vector<std::uint8_t> bits_of(std::uint32_t mask, NodeId n) {
  std::vector<std::uint8_t> y(n, 0);
  for (NodeId i = 0; i < n; ++i) y[i] = (mask >> i) & 1u;
  return y;
}

}  // namespace

TEST_CASE("partition value agrees with all dense routes, exhaustively", "[quality]") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    const NodeId n = 9;
    auto a = testutil::random_multiplex(n, 2, 0.3, seed * 13);
    LayerWeights c{0.7, 1.8};
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      auto y = bits_of(mask, n);
      auto part = BinaryPartition::from_flags(y);
      double fast = qubo_value(a, c, part);
      REQUIRE(fast == Catch::Approx(testutil::dense_q_form(a, c, y)).margin(1e-12));
      REQUIRE(fast == Catch::Approx(testutil::dense_elementwise(a, c, y)).margin(1e-12));
      REQUIRE(fast ==
              Catch::Approx(testutil::dense_agreement_minus_const(a, c, y)).margin(1e-12));
      REQUIRE(fast >= -1.0);
      REQUIRE(fast <= 1.0);
    }
  }
}

TEST_CASE("all-ones partition scores exactly zero", "[quality]") {
  auto a = testutil::random_multiplex(11, 3, 0.25, 5);
  LayerWeights c{1.0, 2.0, 0.5};
  auto part = BinaryPartition::from_flags(std::vector<std::uint8_t>(11, 1));
  REQUIRE(qubo_value(a, c, part) == 0.0);
}

TEST_CASE("planted ideal L-shape scores exactly one", "[quality]") {
  for (std::size_t L : {1ul, 2ul, 3ul}) {
    auto a = generate_ideal_lshape(14, 5, L);
    LayerWeights c(L, 1.0);
    std::vector<std::uint8_t> y(14, 0);
    for (NodeId i = 0; i < 5; ++i) y[i] = 1;
    REQUIRE(qubo_value(a, c, BinaryPartition::from_flags(y)) == 1.0);
  }
  // also with unequal positive weights
  auto a = generate_ideal_lshape(10, 3, 2);
  std::vector<std::uint8_t> y(10, 0);
  for (NodeId i = 0; i < 3; ++i) y[i] = 1;
  REQUIRE(qubo_value(a, {0.3, 1.7}, BinaryPartition::from_flags(y)) == 1.0);
}

TEST_CASE("degenerate layers error without the flag and are skipped with it", "[quality]") {
  auto a = MultiplexAdjacency::from_edges(4, {{{0, 1}, {1, 2}}, {}});
  LayerWeights c{1.0, 1.0};
  auto part = BinaryPartition::from_core_set(4, std::vector<NodeId>{1});
  REQUIRE_THROWS_AS(qubo_value(a, c, part), InputError);

  QuboOptions opt;
  opt.exclude_degenerate_layers = true;
  std::vector<std::size_t> excluded;
  opt.excluded_out = &excluded;
  double v = qubo_value(a, c, part, opt);
  REQUIRE(excluded == std::vector<std::size_t>{1});

  // skipped layer also leaves the weight normalisation
  auto single = MultiplexAdjacency::from_edges(4, {{{0, 1}, {1, 2}}});
  REQUIRE(v == Catch::Approx(qubo_value(single, {1.0}, part)).margin(1e-15));

  // complete layer is degenerate too
  auto full = generate_ideal_lshape(4, 4);
  REQUIRE_THROWS_AS(qubo_value(full, {1.0}, part), InputError);
}

TEST_CASE("identical layers collapse to the single-layer score", "[quality]") {
  auto base = testutil::random_multiplex(10, 1, 0.3, 9);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < 10; ++i)
    for (NodeId j : base.neighbors(0, i))
      if (j > i) edges.emplace_back(i, j);
  auto twin = MultiplexAdjacency::from_edges(10, {edges, edges});
  auto part = BinaryPartition::from_core_set(10, std::vector<NodeId>{0, 3, 7});
  double single = qubo_value(base, {1.0}, part);
  REQUIRE(qubo_value(twin, {0.4, 2.0}, part) == Catch::Approx(single).margin(1e-14));
}

TEST_CASE("partition value is invariant under joint relabeling", "[quality]") {
  auto a = testutil::random_multiplex(12, 2, 0.3, 44);
  LayerWeights c{1.0, 0.6};
  std::vector<NodeId> perm(12);
  for (NodeId i = 0; i < 12; ++i) perm[i] = i;
  SplitMix64 rng(5);
  for (NodeId i = 11; i > 0; --i) std::swap(perm[i], perm[rng.next_below(i + 1)]);
  std::vector<std::vector<Edge>> layers(2);
  for (std::size_t k = 0; k < 2; ++k)
    for (NodeId i = 0; i < 12; ++i)
      for (NodeId j : a.neighbors(k, i))
        if (j > i) layers[k].emplace_back(perm[i], perm[j]);
  auto b = MultiplexAdjacency::from_edges(12, layers);

  std::vector<std::uint8_t> y(12, 0), y_perm(12, 0);
  for (NodeId i : {0u, 2u, 5u, 9u}) y[i] = 1;
  for (NodeId i = 0; i < 12; ++i) y_perm[perm[i]] = y[i];
  REQUIRE(qubo_value(a, c, BinaryPartition::from_flags(y)) ==
          Catch::Approx(qubo_value(b, c, BinaryPartition::from_flags(y_perm))).margin(1e-14));
}

TEST_CASE("sweep matches the naive per-prefix evaluation", "[quality]") {
  for (std::uint64_t seed : {10ull, 20ull, 30ull}) {
    auto a = testutil::random_multiplex(15, 2, 0.25, seed);
    LayerWeights c{1.2, 0.8};
    auto x = testutil::random_positive_vector(15, seed + 5);
    QuboOptions opt;
    opt.exclude_degenerate_layers = true;
    auto sweep = qubo_sweep(a, c, x, opt);
    auto naive = testutil::naive_sweep_scores(a, c, x);
    for (NodeId s = 1; s <= 15; ++s)
      REQUIRE(sweep.scores[s - 1] == Catch::Approx(naive[s - 1]).margin(1e-10));
    // final prefix is the whole graph: exactly zero
    REQUIRE(sweep.scores[14] == 0.0);
    REQUIRE(sweep.max_score >= 0.0);
  }
}

TEST_CASE("sweep recovers a planted core exactly", "[quality]") {
  auto a = generate_ideal_lshape(12, 5, 2);
  LayerWeights c{1.0, 1.0};
  // coreness consistent with the planting
  std::vector<double> x(12);
  for (NodeId i = 0; i < 12; ++i) x[i] = i < 5 ? 10.0 - i : 1.0 / (i + 1);
  auto sweep = qubo_sweep(a, c, x);
  REQUIRE(sweep.s_star == 5);
  REQUIRE(sweep.max_score == 1.0);
}

TEST_CASE("sweep orders by coreness descending with index tie-break", "[quality]") {
  auto a = testutil::random_multiplex(8, 1, 0.4, 2);
  std::vector<double> x{0.5, 0.9, 0.5, 0.1, 0.9, 0.5, 0.2, 0.9};
  auto sweep = qubo_sweep(a, {1.0}, x);
  REQUIRE(sweep.ordering == std::vector<NodeId>{1, 4, 7, 0, 2, 5, 6, 3});
}

TEST_CASE("sweep takes the smallest optimal core size on ties", "[quality]") {
  // two disconnected edges: scores repeat, the first maximum wins
  auto a = MultiplexAdjacency::from_edges(4, {{{0, 1}, {2, 3}}});
  std::vector<double> x{4.0, 3.0, 2.0, 1.0};
  auto sweep = qubo_sweep(a, {1.0}, x);
  // scores are [0, -0.5, 0, 0]: the maximum is tied and the earliest prefix wins
  REQUIRE(sweep.s_star == 1);
  REQUIRE(sweep.max_score == 0.0);
  bool tie_later = false;
  for (NodeId s = sweep.s_star + 1; s <= 4; ++s)
    tie_later |= sweep.scores[s - 1] == sweep.max_score;
  REQUIRE(tie_later);
}

TEST_CASE("persistence profile on the triangle-plus-pendant", "[quality]") {
  // triangle 0-1-2, pendant 3 hanging off 2
  auto a = MultiplexAdjacency::from_edges(4, {{{0, 1}, {1, 2}, {0, 2}, {2, 3}}});
  // coreness puts the pendant last
  std::vector<double> x{3.0, 2.5, 2.0, 0.5};
  auto prof = persistence_profile(a, x);
  REQUIRE(prof.ordering[0] == 3);
  // S = {pendant}: no internal edge, degree sum 1
  REQUIRE(prof.values[0][0] == 0.0);
  // S = {pendant, node 2}: one edge inside (2 ordered), degrees 1 + 3
  REQUIRE(prof.values[0][1] == Catch::Approx(0.5).epsilon(1e-15));
  // full set: exactly 1
  REQUIRE(prof.values[0][3] == 1.0);
}

TEST_CASE("profile is zero while the set has no incident edges", "[quality]") {
  // node 3 isolated; it sorts first under ascending coreness
  auto a = MultiplexAdjacency::from_edges(4, {{{0, 1}, {1, 2}}});
  std::vector<double> x{3.0, 2.0, 1.0, 0.1};
  auto prof = persistence_profile(a, x);
  REQUIRE(prof.ordering[0] == 3);
  REQUIRE(prof.values[0][0] == 0.0);
  REQUIRE(prof.values[0][3] == 1.0);
}

TEST_CASE("profile matches a naive recomputation", "[quality]") {
  auto a = testutil::random_multiplex(13, 2, 0.3, 123);
  auto x = testutil::random_positive_vector(13, 9);
  auto prof = persistence_profile(a, x);
  auto order = ranking_asc(x);
  for (std::size_t k = 0; k < 2; ++k) {
    std::vector<std::uint8_t> in(13, 0);
    for (NodeId m = 1; m <= 13; ++m) {
      in[order[m - 1]] = 1;
      std::uint64_t inside = 0, degsum = 0;
      for (NodeId i = 0; i < 13; ++i) {
        if (!in[i]) continue;
        degsum += a.degree(k, i);
        for (NodeId j : a.neighbors(k, i)) inside += in[j];
      }
      double want = degsum == 0 ? 0.0 : double(inside) / double(degsum);
      REQUIRE(prof.values[k][m - 1] == Catch::Approx(want).margin(1e-12));
    }
  }
}

TEST_CASE("csv writers emit the documented shapes", "[quality]") {
  testutil::TempDir tmp("quality_csv");
  auto a = MultiplexAdjacency::from_edges(3, {{{0, 1}, {1, 2}}});
  std::vector<double> x{3.0, 2.0, 1.0};
  auto sweep = qubo_sweep(a, {1.0}, x);
  auto prof = persistence_profile(a, x);
  write_sweep_csv(tmp.path / "sweep.csv", sweep);
  write_profile_csv(tmp.path / "profile.csv", prof);

  std::ifstream s(tmp.path / "sweep.csv");
  std::string line;
  std::getline(s, line);
  REQUIRE(line == "s,score");
  int rows = 0;
  while (std::getline(s, line)) ++rows;
  REQUIRE(rows == 3);

  std::ifstream p(tmp.path / "profile.csv");
  std::getline(p, line);
  REQUIRE(line == "m,layer,P");
  rows = 0;
  while (std::getline(p, line)) ++rows;
  REQUIRE(rows == 3);
}

TEST_CASE("partition helpers validate", "[quality]") {
  REQUIRE_THROWS_AS(BinaryPartition::from_flags({0, 2}), InputError);
  REQUIRE_THROWS_AS(BinaryPartition::from_core_set(3, std::vector<NodeId>{5}), InputError);
  auto p = BinaryPartition::from_core_set(4, std::vector<NodeId>{1, 3});
  REQUIRE(p.core_size == 2);
  auto a = testutil::random_multiplex(6, 1, 0.4, 3);
  REQUIRE_THROWS_AS(qubo_value(a, {1.0}, BinaryPartition::from_flags({1, 0})), InputError);
}
