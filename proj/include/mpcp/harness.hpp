#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "baselines.hpp"
#include "components.hpp"
#include "csv.hpp"
#include "edge_list_io.hpp"
#include "generators.hpp"
#include "multiplex.hpp"
#include "quality.hpp"
#include "solver.hpp"

namespace mpcp {

// Where the network comes from and how it is preprocessed. Exactly one of
// `path` / `generator` is set; preprocessing runs load -> LCC -> noise.
struct DatasetSpec {
  std::string path;
  LoadOptions load;

  std::string generator;  // "", "ideal-lshape", "sbm", "uniform"
  NodeId gen_n = 100;
  NodeId gen_core = 20;
  std::size_t gen_layers = 1;
  double p_cc = 0.9, p_cp = 0.5, p_pp = 0.05;
  std::uint64_t gen_edges = 300;
  bool sbm_permute = false;

  enum class Lcc { None, Aggregated, SingleLayer } lcc = Lcc::None;
  std::size_t lcc_layer = 0;
  double noise_level = -1.0;  // < 0 means: no noise layer appended
  std::uint64_t seed = 1;
};

struct BuiltDataset {
  MultiplexAdjacency adjacency;
  std::vector<std::int64_t> node_ids;   // internal -> original
  std::vector<std::int64_t> layer_ids;  // internal -> original (noise layer gets a fresh id)
};

inline BuiltDataset build_dataset(const DatasetSpec& spec) {
  if (spec.path.empty() == spec.generator.empty())
    throw InputError("dataset: exactly one of a file path or a generator must be given");

  BuiltDataset d;
  if (!spec.path.empty()) {
    auto loaded = load_edge_list(spec.path, spec.load);
    d.adjacency = std::move(loaded.adjacency);
    d.node_ids = std::move(loaded.node_ids);
    d.layer_ids = std::move(loaded.layer_ids);
  } else {
    if (spec.generator == "ideal-lshape") {
      d.adjacency = generate_ideal_lshape(spec.gen_n, spec.gen_core, spec.gen_layers);
    } else if (spec.generator == "sbm") {
      std::vector<NodeId> cores(spec.gen_layers, spec.gen_core);
      std::vector<SbmLayerProbs> probs(spec.gen_layers, {spec.p_cc, spec.p_cp, spec.p_pp});
      d.adjacency = generate_sbm_multiplex(spec.gen_n, cores, probs, spec.seed, spec.sbm_permute);
    } else if (spec.generator == "uniform") {
      d.adjacency =
          generate_uniform_multiplex(spec.gen_n, spec.gen_layers, spec.gen_edges, spec.seed);
    } else {
      throw InputError("dataset: unknown generator '" + spec.generator + "'");
    }
    d.node_ids.resize(d.adjacency.num_nodes());
    for (NodeId i = 0; i < d.adjacency.num_nodes(); ++i) d.node_ids[i] = i;
    d.layer_ids.resize(d.adjacency.num_layers());
    for (std::size_t k = 0; k < d.adjacency.num_layers(); ++k) d.layer_ids[k] = static_cast<std::int64_t>(k);
  }

  if (spec.lcc != DatasetSpec::Lcc::None) {
    auto mode = spec.lcc == DatasetSpec::Lcc::Aggregated ? LccMode::Aggregated
                                                         : LccMode::SingleLayer;
    auto res = largest_connected_component(d.adjacency, mode, spec.lcc_layer);
    std::vector<std::int64_t> remapped(res.kept.size());
    for (std::size_t i = 0; i < res.kept.size(); ++i) remapped[i] = d.node_ids[res.kept[i]];
    d.adjacency = std::move(res.adjacency);
    d.node_ids = std::move(remapped);
  }

  if (spec.noise_level >= 0.0) {
    d.adjacency = add_noise_layer(d.adjacency, spec.noise_level, spec.seed);
    std::int64_t next_id = d.layer_ids.empty() ? 0 : d.layer_ids.back() + 1;
    d.layer_ids.push_back(next_id);
  }
  return d;
}

enum class Method { MpNsm, NsmAggregate, MlDegree, EigA, EigQ, HIndex };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::MpNsm: return "mp-nsm";
    case Method::NsmAggregate: return "nsm-aggregate";
    case Method::MlDegree: return "ml-degree";
    case Method::EigA: return "eig-a";
    case Method::EigQ: return "eig-q";
    case Method::HIndex: return "h-index";
  }
  return "?";
}

enum class WeightMode { Optimised, Equal, FromFile };

inline const char* weight_mode_name(WeightMode w) {
  switch (w) {
    case WeightMode::Optimised: return "optimised";
    case WeightMode::Equal: return "equal";
    case WeightMode::FromFile: return "file";
  }
  return "?";
}

// Accepts either a bare list of numbers (one per line) or the
// layer_weights.csv this tool writes (header "layer,c,c_l1"; the c column).
inline LayerWeights read_layer_weights(const std::filesystem::path& path, std::size_t L) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open layer weights: " + path.string());
  LayerWeights c;
  std::string line;
  bool csv = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("layer,", 0) == 0) {
      csv = true;
      continue;
    }
    if (csv) {
      auto first = line.find(',');
      auto second = line.find(',', first + 1);
      if (first == std::string::npos) throw InputError("layer weights: malformed row: " + line);
      c.push_back(std::stod(line.substr(first + 1, second - first - 1)));
    } else {
      std::istringstream ss(line);
      double v;
      while (ss >> v) c.push_back(v);
    }
  }
  validate_layer_weights(c, L);
  return c;
}

struct RunConfig {
  DatasetSpec dataset;
  Method method = Method::MpNsm;
  SolverParams params;
  WeightMode weights = WeightMode::Optimised;
  std::string weights_file;
  bool binarise_aggregate = false;
  bool exclude_degenerate_layers = true;
  std::filesystem::path output_dir = ".";
};

struct RunOutputs {
  BuiltDataset data;
  std::vector<double> x;
  LayerWeights c_used;
  std::optional<SolverReport> solver_report;
  QuboSweepResult sweep;
  ProfileCurve profile;
  double method_seconds = 0.0;
  double weights_seconds = 0.0;
  std::vector<std::size_t> excluded_layers;
};

namespace detail {

class WallTimer {
 public:
  WallTimer() : t0_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace detail

inline RunOutputs run_experiment(const RunConfig& cfg) {
  RunOutputs out;
  out.data = build_dataset(cfg.dataset);
  const auto& a = out.data.adjacency;
  const std::size_t L = a.num_layers();

  // Layer weights feeding the baselines and the quality scoring.
  LayerWeights cw;
  switch (cfg.weights) {
    case WeightMode::Equal:
      cw.assign(L, 1.0);
      break;
    case WeightMode::FromFile:
      cw = read_layer_weights(cfg.weights_file, L);
      break;
    case WeightMode::Optimised:
      if (cfg.method != Method::MpNsm) {
        detail::WallTimer t;
        cw = solve(a, cfg.params).state.c;
        out.weights_seconds = t.seconds();
      }
      break;
  }

  switch (cfg.method) {
    case Method::MpNsm: {
      SolverParams p = cfg.params;
      if (cfg.weights == WeightMode::Equal) p.fixed_equal_layer_weights = true;
      if (cfg.weights == WeightMode::FromFile)
        throw InputError("mp-nsm optimises its own layer weights; a weights file applies only "
                         "to baselines");
      detail::WallTimer t;
      auto rep = solve(a, p);
      out.method_seconds = t.seconds();
      out.x = rep.state.x;
      out.c_used = rep.state.c;
      out.solver_report = std::move(rep);
      break;
    }
    case Method::NsmAggregate: {
      auto w = aggregate(a, cw);
      detail::WallTimer t;
      LayerView view = w.view();
      if (cfg.binarise_aggregate) view.vals = {};
      std::vector<LayerView> views{view};
      auto rep = solve(views, cfg.params);
      out.method_seconds = t.seconds();
      out.x = rep.state.x;
      out.c_used = cw;
      out.solver_report = std::move(rep);
      break;
    }
    case Method::MlDegree:
    case Method::EigA:
    case Method::EigQ:
    case Method::HIndex: {
      detail::WallTimer t;
      BaselineResult r =
          cfg.method == Method::MlDegree ? ml_degree(a, cw)
          : cfg.method == Method::EigA   ? eig_a(a, cw)
          : cfg.method == Method::EigQ
              ? eig_q(a, cw, QuboOptions{cfg.exclude_degenerate_layers, &out.excluded_layers})
              : h_index(a, cw);
      out.method_seconds = t.seconds();
      out.x = std::move(r.x);
      out.c_used = cw;
      break;
    }
  }

  out.excluded_layers.clear();
  QuboOptions opt{cfg.exclude_degenerate_layers, &out.excluded_layers};
  out.sweep = qubo_sweep(a, out.c_used, out.x, opt);
  out.profile = persistence_profile(a, out.x);
  return out;
}

inline void write_run_outputs(const RunConfig& cfg, const RunOutputs& out) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  const auto& a = out.data.adjacency;

  {
    auto f = open_output(cfg.output_dir / "coreness.csv");
    f << "node,coreness,rank\n";
    std::vector<std::uint32_t> rank(a.num_nodes());
    for (std::size_t r = 0; r < out.sweep.ordering.size(); ++r)
      rank[out.sweep.ordering[r]] = static_cast<std::uint32_t>(r + 1);
    for (NodeId i = 0; i < a.num_nodes(); ++i)
      f << out.data.node_ids[i] << ',' << format_double(out.x[i]) << ',' << rank[i] << '\n';
  }
  {
    auto f = open_output(cfg.output_dir / "layer_weights.csv");
    f << "layer,c,c_l1\n";
    double l1 = 0.0;
    for (double v : out.c_used) l1 += std::abs(v);
    for (std::size_t k = 0; k < out.c_used.size(); ++k)
      f << out.data.layer_ids[k] << ',' << format_double(out.c_used[k]) << ','
        << format_double(out.c_used[k] / l1) << '\n';
  }
  write_sweep_csv(cfg.output_dir / "sweep.csv", out.sweep);
  write_profile_csv(cfg.output_dir / "profile.csv", out.profile);
  write_index_map_csv(cfg.output_dir / "index_map.csv", out.data.node_ids);

  auto rep = open_output(cfg.output_dir / "report.txt");
  rep << "method: " << method_name(cfg.method) << '\n';
  rep << "nodes: " << a.num_nodes() << '\n';
  rep << "layers: " << a.num_layers() << '\n';
  rep << "ordered-nonzeros: " << a.total_nnz() << '\n';
  rep << "alpha: " << format_double(cfg.params.alpha) << " p: " << format_double(cfg.params.p)
      << " q: " << format_double(cfg.params.q) << " tol: " << format_double(cfg.params.tol)
      << " max-iter: " << cfg.params.max_iter << '\n';
  auto con = contraction_report(cfg.params);
  rep << "contraction-rho: " << format_double(con.rho) << '\n';
  rep << "regime: "
      << (con.regime == ConvergenceRegime::GlobalContraction ? "global-contraction"
                                                             : "local-ascent-only")
      << '\n';
  rep << "method-seconds: " << format_double(out.method_seconds) << '\n';
  if (out.weights_seconds > 0.0)
    rep << "weights-seconds: " << format_double(out.weights_seconds) << '\n';
  if (out.solver_report) {
    const auto& s = *out.solver_report;
    rep << "iterations: " << s.iterations << (s.converged ? " (converged)" : " (max-iter)")
        << '\n';
    rep << "objective: " << format_double(s.objective) << '\n';
    rep << "quotient-trace:";
    for (double g : s.g_trace) rep << ' ' << format_double(g);
    rep << '\n';
    rep << "step-norms-x:";
    for (double v : s.step_norm_x) rep << ' ' << format_double(v);
    rep << '\n';
    rep << "step-norms-c:";
    for (double v : s.step_norm_c) rep << ' ' << format_double(v);
    rep << '\n';
  }
  rep << "layer-weights:";
  for (double v : out.c_used) rep << ' ' << format_double(v);
  rep << '\n';
  rep << "qubo-max: " << format_double(out.sweep.max_score) << " at s-star: " << out.sweep.s_star
      << '\n';
  if (!out.excluded_layers.empty()) {
    rep << "excluded-layers:";
    for (auto k : out.excluded_layers) rep << ' ' << k;
    rep << '\n';
  }
}

struct TableConfig {
  DatasetSpec dataset;
  std::vector<std::pair<std::string, SolverParams>> presets;
  std::vector<Method> methods;  // baselines to evaluate (MpNsm rows always present)
  bool exclude_degenerate_layers = true;
  std::filesystem::path output_file = "table.csv";
};

// One row per (preset, method, weight mode): the solver once per preset, then
// every baseline under the optimised weights of that preset and under equal
// weights. Scores come from the same sweep used everywhere else.
inline void run_table(const TableConfig& cfg) {
  auto data = build_dataset(cfg.dataset);
  const auto& a = data.adjacency;
  if (auto dir = cfg.output_file.parent_path(); !dir.empty())
    std::filesystem::create_directories(dir);
  auto out = open_output(cfg.output_file);
  out << "preset,method,weights,qubo,s_star,iterations,seconds\n";

  auto score = [&](std::span<const double> x, const LayerWeights& c) {
    QuboOptions opt{cfg.exclude_degenerate_layers, nullptr};
    return qubo_sweep(a, c, x, opt);
  };

  for (const auto& [label, params] : cfg.presets) {
    detail::WallTimer t_solver;
    auto rep = solve(a, params);
    double solver_secs = t_solver.seconds();
    auto sw = score(rep.state.x, rep.state.c);
    out << label << ",mp-nsm,optimised," << format_double(sw.max_score) << ',' << sw.s_star
        << ',' << rep.iterations << ',' << format_double(solver_secs) << '\n';

    for (Method m : cfg.methods) {
      if (m == Method::MpNsm) continue;
      for (WeightMode wm : {WeightMode::Optimised, WeightMode::Equal}) {
        LayerWeights cw = wm == WeightMode::Optimised ? rep.state.c
                                                      : LayerWeights(a.num_layers(), 1.0);
        detail::WallTimer t;
        std::vector<double> x;
        std::size_t iters = 0;
        switch (m) {
          case Method::NsmAggregate: {
            auto w = aggregate(a, cw);
            std::vector<LayerView> views{w.view()};
            auto r = solve(views, params);
            x = std::move(r.state.x);
            iters = r.iterations;
            break;
          }
          case Method::MlDegree: x = ml_degree(a, cw).x; break;
          case Method::EigA: x = eig_a(a, cw).x; break;
          case Method::EigQ:
            x = eig_q(a, cw, QuboOptions{cfg.exclude_degenerate_layers, nullptr}).x;
            break;
          case Method::HIndex: x = h_index(a, cw).x; break;
          case Method::MpNsm: break;
        }
        double secs = t.seconds();
        auto s2 = score(x, cw);
        out << label << ',' << method_name(m) << ',' << weight_mode_name(wm) << ','
            << format_double(s2.max_score) << ',' << s2.s_star << ',';
        if (iters > 0) out << iters;
        out << ',' << format_double(secs) << '\n';
      }
    }
  }
}

struct SpyConfig {
  DatasetSpec dataset;
  std::filesystem::path coreness_csv;              // node,coreness[,rank]
  std::optional<std::filesystem::path> weights_csv;
  std::size_t layer = 0;
  bool exclude_degenerate_layers = true;
  std::filesystem::path output_dir = ".";
};

// Reorders one layer by descending coreness: permutation.csv carries the
// rank -> node map, spy.csv the reordered nonzero coordinates (header
// comment holds s*), ready for a scatter plot.
inline void run_spy(const SpyConfig& cfg) {
  auto data = build_dataset(cfg.dataset);
  const auto& a = data.adjacency;
  if (cfg.layer >= a.num_layers()) throw InputError("spy: layer index out of range");

  std::ifstream in(cfg.coreness_csv);
  if (!in) throw InputError("cannot open coreness file: " + cfg.coreness_csv.string());
  std::vector<double> x(a.num_nodes(), -1.0);
  std::map<std::int64_t, NodeId> orig_to_internal;
  for (NodeId i = 0; i < a.num_nodes(); ++i) orig_to_internal[data.node_ids[i]] = i;
  std::string line;
  std::size_t found = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || line.rfind("node,", 0) == 0) continue;
    auto first = line.find(',');
    if (first == std::string::npos) throw InputError("spy: malformed coreness row: " + line);
    auto second = line.find(',', first + 1);
    std::int64_t node = std::stoll(line.substr(0, first));
    double v = std::stod(line.substr(first + 1, second - first - 1));
    auto it = orig_to_internal.find(node);
    if (it == orig_to_internal.end())
      throw InputError("spy: coreness file mentions unknown node " + std::to_string(node));
    x[it->second] = v;
    ++found;
  }
  if (found != a.num_nodes())
    throw InputError("spy: coreness file covers " + std::to_string(found) + " of " +
                     std::to_string(a.num_nodes()) + " nodes");

  LayerWeights cw = cfg.weights_csv ? read_layer_weights(*cfg.weights_csv, a.num_layers())
                                    : LayerWeights(a.num_layers(), 1.0);
  QuboOptions opt{cfg.exclude_degenerate_layers, nullptr};
  auto sw = qubo_sweep(a, cw, x, opt);

  std::filesystem::create_directories(cfg.output_dir);
  {
    auto f = open_output(cfg.output_dir / "permutation.csv");
    f << "rank,node\n";
    for (std::size_t r = 0; r < sw.ordering.size(); ++r)
      f << (r + 1) << ',' << data.node_ids[sw.ordering[r]] << '\n';
  }
  {
    std::vector<std::uint32_t> pos(a.num_nodes());
    for (std::size_t r = 0; r < sw.ordering.size(); ++r)
      pos[sw.ordering[r]] = static_cast<std::uint32_t>(r + 1);
    auto f = open_output(cfg.output_dir / "spy.csv");
    f << "# s_star " << sw.s_star << '\n';
    f << "row,col\n";
    for (NodeId i = 0; i < a.num_nodes(); ++i)
      for (NodeId j : a.neighbors(cfg.layer, i)) f << pos[i] << ',' << pos[j] << '\n';
  }
}

}  // namespace mpcp
