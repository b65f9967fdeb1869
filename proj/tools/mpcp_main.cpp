// Command-line front end: `mpcp run` fits one method on one network and
// dumps coreness/sweep/profile CSVs plus a text report, `mpcp table`
// compares methods across weight choices, `mpcp spy` reorders a layer by a
// previously computed coreness for plotting.
//
// Exit codes: 0 ok, 1 bad input or configuration, 2 numerical failure.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <mpcp/mpcp.hpp>

namespace {

struct DatasetFlags {
  std::string dataset;
  std::string gen;
  std::uint32_t n = 100;
  std::uint32_t core = 20;
  std::size_t layers = 1;
  double p_cc = 0.9, p_cp = 0.5, p_pp = 0.05;
  std::uint64_t edges = 300;
  bool sbm_permute = false;
  double noise = -1.0;
  std::uint64_t seed = 1;
  int id_base = 0;
  bool weighted_input = false;
  std::string delimiter = " ";
  std::string lcc = "none";
  std::size_t lcc_layer = 0;
};

void add_dataset_flags(CLI::App* cmd, DatasetFlags& f) {
  auto* ds = cmd->add_option("--dataset", f.dataset, "Edge list file (layer u v [w] per line)");
  auto* gen = cmd->add_option("--gen", f.gen, "Generator: ideal-lshape, sbm or uniform")
                  ->check(CLI::IsMember({"ideal-lshape", "sbm", "uniform"}));
  ds->excludes(gen);
  cmd->add_option("--n", f.n, "Generated node count");
  cmd->add_option("--core", f.core, "Planted core size");
  cmd->add_option("--layers", f.layers, "Generated layer count");
  cmd->add_option("--p-cc", f.p_cc, "SBM core-core probability");
  cmd->add_option("--p-cp", f.p_cp, "SBM core-periphery probability");
  cmd->add_option("--p-pp", f.p_pp, "SBM periphery-periphery probability");
  cmd->add_option("--edges", f.edges, "Edges per layer for the uniform generator");
  cmd->add_flag("--sbm-permute", f.sbm_permute, "Plant an independent random core per layer");
  cmd->add_option("--noise", f.noise,
                  "Append a noise layer with round(level * m) random edges (level >= 0)");
  cmd->add_option("--seed", f.seed, "Master seed; sub-streams are derived per use");
  cmd->add_option("--id-base", f.id_base, "Node/layer ids in the file are 0- or 1-based")
      ->check(CLI::IsMember({0, 1}));
  cmd->add_flag("--weighted", f.weighted_input, "Edge list has a fourth weight column");
  cmd->add_option("--delimiter", f.delimiter, "Field delimiter (default: any blanks)");
  cmd->add_option("--lcc", f.lcc, "Restrict to the largest connected component")
      ->check(CLI::IsMember({"none", "aggregated", "layer"}));
  cmd->add_option("--lcc-layer", f.lcc_layer, "Layer defining connectivity for --lcc layer");
}

mpcp::DatasetSpec to_spec(const DatasetFlags& f) {
  mpcp::DatasetSpec s;
  s.path = f.dataset;
  s.generator = f.gen;
  s.gen_n = f.n;
  s.gen_core = f.core;
  s.gen_layers = f.layers;
  s.p_cc = f.p_cc;
  s.p_cp = f.p_cp;
  s.p_pp = f.p_pp;
  s.gen_edges = f.edges;
  s.sbm_permute = f.sbm_permute;
  s.noise_level = f.noise;
  s.seed = f.seed;
  s.load.id_base = f.id_base;
  s.load.has_weight_column = f.weighted_input;
  if (f.delimiter.size() != 1)
    throw mpcp::InputError("--delimiter expects a single character");
  s.load.delimiter = f.delimiter[0];
  s.lcc = f.lcc == "none"         ? mpcp::DatasetSpec::Lcc::None
          : f.lcc == "aggregated" ? mpcp::DatasetSpec::Lcc::Aggregated
                                  : mpcp::DatasetSpec::Lcc::SingleLayer;
  s.lcc_layer = f.lcc_layer;
  return s;
}

struct SolverFlags {
  std::string preset;
  double alpha = 10.0, p = 2.0, q = 2.0, tol = 1e-8;
  std::size_t max_iter = 1000;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--preset", f.preset, "Parameter preset: global, local or equal-weights")
      ->check(CLI::IsMember({"global", "local", "equal-weights"}));
  cmd->add_option("--alpha", f.alpha, "Smoothed-max exponent (> 1)");
  cmd->add_option("--p", f.p, "Node-norm exponent (> 1)");
  cmd->add_option("--q", f.q, "Layer-norm exponent (> 1)");
  cmd->add_option("--tol", f.tol, "Infinity-norm stopping tolerance");
  cmd->add_option("--max-iter", f.max_iter, "Iteration cap");
}

mpcp::SolverParams to_params(const CLI::App* cmd, const SolverFlags& f) {
  mpcp::SolverParams p;
  if (f.preset == "global")
    p = mpcp::SolverParams::preset_global();
  else if (f.preset == "local")
    p = mpcp::SolverParams::preset_local();
  else if (f.preset == "equal-weights")
    p = mpcp::SolverParams::preset_equal_weights();
  if (cmd->count("--alpha")) p.alpha = f.alpha;
  if (cmd->count("--p")) p.p = f.p;
  if (cmd->count("--q")) p.q = f.q;
  if (cmd->count("--tol")) p.tol = f.tol;
  if (cmd->count("--max-iter")) p.max_iter = f.max_iter;
  return p;
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("MPCP_OUTPUT_DIR")) return env;
  return ".";
}

mpcp::Method parse_method(const std::string& name) {
  // "mpnsm" and "nsm-aggregated" are accepted as aliases of the canonical
  // hyphenated names.
  static const std::map<std::string, mpcp::Method> m = {
      {"mp-nsm", mpcp::Method::MpNsm},       {"mpnsm", mpcp::Method::MpNsm},
      {"nsm-aggregate", mpcp::Method::NsmAggregate},
      {"nsm-aggregated", mpcp::Method::NsmAggregate},
      {"ml-degree", mpcp::Method::MlDegree}, {"eig-a", mpcp::Method::EigA},
      {"eig-q", mpcp::Method::EigQ},         {"h-index", mpcp::Method::HIndex}};
  auto it = m.find(name);
  if (it == m.end()) throw mpcp::InputError("unknown method: " + name);
  return it->second;
}

int do_run(const DatasetFlags& df, const CLI::App* cmd, const SolverFlags& sf,
           const std::string& method, const std::string& weights,
           const std::string& weights_file, bool binarise, bool exclude,
           const std::string& output) {
  mpcp::RunConfig cfg;
  cfg.dataset = to_spec(df);
  cfg.method = parse_method(method);
  cfg.params = to_params(cmd, sf);
  cfg.weights = weights == "equal"  ? mpcp::WeightMode::Equal
                : weights == "file" ? mpcp::WeightMode::FromFile
                                    : mpcp::WeightMode::Optimised;
  cfg.weights_file = weights_file;
  if (cfg.weights == mpcp::WeightMode::FromFile && weights_file.empty())
    throw mpcp::InputError("--weights file requires --weights-file");
  cfg.binarise_aggregate = binarise;
  cfg.exclude_degenerate_layers = exclude;
  cfg.output_dir = output.empty() ? default_output_dir() : std::filesystem::path(output);

  auto out = mpcp::run_experiment(cfg);
  mpcp::write_run_outputs(cfg, out);

  for (auto k : out.excluded_layers)
    std::cerr << "warning: layer " << k
              << " is empty or complete and was excluded from scoring\n";
  std::cout << "method " << mpcp::method_name(cfg.method) << " on "
            << out.data.adjacency.num_nodes() << " nodes / " << out.data.adjacency.num_layers()
            << " layers\n";
  if (out.solver_report)
    std::cout << "iterations " << out.solver_report->iterations
              << (out.solver_report->converged ? " (converged)" : " (max-iter)") << " in "
              << out.method_seconds << " s\n";
  std::cout << "qubo-max " << out.sweep.max_score << " at s-star " << out.sweep.s_star << '\n';
  std::cout << "outputs in " << cfg.output_dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Core-periphery structure in multiplex networks"};
  app.require_subcommand(1);

  DatasetFlags run_ds, table_ds, spy_ds;
  SolverFlags run_sf, table_sf;

  auto* run = app.add_subcommand("run", "Fit one method and write CSV outputs");
  add_dataset_flags(run, run_ds);
  add_solver_flags(run, run_sf);
  std::string method = "mp-nsm", weights = "optimised", weights_file, output;
  bool binarise = false, exclude = true;
  run->add_option("--method", method, "mp-nsm, nsm-aggregate, ml-degree, eig-a, eig-q, h-index")
      ->check(CLI::IsMember({"mp-nsm", "mpnsm", "nsm-aggregate", "nsm-aggregated", "ml-degree",
                             "eig-a", "eig-q", "h-index"}));
  run->add_option("--weights", weights, "Layer weights for baselines/scoring")
      ->check(CLI::IsMember({"optimised", "equal", "file"}));
  run->add_option("--weights-file", weights_file, "File with one weight per layer");
  run->add_flag("--binarise-aggregate", binarise,
                "Collapse positive aggregate weights to 1 before nsm-aggregate");
  run->add_flag("--exclude-degenerate-layers,!--keep-degenerate-layers", exclude,
                "Skip empty/complete layers when scoring (default on)");
  run->add_option("--output", output, "Output directory (default: $MPCP_OUTPUT_DIR or .)");

  auto* table = app.add_subcommand("table", "Method-comparison table across presets");
  add_dataset_flags(table, table_ds);
  add_solver_flags(table, table_sf);
  std::vector<std::string> preset_names{"global", "local"};
  std::vector<std::string> method_names{"nsm-aggregate", "ml-degree", "eig-a", "eig-q",
                                        "h-index"};
  std::string table_out = "table.csv";
  bool table_exclude = true;
  table->add_option("--presets", preset_names, "Presets to sweep")->delimiter(',');
  table->add_option("--methods", method_names, "Baselines to evaluate")->delimiter(',');
  table->add_option("--out", table_out, "Output CSV path (default: table.csv in $MPCP_OUTPUT_DIR or .)");
  table->add_flag("--exclude-degenerate-layers,!--keep-degenerate-layers", table_exclude,
                  "Skip empty/complete layers when scoring (default on)");

  auto* spy = app.add_subcommand("spy", "Reorder a layer by coreness for plotting");
  add_dataset_flags(spy, spy_ds);
  std::string coreness_file, spy_weights, spy_output;
  std::size_t spy_layer = 0;
  spy->add_option("--coreness", coreness_file, "coreness.csv from a previous run")->required();
  spy->add_option("--layer-weights", spy_weights, "layer_weights.csv for s* (default: equal)");
  spy->add_option("--layer", spy_layer, "Layer to reorder");
  spy->add_option("--output", spy_output, "Output directory (default: $MPCP_OUTPUT_DIR or .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run->parsed())
      return do_run(run_ds, run, run_sf, method, weights, weights_file, binarise, exclude,
                    output);
    if (table->parsed()) {
      mpcp::TableConfig cfg;
      cfg.dataset = to_spec(table_ds);
      for (const auto& name : preset_names) {
        SolverFlags f = table_sf;
        f.preset = name;
        cfg.presets.emplace_back(name, to_params(table, f));
      }
      for (const auto& name : method_names) cfg.methods.push_back(parse_method(name));
      cfg.exclude_degenerate_layers = table_exclude;
      cfg.output_file = table->count("--out") ? std::filesystem::path(table_out)
                                              : default_output_dir() / table_out;
      mpcp::run_table(cfg);
      std::cout << "wrote " << cfg.output_file.string() << '\n';
      return 0;
    }
    if (spy->parsed()) {
      mpcp::SpyConfig cfg;
      cfg.dataset = to_spec(spy_ds);
      cfg.coreness_csv = coreness_file;
      if (!spy_weights.empty()) cfg.weights_csv = spy_weights;
      cfg.layer = spy_layer;
      cfg.output_dir = spy_output.empty() ? default_output_dir()
                                          : std::filesystem::path(spy_output);
      mpcp::run_spy(cfg);
      std::cout << "wrote permutation.csv and spy.csv in " << cfg.output_dir.string() << '\n';
      return 0;
    }
  } catch (const mpcp::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const mpcp::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
