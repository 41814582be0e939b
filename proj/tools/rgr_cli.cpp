// rgr: command-line front end for the realizers, the exact oracle, and the
// experiment harness. Exit codes: 0 ok, 1 usage, 2 I/O or format, 3 internal
// invariant violation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "rgr/embedding.hpp"
#include "rgr/errors.hpp"
#include "rgr/experiments.hpp"
#include "rgr/graph.hpp"
#include "rgr/graph_io.hpp"
#include "rgr/graph_realizer.hpp"
#include "rgr/separability.hpp"
#include "rgr/tree_realizer.hpp"

namespace {

using namespace rgr;

struct Options {
  std::size_t n = 20;
  std::size_t d = 0;
  std::vector<std::size_t> d_grid;
  std::optional<double> s;
  double x = 0.0;
  double y = 1.0;
  double alpha = 0.25;
  std::string variant = "agreement";
  std::string family = "forest";
  std::string mode = "free";
  std::string kind;
  std::size_t trials = 1;
  std::size_t points = 0;
  double p = 0.5;
  Seed seed = 0;
  unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
  std::string graph;
  std::string embedding;
  std::string weights;
  std::string out;
  std::string trace;
  std::string trial_out;
  std::string embedding_out;
};

// Output goes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::ios_base::failure("cannot open " + path + " for writing");
    }
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

double span_y(const Options& o) { return o.s ? o.x + *o.s : o.y; }

CensusParams census(const Options& o) {
  CensusParams p;
  p.alpha = o.alpha;
  if (o.variant == "disagreement") {
    p.variant = CensusVariant::disagreement;
  } else if (o.variant == "sample") {
    p.variant = CensusVariant::random_sample;
  }
  p.sample_seed = derive_seed(o.seed, 2);
  return p;
}

LpMode lp_mode(const Options& o) { return o.mode == "nonneg" ? LpMode::nonnegative : LpMode::free; }

std::size_t require_d(const Options& o) {
  if (o.d == 0) throw std::invalid_argument("--d is required");
  return o.d;
}

// The embedding from --embedding, or a fresh one from sub-stream 1 of --seed.
Embedding embedding_for(const Options& o, std::size_t n) {
  if (!o.embedding.empty()) {
    std::ifstream in(o.embedding);
    if (!in) throw std::ios_base::failure("cannot open " + o.embedding);
    Embedding f = read_embedding(in).embedding;
    if (f.vertex_count() != n) throw std::invalid_argument("embedding does not match the graph");
    return f;
  }
  Embedding f = sample_embedding(n, require_d(o), o.x, span_y(o), derive_seed(o.seed, 1));
  if (!o.embedding_out.empty()) {
    std::ofstream dump(o.embedding_out);
    if (!dump) throw std::ios_base::failure("cannot open " + o.embedding_out);
    write_embedding(dump, f, derive_seed(o.seed, 1));
  }
  return f;
}

Graph graph_for(const Options& o, bool tree) {
  if (!o.graph.empty()) return load_graph(o.graph);
  return tree ? sample_random_tree(o.n, derive_seed(o.seed, 0)).graph()
              : sample_er_graph(o.n, o.p, derive_seed(o.seed, 0));
}

void report_line(std::ostream& err, const RealizationReport& r) {
  err << "realized=" << (r.realized ? 1 : 0) << " max_edge=" << r.max_edge_dist
      << " min_nonedge=" << r.min_nonedge_dist;
  if (r.realized) err << " window=(" << r.window_low << ", " << r.window_high << ")";
  err << '\n';
}

void cmd_realize_tree(const Options& o) {
  const Tree tree(graph_for(o, true));
  const Embedding f = embedding_for(o, tree.vertex_count());
  const TreeRealization tr = realize_tree(tree, f, census(o));
  Sink sink(o.out);
  write_weights(sink.get(), tr.weights);
  if (!o.trace.empty()) {
    Sink trace(o.trace);
    write_census_csv(trace.get(), tr.trace);
  }
  std::cerr << "q_hat=" << tr.trace.q_hat() << ' ';
  report_line(std::cerr, verify_realization(tree.graph(), f, tr.weights));
}

void cmd_realize_graph(const Options& o) {
  const Graph g = graph_for(o, false);
  const Embedding f = embedding_for(o, g.vertex_count());
  const FamilySpec family =
      o.family == "ust" ? FamilySpec::spanning_trees(g) : FamilySpec::forest_partition(g);
  const GraphRealization gr = realize_graph(g, f, family, census(o), derive_seed(o.seed, 2));
  Sink sink(o.out);
  write_weights(sink.get(), gr.weights);
  std::cerr << "family=" << o.family << " members=" << family.family().size()
            << " r_min=" << family.r_min() << ' ';
  report_line(std::cerr, verify_realization(g, f, gr.weights));
}

void cmd_verify(const Options& o) {
  if (o.graph.empty() || o.embedding.empty() || o.weights.empty()) {
    throw std::invalid_argument("verify needs --graph, --embedding and --weights");
  }
  const Graph g = load_graph(o.graph);
  const Embedding f = embedding_for(o, g.vertex_count());
  std::ifstream win(o.weights);
  if (!win) throw std::ios_base::failure("cannot open " + o.weights);
  const WeightVector w = read_weights(win);
  const RealizationReport r = verify_realization(g, f, w);
  Sink sink(o.out);
  auto& out = sink.get();
  out.precision(17);
  out << "schema=1,realized,max_edge_dist,min_nonedge_dist,window_low,window_high\n"
      << 1 << ',' << int{r.realized} << ',' << r.max_edge_dist << ',' << r.min_nonedge_dist << ','
      << r.window_low << ',' << r.window_high << '\n';
}

void cmd_oracle(const Options& o) {
  const Graph g = graph_for(o, false);
  const Embedding f = embedding_for(o, g.vertex_count());
  const FeasibilityResult res = lp_realizability(g, f, lp_mode(o));
  if (res.feasible && !witness_realizes(g, f, *res.witness)) {
    throw InvariantViolation("feasibility witness does not realize the graph");
  }
  std::cout << (res.feasible ? "feasible" : "infeasible") << '\n';
  if (res.feasible && !o.out.empty()) {
    Sink sink(o.out);
    write_witness(sink.get(), *res.witness);
  }
}

ExperimentConfig config_for(const Options& o, ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.n = o.n;
  cfg.d_grid = o.d_grid.empty() ? std::vector<std::size_t>{require_d(o)} : o.d_grid;
  cfg.x = o.x;
  cfg.y = span_y(o);
  cfg.census = census(o);
  cfg.family = o.family == "ust" ? FamilyChoice::ust : FamilyChoice::forest;
  if (!o.graph.empty()) {
    cfg.graph = load_graph(o.graph);
    cfg.n = cfg.graph->vertex_count();
  }
  cfg.edge_probability = o.p;
  cfg.mode = lp_mode(o);
  cfg.points = o.points;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.jobs = o.jobs;
  return cfg;
}

void emit(const Options& o, const ExperimentConfig& cfg) {
  const SweepResult result = run_experiment(cfg);
  Sink sink(o.out);
  write_sweep_csv(sink.get(), result.rows);
  if (!o.trial_out.empty()) {
    Sink trials(o.trial_out);
    write_trial_csv(trials.get(), cfg, result.trials);
  }
}

void cmd_sweep(const Options& o) {
  emit(o, config_for(o, o.kind == "graph" ? ExperimentKind::graph_sweep : ExperimentKind::tree_sweep));
}

void cmd_lowerbound(const Options& o) {
  emit(o, config_for(o, o.kind == "random-tree" ? ExperimentKind::random_tree
                                                : ExperimentKind::random_graph));
}

void cmd_radon(const Options& o) { emit(o, config_for(o, ExperimentKind::radon)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold realization of graphs over random binary embeddings"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "Vertex count for sampled inputs");
    sub->add_option("--d", o.d, "Embedding dimension");
    sub->add_option("--s", o.s, "Alphabet span; sets y = x + s");
    sub->add_option("--x", o.x, "First alphabet value");
    sub->add_option("--y", o.y, "Second alphabet value");
    sub->add_option("--alpha", o.alpha, "Census margin in (0, 1/2)");
    sub->add_option("--variant", o.variant, "Census variant")
        ->check(CLI::IsMember({"agreement", "disagreement", "sample"}));
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--graph", o.graph, "Graph file")->check(CLI::ExistingFile);
    sub->add_option("--embedding", o.embedding, "Embedding dump to use")->check(CLI::ExistingFile);
    sub->add_option("--save-embedding", o.embedding_out, "Write the sampled embedding here");
    sub->add_option("--out", o.out, "Output file (stdout when omitted)");
    sub->add_option("--p", o.p, "Edge probability for sampled graphs");
  };
  auto add_experiment = [&](CLI::App* sub) {
    sub->add_option("--d-grid", o.d_grid, "Comma-separated increasing dimensions")->delimiter(',');
    sub->add_option("--trials", o.trials, "Trials per cell")->check(CLI::PositiveNumber);
    sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--trial-out", o.trial_out, "Per-trial CSV with replayable seeds");
    sub->add_option("--mode", o.mode, "Oracle weight mode")->check(CLI::IsMember({"nonneg", "free"}));
    sub->add_option("--family", o.family, "Covering family")->check(CLI::IsMember({"forest", "ust"}));
  };

  auto* realize_tree_cmd = app.add_subcommand("realize-tree", "Census weights for a tree");
  add_common(realize_tree_cmd);
  realize_tree_cmd->add_option("--trace", o.trace, "Census trace CSV");

  auto* realize_graph_cmd = app.add_subcommand("realize-graph", "Census weights for a graph");
  add_common(realize_graph_cmd);
  realize_graph_cmd->add_option("--family", o.family, "Covering family")
      ->check(CLI::IsMember({"forest", "ust"}));

  auto* verify_cmd = app.add_subcommand("verify", "Check weights against a graph and embedding");
  add_common(verify_cmd);
  verify_cmd->add_option("--weights", o.weights, "Weight file")->check(CLI::ExistingFile);

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact realizability decision");
  add_common(oracle_cmd);
  oracle_cmd->add_option("--mode", o.mode, "Weight mode")->check(CLI::IsMember({"nonneg", "free"}));

  auto* sweep_cmd = app.add_subcommand("sweep", "Success rate over a dimension grid");
  add_common(sweep_cmd);
  add_experiment(sweep_cmd);
  sweep_cmd->add_option("--kind", o.kind, "tree or graph")
      ->check(CLI::IsMember({"tree", "graph"}))
      ->default_val("tree");

  auto* lower_cmd = app.add_subcommand("lowerbound", "Oracle impossibility rates");
  add_common(lower_cmd);
  add_experiment(lower_cmd);
  lower_cmd->add_option("--kind", o.kind, "random-graph or random-tree")
      ->check(CLI::IsMember({"random-graph", "random-tree"}))
      ->default_val("random-graph");

  auto* radon_cmd = app.add_subcommand("radon", "Random 2-colorings of {0,1}^d points");
  add_common(radon_cmd);
  add_experiment(radon_cmd);
  radon_cmd->add_option("--m", o.points, "Point count")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*realize_tree_cmd) cmd_realize_tree(o);
    if (*realize_graph_cmd) cmd_realize_graph(o);
    if (*verify_cmd) cmd_verify(o);
    if (*oracle_cmd) cmd_oracle(o);
    if (*sweep_cmd) cmd_sweep(o);
    if (*lower_cmd) cmd_lowerbound(o);
    if (*radon_cmd) cmd_radon(o);
  } catch (const FormatError& e) {
    std::cerr << "rgr: " << e.what() << '\n';
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "rgr: " << e.what() << '\n';
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "rgr: internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "rgr: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
