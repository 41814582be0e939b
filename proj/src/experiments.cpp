#include "rgr/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "rgr/errors.hpp"
#include "rgr/graph_realizer.hpp"

namespace rgr {
namespace {

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results land by
// index, so completion order never matters.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  const unsigned workers = static_cast<unsigned>(
      std::max<std::size_t>(1, std::min<std::size_t>(jobs == 0 ? 1 : jobs, count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

bool theory_lands(const RealizationReport& r, std::size_t d, double s, std::size_t n,
                  double alpha, const WeightVector& w) {
  if (!r.realized || d == 0) return false;
  const double q = static_cast<double>(w.nonzero_count()) / static_cast<double>(d);
  const double theta = theoretical_threshold(d, s, n, alpha, q);
  return theta > r.window_low && theta < r.window_high;
}

void fill_outcome(TrialRecord& rec, const RealizationReport& report) {
  rec.success = report.realized;
  rec.window_width = report.window_width();
}

const char* event_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::tree_sweep:
    case ExperimentKind::graph_sweep:
      return "realized";
    case ExperimentKind::random_graph:
    case ExperimentKind::random_tree:
      return "infeasible";
    case ExperimentKind::radon:
      return "intersecting";
  }
  return "";
}

std::string family_name(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::tree_sweep:
      return "tree";
    case ExperimentKind::graph_sweep:
      return to_string(cfg.family);
    default:
      return "none";
  }
}

SweepResult run_cells(const ExperimentConfig& cfg) {
  validate(cfg);
  SweepResult out;
  for (std::size_t d : cfg.d_grid) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<TrialRecord> records(cfg.trials);
    parallel_for(cfg.trials, cfg.jobs, [&](std::size_t t) { records[t] = replay_trial(cfg, d, t); });
    const auto stop = std::chrono::steady_clock::now();

    SweepRow row;
    row.experiment = to_string(cfg.kind);
    row.event = event_name(cfg.kind);
    row.n = cfg.kind == ExperimentKind::radon ? cfg.points : cfg.n;
    row.d = d;
    row.x = cfg.x;
    row.y = cfg.y;
    row.alpha = cfg.kind == ExperimentKind::radon ? 0.0 : cfg.census.alpha;
    row.family = family_name(cfg);
    row.seed = cfg.seed;
    row.trials = cfg.trials;
    double width_sum = 0.0;
    std::size_t theory_hits = 0;
    std::size_t duplicates = 0;
    bool first = true;
    for (const auto& rec : records) {
      row.success_count += rec.success;
      if (rec.success) width_sum += rec.window_width;
      theory_hits += rec.theory_in_window;
      duplicates += rec.duplicates;
      row.members = std::max(row.members, rec.members);
      row.r_min = first ? rec.r_min : std::min(row.r_min, rec.r_min);
      first = false;
    }
    const double trials = static_cast<double>(cfg.trials);
    row.success_rate = static_cast<double>(row.success_count) / trials;
    row.mean_window_width =
        row.success_count == 0 ? 0.0 : width_sum / static_cast<double>(row.success_count);
    row.theory_in_window = static_cast<double>(theory_hits) / trials;
    if (cfg.kind == ExperimentKind::radon) {
      row.duplicate_rate = static_cast<double>(duplicates) / (trials * static_cast<double>(cfg.points));
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    out.rows.push_back(std::move(row));
    out.trials.insert(out.trials.end(), records.begin(), records.end());
  }
  return out;
}

void require_kind(const ExperimentConfig& cfg, std::initializer_list<ExperimentKind> allowed,
                  const char* what) {
  if (std::find(allowed.begin(), allowed.end(), cfg.kind) == allowed.end()) {
    throw std::invalid_argument(std::string(what) + " cannot run experiment kind " +
                                to_string(cfg.kind));
  }
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (cfg.d_grid.empty()) throw std::invalid_argument("d-grid is empty");
  for (std::size_t i = 0; i < cfg.d_grid.size(); ++i) {
    if (cfg.d_grid[i] == 0) throw std::invalid_argument("dimensions must be positive");
    if (i > 0 && cfg.d_grid[i] <= cfg.d_grid[i - 1]) {
      throw std::invalid_argument("d-grid must be strictly increasing");
    }
  }
  validate(cfg.census);
  if (cfg.kind == ExperimentKind::radon) {
    if (cfg.points < 2) throw std::invalid_argument("radon needs at least 2 points");
    return;
  }
  if (cfg.n < 2) throw std::invalid_argument("n must be at least 2");
  if (cfg.graph && cfg.graph->vertex_count() != cfg.n) {
    throw std::invalid_argument("input graph does not have n vertices");
  }
  if (!(cfg.edge_probability >= 0.0 && cfg.edge_probability <= 1.0)) {
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  }
}

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::tree_sweep:
      return "tree";
    case ExperimentKind::graph_sweep:
      return "graph";
    case ExperimentKind::random_graph:
      return "random-graph";
    case ExperimentKind::random_tree:
      return "random-tree";
    case ExperimentKind::radon:
      return "radon";
  }
  return "";
}

const char* to_string(FamilyChoice family) {
  return family == FamilyChoice::forest ? "forest" : "ust";
}

Seed trial_seed(Seed master, std::size_t trial) noexcept { return derive_seed(master, trial); }

TrialRecord replay_trial(const ExperimentConfig& cfg, std::size_t d, std::size_t trial) {
  TrialRecord rec;
  rec.d = d;
  rec.trial = trial;
  rec.trial_seed = trial_seed(cfg.seed, trial);
  const Seed ts = rec.trial_seed;
  const std::size_t n = cfg.n;

  switch (cfg.kind) {
    case ExperimentKind::tree_sweep: {
      const Tree tree = cfg.graph ? Tree(*cfg.graph) : sample_random_tree(n, derive_seed(ts, 0));
      const Embedding f = sample_embedding(n, d, cfg.x, cfg.y, derive_seed(ts, 1));
      CensusParams params = cfg.census;
      params.sample_seed = derive_seed(ts, 2);
      const TreeRealization tr = realize_tree(tree, f, params);
      const RealizationReport report = verify_realization(tree.graph(), f, tr.weights);
      fill_outcome(rec, report);
      rec.members = 1;
      rec.r_min = 1.0;
      rec.theory_in_window = theory_lands(report, d, f.span(), n, params.alpha, tr.weights);
      break;
    }
    case ExperimentKind::graph_sweep: {
      const Graph g = cfg.graph ? *cfg.graph : sample_er_graph(n, cfg.edge_probability, derive_seed(ts, 0));
      const Embedding f = sample_embedding(n, d, cfg.x, cfg.y, derive_seed(ts, 1));
      const FamilySpec family = cfg.family == FamilyChoice::forest ? FamilySpec::forest_partition(g)
                                                                  : FamilySpec::spanning_trees(g);
      const GraphRealization gr = realize_graph(g, f, family, cfg.census, derive_seed(ts, 2));
      const RealizationReport report = verify_realization(g, f, gr.weights);
      fill_outcome(rec, report);
      rec.members = family.family().size();
      rec.r_min = family.r_min();
      rec.theory_in_window = theory_lands(report, d, f.span(), n, cfg.census.alpha, gr.weights);
      break;
    }
    case ExperimentKind::random_graph:
    case ExperimentKind::random_tree: {
      const bool tree_kind = cfg.kind == ExperimentKind::random_tree;
      std::optional<Tree> tree;
      Graph g;
      if (tree_kind) {
        tree.emplace(cfg.graph ? Tree(*cfg.graph) : sample_random_tree(n, derive_seed(ts, 0)));
        g = tree->graph();
      } else {
        g = cfg.graph ? *cfg.graph : sample_er_graph(n, cfg.edge_probability, derive_seed(ts, 0));
      }
      const Embedding f = sample_embedding(n, d, cfg.x, cfg.y, derive_seed(ts, 1));
      std::optional<WeightVector> hint;
      if (tree_kind) hint = realize_tree(*tree, f, cfg.census).weights;
      const FeasibilityResult res = lp_realizability(g, f, cfg.mode, hint ? &*hint : nullptr);
      if (res.feasible && !witness_realizes(g, f, *res.witness)) {
        throw InvariantViolation("feasibility witness does not realize the graph");
      }
      rec.success = !res.feasible;
      break;
    }
    case ExperimentKind::radon:
      rec.success = radon_trial(d, cfg.points, ts, &rec.duplicates);
      break;
  }
  return rec;
}

SweepResult run_tree_sweep(const ExperimentConfig& cfg) {
  require_kind(cfg, {ExperimentKind::tree_sweep}, "tree sweep");
  return run_cells(cfg);
}

SweepResult run_graph_sweep(const ExperimentConfig& cfg) {
  require_kind(cfg, {ExperimentKind::graph_sweep}, "graph sweep");
  return run_cells(cfg);
}

SweepResult run_lowerbound_experiment(const ExperimentConfig& cfg) {
  require_kind(cfg, {ExperimentKind::random_graph, ExperimentKind::random_tree, ExperimentKind::radon},
               "lower-bound run");
  return run_cells(cfg);
}

SweepResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::tree_sweep:
      return run_tree_sweep(cfg);
    case ExperimentKind::graph_sweep:
      return run_graph_sweep(cfg);
    default:
      return run_lowerbound_experiment(cfg);
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool include_wall) {
  out << "schema=1,experiment,event,n,d,x,y,alpha,family,members,r_min,seed,trials,"
         "success_count,success_rate,mean_window_width,theory_in_window,duplicate_rate";
  if (include_wall) out << ",wall_ms";
  out << '\n';
  const auto old = out.precision(10);
  for (const auto& r : rows) {
    out << 1 << ',' << r.experiment << ',' << r.event << ',' << r.n << ',' << r.d << ',' << r.x
        << ',' << r.y << ',' << r.alpha << ',' << r.family << ',' << r.members << ',' << r.r_min
        << ',' << r.seed << ',' << r.trials << ',' << r.success_count << ',' << r.success_rate
        << ',' << r.mean_window_width << ',' << r.theory_in_window << ',' << r.duplicate_rate;
    if (include_wall) out << ',' << r.wall_ms;
    out << '\n';
  }
  out.precision(old);
}

void write_trial_csv(std::ostream& out, const ExperimentConfig& cfg,
                     const std::vector<TrialRecord>& trials) {
  out << "schema=1,experiment,seed,d,trial,trial_seed,success,window_width,members,r_min\n";
  const auto old = out.precision(17);
  for (const auto& t : trials) {
    out << 1 << ',' << to_string(cfg.kind) << ',' << cfg.seed << ',' << t.d << ',' << t.trial
        << ',' << t.trial_seed << ',' << int{t.success} << ',' << t.window_width << ','
        << t.members << ',' << t.r_min << '\n';
  }
  out.precision(old);
}

}  // namespace rgr
