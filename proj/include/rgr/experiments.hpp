#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rgr/graph.hpp"
#include "rgr/rng.hpp"
#include "rgr/separability.hpp"
#include "rgr/tree_realizer.hpp"

namespace rgr {

enum class ExperimentKind { tree_sweep, graph_sweep, random_graph, random_tree, radon };
enum class FamilyChoice { forest, ust };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::tree_sweep;
  std::size_t n = 20;
  /// Dimensions to run, strictly increasing.
  std::vector<std::size_t> d_grid;
  double x = 0.0;
  double y = 1.0;
  CensusParams census;
  FamilyChoice family = FamilyChoice::forest;
  /// Fixed input graph; when absent each trial samples its own (random tree
  /// or G(n, edge_probability)).
  std::optional<Graph> graph;
  double edge_probability = 0.5;
  LpMode mode = LpMode::free;
  /// Point count for the radon experiment.
  std::size_t points = 0;
  std::size_t trials = 1;
  Seed seed = 0;
  /// Worker threads; results do not depend on it.
  unsigned jobs = 1;
};

/// Throws std::invalid_argument on trials == 0, an empty or non-increasing
/// d-grid, d == 0, or a fixed graph that does not have n vertices.
void validate(const ExperimentConfig& cfg);

const char* to_string(ExperimentKind kind);
const char* to_string(FamilyChoice family);

/// One (config, d) cell. success_count counts the event named by `event`:
/// "realized" for sweeps, "infeasible" for impossibility runs, and
/// "intersecting" for radon.
struct SweepRow {
  std::string experiment;
  std::string event;
  std::size_t n = 0;
  std::size_t d = 0;
  double x = 0.0;
  double y = 1.0;
  double alpha = 0.0;
  std::string family;
  /// Largest family size seen over the trials (0 when not applicable).
  std::size_t members = 0;
  /// Smallest r_min seen over the trials (0 when not applicable).
  double r_min = 0.0;
  Seed seed = 0;
  std::size_t trials = 0;
  std::size_t success_count = 0;
  double success_rate = 0.0;
  /// Mean theta-window width over realized trials; 0 when none.
  double mean_window_width = 0.0;
  /// Fraction of trials whose theoretical threshold lands in the window.
  double theory_in_window = 0.0;
  double duplicate_rate = 0.0;
  double wall_ms = 0.0;
};

/// Per-trial record; replaying trial_seed through the library reproduces it.
struct TrialRecord {
  std::size_t d = 0;
  std::size_t trial = 0;
  Seed trial_seed = 0;
  bool success = false;
  double window_width = 0.0;
  std::size_t members = 0;
  double r_min = 0.0;
  bool theory_in_window = false;
  std::size_t duplicates = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<TrialRecord> trials;
};

/// Seed of trial t: derive_seed(master, t). Within a trial, sub-stream 0
/// draws the graph or tree, 1 the embedding, and 2 the family members.
Seed trial_seed(Seed master, std::size_t trial) noexcept;

SweepResult run_tree_sweep(const ExperimentConfig& cfg);
SweepResult run_graph_sweep(const ExperimentConfig& cfg);
SweepResult run_lowerbound_experiment(const ExperimentConfig& cfg);

/// Dispatches on cfg.kind.
SweepResult run_experiment(const ExperimentConfig& cfg);

/// Replays one trial of a sweep or lower-bound run at dimension d.
TrialRecord replay_trial(const ExperimentConfig& cfg, std::size_t d, std::size_t trial);

/// Header cell 0 is "schema=1"; each data row starts with the schema number.
/// wall_ms is the last column and is omitted when include_wall is false.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, bool include_wall = true);
void write_trial_csv(std::ostream& out, const ExperimentConfig& cfg,
                     const std::vector<TrialRecord>& trials);

}  // namespace rgr
