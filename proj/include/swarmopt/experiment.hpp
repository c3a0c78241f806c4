#ifndef SWARMOPT_EXPERIMENT_HPP
#define SWARMOPT_EXPERIMENT_HPP

// Experiment harness behind the `swarmopt` command line tool: repeated
// seeded runs, summary statistics, and the CSV/text/curve files they emit.

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "swarmopt/baselines.hpp"
#include "swarmopt/bench.hpp"
#include "swarmopt/core.hpp"
#include "swarmopt/igwo.hpp"
#include "swarmopt/pathplan.hpp"

namespace swarmopt::experiment {

enum class Mode { Bench, Path, Catalog, Maps };

inline const std::vector<std::string> kAlgorithms{"igwo", "gwo", "pso", "woa"};

struct AlgorithmParams {
  igwo::IgwoConfig igwo;
  baselines::PsoParams pso;
  baselines::WoaParams woa;
};

struct ExperimentConfig {
  Mode mode = Mode::Bench;
  std::vector<std::string> algorithms = kAlgorithms;
  std::size_t runs = 30;
  std::size_t population = 40;
  std::size_t iterations = 200;
  /// Run r of every (algorithm, problem) pair uses seed base_seed + r.
  std::uint64_t base_seed = 1;
  /// Worker threads for independent runs; 0 = hardware concurrency.
  std::size_t threads = 0;

  // bench
  std::size_t dimension = bench::kDefaultDimension;
  std::vector<std::string> functions;  // empty = whole suite

  // path
  std::vector<std::filesystem::path> maps;
  std::size_t generate_maps = 0;  // used when no map files are given; 0 -> 4
  double density = 0.25;
  /// Generated map k uses seed map_seed + k.
  std::uint64_t map_seed = 2025;
  std::size_t waypoints = 20;
  pathplan::PenaltyConfig penalty;

  std::filesystem::path output_dir = "results";
  AlgorithmParams params;

  /// Throws ConfigError on unknown names and out-of-range values.
  void validate() const;
};

/// Reads a JSON config file; keys mirror the command line flags. Unknown keys
/// are rejected.
ExperimentConfig load_config(const std::filesystem::path& file);
ExperimentConfig config_from_json(const std::string& text, const std::string& source);

std::unique_ptr<Optimizer> make_optimizer(const std::string& name, const AlgorithmParams& params);

// ---------------------------------------------------------------------------
// Statistics and reports
// ---------------------------------------------------------------------------

struct StatRow {
  std::string algorithm;
  std::string problem;
  double avg = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single run
  double best = 0.0;
  double worst = 0.0;

  friend bool operator==(const StatRow&, const StatRow&) = default;
};

StatRow summarize(std::string algorithm, std::string problem, std::span<const double> values);

enum class ReportFormat { Csv, Text };

/// CSV: header `algorithm,problem,avg,std,best,worst`, reals as %.17e.
std::string format_csv(const std::vector<StatRow>& rows);
std::vector<StatRow> parse_csv(const std::string& text);
std::string format_table(const std::vector<StatRow>& rows);

/// Writes rows to `file` in the given format. Refuses an empty row set.
void emit_report(const std::vector<StatRow>& rows, ReportFormat format,
                 const std::filesystem::path& file);

// ---------------------------------------------------------------------------
// Benchmark study
// ---------------------------------------------------------------------------

struct BenchCell {
  std::string algorithm;
  std::string problem;
  std::vector<double> finals;       // one per run
  std::vector<double> mean_curve;   // mean best-so-far per iteration
  std::uint64_t evaluations = 0;    // summed over runs
  StatRow stats;
};

struct BenchReport {
  std::vector<BenchCell> cells;  // algorithm-major, suite order within
  std::vector<StatRow> rows() const;
};

BenchReport run_bench_experiment(const ExperimentConfig& config);
void write_bench_outputs(const BenchReport& report, const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Path-planning study
// ---------------------------------------------------------------------------

struct NamedMap {
  std::string name;
  pathplan::GridMap map;
};

struct PathRun {
  double objective = 0.0;
  double length = 0.0;
  int collisions = 0;
  pathplan::Polyline path;
};

struct PathCell {
  std::string algorithm;
  std::string map;
  std::vector<PathRun> runs;
  std::vector<double> mean_curve;
  std::uint64_t evaluations = 0;
  /// Shortest collision-free run result; the lowest-objective run when no
  /// run ended collision-free.
  std::size_t winner = 0;
  std::size_t feasible_runs = 0;
  double mean_length = 0.0;  // over all runs' final paths
  StatRow stats;             // over final objective values
};

struct PathReport {
  std::vector<NamedMap> maps;
  std::vector<double> oracle_lengths;  // parallel to maps
  std::vector<PathCell> cells;         // map-major, algorithm order within
};

/// Loads or generates the maps a path study runs on. Generated maps are
/// named map1..mapN; loaded maps take their file stem.
std::vector<NamedMap> prepare_maps(const ExperimentConfig& config);

PathReport run_path_experiment(const ExperimentConfig& config);
void write_path_outputs(const PathReport& report, const std::filesystem::path& dir);

/// Benchmark catalog as CSV: id,name,dimension,lower,upper,known_optimum.
std::string catalog_csv(std::size_t dimension);

}  // namespace swarmopt::experiment

#endif  // SWARMOPT_EXPERIMENT_HPP
