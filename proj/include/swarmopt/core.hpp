#ifndef SWARMOPT_CORE_HPP
#define SWARMOPT_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swarmopt {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Invalid user-facing configuration (bounds, budgets, names, parameters).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The objective produced a value the optimizer cannot order (NaN).
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, std::vector<double> position)
      : std::runtime_error(what), position_(std::move(position)) {}

  const std::vector<double>& position() const noexcept { return position_; }

 private:
  std::vector<double> position_;
};

/// A caller broke a precondition (length mismatch, index out of range...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// File system failures and malformed input files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Randomness
// ---------------------------------------------------------------------------

/// Source of the uniform draws every stochastic step consumes. Algorithms
/// take this interface so tests can pin individual draws.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  /// Uniform real in [0, 1).
  virtual double uniform() = 0;

  /// Uniform integer in [0, n). n must be positive.
  virtual std::size_t index(std::size_t n) = 0;

  /// Uniform real in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

/// Seeded deterministic stream.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Reals take the top 53 bits of one engine word; integers use
/// rejection sampling on whole engine words. Neither step goes through the
/// implementation-defined std distributions, so a seed replays identically
/// on every conforming platform.
class RngStream final : public RandomSource {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() override;
  std::size_t index(std::size_t n) override;
  using RandomSource::uniform;

  /// Raw 64-bit engine output.
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to derive independent sub-stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

// ---------------------------------------------------------------------------
// Objective and agents
// ---------------------------------------------------------------------------

/// Objective callable. The RandomSource is only consumed by stochastic
/// objectives (noisy benchmarks); deterministic objectives ignore it.
using ObjectiveFn = std::function<double(std::span<const double>, RandomSource&)>;

/// A box-bounded minimization problem.
struct ObjectiveSpec {
  std::string name;
  std::size_t dimension = 0;
  std::vector<double> lower;
  std::vector<double> upper;
  ObjectiveFn evaluate;

  /// Same bounds on every dimension.
  static ObjectiveSpec box(std::string name, std::size_t dimension, double lower,
                           double upper, ObjectiveFn fn);

  /// Throws ConfigError unless dimension > 0, bound vectors match it,
  /// every lower_j < upper_j and an evaluate function is set.
  void validate() const;
};

struct Agent {
  std::vector<double> position;
  double fitness = 0.0;
};

using Population = std::vector<Agent>;

/// Wraps an ObjectiveSpec with evaluation accounting, NaN rejection and
/// best-ever tracking. Every evaluated point is a candidate for the global
/// best, including ones an algorithm later discards. Stochastic objectives
/// draw from a noise stream owned here, separate from the algorithm's stream.
class Evaluator {
 public:
  Evaluator(const ObjectiveSpec& spec, std::uint64_t noise_seed);

  double operator()(std::span<const double> position);

  const ObjectiveSpec& spec() const noexcept { return *spec_; }
  std::uint64_t count() const noexcept { return count_; }

  /// Lowest value returned so far (+inf before the first call).
  double best_fitness() const noexcept { return best_fitness_; }
  const std::vector<double>& best_position() const noexcept { return best_position_; }

 private:
  const ObjectiveSpec* spec_;
  RngStream noise_;
  std::uint64_t count_ = 0;
  double best_fitness_;
  std::vector<double> best_position_;
};

/// Project a position onto the box. Throws ContractError on length mismatch.
std::vector<double> clamp(std::span<const double> position, const ObjectiveSpec& spec);
void clamp_in_place(std::vector<double>& position, const ObjectiveSpec& spec);

bool within_bounds(std::span<const double> position, const ObjectiveSpec& spec);

/// n agents drawn uniformly in the box, one evaluation each.
Population initialize_population(const ObjectiveSpec& spec, std::size_t n,
                                 RandomSource& rng, Evaluator& evaluate);

// ---------------------------------------------------------------------------
// Run loop
// ---------------------------------------------------------------------------

struct RunConfig {
  std::size_t population = 40;
  std::size_t iterations = 200;
  std::uint64_t seed = 0;

  void validate() const;
};

struct RunResult {
  std::vector<double> best_position;
  double best_fitness = 0.0;
  /// Best-so-far objective value after each iteration.
  std::vector<double> curve;
  std::uint64_t evaluations = 0;
};

/// Per-iteration update procedure. An optimizer mutates the population in
/// place; the run loop owns initialization and best-so-far tracking, so an
/// optimizer is free to overwrite agents unconditionally.
class Optimizer {
 public:
  virtual ~Optimizer() = default;

  virtual std::string_view name() const = 0;

  /// Called once after initialization, before the first iteration.
  virtual void start(const Population& /*agents*/, Evaluator& /*evaluate*/,
                     RandomSource& /*rng*/) {}

  /// One iteration. t runs 0..iterations-1.
  virtual void iterate(Population& agents, std::size_t t, std::size_t iterations,
                       Evaluator& evaluate, RandomSource& rng) = 0;
};

/// Called after every iteration with the updated population.
using IterationObserver = std::function<void(std::size_t t, const Population&)>;

/// Initialize, run `config.iterations` iterations, track the global best.
///
/// The algorithm stream is RngStream(config.seed); the objective's noise
/// stream is seeded with mix_seed(config.seed, 1).
RunResult run(Optimizer& optimizer, const ObjectiveSpec& spec, const RunConfig& config,
              const IterationObserver& observer = {});

}  // namespace swarmopt

#endif  // SWARMOPT_CORE_HPP
