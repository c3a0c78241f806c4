#ifndef SWARMOPT_BASELINES_HPP
#define SWARMOPT_BASELINES_HPP

// Comparison algorithms: canonical GWO, global-best PSO and WOA. All three
// run inside swarmopt::run and share its clamping and seeding rules.

#include "swarmopt/core.hpp"

namespace swarmopt::baselines {

/// Leader selection plus the shared exploitation update; no ACP, no LOBL.
void gwo_iteration(Population& agents, std::size_t t, std::size_t iterations,
                   RandomSource& rng, Evaluator& evaluate);

class GwoOptimizer final : public Optimizer {
 public:
  std::string_view name() const override { return "gwo"; }
  void iterate(Population& agents, std::size_t t, std::size_t iterations, Evaluator& evaluate,
               RandomSource& rng) override;
};

// ---------------------------------------------------------------------------
// PSO
// ---------------------------------------------------------------------------

struct PsoParams {
  double inertia_start = 0.9;
  double inertia_end = 0.4;
  double c1 = 2.0;
  double c2 = 2.0;
  /// Velocity limit as a fraction of each dimension's range.
  double v_max_fraction = 0.2;

  void validate() const;
};

struct PsoState {
  std::vector<std::vector<double>> velocities;
  Population personal_best;
  Agent global_best;

  /// Zero velocities, personal bests at the current agents.
  static PsoState from_population(const Population& agents);
};

/// Linear decay inertia_start -> inertia_end over the budget.
double pso_inertia(const PsoParams& params, std::size_t t, std::size_t iterations);

/// One velocity/position update with an explicit inertia weight. Draws r1, r2
/// per dimension per agent. Personal bests update greedily; the global best
/// is refreshed after the whole swarm has moved.
void pso_step(Population& agents, PsoState& state, double inertia, RandomSource& rng,
              Evaluator& evaluate, const PsoParams& params);

void pso_iteration(Population& agents, PsoState& state, std::size_t t, std::size_t iterations,
                   RandomSource& rng, Evaluator& evaluate, const PsoParams& params);

class PsoOptimizer final : public Optimizer {
 public:
  explicit PsoOptimizer(PsoParams params = {});

  std::string_view name() const override { return "pso"; }
  void start(const Population& agents, Evaluator& evaluate, RandomSource& rng) override;
  void iterate(Population& agents, std::size_t t, std::size_t iterations, Evaluator& evaluate,
               RandomSource& rng) override;

  const PsoState& state() const noexcept { return state_; }

 private:
  PsoParams params_;
  PsoState state_;
};

// ---------------------------------------------------------------------------
// WOA
// ---------------------------------------------------------------------------

struct WoaParams {
  double spiral_b = 1.0;
  double spiral_probability = 0.5;

  void validate() const;
};

/// Move every whale relative to `leader` (the best-so-far solution).
///
/// Per agent draws r1, r2, p, then u for l = 2u - 1, and one index draw when
/// the exploration branch fires. A = 2a r1 - a and C = 2 r2 are scalars per
/// agent. With p < spiral_probability the whale encircles the leader
/// (|A| < 1) or a random whale (|A| >= 1); otherwise it follows the
/// logarithmic spiral D' e^(b l) cos(2 pi l) + X*. Replacement is
/// unconditional.
void woa_step(Population& agents, const Agent& leader, double a, RandomSource& rng,
              Evaluator& evaluate, const WoaParams& params);

class WoaOptimizer final : public Optimizer {
 public:
  explicit WoaOptimizer(WoaParams params = {});

  std::string_view name() const override { return "woa"; }
  void start(const Population& agents, Evaluator& evaluate, RandomSource& rng) override;
  void iterate(Population& agents, std::size_t t, std::size_t iterations, Evaluator& evaluate,
               RandomSource& rng) override;

 private:
  WoaParams params_;
  Agent leader_;
};

}  // namespace swarmopt::baselines

#endif  // SWARMOPT_BASELINES_HPP
