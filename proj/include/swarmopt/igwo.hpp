#ifndef SWARMOPT_IGWO_HPP
#define SWARMOPT_IGWO_HPP

// Improved Grey Wolf Optimizer.
//
// One iteration runs three phases over the population:
//   1. cooperative predation: every wolf moves toward a blend of the
//      population centroid and the leaders, scaled by a spiral factor,
//      and keeps the move only if it improves;
//   2. the canonical GWO leader-averaging update (unconditional);
//   3. lens opposition: every wolf is reflected through the centre of the
//      search box, scaled by 1/k, and keeps the reflection if it improves.

#include "swarmopt/core.hpp"

namespace swarmopt::igwo {

/// The three best agents, snapshotted by value. Ties break toward the lower
/// population index.
struct Leaders {
  Agent alpha;
  Agent beta;
  Agent delta;
};

Leaders select_leaders(const Population& agents);

/// a = 2(1 - t/T), t in [0, T).
double control_parameter(std::size_t t, std::size_t iterations);

/// Component-wise mean of all positions.
std::vector<double> population_centroid(const Population& agents);

/// gamma = 2 e^(r4^s) sin(2 pi r4) with s = (T - t)/T.
///
/// t is zero-based, so s runs from 1 at the first iteration down to 1/T at
/// the last; this is the one-based exponent (T - t + 1)/T shifted by one.
double spiral_factor(double r4, std::size_t t, std::size_t iterations);

/// Cooperative predation phase. Draws r3 then r4 per agent. The centroid
/// and leaders are fixed for the whole step; candidates replace an agent
/// only on strict improvement.
void acp_step(Population& agents, const Leaders& leaders, std::size_t t,
              std::size_t iterations, RandomSource& rng, Evaluator& evaluate);

/// Canonical GWO position update around alpha, beta and delta with control
/// parameter a. For each agent and each leader (alpha, beta, delta in that
/// order) draws r1, r2 per dimension. Replacement is unconditional.
void gwo_exploitation_step(Population& agents, const Leaders& leaders, double a,
                           RandomSource& rng, Evaluator& evaluate);

/// Lens opposition point of `position` inside the objective's static box,
/// clamped. k = 1 gives the classical opposite a + b - x.
std::vector<double> lobl_reflect(std::span<const double> position, const ObjectiveSpec& spec,
                                 double k);

/// Reflect every agent; keep reflections that strictly improve.
void lobl_step(Population& agents, double k, Evaluator& evaluate);

struct IgwoConfig {
  /// Lens magnification h/h*.
  double lobl_k = 1.0e4;
  bool enable_acp = true;
  bool enable_lobl = true;

  void validate() const;
};

/// select leaders -> ACP -> reselect -> exploitation -> LOBL.
void igwo_iteration(Population& agents, std::size_t t, std::size_t iterations,
                    RandomSource& rng, Evaluator& evaluate, const IgwoConfig& config);

class IgwoOptimizer final : public Optimizer {
 public:
  explicit IgwoOptimizer(IgwoConfig config = {});

  std::string_view name() const override { return "igwo"; }
  void iterate(Population& agents, std::size_t t, std::size_t iterations, Evaluator& evaluate,
               RandomSource& rng) override;

  const IgwoConfig& config() const noexcept { return config_; }

 private:
  IgwoConfig config_;
};

}  // namespace swarmopt::igwo

#endif  // SWARMOPT_IGWO_HPP
