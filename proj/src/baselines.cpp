#include "swarmopt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swarmopt/igwo.hpp"

namespace swarmopt::baselines {

void gwo_iteration(Population& agents, std::size_t t, std::size_t iterations,
                   RandomSource& rng, Evaluator& evaluate) {
  igwo::gwo_exploitation_step(agents, igwo::select_leaders(agents),
                              igwo::control_parameter(t, iterations), rng, evaluate);
}

void GwoOptimizer::iterate(Population& agents, std::size_t t, std::size_t iterations,
                           Evaluator& evaluate, RandomSource& rng) {
  gwo_iteration(agents, t, iterations, rng, evaluate);
}

// ---------------------------------------------------------------------------
// PSO

void PsoParams::validate() const {
  if (!(inertia_start >= inertia_end && inertia_end >= 0.0)) {
    throw ConfigError("pso: need inertia_start >= inertia_end >= 0");
  }
  if (!(c1 >= 0.0 && c2 >= 0.0)) {
    throw ConfigError("pso: acceleration coefficients must be non-negative");
  }
  if (!(v_max_fraction > 0.0 && v_max_fraction <= 1.0)) {
    throw ConfigError("pso: v_max_fraction must lie in (0, 1]");
  }
}

PsoState PsoState::from_population(const Population& agents) {
  if (agents.empty()) {
    throw ContractError("PsoState: empty population");
  }
  PsoState state;
  state.velocities.assign(agents.size(), std::vector<double>(agents.front().position.size()));
  state.personal_best = agents;
  state.global_best = *std::min_element(
      agents.begin(), agents.end(),
      [](const Agent& a, const Agent& b) { return a.fitness < b.fitness; });
  return state;
}

double pso_inertia(const PsoParams& params, std::size_t t, std::size_t iterations) {
  if (t >= iterations) {
    throw ContractError("pso_inertia: t outside [0, iterations)");
  }
  const double progress = iterations > 1
                              ? static_cast<double>(t) / static_cast<double>(iterations - 1)
                              : 0.0;
  return params.inertia_start - (params.inertia_start - params.inertia_end) * progress;
}

void pso_step(Population& agents, PsoState& state, double inertia, RandomSource& rng,
              Evaluator& evaluate, const PsoParams& params) {
  const auto& spec = evaluate.spec();
  if (state.velocities.size() != agents.size() || state.personal_best.size() != agents.size()) {
    throw ContractError("pso_step: state does not match population");
  }

  for (std::size_t i = 0; i < agents.size(); ++i) {
    auto& x = agents[i].position;
    auto& v = state.velocities[i];
    const auto& pbest = state.personal_best[i].position;
    const auto& gbest = state.global_best.position;

    for (std::size_t j = 0; j < spec.dimension; ++j) {
      const double r1 = rng.uniform();
      const double r2 = rng.uniform();
      const double v_max = params.v_max_fraction * (spec.upper[j] - spec.lower[j]);
      v[j] = inertia * v[j] + params.c1 * r1 * (pbest[j] - x[j]) +
             params.c2 * r2 * (gbest[j] - x[j]);
      v[j] = std::clamp(v[j], -v_max, v_max);
      x[j] += v[j];
    }
    clamp_in_place(x, spec);
    agents[i].fitness = evaluate(x);

    if (agents[i].fitness < state.personal_best[i].fitness) {
      state.personal_best[i] = agents[i];
    }
  }

  for (const auto& best : state.personal_best) {
    if (best.fitness < state.global_best.fitness) {
      state.global_best = best;
    }
  }
}

void pso_iteration(Population& agents, PsoState& state, std::size_t t, std::size_t iterations,
                   RandomSource& rng, Evaluator& evaluate, const PsoParams& params) {
  pso_step(agents, state, pso_inertia(params, t, iterations), rng, evaluate, params);
}

PsoOptimizer::PsoOptimizer(PsoParams params) : params_(params) { params_.validate(); }

void PsoOptimizer::start(const Population& agents, Evaluator& /*evaluate*/,
                         RandomSource& /*rng*/) {
  state_ = PsoState::from_population(agents);
}

void PsoOptimizer::iterate(Population& agents, std::size_t t, std::size_t iterations,
                           Evaluator& evaluate, RandomSource& rng) {
  pso_iteration(agents, state_, t, iterations, rng, evaluate, params_);
}

// ---------------------------------------------------------------------------
// WOA

void WoaParams::validate() const {
  if (!(spiral_probability >= 0.0 && spiral_probability <= 1.0)) {
    throw ConfigError("woa: spiral_probability must lie in [0, 1]");
  }
  if (!std::isfinite(spiral_b)) {
    throw ConfigError("woa: spiral_b must be finite");
  }
}

void woa_step(Population& agents, const Agent& leader, double a, RandomSource& rng,
              Evaluator& evaluate, const WoaParams& params) {
  const auto& spec = evaluate.spec();
  const auto& best = leader.position;
  // Random-whale exploration reads positions as they were before this step.
  const Population snapshot = agents;

  std::vector<double> next(spec.dimension);
  for (auto& agent : agents) {
    const double r1 = rng.uniform();
    const double r2 = rng.uniform();
    const double p = rng.uniform();
    const double l = 2.0 * rng.uniform() - 1.0;
    const double A = 2.0 * a * r1 - a;
    const double C = 2.0 * r2;
    const auto& x = agent.position;

    if (p < params.spiral_probability) {
      const std::vector<double>* target = &best;
      if (std::abs(A) >= 1.0) {
        target = &snapshot[rng.index(snapshot.size())].position;
      }
      for (std::size_t j = 0; j < spec.dimension; ++j) {
        const double D = std::abs(C * (*target)[j] - x[j]);
        next[j] = (*target)[j] - A * D;
      }
    } else {
      const double scale =
          std::exp(params.spiral_b * l) * std::cos(2.0 * std::numbers::pi * l);
      for (std::size_t j = 0; j < spec.dimension; ++j) {
        next[j] = std::abs(best[j] - x[j]) * scale + best[j];
      }
    }
    clamp_in_place(next, spec);
    agent.position = next;
    agent.fitness = evaluate(agent.position);
  }
}

WoaOptimizer::WoaOptimizer(WoaParams params) : params_(params) { params_.validate(); }

void WoaOptimizer::start(const Population& agents, Evaluator& /*evaluate*/,
                         RandomSource& /*rng*/) {
  leader_ = *std::min_element(agents.begin(), agents.end(), [](const Agent& a, const Agent& b) {
    return a.fitness < b.fitness;
  });
}

void WoaOptimizer::iterate(Population& agents, std::size_t t, std::size_t iterations,
                           Evaluator& evaluate, RandomSource& rng) {
  for (const auto& agent : agents) {
    if (agent.fitness < leader_.fitness) {
      leader_ = agent;
    }
  }
  woa_step(agents, leader_, igwo::control_parameter(t, iterations), rng, evaluate, params_);
}

}  // namespace swarmopt::baselines
