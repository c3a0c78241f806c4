#include "swarmopt/igwo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

namespace swarmopt::igwo {

Leaders select_leaders(const Population& agents) {
  if (agents.size() < 3) {
    throw ContractError("select_leaders: need at least 3 agents, got " +
                        std::to_string(agents.size()));
  }
  std::array<std::size_t, 3> top{};
  std::size_t filled = 0;
  // Insertion into a sorted top-3; strict comparison keeps the earlier index
  // ahead on ties.
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const double f = agents[i].fitness;
    std::size_t pos = filled;
    while (pos > 0 && f < agents[top[pos - 1]].fitness) {
      --pos;
    }
    if (pos >= 3) {
      continue;
    }
    for (std::size_t k = std::min<std::size_t>(filled, 2); k > pos; --k) {
      top[k] = top[k - 1];
    }
    top[pos] = i;
    filled = std::min<std::size_t>(filled + 1, 3);
  }
  return Leaders{agents[top[0]], agents[top[1]], agents[top[2]]};
}

double control_parameter(std::size_t t, std::size_t iterations) {
  if (t >= iterations) {
    throw ContractError("control_parameter: t=" + std::to_string(t) +
                        " outside [0, " + std::to_string(iterations) + ")");
  }
  return 2.0 * (1.0 - static_cast<double>(t) / static_cast<double>(iterations));
}

std::vector<double> population_centroid(const Population& agents) {
  if (agents.empty()) {
    throw ContractError("population_centroid: empty population");
  }
  std::vector<double> mean(agents.front().position.size(), 0.0);
  for (const auto& agent : agents) {
    for (std::size_t j = 0; j < mean.size(); ++j) {
      mean[j] += agent.position[j];
    }
  }
  const double n = static_cast<double>(agents.size());
  for (auto& m : mean) {
    m /= n;
  }
  return mean;
}

double spiral_factor(double r4, std::size_t t, std::size_t iterations) {
  if (t >= iterations) {
    throw ContractError("spiral_factor: t=" + std::to_string(t) + " outside [0, " +
                        std::to_string(iterations) + ")");
  }
  const double s =
      static_cast<double>(iterations - t) / static_cast<double>(iterations);
  return 2.0 * std::exp(std::pow(r4, s)) * std::sin(2.0 * std::numbers::pi * r4);
}

void acp_step(Population& agents, const Leaders& leaders, std::size_t t, std::size_t iterations,
              RandomSource& rng, Evaluator& evaluate) {
  const auto& spec = evaluate.spec();
  const std::vector<double> centroid = population_centroid(agents);
  const std::size_t dim = centroid.size();

  std::vector<double> beta_delta(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    beta_delta[j] = 0.5 * (leaders.beta.position[j] + leaders.delta.position[j]);
  }

  std::vector<double> candidate(dim);
  for (auto& agent : agents) {
    const double r3 = rng.uniform();
    const double r4 = rng.uniform();
    const double gamma = spiral_factor(r4, t, iterations);
    const std::vector<double>& target = r3 < 0.5 ? leaders.alpha.position : beta_delta;

    for (std::size_t j = 0; j < dim; ++j) {
      candidate[j] = r3 * centroid[j] + gamma * (target[j] - agent.position[j]);
    }
    clamp_in_place(candidate, spec);

    const double f = evaluate(candidate);
    if (f < agent.fitness) {
      agent.position = candidate;
      agent.fitness = f;
    }
  }
}

void gwo_exploitation_step(Population& agents, const Leaders& leaders, double a,
                           RandomSource& rng, Evaluator& evaluate) {
  if (!(a >= 0.0 && a <= 2.0)) {
    throw ContractError("gwo_exploitation_step: control parameter outside [0, 2]");
  }
  const auto& spec = evaluate.spec();
  const std::array<const std::vector<double>*, 3> wolves{
      &leaders.alpha.position, &leaders.beta.position, &leaders.delta.position};

  std::vector<double> next(spec.dimension);
  for (auto& agent : agents) {
    std::fill(next.begin(), next.end(), 0.0);
    for (const auto* leader : wolves) {
      for (std::size_t j = 0; j < spec.dimension; ++j) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        const double A = 2.0 * a * r1 - a;
        const double C = 2.0 * r2;
        const double D = std::abs(C * (*leader)[j] - agent.position[j]);
        next[j] += (*leader)[j] - A * D;
      }
    }
    for (auto& x : next) {
      x /= 3.0;
    }
    clamp_in_place(next, spec);
    agent.position = next;
    agent.fitness = evaluate(agent.position);
  }
}

std::vector<double> lobl_reflect(std::span<const double> position, const ObjectiveSpec& spec,
                                 double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw ConfigError("lens factor k must be finite and positive");
  }
  if (position.size() != spec.dimension) {
    throw ContractError("lobl_reflect: position length does not match objective dimension");
  }
  std::vector<double> out(position.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double sum = spec.lower[j] + spec.upper[j];
    out[j] = sum / 2.0 + sum / (2.0 * k) - position[j] / k;
  }
  clamp_in_place(out, spec);
  return out;
}

void lobl_step(Population& agents, double k, Evaluator& evaluate) {
  for (auto& agent : agents) {
    std::vector<double> reflected = lobl_reflect(agent.position, evaluate.spec(), k);
    const double f = evaluate(reflected);
    if (f < agent.fitness) {
      agent.position = std::move(reflected);
      agent.fitness = f;
    }
  }
}

void IgwoConfig::validate() const {
  if (!(lobl_k > 0.0) || !std::isfinite(lobl_k)) {
    throw ConfigError("igwo: lobl_k must be finite and positive");
  }
}

void igwo_iteration(Population& agents, std::size_t t, std::size_t iterations,
                    RandomSource& rng, Evaluator& evaluate, const IgwoConfig& config) {
  if (config.enable_acp) {
    acp_step(agents, select_leaders(agents), t, iterations, rng, evaluate);
  }
  gwo_exploitation_step(agents, select_leaders(agents), control_parameter(t, iterations), rng,
                        evaluate);
  if (config.enable_lobl) {
    lobl_step(agents, config.lobl_k, evaluate);
  }
}

IgwoOptimizer::IgwoOptimizer(IgwoConfig config) : config_(config) { config_.validate(); }

void IgwoOptimizer::iterate(Population& agents, std::size_t t, std::size_t iterations,
                            Evaluator& evaluate, RandomSource& rng) {
  igwo_iteration(agents, t, iterations, rng, evaluate, config_);
}

}  // namespace swarmopt::igwo
