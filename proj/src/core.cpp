#include "swarmopt/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace swarmopt {

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t RngStream::index(std::size_t n) {
  if (n == 0) {
    throw ContractError("RngStream::index: n must be positive");
  }
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = engine_();
  while (draw >= limit) {
    draw = engine_();
  }
  return static_cast<std::size_t>(draw % range);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

ObjectiveSpec ObjectiveSpec::box(std::string name, std::size_t dimension, double lower,
                                 double upper, ObjectiveFn fn) {
  ObjectiveSpec spec;
  spec.name = std::move(name);
  spec.dimension = dimension;
  spec.lower.assign(dimension, lower);
  spec.upper.assign(dimension, upper);
  spec.evaluate = std::move(fn);
  return spec;
}

void ObjectiveSpec::validate() const {
  if (dimension == 0) {
    throw ConfigError("objective '" + name + "': dimension must be positive");
  }
  if (lower.size() != dimension || upper.size() != dimension) {
    throw ConfigError("objective '" + name + "': bound vectors must have length " +
                      std::to_string(dimension));
  }
  for (std::size_t j = 0; j < dimension; ++j) {
    if (!(lower[j] < upper[j])) {
      std::ostringstream msg;
      msg << "objective '" << name << "': empty interval on dimension " << j << " ["
          << lower[j] << ", " << upper[j] << "]";
      throw ConfigError(msg.str());
    }
  }
  if (!evaluate) {
    throw ConfigError("objective '" + name + "': no evaluate function");
  }
}

Evaluator::Evaluator(const ObjectiveSpec& spec, std::uint64_t noise_seed)
    : spec_(&spec), noise_(noise_seed), best_fitness_(std::numeric_limits<double>::infinity()) {}

double Evaluator::operator()(std::span<const double> position) {
  ++count_;
  const double value = spec_->evaluate(position, noise_);
  if (std::isnan(value)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "objective '" << spec_->name << "' returned NaN at (";
    for (std::size_t j = 0; j < position.size(); ++j) {
      msg << (j ? ", " : "") << position[j];
    }
    msg << ")";
    throw EvaluationError(msg.str(), {position.begin(), position.end()});
  }
  if (value < best_fitness_ || best_position_.empty()) {
    best_fitness_ = value;
    best_position_.assign(position.begin(), position.end());
  }
  return value;
}

void clamp_in_place(std::vector<double>& position, const ObjectiveSpec& spec) {
  if (position.size() != spec.dimension) {
    throw ContractError("clamp: position has length " + std::to_string(position.size()) +
                        ", objective dimension is " + std::to_string(spec.dimension));
  }
  for (std::size_t j = 0; j < position.size(); ++j) {
    position[j] = std::clamp(position[j], spec.lower[j], spec.upper[j]);
  }
}

std::vector<double> clamp(std::span<const double> position, const ObjectiveSpec& spec) {
  std::vector<double> out(position.begin(), position.end());
  clamp_in_place(out, spec);
  return out;
}

bool within_bounds(std::span<const double> position, const ObjectiveSpec& spec) {
  if (position.size() != spec.dimension) {
    return false;
  }
  for (std::size_t j = 0; j < position.size(); ++j) {
    if (!(position[j] >= spec.lower[j] && position[j] <= spec.upper[j])) {
      return false;
    }
  }
  return true;
}

Population initialize_population(const ObjectiveSpec& spec, std::size_t n, RandomSource& rng,
                                 Evaluator& evaluate) {
  spec.validate();
  if (n == 0) {
    throw ConfigError("population size must be positive");
  }
  Population agents(n);
  for (auto& agent : agents) {
    agent.position.resize(spec.dimension);
    for (std::size_t j = 0; j < spec.dimension; ++j) {
      agent.position[j] = rng.uniform(spec.lower[j], spec.upper[j]);
    }
    agent.fitness = evaluate(agent.position);
  }
  return agents;
}

void RunConfig::validate() const {
  if (population < 4) {
    throw ConfigError("population must be at least 4, got " + std::to_string(population));
  }
  if (iterations == 0) {
    throw ConfigError("iteration budget must be positive");
  }
}

RunResult run(Optimizer& optimizer, const ObjectiveSpec& spec, const RunConfig& config,
              const IterationObserver& observer) {
  config.validate();
  spec.validate();

  RngStream rng(config.seed);
  Evaluator evaluate(spec, mix_seed(config.seed, 1));

  Population agents = initialize_population(spec, config.population, rng, evaluate);

  RunResult result;
  result.curve.reserve(config.iterations);

  optimizer.start(agents, evaluate, rng);
  for (std::size_t t = 0; t < config.iterations; ++t) {
    optimizer.iterate(agents, t, config.iterations, evaluate, rng);
    result.curve.push_back(evaluate.best_fitness());
    if (observer) {
      observer(t, agents);
    }
  }
  result.best_fitness = evaluate.best_fitness();
  result.best_position = evaluate.best_position();
  result.evaluations = evaluate.count();
  return result;
}

}  // namespace swarmopt
