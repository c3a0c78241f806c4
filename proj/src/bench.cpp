#include "swarmopt/bench.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace swarmopt::bench {
namespace {

constexpr double kPi = std::numbers::pi;

struct Entry {
  FunctionId id;
  std::string_view label;
  std::string_view name;
  double bound;
  double optimizer_coordinate;
};

constexpr std::array<Entry, kSuiteSize> kCatalog{{
    {FunctionId::F1, "F1", "Sphere", 100.0, 0.0},
    {FunctionId::F2, "F2", "Schwefel 2.22", 10.0, 0.0},
    {FunctionId::F3, "F3", "Schwefel 1.2", 100.0, 0.0},
    {FunctionId::F4, "F4", "Schwefel 2.21", 100.0, 0.0},
    {FunctionId::F5, "F5", "Rosenbrock", 30.0, 1.0},
    {FunctionId::F6, "F6", "Step", 100.0, 0.0},
    {FunctionId::F7, "F7", "Quartic with noise", 1.28, 0.0},
    {FunctionId::F8, "F8", "Schwefel", 500.0, 420.9687},
    {FunctionId::F9, "F9", "Rastrigin", 5.12, 0.0},
    {FunctionId::F10, "F10", "Ackley", 32.0, 0.0},
    {FunctionId::F11, "F11", "Griewank", 600.0, 0.0},
    {FunctionId::F12, "F12", "Penalized 1", 50.0, -1.0},
    {FunctionId::F13, "F13", "Penalized 2", 50.0, 1.0},
}};

const Entry& entry(FunctionId id) {
  const auto index = static_cast<std::size_t>(id) - 1;
  if (index >= kCatalog.size()) {
    throw ContractError("unknown benchmark id");
  }
  return kCatalog[index];
}

double penalty_u(double x, double a, double k, double m) {
  if (x > a) return k * std::pow(x - a, m);
  if (x < -a) return k * std::pow(-x - a, m);
  return 0.0;
}

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double schwefel_222(std::span<const double> x) {
  double sum = 0.0;
  double prod = 1.0;
  for (double v : x) {
    sum += std::abs(v);
    prod *= std::abs(v);
  }
  return sum + prod;
}

double schwefel_12(std::span<const double> x) {
  double total = 0.0;
  double prefix = 0.0;
  for (double v : x) {
    prefix += v;
    total += prefix * prefix;
  }
  return total;
}

double schwefel_221(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = x[i] - 1.0;
    s += 100.0 * a * a + b * b;
  }
  return s;
}

double step(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) {
    const double r = std::floor(v + 0.5);
    s += r * r;
  }
  return s;
}

double quartic_noise(std::span<const double> x, RandomSource& noise) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v2 = x[i] * x[i];
    s += static_cast<double>(i + 1) * v2 * v2;
  }
  return s + noise.uniform();
}

double schwefel(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += -v * std::sin(std::sqrt(std::abs(v)));
  return s;
}

double rastrigin(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
  return s;
}

double ackley(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double sq = 0.0;
  double cs = 0.0;
  for (double v : x) {
    sq += v * v;
    cs += std::cos(2.0 * kPi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 +
         std::numbers::e;
}

double griewank(std::span<const double> x) {
  double sum = 0.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i];
    prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum / 4000.0 - prod + 1.0;
}

double penalized_1(std::span<const double> x) {
  const std::size_t n = x.size();
  auto y = [&](std::size_t i) { return 1.0 + (x[i] + 1.0) / 4.0; };
  const double s0 = std::sin(kPi * y(0));
  double body = 10.0 * s0 * s0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double yi = y(i) - 1.0;
    const double sn = std::sin(kPi * y(i + 1));
    body += yi * yi * (1.0 + 10.0 * sn * sn);
  }
  const double yn = y(n - 1) - 1.0;
  body += yn * yn;
  double penalty = 0.0;
  for (double v : x) penalty += penalty_u(v, 10.0, 100.0, 4.0);
  return kPi / static_cast<double>(n) * body + penalty;
}

double penalized_2(std::span<const double> x) {
  const std::size_t n = x.size();
  const double s0 = std::sin(3.0 * kPi * x[0]);
  double body = s0 * s0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = x[i] - 1.0;
    const double sn = std::sin(3.0 * kPi * x[i + 1]);
    body += d * d * (1.0 + sn * sn);
  }
  const double dn = x[n - 1] - 1.0;
  const double sl = std::sin(2.0 * kPi * x[n - 1]);
  body += dn * dn * (1.0 + sl * sl);
  double penalty = 0.0;
  for (double v : x) penalty += penalty_u(v, 5.0, 100.0, 4.0);
  return 0.1 * body + penalty;
}

}  // namespace

double evaluate(FunctionId id, std::span<const double> x, RandomSource& noise) {
  if (x.size() < 2) {
    throw ContractError("benchmark functions need dimension >= 2, got " +
                        std::to_string(x.size()));
  }
  switch (id) {
    case FunctionId::F1: return sphere(x);
    case FunctionId::F2: return schwefel_222(x);
    case FunctionId::F3: return schwefel_12(x);
    case FunctionId::F4: return schwefel_221(x);
    case FunctionId::F5: return rosenbrock(x);
    case FunctionId::F6: return step(x);
    case FunctionId::F7: return quartic_noise(x, noise);
    case FunctionId::F8: return schwefel(x);
    case FunctionId::F9: return rastrigin(x);
    case FunctionId::F10: return ackley(x);
    case FunctionId::F11: return griewank(x);
    case FunctionId::F12: return penalized_1(x);
    case FunctionId::F13: return penalized_2(x);
  }
  throw ContractError("unknown benchmark id");
}

BenchmarkSpec make(FunctionId id, std::size_t dimension) {
  if (dimension < 2) {
    throw ConfigError("benchmark dimension must be at least 2");
  }
  const Entry& e = entry(id);
  const double optimum =
      id == FunctionId::F8 ? -418.9829 * static_cast<double>(dimension) : 0.0;

  BenchmarkSpec spec{
      e.id,
      e.label,
      e.name,
      dimension,
      -e.bound,
      e.bound,
      optimum,
      e.optimizer_coordinate,
      ObjectiveSpec::box(std::string(e.label), dimension, -e.bound, e.bound,
                         [id, dimension](std::span<const double> x, RandomSource& noise) {
                           if (x.size() != dimension) {
                             throw ContractError("benchmark: dimension mismatch");
                           }
                           return evaluate(id, x, noise);
                         }),
  };
  return spec;
}

std::vector<BenchmarkSpec> suite(std::size_t dimension) {
  std::vector<BenchmarkSpec> out;
  out.reserve(kCatalog.size());
  for (const auto& e : kCatalog) {
    out.push_back(make(e.id, dimension));
  }
  return out;
}

std::string_view label(FunctionId id) { return entry(id).label; }

std::optional<FunctionId> parse_id(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (const auto& e : kCatalog) {
    if (upper == e.label) {
      return e.id;
    }
  }
  return std::nullopt;
}

}  // namespace swarmopt::bench
