#ifndef SWARMOPT_BENCH_HPP
#define SWARMOPT_BENCH_HPP

// The classical 13-function test suite (F1-F13): seven unimodal functions,
// then six multimodal ones. Standard formulas, bounds and optima.

#include <array>
#include <optional>
#include <string_view>

#include "swarmopt/core.hpp"

namespace swarmopt::bench {

enum class FunctionId {
  F1 = 1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12, F13
};

inline constexpr std::size_t kSuiteSize = 13;
inline constexpr std::size_t kDefaultDimension = 30;

struct BenchmarkSpec {
  FunctionId id;
  std::string_view label;  // "F1".."F13"
  std::string_view name;   // "Sphere", ...
  std::size_t dimension;
  double lower;
  double upper;
  /// Value at `optimizer_coordinate` repeated on every axis. For F7 this is
  /// the noiseless part; for F8 it is -418.9829 * dimension.
  double known_optimum;
  double optimizer_coordinate;
  ObjectiveSpec objective;
};

std::vector<BenchmarkSpec> suite(std::size_t dimension = kDefaultDimension);
BenchmarkSpec make(FunctionId id, std::size_t dimension = kDefaultDimension);

/// Evaluate one function. Dimension must be at least 2. `noise` is consumed
/// by F7 only (one uniform draw per call).
double evaluate(FunctionId id, std::span<const double> x, RandomSource& noise);

std::string_view label(FunctionId id);
/// Parses "F1".."F13" (case-insensitive). nullopt for anything else.
std::optional<FunctionId> parse_id(std::string_view text);

}  // namespace swarmopt::bench

#endif  // SWARMOPT_BENCH_HPP
