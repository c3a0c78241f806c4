#ifndef SWARMOPT_PATHPLAN_HPP
#define SWARMOPT_PATHPLAN_HPP

// Shortest collision-free path on an occupancy grid, posed as a box-bounded
// minimization over the interior waypoints of an m-point polyline.

#include <compare>
#include <filesystem>
#include <iosfwd>

#include "swarmopt/core.hpp"

namespace swarmopt::pathplan {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Cell {
  int col = 0;
  int row = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

using Polyline = std::vector<Point>;

/// Map generation could not produce a connected map.
class GenerationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// The oracle was asked about a map with no free route.
class InfeasibleMapError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Occupancy grid. Cell (col, row) covers the closed square
/// [col, col+1] x [row, row+1] in cell units; row 0 is the bottom.
class GridMap {
 public:
  GridMap() : GridMap(20, 20, 1.0, {0.5, 0.5}, {19.5, 19.5}) {}
  GridMap(int width, int height, double cell_size, Point start, Point goal);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  double cell_size() const noexcept { return cell_size_; }
  Point start() const noexcept { return start_; }
  Point goal() const noexcept { return goal_; }
  double extent_x() const noexcept { return width_ * cell_size_; }
  double extent_y() const noexcept { return height_ * cell_size_; }

  bool in_grid(int col, int row) const noexcept {
    return col >= 0 && row >= 0 && col < width_ && row < height_;
  }
  /// False for cells outside the grid.
  bool is_obstacle(int col, int row) const noexcept {
    return in_grid(col, row) && occupied_[index(col, row)] != 0;
  }
  void set_obstacle(Cell cell, bool occupied = true);

  /// Obstacles sorted by (col, row).
  std::vector<Cell> obstacles() const;
  std::size_t obstacle_count() const;

  /// Cell containing a point given in meters (clamped onto the grid).
  Cell cell_of(Point p) const;

  /// Throws ConfigError if start/goal are outside the map, on obstacles, or
  /// not in the lower-left / upper-right quadrants.
  void validate() const;

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  std::size_t index(int col, int row) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_;
  int height_;
  double cell_size_;
  Point start_;
  Point goal_;
  std::vector<std::uint8_t> occupied_;
};

/// True when a 4-connected route of free cells joins the start and goal cells.
bool cells_connected(const GridMap& map);

// ---------------------------------------------------------------------------
// Encoding and objective
// ---------------------------------------------------------------------------

/// Decision vector length for m waypoints: endpoints are fixed, so only the
/// m - 2 interior points are optimized.
std::size_t decision_dimension(std::size_t waypoints);

/// [start] + interior points read as (x, y) pairs + [goal].
Polyline decode(std::span<const double> position, const GridMap& map, std::size_t waypoints);

/// Interior waypoints flattened back into a decision vector.
std::vector<double> encode_interior(const Polyline& path);

double path_length(const Polyline& path);

/// Distinct obstacle cells the closed segment touches, corner grazes included.
int count_segment_obstacles(Point a, Point b, const GridMap& map);

/// Sum of count_segment_obstacles over consecutive segments. A cell crossed
/// by two segments counts twice.
int count_obstacle_intersections(const Polyline& path, const GridMap& map);

struct PenaltyConfig {
  double P = 10.0;
  /// Off: length when collision-free, P * nO otherwise.
  /// On: length + P * nO everywhere.
  bool additive = false;

  void validate() const;
};

double path_objective(std::span<const double> position, const GridMap& map,
                      std::size_t waypoints, const PenaltyConfig& penalty);

/// Box-bounded objective over the interior waypoints. The map is captured
/// by value.
ObjectiveSpec make_path_objective(const GridMap& map, std::size_t waypoints,
                                  const PenaltyConfig& penalty);

// ---------------------------------------------------------------------------
// Maps
// ---------------------------------------------------------------------------

struct MapGenConfig {
  int width = 20;
  int height = 20;
  double cell_size = 1.0;
  double density = 0.25;
  Point start{0.5, 0.5};
  Point goal{19.5, 19.5};
};

inline constexpr int kMaxGenerationAttempts = 1000;

/// Every cell except the start and goal cells becomes an obstacle with
/// probability `density` (one draw per cell, row-major). Redraws until the
/// start and goal cells are 4-connected.
GridMap generate_map(std::uint64_t seed, const MapGenConfig& config);

/// Length of the shortest polygonal route from start to goal that avoids the
/// interior of the obstacle union, via Dijkstra over the visibility graph of
/// obstacle corners. Feasible paths must also avoid obstacle boundaries, so
/// this is a lower bound on every collision-free polyline.
double shortest_path_oracle(const GridMap& map);
Polyline shortest_path_oracle_route(const GridMap& map);

/// JSON map file:
///   {"width": int, "height": int, "cell_size_m": real,
///    "obstacles": [[col, row], ...], "start": [x, y], "goal": [x, y]}
/// All fields required; unknown fields are rejected.
void save_map(const GridMap& map, const std::filesystem::path& file);
GridMap load_map(const std::filesystem::path& file);
std::string map_to_json(const GridMap& map);
/// `source` names the document in error messages.
GridMap map_from_json(const std::string& text, const std::string& source = "<map>");

}  // namespace swarmopt::pathplan

#endif  // SWARMOPT_PATHPLAN_HPP
