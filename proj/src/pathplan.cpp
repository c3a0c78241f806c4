#include "swarmopt/pathplan.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

namespace swarmopt::pathplan {

GridMap::GridMap(int width, int height, double cell_size, Point start, Point goal)
    : width_(width), height_(height), cell_size_(cell_size), start_(start), goal_(goal) {
  if (width <= 0 || height <= 0) {
    throw ConfigError("map width and height must be positive");
  }
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw ConfigError("map cell size must be finite and positive");
  }
  occupied_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

void GridMap::set_obstacle(Cell cell, bool occupied) {
  if (!in_grid(cell.col, cell.row)) {
    throw ContractError("obstacle (" + std::to_string(cell.col) + ", " +
                        std::to_string(cell.row) + ") outside the " + std::to_string(width_) +
                        "x" + std::to_string(height_) + " grid");
  }
  occupied_[index(cell.col, cell.row)] = occupied ? 1 : 0;
}

std::vector<Cell> GridMap::obstacles() const {
  std::vector<Cell> out;
  for (int col = 0; col < width_; ++col) {
    for (int row = 0; row < height_; ++row) {
      if (occupied_[index(col, row)] != 0) {
        out.push_back({col, row});
      }
    }
  }
  return out;
}

std::size_t GridMap::obstacle_count() const {
  return static_cast<std::size_t>(std::count(occupied_.begin(), occupied_.end(), 1));
}

Cell GridMap::cell_of(Point p) const {
  const int col = static_cast<int>(std::floor(p.x / cell_size_));
  const int row = static_cast<int>(std::floor(p.y / cell_size_));
  return {std::clamp(col, 0, width_ - 1), std::clamp(row, 0, height_ - 1)};
}

void GridMap::validate() const {
  auto inside = [&](Point p) {
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= extent_x() && p.y <= extent_y();
  };
  if (!inside(start_)) throw ConfigError("map start lies outside the map extent");
  if (!inside(goal_)) throw ConfigError("map goal lies outside the map extent");
  const Cell s = cell_of(start_);
  const Cell g = cell_of(goal_);
  if (is_obstacle(s.col, s.row)) throw ConfigError("map start lies on an obstacle cell");
  if (is_obstacle(g.col, g.row)) throw ConfigError("map goal lies on an obstacle cell");
  if (!(start_.x < extent_x() / 2 && start_.y < extent_y() / 2)) {
    throw ConfigError("map start must lie in the lower-left quadrant");
  }
  if (!(goal_.x > extent_x() / 2 && goal_.y > extent_y() / 2)) {
    throw ConfigError("map goal must lie in the upper-right quadrant");
  }
}

bool cells_connected(const GridMap& map) {
  const Cell s = map.cell_of(map.start());
  const Cell g = map.cell_of(map.goal());
  if (map.is_obstacle(s.col, s.row) || map.is_obstacle(g.col, g.row)) {
    return false;
  }
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(map.width() * map.height()), 0);
  auto id = [&](Cell c) { return static_cast<std::size_t>(c.row * map.width() + c.col); };
  std::queue<Cell> frontier;
  frontier.push(s);
  seen[id(s)] = 1;
  constexpr std::array<std::array<int, 2>, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  while (!frontier.empty()) {
    const Cell c = frontier.front();
    frontier.pop();
    if (c == g) {
      return true;
    }
    for (const auto& [dc, dr] : kSteps) {
      const Cell n{c.col + dc, c.row + dr};
      if (map.in_grid(n.col, n.row) && !map.is_obstacle(n.col, n.row) && !seen[id(n)]) {
        seen[id(n)] = 1;
        frontier.push(n);
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Encoding and objective

std::size_t decision_dimension(std::size_t waypoints) {
  if (waypoints < 3) {
    throw ConfigError("a path needs at least 3 waypoints (one interior point)");
  }
  return 2 * (waypoints - 2);
}

Polyline decode(std::span<const double> position, const GridMap& map, std::size_t waypoints) {
  if (position.size() != decision_dimension(waypoints)) {
    throw ContractError("decode: expected " + std::to_string(decision_dimension(waypoints)) +
                        " coordinates, got " + std::to_string(position.size()));
  }
  Polyline path;
  path.reserve(waypoints);
  path.push_back(map.start());
  for (std::size_t i = 0; i < position.size(); i += 2) {
    path.push_back({position[i], position[i + 1]});
  }
  path.push_back(map.goal());
  return path;
}

std::vector<double> encode_interior(const Polyline& path) {
  std::vector<double> out;
  if (path.size() < 2) {
    return out;
  }
  out.reserve(2 * (path.size() - 2));
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    out.push_back(path[i].x);
    out.push_back(path[i].y);
  }
  return out;
}

double path_length(const Polyline& path) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    total += std::hypot(path[i + 1].x - path[i].x, path[i + 1].y - path[i].y);
  }
  return total;
}

int count_segment_obstacles(Point a, Point b, const GridMap& map) {
  // Column sweep in cell units: for every column strip the segment spans,
  // take the segment's y-extent inside that strip and count the closed cells
  // it overlaps. Each cell is seen at most once per segment.
  const double inv = 1.0 / map.cell_size();
  const double px = a.x * inv, py = a.y * inv;
  const double qx = b.x * inv, qy = b.y * inv;
  const double xa = std::min(px, qx);
  const double xb = std::max(px, qx);

  const int col_lo = std::max(0, static_cast<int>(std::ceil(xa)) - 1);
  const int col_hi = std::min(map.width() - 1, static_cast<int>(std::floor(xb)));
  const bool vertical = px == qx;
  const double slope = vertical ? 0.0 : (qy - py) / (qx - px);

  int count = 0;
  for (int col = col_lo; col <= col_hi; ++col) {
    double y_lo, y_hi;
    if (vertical) {
      y_lo = std::min(py, qy);
      y_hi = std::max(py, qy);
    } else {
      const double x0 = std::max(xa, static_cast<double>(col));
      const double x1 = std::min(xb, static_cast<double>(col + 1));
      if (x0 > x1) {
        continue;
      }
      const double y0 = py + (x0 - px) * slope;
      const double y1 = py + (x1 - px) * slope;
      y_lo = std::min(y0, y1);
      y_hi = std::max(y0, y1);
    }
    const int row_lo = std::max(0, static_cast<int>(std::ceil(y_lo)) - 1);
    const int row_hi = std::min(map.height() - 1, static_cast<int>(std::floor(y_hi)));
    for (int row = row_lo; row <= row_hi; ++row) {
      if (map.is_obstacle(col, row)) {
        ++count;
      }
    }
  }
  return count;
}

int count_obstacle_intersections(const Polyline& path, const GridMap& map) {
  int total = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    total += count_segment_obstacles(path[i], path[i + 1], map);
  }
  return total;
}

void PenaltyConfig::validate() const {
  if (!(P > 0.0) || !std::isfinite(P)) {
    throw ConfigError("penalty coefficient P must be finite and positive");
  }
}

double path_objective(std::span<const double> position, const GridMap& map,
                      std::size_t waypoints, const PenaltyConfig& penalty) {
  const Polyline path = decode(position, map, waypoints);
  const int collisions = count_obstacle_intersections(path, map);
  if (penalty.additive) {
    return path_length(path) + penalty.P * collisions;
  }
  if (collisions > 0) {
    return penalty.P * collisions;
  }
  return path_length(path);
}

ObjectiveSpec make_path_objective(const GridMap& map, std::size_t waypoints,
                                  const PenaltyConfig& penalty) {
  penalty.validate();
  map.validate();
  const std::size_t dim = decision_dimension(waypoints);
  ObjectiveSpec spec;
  spec.name = "path";
  spec.dimension = dim;
  spec.lower.assign(dim, 0.0);
  spec.upper.resize(dim);
  for (std::size_t j = 0; j < dim; j += 2) {
    spec.upper[j] = map.extent_x();
    spec.upper[j + 1] = map.extent_y();
  }
  spec.evaluate = [map, waypoints, penalty](std::span<const double> x, RandomSource&) {
    return path_objective(x, map, waypoints, penalty);
  };
  return spec;
}

// ---------------------------------------------------------------------------
// Generation

GridMap generate_map(std::uint64_t seed, const MapGenConfig& config) {
  if (!(config.density >= 0.0 && config.density < 1.0)) {
    throw ConfigError("obstacle density must lie in [0, 1)");
  }
  GridMap map(config.width, config.height, config.cell_size, config.start, config.goal);
  map.validate();
  const Cell s = map.cell_of(config.start);
  const Cell g = map.cell_of(config.goal);

  RngStream rng(seed);
  for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
    for (int row = 0; row < config.height; ++row) {
      for (int col = 0; col < config.width; ++col) {
        const Cell c{col, row};
        const bool blocked = c != s && c != g && rng.uniform() < config.density;
        map.set_obstacle(c, blocked);
      }
    }
    if (cells_connected(map)) {
      return map;
    }
  }
  throw GenerationError("no connected map after " + std::to_string(kMaxGenerationAttempts) +
                        " attempts at density " + std::to_string(config.density));
}

// ---------------------------------------------------------------------------
// Visibility-graph oracle

namespace {

constexpr double kGridEps = 1e-9;

void cover_indices(double v, int& lo, int& hi) {
  const double r = std::round(v);
  if (std::abs(v - r) < kGridEps) {
    lo = static_cast<int>(r) - 1;
    hi = static_cast<int>(r);
  } else {
    lo = hi = static_cast<int>(std::floor(v));
  }
}

// Point (cell units) lies in the topological interior of the obstacle union:
// every cell whose closure contains it is an obstacle.
bool in_obstacle_interior(double x, double y, const GridMap& map) {
  int c0, c1, r0, r1;
  cover_indices(x, c0, c1);
  cover_indices(y, r0, r1);
  for (int c = c0; c <= c1; ++c) {
    for (int r = r0; r <= r1; ++r) {
      if (!map.is_obstacle(c, r)) {
        return false;
      }
    }
  }
  return true;
}

// Between consecutive grid-line crossings the set of cells containing a
// point of the segment is constant, so one midpoint per piece decides it.
bool segment_avoids_interior(Point p, Point q, const GridMap& map) {
  std::vector<double> ts{0.0, 1.0};
  const double dx = q.x - p.x;
  const double dy = q.y - p.y;
  if (dx != 0.0) {
    const int lo = static_cast<int>(std::ceil(std::min(p.x, q.x)));
    const int hi = static_cast<int>(std::floor(std::max(p.x, q.x)));
    for (int i = lo; i <= hi; ++i) ts.push_back((i - p.x) / dx);
  }
  if (dy != 0.0) {
    const int lo = static_cast<int>(std::ceil(std::min(p.y, q.y)));
    const int hi = static_cast<int>(std::floor(std::max(p.y, q.y)));
    for (int i = lo; i <= hi; ++i) ts.push_back((i - p.y) / dy);
  }
  std::sort(ts.begin(), ts.end());
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    const double t0 = std::clamp(ts[k], 0.0, 1.0);
    const double t1 = std::clamp(ts[k + 1], 0.0, 1.0);
    if (t1 - t0 <= 1e-12) {
      continue;
    }
    const double tm = 0.5 * (t0 + t1);
    if (in_obstacle_interior(p.x + tm * dx, p.y + tm * dy, map)) {
      return false;
    }
  }
  return true;
}

Polyline oracle_route_cells(const GridMap& map) {
  map.validate();
  if (!cells_connected(map)) {
    throw InfeasibleMapError("oracle: start and goal cells are not connected");
  }
  const double inv = 1.0 / map.cell_size();
  std::vector<Point> nodes{{map.start().x * inv, map.start().y * inv},
                           {map.goal().x * inv, map.goal().y * inv}};
  std::set<std::pair<int, int>> corners;
  for (const Cell& c : map.obstacles()) {
    for (int dc = 0; dc <= 1; ++dc) {
      for (int dr = 0; dr <= 1; ++dr) {
        corners.insert({c.col + dc, c.row + dr});
      }
    }
  }
  for (const auto& [x, y] : corners) {
    if (!in_obstacle_interior(x, y, map)) {
      nodes.push_back({static_cast<double>(x), static_cast<double>(y)});
    }
  }

  const std::size_t n = nodes.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> prev(n, n);
  std::vector<std::uint8_t> done(n, 0);
  dist[0] = 0.0;
  for (;;) {
    std::size_t u = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && (u == n || dist[i] < dist[u])) u = i;
    }
    if (u == n || !std::isfinite(dist[u])) break;
    done[u] = 1;
    if (u == 1) break;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      const double w = std::hypot(nodes[v].x - nodes[u].x, nodes[v].y - nodes[u].y);
      if (dist[u] + w < dist[v] && segment_avoids_interior(nodes[u], nodes[v], map)) {
        dist[v] = dist[u] + w;
        prev[v] = u;
      }
    }
  }
  if (!std::isfinite(dist[1])) {
    throw InfeasibleMapError("oracle: goal unreachable in the visibility graph");
  }
  Polyline route;
  for (std::size_t v = 1; v != n; v = prev[v]) {
    route.push_back(nodes[v]);
  }
  std::reverse(route.begin(), route.end());
  return route;
}

}  // namespace

Polyline shortest_path_oracle_route(const GridMap& map) {
  Polyline route = oracle_route_cells(map);
  for (auto& p : route) {
    p.x *= map.cell_size();
    p.y *= map.cell_size();
  }
  route.front() = map.start();
  route.back() = map.goal();
  return route;
}

double shortest_path_oracle(const GridMap& map) {
  return path_length(shortest_path_oracle_route(map));
}

// ---------------------------------------------------------------------------
// Map files

namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using json = nlohmann::json;

[[noreturn]] void field_error(const std::string& source, const std::string& field,
                              const std::string& what) {
  throw IoError(source + ": field '" + field + "': " + what);
}

const json& require(const json& doc, const std::string& source, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) {
    field_error(source, field, "missing");
  }
  return *it;
}

int read_int(const json& v, const std::string& source, const std::string& field) {
  if (!v.is_number_integer()) field_error(source, field, "expected an integer");
  return v.get<int>();
}

double read_real(const json& v, const std::string& source, const std::string& field) {
  if (!v.is_number()) field_error(source, field, "expected a number");
  return v.get<double>();
}

Point read_point(const json& v, const std::string& source, const std::string& field) {
  if (!v.is_array() || v.size() != 2) field_error(source, field, "expected [x, y]");
  return {read_real(v[0], source, field + "[0]"), read_real(v[1], source, field + "[1]")};
}

}  // namespace

std::string map_to_json(const GridMap& map) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"width\": " << map.width() << ",\n";
  out << "  \"height\": " << map.height() << ",\n";
  out << "  \"cell_size_m\": " << format_real(map.cell_size()) << ",\n";
  out << "  \"start\": [" << format_real(map.start().x) << ", " << format_real(map.start().y)
      << "],\n";
  out << "  \"goal\": [" << format_real(map.goal().x) << ", " << format_real(map.goal().y)
      << "],\n";
  out << "  \"obstacles\": [";
  const auto cells = map.obstacles();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out << (i ? ",\n    " : "\n    ") << "[" << cells[i].col << ", " << cells[i].row << "]";
  }
  out << (cells.empty() ? "]\n" : "\n  ]\n");
  out << "}\n";
  return out.str();
}

GridMap map_from_json(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(source + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw IoError(source + ": top level must be an object");
  }
  static const std::set<std::string> kFields{"width", "height", "cell_size_m",
                                             "obstacles", "start", "goal"};
  for (const auto& [key, value] : doc.items()) {
    if (!kFields.contains(key)) {
      field_error(source, key, "unknown field");
    }
  }
  const int width = read_int(require(doc, source, "width"), source, "width");
  const int height = read_int(require(doc, source, "height"), source, "height");
  const double cell = read_real(require(doc, source, "cell_size_m"), source, "cell_size_m");
  const Point start = read_point(require(doc, source, "start"), source, "start");
  const Point goal = read_point(require(doc, source, "goal"), source, "goal");
  const json& obstacles = require(doc, source, "obstacles");
  if (!obstacles.is_array()) field_error(source, "obstacles", "expected a list");
  if (width <= 0) field_error(source, "width", "must be positive");
  if (height <= 0) field_error(source, "height", "must be positive");
  if (!(cell > 0.0)) field_error(source, "cell_size_m", "must be positive");

  GridMap map(width, height, cell, start, goal);
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const std::string field = "obstacles[" + std::to_string(i) + "]";
    const json& entry = obstacles[i];
    if (!entry.is_array() || entry.size() != 2) field_error(source, field, "expected [col, row]");
    const int col = read_int(entry[0], source, field + "[0]");
    const int row = read_int(entry[1], source, field + "[1]");
    if (!map.in_grid(col, row)) {
      field_error(source, field,
                  "cell (" + std::to_string(col) + ", " + std::to_string(row) +
                      ") outside the " + std::to_string(width) + "x" +
                      std::to_string(height) + " grid");
    }
    map.set_obstacle({col, row});
  }
  try {
    map.validate();
  } catch (const ConfigError& e) {
    throw IoError(source + ": " + e.what());
  }
  return map;
}

void save_map(const GridMap& map, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw IoError("cannot write map file " + file.string());
  }
  out << map_to_json(map);
  if (!out) {
    throw IoError("failed writing map file " + file.string());
  }
}

GridMap load_map(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw IoError("cannot read map file " + file.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return map_from_json(buf.str(), file.string());
}

}  // namespace swarmopt::pathplan
