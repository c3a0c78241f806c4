#include "swarmopt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace swarmopt::experiment {
namespace {

using json = nlohmann::json;

std::string sci(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

std::string short_sci(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Runs task(i) for i in [0, n) on up to `threads` workers. Results must be
// written by index; if several tasks throw, the lowest index wins so failures
// are reported deterministically.
template <typename Task>
void parallel_for(std::size_t n, std::size_t threads, Task task) {
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex guard;
  std::size_t failed_index = n;
  std::exception_ptr failure;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(guard);
          if (i < failed_index) {
            failed_index = i;
            failure = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& worker : workers) worker.join();
  if (failure) std::rethrow_exception(failure);
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string() +
                  (ec ? ": " + ec.message() : ""));
  }
}

void write_file(const std::filesystem::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + file.string());
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError("failed writing " + file.string());
  }
}

std::string curve_csv(const std::vector<double>& curve) {
  std::string out = "iteration,best_so_far\n";
  for (std::size_t t = 0; t < curve.size(); ++t) {
    out += std::to_string(t + 1) + "," + sci(curve[t]) + "\n";
  }
  return out;
}

std::vector<double> mean_curve(const std::vector<std::vector<double>>& curves) {
  std::vector<double> mean(curves.front().size(), 0.0);
  for (const auto& c : curves) {
    for (std::size_t t = 0; t < mean.size(); ++t) mean[t] += c[t];
  }
  for (auto& v : mean) v /= static_cast<double>(curves.size());
  return mean;
}

std::vector<bench::FunctionId> selected_functions(const ExperimentConfig& config) {
  std::set<bench::FunctionId> wanted;
  for (const auto& name : config.functions) {
    auto id = bench::parse_id(name);
    if (!id) throw ConfigError("unknown benchmark function '" + name + "'");
    wanted.insert(*id);
  }
  std::vector<bench::FunctionId> out;
  for (std::size_t i = 1; i <= bench::kSuiteSize; ++i) {
    const auto id = static_cast<bench::FunctionId>(i);
    if (wanted.empty() || wanted.contains(id)) out.push_back(id);
  }
  return out;
}

Mode parse_mode(const std::string& text) {
  if (text == "bench") return Mode::Bench;
  if (text == "path") return Mode::Path;
  if (text == "catalog") return Mode::Catalog;
  if (text == "maps") return Mode::Maps;
  throw ConfigError("unknown mode '" + text + "' (expected bench, path, catalog or maps)");
}

template <typename T>
T get_field(const json& doc, const char* key, const std::string& source) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(source + ": field '" + key + "' has the wrong type");
  }
}

void reject_unknown(const json& doc, const std::set<std::string>& known,
                    const std::string& source, const std::string& prefix) {
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) {
      throw ConfigError(source + ": unknown field '" + prefix + key + "'");
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

void ExperimentConfig::validate() const {
  if (runs == 0) throw ConfigError("runs must be at least 1");
  RunConfig{population, iterations, base_seed}.validate();
  if (algorithms.empty()) throw ConfigError("no algorithms selected");
  for (const auto& name : algorithms) {
    if (std::find(kAlgorithms.begin(), kAlgorithms.end(), name) == kAlgorithms.end()) {
      throw ConfigError("unknown algorithm '" + name + "' (expected igwo, gwo, pso or woa)");
    }
  }
  if (mode == Mode::Bench || mode == Mode::Catalog) {
    if (dimension < 2) throw ConfigError("benchmark dimension must be at least 2");
    selected_functions(*this);
  }
  if (mode == Mode::Path || mode == Mode::Maps) {
    if (!(density >= 0.0 && density < 1.0)) throw ConfigError("density must lie in [0, 1)");
    pathplan::decision_dimension(waypoints);
    penalty.validate();
  }
  params.igwo.validate();
  params.pso.validate();
  params.woa.validate();
}

ExperimentConfig config_from_json(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(source + ": top level must be an object");
  reject_unknown(doc,
                 {"mode", "algorithms", "runs", "population", "iterations", "seed", "threads",
                  "dimension", "functions", "maps", "generate_maps", "density", "map_seed",
                  "waypoints", "penalty", "additive_penalty", "output", "igwo", "pso", "woa"},
                 source, "");

  ExperimentConfig c;
  if (doc.contains("mode")) c.mode = parse_mode(get_field<std::string>(doc, "mode", source));
  if (doc.contains("algorithms"))
    c.algorithms = get_field<std::vector<std::string>>(doc, "algorithms", source);
  if (doc.contains("runs")) c.runs = get_field<std::size_t>(doc, "runs", source);
  if (doc.contains("population")) c.population = get_field<std::size_t>(doc, "population", source);
  if (doc.contains("iterations")) c.iterations = get_field<std::size_t>(doc, "iterations", source);
  if (doc.contains("seed")) c.base_seed = get_field<std::uint64_t>(doc, "seed", source);
  if (doc.contains("threads")) c.threads = get_field<std::size_t>(doc, "threads", source);
  if (doc.contains("dimension")) c.dimension = get_field<std::size_t>(doc, "dimension", source);
  if (doc.contains("functions"))
    c.functions = get_field<std::vector<std::string>>(doc, "functions", source);
  if (doc.contains("maps")) {
    for (const auto& m : get_field<std::vector<std::string>>(doc, "maps", source)) {
      c.maps.emplace_back(m);
    }
  }
  if (doc.contains("generate_maps"))
    c.generate_maps = get_field<std::size_t>(doc, "generate_maps", source);
  if (doc.contains("density")) c.density = get_field<double>(doc, "density", source);
  if (doc.contains("map_seed")) c.map_seed = get_field<std::uint64_t>(doc, "map_seed", source);
  if (doc.contains("waypoints")) c.waypoints = get_field<std::size_t>(doc, "waypoints", source);
  if (doc.contains("penalty")) c.penalty.P = get_field<double>(doc, "penalty", source);
  if (doc.contains("additive_penalty"))
    c.penalty.additive = get_field<bool>(doc, "additive_penalty", source);
  if (doc.contains("output")) c.output_dir = get_field<std::string>(doc, "output", source);

  if (doc.contains("igwo")) {
    const json& g = doc["igwo"];
    if (!g.is_object()) throw ConfigError(source + ": field 'igwo' must be an object");
    reject_unknown(g, {"lobl_k", "acp", "lobl"}, source, "igwo.");
    if (g.contains("lobl_k")) c.params.igwo.lobl_k = get_field<double>(g, "lobl_k", source);
    if (g.contains("acp")) c.params.igwo.enable_acp = get_field<bool>(g, "acp", source);
    if (g.contains("lobl")) c.params.igwo.enable_lobl = get_field<bool>(g, "lobl", source);
  }
  if (doc.contains("pso")) {
    const json& p = doc["pso"];
    if (!p.is_object()) throw ConfigError(source + ": field 'pso' must be an object");
    reject_unknown(p, {"inertia_start", "inertia_end", "c1", "c2", "v_max_fraction"}, source,
                   "pso.");
    auto& pso = c.params.pso;
    if (p.contains("inertia_start")) pso.inertia_start = get_field<double>(p, "inertia_start", source);
    if (p.contains("inertia_end")) pso.inertia_end = get_field<double>(p, "inertia_end", source);
    if (p.contains("c1")) pso.c1 = get_field<double>(p, "c1", source);
    if (p.contains("c2")) pso.c2 = get_field<double>(p, "c2", source);
    if (p.contains("v_max_fraction"))
      pso.v_max_fraction = get_field<double>(p, "v_max_fraction", source);
  }
  if (doc.contains("woa")) {
    const json& w = doc["woa"];
    if (!w.is_object()) throw ConfigError(source + ": field 'woa' must be an object");
    reject_unknown(w, {"spiral_b", "spiral_probability"}, source, "woa.");
    if (w.contains("spiral_b")) c.params.woa.spiral_b = get_field<double>(w, "spiral_b", source);
    if (w.contains("spiral_probability"))
      c.params.woa.spiral_probability = get_field<double>(w, "spiral_probability", source);
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str(), file.string());
}

std::unique_ptr<Optimizer> make_optimizer(const std::string& name, const AlgorithmParams& params) {
  if (name == "igwo") return std::make_unique<igwo::IgwoOptimizer>(params.igwo);
  if (name == "gwo") return std::make_unique<baselines::GwoOptimizer>();
  if (name == "pso") return std::make_unique<baselines::PsoOptimizer>(params.pso);
  if (name == "woa") return std::make_unique<baselines::WoaOptimizer>(params.woa);
  throw ConfigError("unknown algorithm '" + name + "'");
}

// ---------------------------------------------------------------------------
// Statistics and reports

StatRow summarize(std::string algorithm, std::string problem, std::span<const double> values) {
  if (values.empty()) {
    throw ContractError("summarize: no values");
  }
  StatRow row{std::move(algorithm), std::move(problem), 0.0, 0.0, values[0], values[0]};
  double sum = 0.0;
  for (double v : values) {
    sum += v;
    row.best = std::min(row.best, v);
    row.worst = std::max(row.worst, v);
  }
  const double n = static_cast<double>(values.size());
  row.avg = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - row.avg) * (v - row.avg);
    row.std = std::sqrt(ss / (n - 1.0));
  }
  // The mean of identical values can round one ulp outside [best, worst].
  row.avg = std::clamp(row.avg, row.best, row.worst);
  return row;
}

std::string format_csv(const std::vector<StatRow>& rows) {
  std::string out = "algorithm,problem,avg,std,best,worst\n";
  for (const auto& r : rows) {
    out += r.algorithm + "," + r.problem + "," + sci(r.avg) + "," + sci(r.std) + "," +
           sci(r.best) + "," + sci(r.worst) + "\n";
  }
  return out;
}

std::vector<StatRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "algorithm,problem,avg,std,best,worst") {
    throw IoError("stats csv: missing or malformed header");
  }
  std::vector<StatRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6) {
      throw IoError("stats csv line " + std::to_string(line_no) + ": expected 6 fields");
    }
    auto real = [&](const std::string& s) {
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (end == s.c_str() || *end != '\0') {
        throw IoError("stats csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
      }
      return v;
    };
    rows.push_back({fields[0], fields[1], real(fields[2]), real(fields[3]), real(fields[4]),
                    real(fields[5])});
  }
  return rows;
}

std::string format_table(const std::vector<StatRow>& rows) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %-10s %14s %14s %14s %14s\n", "algorithm", "problem",
                "avg", "std", "best", "worst");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-10s %-10s %14s %14s %14s %14s\n", r.algorithm.c_str(),
                  r.problem.c_str(), short_sci(r.avg).c_str(), short_sci(r.std).c_str(),
                  short_sci(r.best).c_str(), short_sci(r.worst).c_str());
    out << line;
  }
  return out.str();
}

void emit_report(const std::vector<StatRow>& rows, ReportFormat format,
                 const std::filesystem::path& file) {
  if (rows.empty()) {
    throw ContractError("emit_report: refusing to write an empty report");
  }
  if (file.has_parent_path()) ensure_directory(file.parent_path());
  write_file(file, format == ReportFormat::Csv ? format_csv(rows) : format_table(rows));
}

// ---------------------------------------------------------------------------
// Benchmark study

std::vector<StatRow> BenchReport::rows() const {
  std::vector<StatRow> out;
  for (const auto& cell : cells) out.push_back(cell.stats);
  return out;
}

BenchReport run_bench_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto functions = selected_functions(config);
  std::vector<bench::BenchmarkSpec> specs;
  for (auto id : functions) specs.push_back(bench::make(id, config.dimension));

  const std::size_t n_alg = config.algorithms.size();
  const std::size_t n_fun = specs.size();
  const std::size_t n_runs = config.runs;
  std::vector<RunResult> results(n_alg * n_fun * n_runs);

  parallel_for(results.size(), config.threads, [&](std::size_t task) {
    const std::size_t run_index = task % n_runs;
    const std::size_t f = (task / n_runs) % n_fun;
    const std::size_t a = task / (n_runs * n_fun);
    auto optimizer = make_optimizer(config.algorithms[a], config.params);
    const RunConfig rc{config.population, config.iterations, config.base_seed + run_index};
    results[task] = run(*optimizer, specs[f].objective, rc);
  });

  BenchReport report;
  for (std::size_t a = 0; a < n_alg; ++a) {
    for (std::size_t f = 0; f < n_fun; ++f) {
      BenchCell cell;
      cell.algorithm = config.algorithms[a];
      cell.problem = std::string(specs[f].label);
      std::vector<std::vector<double>> curves;
      for (std::size_t r = 0; r < n_runs; ++r) {
        const RunResult& res = results[(a * n_fun + f) * n_runs + r];
        cell.finals.push_back(res.best_fitness);
        cell.evaluations += res.evaluations;
        curves.push_back(res.curve);
      }
      cell.mean_curve = mean_curve(curves);
      cell.stats = summarize(cell.algorithm, cell.problem, cell.finals);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

void write_bench_outputs(const BenchReport& report, const std::filesystem::path& dir) {
  ensure_directory(dir);
  ensure_directory(dir / "curves");
  const auto rows = report.rows();
  emit_report(rows, ReportFormat::Csv, dir / "bench_stats.csv");

  std::string table = format_table(rows);
  table += "\nevaluations per run\n";
  for (const auto& cell : report.cells) {
    table += "  " + cell.algorithm + " " + cell.problem + ": " +
             std::to_string(cell.evaluations / cell.finals.size()) + "\n";
  }
  write_file(dir / "bench_stats.txt", table);

  for (const auto& cell : report.cells) {
    write_file(dir / "curves" / ("bench_" + cell.algorithm + "_" + cell.problem + ".csv"),
               curve_csv(cell.mean_curve));
  }
}

// ---------------------------------------------------------------------------
// Path-planning study

std::vector<NamedMap> prepare_maps(const ExperimentConfig& config) {
  std::vector<NamedMap> maps;
  if (!config.maps.empty()) {
    for (const auto& file : config.maps) {
      maps.push_back({file.stem().string(), pathplan::load_map(file)});
    }
    return maps;
  }
  const std::size_t count = config.generate_maps == 0 ? 4 : config.generate_maps;
  pathplan::MapGenConfig gen;
  gen.density = config.density;
  for (std::size_t k = 0; k < count; ++k) {
    maps.push_back({"map" + std::to_string(k + 1),
                    pathplan::generate_map(config.map_seed + k, gen)});
  }
  return maps;
}

PathReport run_path_experiment(const ExperimentConfig& config) {
  config.validate();
  PathReport report;
  report.maps = prepare_maps(config);
  for (const auto& m : report.maps) {
    if (!pathplan::cells_connected(m.map)) {
      throw ConfigError("map '" + m.name + "' has no free route from start to goal");
    }
    report.oracle_lengths.push_back(pathplan::shortest_path_oracle(m.map));
  }

  std::vector<ObjectiveSpec> objectives;
  for (const auto& m : report.maps) {
    objectives.push_back(pathplan::make_path_objective(m.map, config.waypoints, config.penalty));
  }

  const std::size_t n_map = report.maps.size();
  const std::size_t n_alg = config.algorithms.size();
  const std::size_t n_runs = config.runs;
  std::vector<RunResult> results(n_map * n_alg * n_runs);

  parallel_for(results.size(), config.threads, [&](std::size_t task) {
    const std::size_t run_index = task % n_runs;
    const std::size_t a = (task / n_runs) % n_alg;
    const std::size_t m = task / (n_runs * n_alg);
    auto optimizer = make_optimizer(config.algorithms[a], config.params);
    const RunConfig rc{config.population, config.iterations, config.base_seed + run_index};
    results[task] = run(*optimizer, objectives[m], rc);
  });

  for (std::size_t m = 0; m < n_map; ++m) {
    const auto& map = report.maps[m].map;
    for (std::size_t a = 0; a < n_alg; ++a) {
      PathCell cell;
      cell.algorithm = config.algorithms[a];
      cell.map = report.maps[m].name;
      std::vector<std::vector<double>> curves;
      std::vector<double> objectives_per_run;
      double length_sum = 0.0;
      for (std::size_t r = 0; r < n_runs; ++r) {
        const RunResult& res = results[(m * n_alg + a) * n_runs + r];
        PathRun pr;
        pr.objective = res.best_fitness;
        pr.path = pathplan::decode(res.best_position, map, config.waypoints);
        pr.length = pathplan::path_length(pr.path);
        pr.collisions = pathplan::count_obstacle_intersections(pr.path, map);
        length_sum += pr.length;
        objectives_per_run.push_back(pr.objective);
        cell.evaluations += res.evaluations;
        curves.push_back(res.curve);
        cell.runs.push_back(std::move(pr));
      }
      cell.mean_length = length_sum / static_cast<double>(n_runs);
      cell.mean_curve = mean_curve(curves);
      cell.stats = summarize(cell.algorithm, cell.map, objectives_per_run);

      bool have_feasible = false;
      for (std::size_t r = 0; r < n_runs; ++r) {
        const PathRun& pr = cell.runs[r];
        if (pr.collisions == 0) {
          ++cell.feasible_runs;
          if (!have_feasible || pr.length < cell.runs[cell.winner].length) {
            cell.winner = r;
            have_feasible = true;
          }
        }
      }
      if (!have_feasible) {
        for (std::size_t r = 1; r < n_runs; ++r) {
          if (cell.runs[r].objective < cell.runs[cell.winner].objective) cell.winner = r;
        }
      }
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

void write_path_outputs(const PathReport& report, const std::filesystem::path& dir) {
  ensure_directory(dir);
  ensure_directory(dir / "maps");
  ensure_directory(dir / "paths");
  ensure_directory(dir / "curves");

  for (std::size_t m = 0; m < report.maps.size(); ++m) {
    const auto& nm = report.maps[m];
    pathplan::save_map(nm.map, dir / "maps" / (nm.name + ".json"));
    std::string pts = "x,y\n";
    for (const auto& p : pathplan::shortest_path_oracle_route(nm.map)) {
      pts += sci(p.x) + "," + sci(p.y) + "\n";
    }
    write_file(dir / "paths" / (nm.name + "_oracle.csv"), pts);
  }

  std::vector<StatRow> rows;
  std::string summary =
      "map,algorithm,oracle_m,best_length_m,winner_nO,mean_length_m,feasible_runs,runs,"
      "evaluations_per_run\n";
  std::ostringstream table;
  char line[200];
  std::snprintf(line, sizeof line, "%-8s %-6s %10s %10s %6s %10s %9s %12s\n", "map", "algo",
                "oracle_m", "best_m", "nO", "mean_m", "feasible", "evals/run");
  table << line;

  for (const auto& cell : report.cells) {
    rows.push_back(cell.stats);
    const std::size_t m = static_cast<std::size_t>(
        std::find_if(report.maps.begin(), report.maps.end(),
                     [&](const NamedMap& nm) { return nm.name == cell.map; }) -
        report.maps.begin());
    const PathRun& win = cell.runs[cell.winner];
    const std::uint64_t evals = cell.evaluations / cell.runs.size();
    summary += cell.map + "," + cell.algorithm + "," + sci(report.oracle_lengths[m]) + "," +
               sci(win.length) + "," + std::to_string(win.collisions) + "," +
               sci(cell.mean_length) + "," + std::to_string(cell.feasible_runs) + "," +
               std::to_string(cell.runs.size()) + "," + std::to_string(evals) + "\n";
    std::snprintf(line, sizeof line, "%-8s %-6s %10s %10s %6d %10s %5zu/%-3zu %12llu\n",
                  cell.map.c_str(), cell.algorithm.c_str(),
                  fixed(report.oracle_lengths[m], 4).c_str(), fixed(win.length, 4).c_str(),
                  win.collisions, fixed(cell.mean_length, 4).c_str(), cell.feasible_runs,
                  cell.runs.size(), static_cast<unsigned long long>(evals));
    table << line;

    std::string pts = "x,y\n";
    for (const auto& p : win.path) pts += sci(p.x) + "," + sci(p.y) + "\n";
    write_file(dir / "paths" / (cell.map + "_" + cell.algorithm + ".csv"), pts);
    write_file(dir / "curves" / ("path_" + cell.map + "_" + cell.algorithm + ".csv"),
               curve_csv(cell.mean_curve));
  }
  emit_report(rows, ReportFormat::Csv, dir / "path_stats.csv");
  write_file(dir / "path_summary.csv", summary);
  write_file(dir / "path_summary.txt", table.str());
}

std::string catalog_csv(std::size_t dimension) {
  std::string out = "id,name,dimension,lower,upper,known_optimum\n";
  for (const auto& b : bench::suite(dimension)) {
    out += std::string(b.label) + "," + std::string(b.name) + "," + std::to_string(b.dimension) +
           "," + sci(b.lower) + "," + sci(b.upper) + "," + sci(b.known_optimum) + "\n";
  }
  return out;
}

}  // namespace swarmopt::experiment
