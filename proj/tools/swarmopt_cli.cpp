// swarmopt: run benchmark and path-planning studies from the command line.
//
// Exit codes: 0 ok, 1 usage, 2 configuration error, 3 evaluation error,
// 4 I/O error, 5 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "swarmopt/experiment.hpp"

namespace ex = swarmopt::experiment;

int main(int argc, char** argv) {
  CLI::App app{"Swarm optimizer studies: IGWO, GWO, PSO and WOA on the benchmark suite "
               "and on grid path planning."};
  app.set_version_flag("--version", "swarmopt 0.1.0");

  std::string config_file;
  std::string mode;
  std::vector<std::string> algos;
  std::vector<std::string> funcs;
  std::vector<std::string> maps;
  std::size_t runs = 0, pop = 0, iters = 0, threads = 0, dim = 0, gen_maps = 0, waypoints = 0;
  std::uint64_t seed = 0, map_seed = 0;
  double density = 0.0, lobl_k = 0.0, penalty = 0.0;
  std::string out;
  bool no_acp = false, no_lobl = false, additive = false;

  app.add_option("--config", config_file, "JSON config file; flags override its values");
  app.add_option("--mode", mode, "bench | path | catalog | maps")
      ->check(CLI::IsMember({"bench", "path", "catalog", "maps"}));
  app.add_option("--algo", algos, "Algorithm to run (repeatable): igwo gwo pso woa");
  app.add_option("--runs", runs, "Independent runs per algorithm and problem");
  app.add_option("--pop", pop, "Population size");
  app.add_option("--iters", iters, "Iterations per run");
  app.add_option("--seed", seed, "Base seed; run r uses seed + r");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");
  app.add_option("--func", funcs, "Benchmark function F1..F13 (repeatable)");
  app.add_option("--dim", dim, "Benchmark dimension");
  app.add_option("--map", maps, "Map JSON file (repeatable)");
  app.add_option("--gen-maps", gen_maps, "Number of maps to generate when no --map is given");
  app.add_option("--density", density, "Obstacle density for generated maps");
  app.add_option("--map-seed", map_seed, "Seed of the first generated map");
  app.add_option("--waypoints", waypoints, "Polyline points including start and goal");
  app.add_option("--penalty", penalty, "Collision penalty per obstacle hit");
  app.add_flag("--additive-penalty", additive, "Objective is length + penalty * hits");
  app.add_option("--lobl-k", lobl_k, "IGWO lens-opposition scale factor");
  app.add_flag("--no-acp", no_acp, "Disable the IGWO exploration phase");
  app.add_flag("--no-lobl", no_lobl, "Disable the IGWO lens-opposition phase");
  app.add_option("--out", out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    ex::ExperimentConfig cfg = config_file.empty() ? ex::ExperimentConfig{}
                                                   : ex::load_config(config_file);
    auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--mode")) {
      cfg.mode = mode == "bench"  ? ex::Mode::Bench
                 : mode == "path" ? ex::Mode::Path
                 : mode == "maps" ? ex::Mode::Maps
                                  : ex::Mode::Catalog;
    }
    if (given("--algo")) cfg.algorithms = algos;
    if (given("--runs")) cfg.runs = runs;
    if (given("--pop")) cfg.population = pop;
    if (given("--iters")) cfg.iterations = iters;
    if (given("--seed")) cfg.base_seed = seed;
    if (given("--threads")) cfg.threads = threads;
    if (given("--func")) cfg.functions = funcs;
    if (given("--dim")) cfg.dimension = dim;
    if (given("--map")) cfg.maps.assign(maps.begin(), maps.end());
    if (given("--gen-maps")) cfg.generate_maps = gen_maps;
    if (given("--density")) cfg.density = density;
    if (given("--map-seed")) cfg.map_seed = map_seed;
    if (given("--waypoints")) cfg.waypoints = waypoints;
    if (given("--penalty")) cfg.penalty.P = penalty;
    if (additive) cfg.penalty.additive = true;
    if (given("--lobl-k")) cfg.params.igwo.lobl_k = lobl_k;
    if (no_acp) cfg.params.igwo.enable_acp = false;
    if (no_lobl) cfg.params.igwo.enable_lobl = false;
    if (given("--out")) cfg.output_dir = out;
    cfg.validate();

    switch (cfg.mode) {
      case ex::Mode::Catalog:
        std::cout << ex::catalog_csv(cfg.dimension);
        break;
      case ex::Mode::Bench: {
        const auto report = ex::run_bench_experiment(cfg);
        ex::write_bench_outputs(report, cfg.output_dir);
        std::cout << ex::format_table(report.rows());
        std::cout << "wrote " << (cfg.output_dir / "bench_stats.csv").string() << "\n";
        break;
      }
      case ex::Mode::Maps: {
        const auto named = ex::prepare_maps(cfg);
        std::filesystem::create_directories(cfg.output_dir / "maps");
        for (const auto& m : named) {
          const auto file = cfg.output_dir / "maps" / (m.name + ".json");
          swarmopt::pathplan::save_map(m.map, file);
          std::printf("%s obstacles=%zu oracle=%.6f\n", file.string().c_str(),
                      m.map.obstacle_count(), swarmopt::pathplan::shortest_path_oracle(m.map));
        }
        break;
      }
      case ex::Mode::Path: {
        const auto report = ex::run_path_experiment(cfg);
        ex::write_path_outputs(report, cfg.output_dir);
        std::ifstream summary(cfg.output_dir / "path_summary.txt");
        std::cout << summary.rdbuf();
        std::cout << "wrote " << (cfg.output_dir / "path_summary.csv").string() << "\n";
        break;
      }
    }
  } catch (const swarmopt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const swarmopt::EvaluationError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return 3;
  } catch (const swarmopt::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
