// Command-line front end: generate benchmark problems, run single hybrid
// runs, run campaigns, and execute the bundled experiment presets.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "dcop/experiments.hpp"
#include "dcop/init.hpp"
#include "dcop/problems.hpp"
#include "dcop/solvers.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + (dir / name).string());
  return out;
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int cmd_generate(const fs::path& config_path, const fs::path& out_path, bool seed_set,
                 std::uint64_t seed) {
  dcop::GeneratorConfig config = dcop::generator_from_json(read_file(config_path));
  if (seed_set) config.seed = seed;
  const dcop::ProblemInstance inst = dcop::generate(config);
  inst.validate();
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  dcop::save_problem(inst, out_path);

  const double pairs = 0.5 * inst.agent_count() * (inst.agent_count() - 1);
  std::cout << "wrote " << out_path.string() << ": " << inst.agent_count() << " agents, "
            << inst.constraints.size() << " constraints, density "
            << dcop::format_number(static_cast<double>(inst.constraints.size()) / pairs)
            << '\n';
  if (config.family == dcop::GeneratorConfig::Family::bridge_demo) {
    std::cout << "bridges:";
    for (const auto& [i, j] : dcop::find_bridges(inst))
      std::cout << " {" << i << "," << j << "}";
    std::cout << '\n';
  }
  return 0;
}

int cmd_run(const fs::path& config_path, const fs::path& out_dir, bool seed_set,
            std::uint64_t seed, bool trace) {
  dcop::ExperimentConfig config = dcop::experiment_from_json(read_file(config_path));
  if (seed_set) config.base_seed = seed;
  if (trace) config.tracing = true;

  dcop::GeneratorConfig gen = config.generator;
  gen.seed = config.base_seed;
  const dcop::ProblemInstance inst = dcop::generate(gen);
  const dcop::Neighborhood nbh = dcop::build_neighborhood(inst);
  const dcop::RunRecord rec =
      dcop::run_hybrid(config.initializer, config.solver, config.params, inst, nbh,
                       config.base_seed, config.stop(), config.tracing);

  dcop::CampaignResult single{dcop::to_string(config.generator.family), config.initializer,
                              config.solver, {}, {}, 0};
  single.rows.push_back({0, config.base_seed, rec.convergence_round, rec.final_cost,
                         rec.counters.messages, rec.counters.evaluations,
                         rec.counters.wall_seconds * 1000.0, rec.trace.front()});
  single.stats = dcop::summarize(single.rows);

  auto run_out = open_out(out_dir, "run.csv");
  run_out << dcop::results_csv_header() << '\n';
  dcop::append_results_csv(run_out, single);
  auto trace_out = open_out(out_dir, "trace.csv");
  dcop::write_cost_trace(trace_out, rec);
  if (config.tracing) {
    auto cpa_out = open_out(out_dir, "cpa_trace.csv");
    dcop::write_cpa_trace(cpa_out, rec);
    std::cout << "distinct assignments visited: " << dcop::explored_space_size(rec) << '\n';
  }

  std::cout << config.initializer << "+" << config.solver << " seed " << config.base_seed
            << ": I=" << rec.convergence_round << " S=" << dcop::format_number(rec.final_cost)
            << " M=" << rec.counters.messages << " E=" << rec.counters.evaluations
            << " initial=" << dcop::format_number(rec.trace.front()) << '\n';
  return 0;
}

int cmd_campaign(const fs::path& config_path, const fs::path& out_dir, bool seed_set,
                 std::uint64_t seed, bool trace, int jobs, bool verbose) {
  dcop::ExperimentConfig config = dcop::experiment_from_json(read_file(config_path));
  if (seed_set) config.base_seed = seed;
  if (trace) config.tracing = true;

  std::function<void(int, const dcop::RunRecord&)> on_record;
  if (config.tracing) {
    fs::create_directories(out_dir);
    on_record = [out_dir](int instance, const dcop::RunRecord& rec) {
      auto trace_out = open_out(out_dir, "trace_" + std::to_string(instance) + ".csv");
      dcop::write_cost_trace(trace_out, rec);
      auto cpa_out = open_out(out_dir, "cpa_trace_" + std::to_string(instance) + ".csv");
      dcop::write_cpa_trace(cpa_out, rec);
    };
  }

  const dcop::CampaignResult result = dcop::run_campaign(config, resolve_jobs(jobs), on_record);

  auto cfg_out = open_out(out_dir, "config.json");
  cfg_out << dcop::experiment_to_json(config);
  auto res_out = open_out(out_dir, "results.csv");
  res_out << dcop::results_csv_header() << '\n';
  dcop::append_results_csv(res_out, result);
  auto sum_out = open_out(out_dir, "summary.csv");
  sum_out << dcop::summary_csv_header() << '\n';
  dcop::append_summary_csv(sum_out, result);

  if (result.cost_increase_runs > 0 && verbose)
    std::cerr << "note: " << result.cost_increase_runs
              << " runs had a per-cycle cost increase\n";
  std::cout << result.initializer << "+" << result.solver << " over " << result.stats.count
            << " instances: mean I=" << dcop::format_number(result.stats.iterations.mean)
            << " mean S=" << dcop::format_number(result.stats.final_cost.mean)
            << " mean M=" << dcop::format_number(result.stats.messages.mean)
            << " mean E=" << dcop::format_number(result.stats.evaluations.mean) << '\n';
  return 0;
}

int cmd_reproduce(const std::string& name, const fs::path& out_dir, bool seed_set,
                  std::uint64_t seed, double scale, int jobs) {
  dcop::ReproduceOptions options;
  options.out_dir = out_dir;
  options.scale = scale;
  options.jobs = resolve_jobs(jobs);
  if (seed_set) options.seed = seed;

  const dcop::ReproduceReport report = dcop::reproduce(name, options);
  for (const auto& v : report.verdicts)
    std::cout << (v.pass ? "PASS " : "FAIL ") << v.name << ": " << v.detail << '\n';
  std::cout << (report.pass() ? "all verdicts passed" : "some verdicts FAILED") << '\n';
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid (A)DCOP local-search toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path = "out";
  std::uint64_t seed = 0;
  int jobs = 0;
  double scale = 1.0;
  bool trace = false;
  bool verbose = false;
  std::string preset;

  app.add_flag("-v,--verbose", verbose, "extra progress output");
  CLI::Option* seed_opt =
      app.add_option("--seed", seed, "seed override")->envname("DCOP_HYBRID_SEED");

  CLI::App* generate = app.add_subcommand("generate", "write a problem instance as JSON");
  generate->add_option("--config", config_path, "GeneratorConfig JSON")->required();
  generate->add_option("--out", out_path, "output problem file")->required();

  CLI::App* run = app.add_subcommand("run", "one hybrid run from an ExperimentConfig");
  run->add_option("--config", config_path, "ExperimentConfig JSON")->required();
  run->add_option("--out", out_path, "output directory");
  run->add_flag("--trace", trace, "record the CPA trace");

  CLI::App* campaign = app.add_subcommand("campaign", "a seeded batch of hybrid runs");
  campaign->add_option("--config", config_path, "ExperimentConfig JSON")->required();
  campaign->add_option("--out", out_path, "output directory");
  campaign->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  campaign->add_flag("--trace", trace, "write per-run trace files");

  CLI::App* repro = app.add_subcommand("reproduce", "bundled experiment presets");
  repro->add_option("name", preset, "table1|table2|correlation|bridge|density")->required();
  repro->add_option("--out", out_path, "output directory");
  repro->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  repro->add_option("--scale", scale, "scales n and instance counts");

  CLI11_PARSE(app, argc, argv);
  const bool seed_set = seed_opt->count() > 0;

  try {
    if (generate->parsed()) return cmd_generate(config_path, out_path, seed_set, seed);
    if (run->parsed()) return cmd_run(config_path, out_path, seed_set, seed, trace);
    if (campaign->parsed())
      return cmd_campaign(config_path, out_path, seed_set, seed, trace, jobs, verbose);
    if (repro->parsed()) return cmd_reproduce(preset, out_path, seed_set, seed, scale, jobs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
