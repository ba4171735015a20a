#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dcop/engine.hpp"
#include "dcop/problems.hpp"
#include "dcop/solvers.hpp"

namespace dcop {

struct ExperimentConfig {
  GeneratorConfig generator;
  std::string initializer = "random";
  std::string solver = "dsa";
  SolverParams params;
  int instances = 1;
  int stall_rounds = 100;
  int max_rounds = 2000;
  std::uint64_t base_seed = 0;
  bool tracing = false;

  StopPolicy stop() const { return {stall_rounds, max_rounds}; }
};

// One JSON document mirroring the field names above. Parse errors carry the
// offending field.
ExperimentConfig experiment_from_json(const std::string& text);
std::string experiment_to_json(const ExperimentConfig& config);

// Accepts either a bare GeneratorConfig document or one nested under a
// top-level "generator" key.
GeneratorConfig generator_from_json(const std::string& text);

// Activation phase with the chosen initializer, then the synchronous solver
// phase; initializer messages/evaluations are merged into the counters and
// its cost is the trace's round-0 entry.
RunRecord run_hybrid(std::string_view init_id, std::string_view solver_id,
                     const SolverParams& params, const ProblemInstance& inst,
                     const Neighborhood& nbh, std::uint64_t seed, const StopPolicy& stop,
                     bool record_cpa = false);

// Sample Pearson correlation. Throws std::invalid_argument for mismatched or
// short inputs and for constant sequences (undefined correlation).
double pearson(std::span<const double> xs, std::span<const double> ys);

// Number of distinct complete assignments the run visited (CPA tracing).
std::uint64_t explored_space_size(const RunRecord& record);

struct MetricSummary {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double stddev = 0.0;
};

struct SummaryStats {
  MetricSummary iterations, final_cost, messages, evaluations, wall_ms;
  int count = 0;
};

struct CampaignRow {
  int instance = 0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  double final_cost = 0.0;
  std::uint64_t messages = 0;
  std::uint64_t evaluations = 0;
  double wall_ms = 0.0;
  double initial_cost = 0.0;
};

struct CampaignResult {
  std::string family;
  std::string initializer;
  std::string solver;
  std::vector<CampaignRow> rows;
  SummaryStats stats;
  // Runs whose per-cycle trace ever increased (informational; expected to be
  // zero for mgm/mgm2).
  int cost_increase_runs = 0;
};

// `instances` independent seeded runs (seed = base_seed + instance index);
// the generator is reseeded the same way, so two campaigns with equal
// base_seed solve identical problem sets. `on_record` (optional) fires once
// per finished run, possibly from worker threads.
CampaignResult run_campaign(const ExperimentConfig& config, int jobs = 1,
                            const std::function<void(int, const RunRecord&)>& on_record = {});

SummaryStats summarize(const std::vector<CampaignRow>& rows);

// results CSV: family,init,solver,instance,seed,I,S,M,E,T_ms,initial_cost
// summary CSV: family,init,solver,metric,mean,min,max,std,count
std::string results_csv_header();
std::string summary_csv_header();
void append_results_csv(std::ostream& out, const CampaignResult& result);
void append_summary_csv(std::ostream& out, const CampaignResult& result);

// Cost trace file: header "round,global_cost", one row per trace entry.
void write_cost_trace(std::ostream& out, const RunRecord& record);
// CPA trace file: header "round,assignment"; values joined with ';'.
void write_cpa_trace(std::ostream& out, const RunRecord& record);

// Shortest round-trip decimal representation (deterministic CSV numbers).
std::string format_number(double v);

// ---------------------------------------------------------------------------
// Canned experiment presets
// ---------------------------------------------------------------------------

struct ReproduceOptions {
  std::filesystem::path out_dir;
  double scale = 1.0;  // multiplies n and instance counts
  std::uint64_t seed = 2024;
  int jobs = 1;
};

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReproduceReport {
  std::string preset;
  std::vector<Verdict> verdicts;
  bool pass() const;
};

// Presets: table1 | table2 | correlation | bridge | density.
ReproduceReport reproduce(std::string_view name, const ReproduceOptions& options);
std::vector<std::string> reproduce_names();

}  // namespace dcop
