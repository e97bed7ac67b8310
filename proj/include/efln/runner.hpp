#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace efln::runner {

enum class ScenarioKind { IdentEfln, Nsi, NaecSigmoid, NancPoly, NancChaotic };

ScenarioKind parse_scenario(const std::string& name);
std::string scenario_name(ScenarioKind kind);

/// Flat experiment description; loadable from a key=value file with
/// command-line overrides applied on top.
struct RunConfig {
  ScenarioKind kind = ScenarioKind::IdentEfln;
  std::vector<std::string> algos = {"fdefln"};
  int m = 64;
  int p = 2;
  double mu_w = 1e-3;
  double mu_q = 1e-3;
  double q0 = 0.0;
  double snr_db = 40.0;
  int trials = 1;
  int blocks = 200;
  std::uint64_t seed = 1;
  long flip_block = -1;  // NANC_CHAOTIC path flip; -1 = never
  int window = 1;        // moving-average window for the smoothed MSE column
  std::string out_path;
  std::string input_csv;  // optional measured input signal

  void validate() const;  // throws std::invalid_argument
};

RunConfig load_config(const std::string& path);
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

struct MetricsRecord {
  std::string algo;
  int trial = 0;
  long block = 0;
  double mse_db = 0.0;
  double smoothed_mse_db = 0.0;
  std::optional<double> erle_db;
  std::optional<double> q;
  double us_per_block = 0.0;
};

struct RunResult {
  std::vector<MetricsRecord> records;
  bool diverged = false;
  std::string diagnostic;  // nonempty when diverged
};

/// Executes every (algorithm, trial) pair of the config; trial t uses
/// seed ^ t. A diverging trial stops that pair, appends a diagnostic,
/// and sets the diverged flag; other pairs still run.
RunResult run_experiment(const RunConfig& cfg);

/// Fixed schema: algo,trial,block,mse_db,smoothed_mse_db,erle_db,q,us_per_block.
/// Missing metrics are empty fields.
void write_csv(const RunResult& result, std::ostream& os);
void write_csv(const RunResult& result, const std::string& path);

struct SweepRow {
  double mu = 0.0;
  double simulated_db = 0.0;
  double theoretical_db = 0.0;
  bool stable = true;
};

/// Matched-model steady-state sweep: for each mu (mu_w = mu_q = mu) the
/// filter starts at the true solution, runs burn_in blocks, then records
/// record_blocks of simulated EMSE alongside the plug-in closed form.
std::vector<SweepRow> emse_sweep(const RunConfig& cfg, std::span<const double> mu_grid,
                                 int burn_in = 400, int record_blocks = 100);

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& os);

struct TimingStats {
  double median_us = 0.0;
  double q1_us = 0.0;
  double q3_us = 0.0;
  int blocks = 0;
};

/// Median and interquartile range of wall-clock microseconds per block
/// (per M samples for sample-wise algorithms), warmup excluded. For
/// relative comparisons only.
TimingStats time_per_block(const std::string& algo, const RunConfig& cfg,
                           int timed_blocks = 200, int warmup = 10);

}  // namespace efln::runner
