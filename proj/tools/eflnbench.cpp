#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "efln/analysis.hpp"
#include "efln/errors.hpp"
#include "efln/runner.hpp"

namespace {

struct CommonOpts {
  std::string config;
  std::string out;
  std::string algo;
  std::string input_csv;
  std::vector<std::string> overrides;
  long seed = -1;
  int trials = -1;
};

void add_common(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--config", o->config, "key=value config file");
  cmd->add_option("--seed", o->seed, "RNG seed (overrides config)");
  cmd->add_option("--out", o->out, "output CSV path (default stdout)");
  cmd->add_option("--algo", o->algo, "comma-separated algorithm list");
  cmd->add_option("--trials", o->trials, "trial count");
  cmd->add_option("--input-csv", o->input_csv, "measured input signal, one value per line");
  cmd->add_option("--set", o->overrides, "extra key=value overrides")->expected(-1);
}

efln::runner::RunConfig make_config(const CommonOpts& o) {
  efln::runner::RunConfig cfg;
  if (!o.config.empty()) cfg = efln::runner::load_config(o.config);
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("override must be key=value: '" + kv + "'");
    efln::runner::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
  if (o.trials > 0) cfg.trials = o.trials;
  if (!o.algo.empty()) efln::runner::apply_override(cfg, "algo", o.algo);
  if (!o.input_csv.empty()) cfg.input_csv = o.input_csv;
  if (!o.out.empty()) cfg.out_path = o.out;
  return cfg;
}

void emit(const efln::runner::RunResult& result, const std::string& out) {
  if (out.empty()) efln::runner::write_csv(result, std::cout);
  else efln::runner::write_csv(result, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frequency-domain EFLN adaptive-filter benchmarks"};
  app.require_subcommand(1);

  CommonOpts run_o, sweep_o, time_o;
  auto* run_cmd = app.add_subcommand("run", "run an experiment, emit per-block metrics CSV");
  add_common(run_cmd, &run_o);

  auto* sweep_cmd =
      app.add_subcommand("sweep", "steady-state EMSE: simulation vs closed form over a mu grid");
  add_common(sweep_cmd, &sweep_o);
  std::vector<double> mu_grid{1e-4, 2e-4, 4e-4, 7e-4, 1e-3, 1.5e-3, 2e-3};
  int burn_in = 400, record_blocks = 100;
  sweep_cmd->add_option("--mu", mu_grid, "step-size grid")->expected(-1);
  sweep_cmd->add_option("--burn-in", burn_in, "blocks discarded before recording");
  sweep_cmd->add_option("--record", record_blocks, "steady-state blocks recorded");

  auto* counts_cmd =
      app.add_subcommand("counts", "closed-form per-block operation counts");
  std::string counts_algo = "fdefln";
  int cm = 64, cp = 2, cn = 64;
  counts_cmd->add_option("--algo", counts_algo, "efln|fdefln|efslms|fdefslms");
  counts_cmd->add_option("--m", cm, "block length");
  counts_cmd->add_option("--p", cp, "expansion order");
  counts_cmd->add_option("--n", cn, "secondary-path length");

  auto* time_cmd = app.add_subcommand("time", "wall-clock per block, median and IQR");
  add_common(time_cmd, &time_o);
  int timed_blocks = 200, warmup = 10;
  time_cmd->add_option("--blocks", timed_blocks, "timed blocks");
  time_cmd->add_option("--warmup", warmup, "warmup blocks excluded from statistics");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const auto cfg = make_config(run_o);
      const auto result = efln::runner::run_experiment(cfg);
      emit(result, cfg.out_path);
      if (result.diverged) {
        std::cerr << result.diagnostic;
        return 1;
      }
      return 0;
    }
    if (sweep_cmd->parsed()) {
      const auto cfg = make_config(sweep_o);
      const auto rows = efln::runner::emse_sweep(cfg, mu_grid, burn_in, record_blocks);
      if (cfg.out_path.empty()) {
        efln::runner::write_sweep_csv(rows, std::cout);
      } else {
        std::ofstream out(cfg.out_path);
        efln::runner::write_sweep_csv(rows, out);
      }
      return 0;
    }
    if (counts_cmd->parsed()) {
      efln::analysis::Algo a;
      if (counts_algo == "efln") a = efln::analysis::Algo::Efln;
      else if (counts_algo == "fdefln") a = efln::analysis::Algo::Fdefln;
      else if (counts_algo == "efslms") a = efln::analysis::Algo::Efslms;
      else if (counts_algo == "fdefslms") a = efln::analysis::Algo::Fdefslms;
      else throw std::invalid_argument("unknown algorithm '" + counts_algo + "'");
      const auto c = efln::analysis::op_counts(a, cm, cp, cn);
      std::printf("phase,mults,adds\n");
      std::printf("filtering,%lld,%lld\n", c.filtering.mults, c.filtering.adds);
      std::printf("error,%lld,%lld\n", c.error.mults, c.error.adds);
      std::printf("weight,%lld,%lld\n", c.weight.mults, c.weight.adds);
      std::printf("factor,%lld,%lld\n", c.factor.mults, c.factor.adds);
      std::printf("total,%lld,%lld\n", c.total_mults(), c.total_adds());
      return 0;
    }
    if (time_cmd->parsed()) {
      const auto cfg = make_config(time_o);
      for (const auto& algo : cfg.algos) {
        const auto st = efln::runner::time_per_block(algo, cfg, timed_blocks, warmup);
        std::printf("%s,median_us=%.3f,q1_us=%.3f,q3_us=%.3f,blocks=%d\n", algo.c_str(),
                    st.median_us, st.q1_us, st.q3_us, st.blocks);
      }
      return 0;
    }
  } catch (const efln::DivergenceError& e) {
    std::cerr << "divergence at block " << e.block() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
