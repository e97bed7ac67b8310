#include "efln/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "efln/adaptive_td.hpp"
#include "efln/analysis.hpp"
#include "efln/dsp.hpp"
#include "efln/errors.hpp"
#include "efln/fdefln.hpp"
#include "efln/metrics.hpp"
#include "efln/nanc.hpp"
#include "efln/scenarios.hpp"

namespace efln::runner {
namespace {

const char* kScenarioNames[] = {"IDENT_EFLN", "NSI", "NAEC_SIGMOID", "NANC_POLY",
                                "NANC_CHAOTIC"};

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    const auto b = item.find_last_not_of(" \t");
    out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

bool is_filtered_algo(const std::string& name) {
  return name == "fdefslms" || name == "efslms" || name == "fdfslms" ||
         name == "fdpfslms" || name == "fdfxlms";
}

bool is_plain_algo(const std::string& name) {
  return name == "fdefln" || name == "fdtfln" || name == "efln" || name == "efln_block";
}

/// Everything one (scenario, trial) pair needs: the reference input, the
/// desired/disturbance signal, and for active-control scenarios the
/// secondary path between filter output and error sensor.
struct TrialData {
  std::vector<double> u;
  std::vector<double> d;
  std::vector<double> ybar;  // noiseless target (identification scenarios)
  std::optional<nanc::SecondaryPath> path;
  bool erle = false;
};

std::vector<double> load_or(const RunConfig& cfg, std::vector<double> fallback,
                            std::size_t total) {
  std::vector<double> u =
      cfg.input_csv.empty() ? std::move(fallback) : scenarios::read_signal_csv(cfg.input_csv);
  if (u.size() < total)
    throw std::invalid_argument("input signal shorter than blocks*M samples");
  u.resize(total);
  return u;
}

/// Direct FIR with taps flipping sign at sample flip_at (block boundary);
/// the input history is shared across the flip, so the output switches
/// instantaneously, as an abrupt physical path change would.
std::vector<double> fir_with_flip(std::span<const double> x, std::span<const double> taps,
                                  long flip_at) {
  std::vector<double> pos = dsp::fir_filter_direct(x, taps);
  if (flip_at < 0 || static_cast<std::size_t>(flip_at) >= x.size()) return pos;
  for (std::size_t n = flip_at; n < pos.size(); ++n) pos[n] = -pos[n];
  return pos;
}

TrialData build_trial(const RunConfig& cfg, int trial) {
  dsp::SeededRng rng(cfg.seed ^ static_cast<std::uint64_t>(trial));
  const std::size_t total = static_cast<std::size_t>(cfg.blocks) * cfg.m;
  TrialData t;
  switch (cfg.kind) {
    case ScenarioKind::IdentEfln: {
      t.u = load_or(cfg, scenarios::gen_uniform(rng, -1.0, 1.0, total), total);
      const auto wbar = scenarios::ident_fixture_weights(rng, cfg.m, cfg.p);
      t.ybar = scenarios::ident_efln_plant(t.u, wbar, -0.4, cfg.m, cfg.p);
      break;
    }
    case ScenarioKind::Nsi: {
      t.u = load_or(cfg, scenarios::gen_uniform(rng, -0.5, 0.5, total), total);
      t.ybar = scenarios::nsi_plant(t.u);
      break;
    }
    case ScenarioKind::NaecSigmoid: {
      t.u = load_or(cfg, scenarios::gen_speech_standin(rng, total), total);
      const auto gamma = scenarios::loudspeaker_gamma(t.u);
      const auto phi = scenarios::sigmoid_distortion(gamma);
      const auto room = scenarios::gen_room_response(rng, 512);
      t.ybar = dsp::fir_filter_direct(phi, room);
      t.erle = true;
      break;
    }
    case ScenarioKind::NancPoly: {
      const auto fx = scenarios::path_fixtures("engine");
      t.u = load_or(cfg, scenarios::gen_engine_standin(rng, total), total);
      const auto uhat = dsp::fir_filter_direct(t.u, fx.primary);
      t.ybar = scenarios::nanc_poly_primary(uhat);
      t.path = nanc::SecondaryPath::make(fx.secondary, cfg.m);
      break;
    }
    case ScenarioKind::NancChaotic: {
      const auto fx = scenarios::path_fixtures("chaotic");
      t.u = load_or(cfg, scenarios::gen_logistic(total), total);
      t.ybar = fir_with_flip(t.u, fx.primary, cfg.flip_block < 0 ? -1 : cfg.flip_block * cfg.m);
      t.path = nanc::SecondaryPath::make(fx.secondary, cfg.m, nanc::SecondaryPath::Nl::Tanh,
                                         3.3, 0.3);
      break;
    }
  }
  const auto noise = scenarios::gen_awgn_for_snr(t.ybar, cfg.snr_db, rng);
  t.d = t.ybar;
  for (std::size_t i = 0; i < t.d.size(); ++i) t.d[i] += noise[i];
  return t;
}

/// Uniform block interface over every algorithm variant.
struct Stepper {
  std::function<std::vector<double>(std::span<const double>, std::span<const double>)> step;
  std::function<std::optional<double>()> q;
};

Stepper make_stepper(const std::string& name, const RunConfig& cfg,
                     const nanc::SecondaryPath* path) {
  if (is_plain_algo(name) && path != nullptr)
    throw std::invalid_argument("algorithm '" + name + "' has no secondary-path input");
  if (is_filtered_algo(name) && path == nullptr)
    throw std::invalid_argument("algorithm '" + name + "' needs a secondary-path scenario");

  if (name == "fdefln" || name == "fdtfln") {
    const bool frozen = name == "fdtfln";
    auto st = std::make_shared<fd::FdeflnState>(
        fd::fdefln_init(cfg.m, cfg.p, cfg.mu_w, frozen ? 0.0 : cfg.mu_q, frozen ? 0.0 : cfg.q0));
    return {[st](std::span<const double> u, std::span<const double> d) {
              return fd::fdefln_block(*st, u, d).second;
            },
            [st, frozen]() -> std::optional<double> {
              if (frozen) return std::nullopt;
              return st->q;
            }};
  }
  if (name == "efln" || name == "efln_block") {
    auto st = std::make_shared<td::TdState>(
        td::td_init(cfg.m, cfg.p, cfg.mu_w, cfg.mu_q, cfg.q0));
    if (name == "efln_block") {
      return {[st](std::span<const double> u, std::span<const double> d) {
                return td::block_td_step(*st, u, d).second;
              },
              [st]() -> std::optional<double> { return st->q; }};
    }
    return {[st](std::span<const double> u, std::span<const double> d) {
              std::vector<double> e(u.size());
              for (std::size_t j = 0; j < u.size(); ++j)
                e[j] = td::efln_lms_step(*st, u[j], d[j]).second;
              return e;
            },
            [st]() -> std::optional<double> { return st->q; }};
  }
  if (name == "fdefslms") {
    auto st = std::make_shared<nanc::FdefslmsState>(
        nanc::fdefslms_init(cfg.m, cfg.p, cfg.mu_w, cfg.mu_q, cfg.q0));
    return {[st, path](std::span<const double> u, std::span<const double> d) {
              return nanc::fdefslms_block(*st, *path, u, d);
            },
            [st]() -> std::optional<double> { return st->q; }};
  }
  if (name == "efslms") {
    auto st = std::make_shared<nanc::EfslmsState>(nanc::efslms_init(
        cfg.m, cfg.p, cfg.mu_w, cfg.mu_q, cfg.q0, static_cast<int>(path->taps.size())));
    return {[st, path](std::span<const double> u, std::span<const double> d) {
              std::vector<double> e(u.size());
              for (std::size_t j = 0; j < u.size(); ++j)
                e[j] = nanc::efslms_step(*st, *path, u[j], d[j]);
              return e;
            },
            [st]() -> std::optional<double> { return st->q; }};
  }
  if (name == "fdfslms" || name == "fdpfslms" || name == "fdfxlms") {
    expansion::ExpansionConfig ec;
    ec.order = cfg.p;
    ec.kind = name == "fdfslms"    ? expansion::Kind::Tfln
              : name == "fdpfslms" ? expansion::Kind::Power
                                   : expansion::Kind::Linear;
    auto st = std::make_shared<nanc::FdefslmsState>(
        nanc::fd_baseline_init(cfg.m, ec, cfg.mu_w));
    return {[st, path](std::span<const double> u, std::span<const double> d) {
              return nanc::filtered_baseline_block(*st, *path, u, d);
            },
            []() -> std::optional<double> { return std::nullopt; }};
  }
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double quantile(std::vector<double> sorted, double f) {
  // sorted must be ascending; linear interpolation between ranks.
  const double pos = f * (static_cast<double>(sorted.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - w) + sorted[hi] * w;
}

}  // namespace

ScenarioKind parse_scenario(const std::string& name) {
  for (int i = 0; i < 5; ++i)
    if (name == kScenarioNames[i]) return static_cast<ScenarioKind>(i);
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

std::string scenario_name(ScenarioKind kind) { return kScenarioNames[static_cast<int>(kind)]; }

void RunConfig::validate() const {
  if (m < 1 || p < 1 || trials < 1 || blocks < 1)
    throw std::invalid_argument("sizes and counts must be positive");
  if (window < 1) throw std::invalid_argument("smoothing window must be >= 1");
  if (algos.empty()) throw std::invalid_argument("at least one algorithm required");
  if (!std::isfinite(snr_db)) throw std::invalid_argument("SNR must be finite");
  const bool nanc = kind == ScenarioKind::NancPoly || kind == ScenarioKind::NancChaotic;
  for (const auto& a : algos) {
    if (!is_plain_algo(a) && !is_filtered_algo(a))
      throw std::invalid_argument("unknown algorithm '" + a + "'");
    if (nanc != is_filtered_algo(a))
      throw std::invalid_argument("algorithm '" + a + "' does not fit scenario " +
                                  scenario_name(kind));
  }
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "scenario") cfg.kind = parse_scenario(value);
  else if (key == "algo") cfg.algos = split_list(value);
  else if (key == "m") cfg.m = std::stoi(value);
  else if (key == "p") cfg.p = std::stoi(value);
  else if (key == "mu_w") cfg.mu_w = std::stod(value);
  else if (key == "mu_q") cfg.mu_q = std::stod(value);
  else if (key == "q0") cfg.q0 = std::stod(value);
  else if (key == "snr_db") cfg.snr_db = std::stod(value);
  else if (key == "trials") cfg.trials = std::stoi(value);
  else if (key == "blocks") cfg.blocks = std::stoi(value);
  else if (key == "seed") cfg.seed = std::stoull(value);
  else if (key == "flip_block") cfg.flip_block = std::stol(value);
  else if (key == "window") cfg.window = std::stoi(value);
  else if (key == "out") cfg.out_path = value;
  else if (key == "input_csv") cfg.input_csv = value;
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  RunConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) apply_override(cfg, key, value);
  }
  return cfg;
}

RunResult run_experiment(const RunConfig& cfg) {
  cfg.validate();
  RunResult result;
  for (const auto& algo : cfg.algos) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const TrialData data = build_trial(cfg, trial);
      Stepper stepper = make_stepper(algo, cfg, data.path ? &*data.path : nullptr);

      std::vector<double> block_mse_lin(cfg.blocks, 0.0);
      std::vector<MetricsRecord> rows;
      rows.reserve(cfg.blocks);
      long done = 0;
      try {
        for (long k = 0; k < cfg.blocks; ++k) {
          const std::span<const double> u_blk(data.u.data() + k * cfg.m, cfg.m);
          const std::span<const double> d_blk(data.d.data() + k * cfg.m, cfg.m);
          const auto t0 = std::chrono::steady_clock::now();
          const std::vector<double> e = stepper.step(u_blk, d_blk);
          const auto t1 = std::chrono::steady_clock::now();

          double acc = 0.0;
          for (double v : e) acc += v * v;
          block_mse_lin[k] = acc / cfg.m;

          MetricsRecord rec;
          rec.algo = algo;
          rec.trial = trial;
          rec.block = k;
          rec.mse_db = metrics::mse_db(e);
          if (data.erle) rec.erle_db = metrics::erle_db(d_blk, e);
          rec.q = stepper.q();
          rec.us_per_block = std::chrono::duration<double, std::micro>(t1 - t0).count();
          rows.push_back(std::move(rec));
          done = k + 1;
        }
      } catch (const DivergenceError& err) {
        result.diverged = true;
        result.diagnostic += "divergence: algo=" + algo + " trial=" + std::to_string(trial) +
                             " block=" + std::to_string(err.block()) + "\n";
      }
      block_mse_lin.resize(done);
      const auto smoothed = metrics::moving_average(block_mse_lin, cfg.window);
      for (long k = 0; k < done; ++k) {
        rows[k].smoothed_mse_db =
            smoothed[k] > 0.0 ? 10.0 * std::log10(smoothed[k]) : metrics::kMseFloorDb;
        result.records.push_back(std::move(rows[k]));
      }
    }
  }
  return result;
}

void write_csv(const RunResult& result, std::ostream& os) {
  os << "algo,trial,block,mse_db,smoothed_mse_db,erle_db,q,us_per_block\n";
  for (const auto& r : result.records) {
    os << r.algo << ',' << r.trial << ',' << r.block << ',' << fmt(r.mse_db) << ','
       << fmt(r.smoothed_mse_db) << ',';
    if (r.erle_db) os << fmt(*r.erle_db);
    os << ',';
    if (r.q) os << fmt(*r.q);
    os << ',' << fmt(r.us_per_block) << '\n';
  }
}

void write_csv(const RunResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
  write_csv(result, out);
}

std::vector<SweepRow> emse_sweep(const RunConfig& cfg, std::span<const double> mu_grid,
                                 int burn_in, int record_blocks) {
  if (cfg.kind != ScenarioKind::IdentEfln)
    throw std::invalid_argument("EMSE sweep needs the matched-model scenario");
  const double qbar = -0.4;
  const long total_blocks = burn_in + record_blocks;

  std::vector<SweepRow> rows;
  for (double mu : mu_grid) {
    SweepRow row;
    row.mu = mu;
    analysis::MomentAccumulator acc(cfg.m, 0.0);
    std::vector<std::vector<double>> ybar_blocks, y_blocks;
    double noise_var = 0.0;
    try {
      for (int trial = 0; trial < cfg.trials; ++trial) {
        dsp::SeededRng rng(cfg.seed ^ static_cast<std::uint64_t>(trial));
        const std::size_t total = static_cast<std::size_t>(total_blocks) * cfg.m;
        const auto u = scenarios::gen_gaussian(rng, 1.0, total);
        const auto wbar = scenarios::ident_fixture_weights(rng, cfg.m, cfg.p);
        const auto ybar = scenarios::ident_efln_plant(u, wbar, qbar, cfg.m, cfg.p);
        const auto noise = scenarios::gen_awgn_for_snr(ybar, cfg.snr_db, rng);
        noise_var = scenarios::signal_power(ybar) / std::pow(10.0, cfg.snr_db / 10.0);

        auto st = fd::fdefln_init(cfg.m, cfg.p, mu, mu, qbar);
        // Start at the true solution; the burn-in settles the filter into
        // its steady-state fluctuation around it.
        const int channels = 2 * cfg.p + 1;
        for (int i = 0; i < channels; ++i) {
          const std::span<const double> wi(wbar.data() + static_cast<std::size_t>(i) * cfg.m,
                                           cfg.m);
          st.w_spec[i] = dsp::zero_padded_spectrum(wi, cfg.m);
        }
        fd::BlockProbe probe;
        st.probe = &probe;

        for (long k = 0; k < total_blocks; ++k) {
          std::vector<double> d(cfg.m);
          for (int j = 0; j < cfg.m; ++j) d[j] = ybar[k * cfg.m + j] + noise[k * cfg.m + j];
          const std::span<const double> u_blk(u.data() + k * cfg.m, cfg.m);
          auto [y, e] = fd::fdefln_block(st, u_blk, d);
          if (k < burn_in) continue;
          acc.add(probe.sum_col_norm2, probe.col_sum_norm2, probe.z);
          y_blocks.push_back(std::move(y));
          ybar_blocks.emplace_back(ybar.begin() + k * cfg.m, ybar.begin() + (k + 1) * cfg.m);
        }
      }
      analysis::MomentEstimates est = acc.finalize();
      est.noise_var = noise_var;
      row.simulated_db = analysis::to_db(analysis::simulated_emse(ybar_blocks, y_blocks));
      row.theoretical_db = analysis::to_db(analysis::theoretical_emse(mu, mu, est));
    } catch (const std::exception&) {
      row.stable = false;
      row.simulated_db = row.theoretical_db = 0.0;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& os) {
  os << "mu,simulated_db,theoretical_db,stable\n";
  for (const auto& r : rows) {
    os << fmt(r.mu) << ',';
    if (r.stable) os << fmt(r.simulated_db) << ',' << fmt(r.theoretical_db) << ",1\n";
    else os << ",,0\n";
  }
}

TimingStats time_per_block(const std::string& algo, const RunConfig& cfg, int timed_blocks,
                           int warmup) {
  RunConfig local = cfg;
  local.blocks = timed_blocks + warmup;
  local.validate();
  const TrialData data = build_trial(local, 0);
  Stepper stepper = make_stepper(algo, local, data.path ? &*data.path : nullptr);

  std::vector<double> us;
  us.reserve(timed_blocks);
  for (long k = 0; k < local.blocks; ++k) {
    const std::span<const double> u_blk(data.u.data() + k * local.m, local.m);
    const std::span<const double> d_blk(data.d.data() + k * local.m, local.m);
    const auto t0 = std::chrono::steady_clock::now();
    (void)stepper.step(u_blk, d_blk);
    const auto t1 = std::chrono::steady_clock::now();
    if (k >= warmup)
      us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
  }
  std::sort(us.begin(), us.end());
  TimingStats stats;
  stats.blocks = static_cast<int>(us.size());
  stats.median_us = quantile(us, 0.5);
  stats.q1_us = quantile(us, 0.25);
  stats.q3_us = quantile(us, 0.75);
  return stats;
}

}  // namespace runner
