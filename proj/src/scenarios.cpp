#include "efln/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "efln/expansion.hpp"
#include "efln/kernels.hpp"

namespace efln::scenarios {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<double> gen_uniform(dsp::SeededRng& rng, double lo, double hi, std::size_t count) {
  if (!(lo < hi)) throw std::invalid_argument("gen_uniform: need lo < hi");
  std::vector<double> out(count);
  for (auto& v : out) v = rng.uniform(lo, hi);
  return out;
}

std::vector<double> gen_gaussian(dsp::SeededRng& rng, double stddev, std::size_t count) {
  std::vector<double> out(count);
  for (auto& v : out) v = rng.gaussian(0.0, stddev);
  return out;
}

double signal_power(std::span<const double> signal) {
  if (signal.empty()) return 0.0;
  double acc = 0.0;
  for (double v : signal) acc += v * v;
  return acc / double(signal.size());
}

std::vector<double> gen_awgn_for_snr(std::span<const double> signal, double snr_db,
                                     dsp::SeededRng& rng) {
  const double power = signal_power(signal);
  if (power == 0.0) throw std::invalid_argument("gen_awgn_for_snr: zero-power signal");
  const double var = power / std::pow(10.0, snr_db / 10.0);
  return gen_gaussian(rng, std::sqrt(var), signal.size());
}

std::vector<double> gen_logistic(std::size_t count) {
  std::vector<double> out(count);
  double u = 0.9;
  for (std::size_t n = 0; n < count; ++n) {
    out[n] = u;
    u = 4.0 * u * (1.0 - u);
  }
  const double rms = std::sqrt(signal_power(out));
  for (auto& v : out) v /= rms;
  return out;
}

std::vector<double> nsi_plant(std::span<const double> u) {
  std::vector<double> out(u.size());
  for (std::size_t n = 0; n < u.size(); ++n) {
    const double un = u[n];
    const double u4 = n >= 4 ? u[n - 4] : 0.0;
    const double s = std::sin(kPi * un);
    out[n] = 0.6 * s * s * s - 2.0 / (un * un * un + 2.0) - 0.1 * std::cos(4.0 * kPi * u4) + 1.125;
  }
  return out;
}

std::vector<double> loudspeaker_gamma(std::span<const double> u) {
  std::vector<double> out(u.size());
  for (std::size_t n = 0; n < u.size(); ++n) out[n] = 1.5 * u[n] - 0.3 * u[n] * u[n];
  return out;
}

std::vector<double> sigmoid_distortion(std::span<const double> gamma) {
  std::vector<double> out(gamma.size());
  for (std::size_t n = 0; n < gamma.size(); ++n) {
    const double g = gamma[n];
    const double alpha = g < 0.0 ? 0.5 : 4.0;
    out[n] = 2.0 / (1.0 + std::exp(-alpha * g)) - 1.0;
  }
  return out;
}

std::vector<double> nanc_poly_primary(std::span<const double> u_hat) {
  std::vector<double> out(u_hat.size());
  for (std::size_t n = 0; n < u_hat.size(); ++n) {
    const double u2 = n >= 2 ? u_hat[n - 2] : 0.0;
    const double u1 = n >= 1 ? u_hat[n - 1] : 0.0;
    out[n] = u2 + 0.8 * u2 * u2 - 0.4 * u2 * u2 * u2 + u1 * u1 * u1 * u1 * u2;
  }
  return out;
}

std::vector<double> tanh_secondary(std::span<const double> x) {
  std::vector<double> out(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) out[n] = 3.3 * std::tanh(0.3 * x[n]);
  return out;
}

PathFixture path_fixtures(const std::string& name) {
  if (name == "engine") {
    PathFixture f;
    f.primary.assign(16, 0.0);
    f.primary[9] = 0.8;
    f.primary[10] = 0.6;
    f.primary[11] = -0.2;
    f.primary[12] = -0.5;
    f.primary[13] = -0.1;
    f.primary[14] = 0.4;
    f.primary[15] = -0.05;
    f.secondary.assign(13, 0.0);
    f.secondary[5] = 1.0;
    f.secondary[6] = 2.5;
    f.secondary[7] = 1.76;
    f.secondary[8] = 0.15;
    f.secondary[9] = -0.4825;
    f.secondary[10] = -0.18625;
    f.secondary[11] = -0.005;
    f.secondary[12] = -0.001875;
    return f;
  }
  if (name == "chaotic") {
    PathFixture f;
    f.primary.assign(8, 0.0);
    f.primary[5] = 1.0;
    f.primary[6] = 0.3;
    f.primary[7] = 0.2;
    f.secondary.assign(5, 0.0);
    f.secondary[2] = 1.0;
    f.secondary[3] = 1.5;
    f.secondary[4] = -1.0;
    return f;
  }
  throw std::invalid_argument("path_fixtures: unknown fixture '" + name + "'");
}

std::vector<double> ident_efln_plant(std::span<const double> u, std::span<const double> wbar,
                                     double qbar, int m, int p) {
  const int c = 2 * p + 1;
  if (int(wbar.size()) != m * c)
    throw std::invalid_argument("ident_efln_plant: weight length must be M(2P+1)");
  std::vector<double> tapped(m, 0.0);
  std::vector<double> out(u.size());
  for (std::size_t n = 0; n < u.size(); ++n) {
    for (int j = m - 1; j > 0; --j) tapped[j] = tapped[j - 1];
    tapped[0] = u[n];
    auto g = expansion::efln_expand(tapped, qbar, p);
    double y = 0.0;
    for (int i = 0; i < c; ++i)
      y += kernels::dot(g[i].data(), wbar.data() + std::size_t(i) * m, m);
    out[n] = y;
  }
  return out;
}

std::vector<double> ident_fixture_weights(dsp::SeededRng& rng, int m, int p) {
  const int c = 2 * p + 1;
  std::vector<double> w(std::size_t(m) * c);
  for (int i = 0; i < c; ++i) {
    // Later channels get smaller magnitudes, like a physical expansion.
    const double channel_scale = 1.0 / double(1 + i);
    for (int l = 0; l < m; ++l)
      w[std::size_t(i) * m + l] =
          channel_scale * std::exp(-3.0 * double(l) / double(m)) * rng.uniform(-1.0, 1.0);
  }
  return w;
}

std::vector<double> gen_engine_standin(dsp::SeededRng& rng, std::size_t count) {
  // Resonator around 0.05 of the sample rate with modest bandwidth.
  const double r = 0.95;
  const double theta = 2.0 * kPi * 0.05;
  const double a1 = -2.0 * r * std::cos(theta), a2 = r * r;
  std::vector<double> out(count, 0.0);
  double y1 = 0.0, y2 = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    double y = rng.gaussian(0.0, 1.0) - a1 * y1 - a2 * y2;
    out[n] = y;
    y2 = y1;
    y1 = y;
  }
  // Peak-normalize to 0.5 so the downstream polynomial (quartic in the
  // primary-path output) stays in a numerically sane range.
  double peak = 0.0;
  for (double v : out) peak = std::max(peak, std::abs(v));
  for (auto& v : out) v *= 0.5 / peak;
  return out;
}

std::vector<double> gen_speech_standin(dsp::SeededRng& rng, std::size_t count) {
  std::vector<double> out(count, 0.0);
  double y1 = 0.0, y2 = 0.0;
  double envelope = 0.3;
  for (std::size_t n = 0; n < count; ++n) {
    if (n % 400 == 0) envelope = rng.uniform(0.05, 1.0);  // burst every 50 ms at 8 kHz
    double y = rng.gaussian(0.0, 1.0) + 1.3 * y1 - 0.5 * y2;
    y2 = y1;
    y1 = y;
    out[n] = std::clamp(0.25 * envelope * y, -0.999, 0.999);
  }
  return out;
}

std::vector<double> gen_room_response(dsp::SeededRng& rng, std::size_t taps) {
  std::vector<double> h(taps);
  for (std::size_t l = 0; l < taps; ++l)
    h[l] = std::exp(-5.0 * double(l) / double(taps)) * rng.uniform(-1.0, 1.0);
  double norm2 = 0.0;
  for (double v : h) norm2 += v * v;
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& v : h) v *= inv;
  return h;
}

std::vector<double> read_signal_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_signal_csv: cannot open " + path);
  std::vector<double> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      std::size_t pos = 0;
      double v = std::stod(line, &pos);
      out.push_back(v);
    } catch (const std::exception&) {
      if (first) {
        first = false;
        continue;  // header line
      }
      throw std::runtime_error("read_signal_csv: bad line '" + line + "'");
    }
    first = false;
  }
  return out;
}

}  // namespace efln::scenarios
