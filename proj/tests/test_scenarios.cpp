#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "efln/dsp.hpp"
#include "efln/scenarios.hpp"

using namespace efln;
using namespace efln::scenarios;

TEST_CASE("generators are pure functions of the seed") {
  dsp::SeededRng a(7), b(7), c(8);
  const auto ua = gen_uniform(a, -1.0, 1.0, 256);
  const auto ub = gen_uniform(b, -1.0, 1.0, 256);
  const auto uc = gen_uniform(c, -1.0, 1.0, 256);
  CHECK(ua == ub);
  CHECK(ua != uc);
}

TEST_CASE("gen_uniform statistics and range") {
  dsp::SeededRng rng(9);
  const auto u = gen_uniform(rng, -1.0, 1.0, 1000000);
  double mean = 0.0;
  for (double v : u) {
    mean += v;
    CHECK(v >= -1.0);
    CHECK(v < 1.0);
  }
  CHECK(std::abs(mean / static_cast<double>(u.size())) < 0.01);
}

TEST_CASE("gen_awgn_for_snr variance") {
  dsp::SeededRng rng(10);
  const auto sig = gen_uniform(rng, -1.0, 1.0, 100000);
  const double p_sig = signal_power(sig);

  const auto n0 = gen_awgn_for_snr(sig, 0.0, rng);
  CHECK(std::abs(signal_power(n0) - p_sig) / p_sig < 0.02);

  std::vector<double> unit(100000, 1.0);
  const auto n40 = gen_awgn_for_snr(unit, 40.0, rng);
  CHECK(std::abs(signal_power(n40) - 1e-4) / 1e-4 < 0.02);

  auto twice = sig;
  for (auto& v : twice) v *= std::sqrt(2.0);
  const auto nt = gen_awgn_for_snr(twice, 10.0, rng);
  const auto ns = gen_awgn_for_snr(sig, 10.0, rng);
  CHECK(std::abs(signal_power(nt) / signal_power(ns) - 2.0) < 0.1);

  CHECK_THROWS(gen_awgn_for_snr(std::vector<double>(8, 0.0), 40.0, rng));
}

TEST_CASE("logistic chaotic sequence") {
  const auto u = gen_logistic(100000);
  // Pre-normalization recurrence from u(0)=0.9: 0.36, then 0.9216.
  const double scale = 0.9 / u[0];
  CHECK(u[1] * scale == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(u[2] * scale == doctest::Approx(0.9216).epsilon(1e-12));
  CHECK(signal_power(u) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("nsi_plant hand values") {
  const auto at_zero = nsi_plant(std::vector<double>{0.0});
  CHECK(at_zero[0] == doctest::Approx(0.025).epsilon(1e-12));

  // u(n)=0.5 with zero u(n-4) history.
  const auto v = nsi_plant(std::vector<double>{0.5});
  CHECK(v[0] == doctest::Approx(0.6 - 2.0 / 2.125 - 0.1 + 1.125).epsilon(1e-12));

  dsp::SeededRng rng(11);
  const auto u = gen_uniform(rng, -0.5, 0.5, 64);
  auto up = u;
  up[40] += 1e-9;
  const auto y = nsi_plant(u);
  const auto yp = nsi_plant(up);
  CHECK(std::abs(yp[40] - y[40]) < 1e-6);
}

TEST_CASE("loudspeaker gamma and sigmoid distortion") {
  const auto g = loudspeaker_gamma(std::vector<double>{0.0, 1.0, -0.5});
  CHECK(g[0] == 0.0);
  CHECK(g[1] == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(g[2] == doctest::Approx(-0.825).epsilon(1e-12));

  const auto phi = sigmoid_distortion(std::vector<double>{0.0, 1.0, -1.0});
  CHECK(phi[0] == 0.0);
  CHECK(phi[1] == doctest::Approx(2.0 / (1.0 + std::exp(-4.0)) - 1.0).epsilon(1e-12));
  CHECK(phi[2] == doctest::Approx(2.0 / (1.0 + std::exp(0.5)) - 1.0).epsilon(1e-12));

  // Monotone increasing and bounded in (-1, 1).
  double prev = -1.0;
  for (double x = -3.0; x <= 3.0; x += 0.01) {
    const auto p = sigmoid_distortion(std::vector<double>{x});
    CHECK(p[0] > prev);
    CHECK(std::abs(p[0]) < 1.0);
    prev = p[0];
  }
}

TEST_CASE("nanc_poly_primary hand values") {
  const auto zero = nanc_poly_primary(std::vector<double>(6, 0.0));
  for (double v : zero) CHECK(v == 0.0);

  const auto a = nanc_poly_primary(std::vector<double>{1.0, 0.0, 0.0});
  CHECK(a[2] == doctest::Approx(1.4).epsilon(1e-12));

  const auto b = nanc_poly_primary(std::vector<double>{1.0, 1.0, 1.0});
  CHECK(b[2] == doctest::Approx(2.4).epsilon(1e-12));
}

TEST_CASE("path fixtures digit checks") {
  const auto engine = path_fixtures("engine");
  REQUIRE(engine.primary.size() == 16);
  CHECK(engine.primary[9] == 0.8);
  CHECK(engine.primary[15] == -0.05);
  REQUIRE(engine.secondary.size() == 13);
  CHECK(engine.secondary[6] == 2.5);
  CHECK(engine.secondary[12] == -0.001875);

  const auto chaotic = path_fixtures("chaotic");
  CHECK(chaotic.primary == std::vector<double>{0, 0, 0, 0, 0, 1, 0.3, 0.2});
  CHECK(chaotic.secondary == std::vector<double>{0, 0, 1, 1.5, -1});

  CHECK_THROWS(path_fixtures("submarine"));
}

TEST_CASE("tanh secondary distortion") {
  const auto v = tanh_secondary(std::vector<double>{0.0, 1.0, 1e6});
  CHECK(v[0] == 0.0);
  CHECK(v[1] == doctest::Approx(3.3 * std::tanh(0.3)).epsilon(1e-12));
  CHECK(v[2] == doctest::Approx(3.3).epsilon(1e-9));
}

TEST_CASE("ident_efln_plant") {
  const int m = 4, p = 1;
  dsp::SeededRng rng(12);
  const auto u = gen_uniform(rng, -1.0, 1.0, 32);

  const std::vector<double> zero(m * 3, 0.0);
  for (double v : ident_efln_plant(u, zero, -0.4, m, p)) CHECK(v == 0.0);

  // Unit weight on channel 1, tap 1: pure pass-through.
  auto passthrough = zero;
  passthrough[0] = 1.0;
  const auto y = ident_efln_plant(u, passthrough, -0.4, m, p);
  for (std::size_t n = 0; n < u.size(); ++n) CHECK(y[n] == doctest::Approx(u[n]).epsilon(1e-12));

  CHECK_THROWS(ident_efln_plant(u, std::vector<double>(5, 0.0), -0.4, m, p));
}

TEST_CASE("synthetic stand-ins") {
  dsp::SeededRng rng(13);
  const auto engine = gen_engine_standin(rng, 20000);
  double engine_peak = 0.0;
  for (double v : engine) engine_peak = std::max(engine_peak, std::abs(v));
  CHECK(engine_peak == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(signal_power(engine) > 0.0);

  const auto speech = gen_speech_standin(rng, 20000);
  for (double v : speech) CHECK(std::abs(v) < 1.0);
  CHECK(signal_power(speech) > 0.0);

  const auto room = gen_room_response(rng, 512);
  double norm = 0.0;
  for (double v : room) norm += v * v;
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("read_signal_csv") {
  const char* path = "efln_test_signal.csv";
  {
    std::ofstream out(path);
    out << "value\n0.25\n-1.5\n3\n";
  }
  const auto v = read_signal_csv(path);
  CHECK(v == std::vector<double>{0.25, -1.5, 3.0});
  std::remove(path);
  CHECK_THROWS(read_signal_csv("does_not_exist.csv"));
}
