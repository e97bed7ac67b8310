#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "efln/adaptive_td.hpp"
#include "efln/dsp.hpp"
#include "efln/errors.hpp"
#include "efln/scenarios.hpp"

using namespace efln;

namespace {

std::vector<double> random_vec(dsp::SeededRng& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = scale * rng.uniform(-1.0, 1.0);
  return v;
}

}  // namespace

TEST_CASE("efln_lms_step basics") {
  auto st = td::td_init(4, 2, 0.01, 0.01, 0.3);
  const auto [y, e] = td::efln_lms_step(st, 0.7, 1.5);
  CHECK(y == 0.0);  // zero weights
  CHECK(e == 1.5);
  CHECK(st.q == 0.3);  // h^T w = 0 when w = 0

  auto frozen = td::td_init(4, 2, 0.0, 0.0, 0.3);
  td::efln_lms_step(frozen, 0.7, 1.5);
  CHECK(std::all_of(frozen.w.begin(), frozen.w.end(), [](double w) { return w == 0.0; }));
  CHECK(frozen.q == 0.3);
}

TEST_CASE("efln_lms_step hand-evaluated filtering") {
  // M=2, P=1, q=0, w = all ones, u(n-1)=0 then u(n)=0.5:
  // y = 0.5 + sin(pi/2) + cos(pi/2) + 0 + sin(0) + cos(0) = 2.5
  auto st = td::td_init(2, 1, 0.0, 0.0, 0.0);
  std::fill(st.w.begin(), st.w.end(), 1.0);
  td::efln_lms_step(st, 0.0, 0.0);
  const auto [y, e] = td::efln_lms_step(st, 0.5, 0.0);
  CHECK(y == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(e == doctest::Approx(-2.5).epsilon(1e-12));
}

TEST_CASE("block_td_step basics") {
  const int m = 4;
  dsp::SeededRng rng(9);
  const auto u = random_vec(rng, m);
  const auto d = random_vec(rng, m);

  auto st = td::td_init(m, 1, 0.05, 0.0, 0.2);
  const auto [y, e] = td::block_td_step(st, u, d);
  for (int j = 0; j < m; ++j) {
    CHECK(y[j] == 0.0);
    CHECK(e[j] == d[j]);
  }
  CHECK(st.q == 0.2);

  // Brute-force w(k+1) = mu_w G(k) d(k); the channel history before block 0
  // is zero (cold start), so only the current block's expansion enters.
  const auto g = expansion::efln_expand(u, 0.2, 1);
  auto g_at = [&](int i, int n) { return n >= 0 ? g[i][n] : 0.0; };
  for (int i = 0; i < 3; ++i)
    for (int l = 1; l <= m; ++l) {
      double acc = 0.0;
      for (int j = 1; j <= m; ++j) acc += d[j - 1] * g_at(i, j - l);
      CHECK(st.w[i * m + (l - 1)] == doctest::Approx(0.05 * acc).epsilon(1e-12));
    }

  auto frozen = td::td_init(m, 1, 0.0, 0.0, 0.2);
  td::block_td_step(frozen, u, d);
  td::block_td_step(frozen, d, u);
  CHECK(std::all_of(frozen.w.begin(), frozen.w.end(), [](double w) { return w == 0.0; }));
  CHECK(frozen.q == 0.2);
}

TEST_CASE("M=1 block mode degenerates to the sample-wise rule") {
  auto blk = td::td_init(1, 2, 0.02, 0.01, -0.1);
  auto smp = td::td_init(1, 2, 0.02, 0.01, -0.1);
  dsp::SeededRng rng(21);
  for (int n = 0; n < 300; ++n) {
    const double u = rng.uniform(-1.0, 1.0);
    const double d = rng.uniform(-1.0, 1.0);
    const auto [yb, eb] = td::block_td_step(blk, std::vector<double>{u}, std::vector<double>{d});
    const auto [ys, es] = td::efln_lms_step(smp, u, d);
    CHECK(std::abs(yb[0] - ys) < 1e-12);
    CHECK(std::abs(eb[0] - es) < 1e-12);
    CHECK(std::abs(blk.q - smp.q) < 1e-12);
  }
  for (std::size_t i = 0; i < blk.w.size(); ++i) CHECK(std::abs(blk.w[i] - smp.w[i]) < 1e-12);
}

TEST_CASE("noiseless matched plant: block error energy settles") {
  const int m = 8, p = 1;
  dsp::SeededRng rng(33);
  const int blocks = 150;
  const auto u = random_vec(rng, static_cast<std::size_t>(blocks) * m);
  const auto wbar = scenarios::ident_fixture_weights(rng, m, p);
  const auto ybar = scenarios::ident_efln_plant(u, wbar, -0.4, m, p);

  auto st = td::td_init(m, p, 0.01, 0.005, 0.0);
  std::vector<double> energy(blocks);
  for (int k = 0; k < blocks; ++k) {
    const std::span<const double> ub(u.data() + k * m, m);
    const std::span<const double> db(ybar.data() + k * m, m);
    const auto [y, e] = td::block_td_step(st, ub, db);
    double acc = 0.0;
    for (double v : e) acc += v * v;
    energy[k] = acc;
  }
  // After the transient, the error energy must have dropped and stay low.
  const double early = *std::max_element(energy.begin(), energy.begin() + 10);
  const double late = *std::max_element(energy.end() - 20, energy.end());
  CHECK(late < 0.05 * early);
}

TEST_CASE("divergence raises with block index") {
  auto st = td::td_init(4, 1, 1e9, 0.0, 0.0);
  dsp::SeededRng rng(2);
  const auto u = random_vec(rng, 64);
  const auto d = random_vec(rng, 64, 10.0);
  bool thrown = false;
  for (int k = 0; k < 16 && !thrown; ++k) {
    try {
      td::block_td_step(st, std::span<const double>(u.data() + k * 4, 4),
                        std::span<const double>(d.data() + k * 4, 4));
    } catch (const DivergenceError& err) {
      thrown = true;
      CHECK(err.block() >= 0);
    }
  }
  CHECK(thrown);
}
