#include <cmath>
#include <vector>

#include "doctest.h"
#include "efln/dsp.hpp"
#include "efln/expansion.hpp"

using namespace efln::expansion;

TEST_CASE("efln_expand pointwise values") {
  const auto a = efln_expand(std::vector<double>{0.5}, 0.0, 1);
  REQUIRE(a.size() == 3);
  CHECK(a[0][0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(a[1][0] == doctest::Approx(1.0).epsilon(1e-12));   // sin(pi/2)
  CHECK(std::abs(a[2][0]) < 1e-12);                        // cos(pi/2)

  const auto b = efln_expand(std::vector<double>{0.5}, 1.0, 1);
  CHECK(b[1][0] == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK(std::abs(b[2][0]) < 1e-12);

  const auto c = efln_expand(std::vector<double>{0.0}, 0.7, 2);
  REQUIRE(c.size() == 5);
  CHECK(c[0][0] == 0.0);
  CHECK(c[1][0] == 0.0);
  CHECK(c[2][0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c[3][0] == 0.0);
  CHECK(c[4][0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("derivative channels") {
  efln::dsp::SeededRng rng(3);
  std::vector<double> u(32);
  for (auto& v : u) v = rng.uniform(-1.0, 1.0);

  const auto h = efln_derivative(u, 0.8, 2);
  for (double v : h[0]) CHECK(v == 0.0);

  const auto single = efln_derivative(std::vector<double>{0.5}, 1.0, 1);
  CHECK(single[1][0] == doctest::Approx(-0.5 * std::exp(-0.5)).epsilon(1e-12));

  // Central finite difference of g in q.
  for (double q : {-2.0, -0.4, 0.0, 1.3, 2.0}) {
    const double delta = 1e-6;
    const auto gp = efln_expand(u, q + delta, 2);
    const auto gm = efln_expand(u, q - delta, 2);
    const auto hh = efln_derivative(u, q, 2);
    for (std::size_t i = 0; i < hh.size(); ++i)
      for (std::size_t j = 0; j < u.size(); ++j)
        CHECK(std::abs(hh[i][j] - (gp[i][j] - gm[i][j]) / (2.0 * delta)) < 1e-6);
  }
}

TEST_CASE("trig channels bounded by the exponential envelope") {
  efln::dsp::SeededRng rng(4);
  std::vector<double> u(64);
  for (auto& v : u) v = rng.uniform(-1.0, 1.0);
  for (double q : {-1.5, 0.0, 2.0}) {
    const auto g = efln_expand(u, q, 3);
    for (std::size_t i = 1; i < g.size(); ++i)
      for (std::size_t j = 0; j < u.size(); ++j)
        CHECK(std::abs(g[i][j]) <= std::exp(-q * std::abs(u[j])) + 1e-15);
  }
}

TEST_CASE("baseline expansions") {
  efln::dsp::SeededRng rng(5);
  std::vector<double> u(16);
  for (auto& v : u) v = rng.uniform(-1.0, 1.0);

  const auto tfln = expand_baseline(u, {.order = 2, .kind = Kind::Tfln});
  const auto efq0 = efln_expand(u, 0.0, 2);
  REQUIRE(tfln.size() == efq0.size());
  for (std::size_t i = 0; i < tfln.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) CHECK(tfln[i][j] == efq0[i][j]);

  const auto pow = expand_baseline(std::vector<double>{2.0}, {.order = 1, .kind = Kind::Power});
  REQUIRE(pow.size() == 3);
  CHECK(pow[0][0] == 2.0);
  CHECK(pow[1][0] == 4.0);
  CHECK(pow[2][0] == 8.0);

  const auto lin =
      expand_baseline(std::vector<double>{0.3, -0.1}, {.order = 3, .kind = Kind::Linear});
  REQUIRE(lin.size() == 1);
  CHECK(lin[0] == std::vector<double>{0.3, -0.1});

  CHECK_THROWS(expand_baseline(u, {.order = 1, .kind = Kind::Efln}));
}

TEST_CASE("channel counts") {
  CHECK(ExpansionConfig{.order = 3, .kind = Kind::Efln}.channels() == 7);
  CHECK(ExpansionConfig{.order = 2, .kind = Kind::Power}.channels() == 5);
  CHECK(ExpansionConfig{.order = 9, .kind = Kind::Linear}.channels() == 1);
}
