#include <cmath>
#include <vector>

#include "doctest.h"
#include "efln/metrics.hpp"

using namespace efln::metrics;

TEST_CASE("mse_db") {
  CHECK(mse_db(std::vector<double>(10, 0.1)) == doctest::Approx(-20.0).epsilon(1e-12));
  CHECK(mse_db(std::vector<double>(5, 1.0)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(mse_db(std::vector<double>{0.0, 2.0}) ==
        doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-12));
  CHECK(mse_db(std::vector<double>(4, 0.0)) == kMseFloorDb);
  CHECK_THROWS(mse_db(std::vector<double>{}));
}

TEST_CASE("erle_db") {
  const std::vector<double> d{1.0, -2.0, 0.5};
  CHECK(erle_db(d, d) == doctest::Approx(0.0).epsilon(1e-12));

  std::vector<double> e = d;
  for (auto& v : e) v /= 10.0;
  CHECK(erle_db(d, e) == doctest::Approx(20.0).epsilon(1e-12));

  // ||d||^2 = 2, ||e||^2 = 1 -> 3.0103 dB.
  CHECK(erle_db(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 0.0}) ==
        doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-12));

  CHECK(erle_db(d, std::vector<double>(3, 0.0)) == kErleCapDb);
  CHECK_THROWS(erle_db(d, std::vector<double>{1.0}));
}

TEST_CASE("moving_average") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  CHECK(moving_average(x, 1) == x);
  const auto w2 = moving_average(x, 2);
  CHECK(w2[0] == 1.0);
  CHECK(w2[1] == doctest::Approx(1.5));
  CHECK(w2[2] == doctest::Approx(2.5));
  CHECK(w2[3] == doctest::Approx(3.5));
  CHECK_THROWS(moving_average(x, 0));
}
