#include <cmath>
#include <complex>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "efln/dsp.hpp"
#include "efln/kernels.hpp"

using efln::kernels::cplx;

namespace {

std::vector<cplx> random_cvec(unsigned seed, std::size_t n) {
  efln::dsp::SeededRng rng(seed);
  std::vector<cplx> v(n);
  for (auto& c : v) c = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
  return v;
}

bool bit_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

}  // namespace

TEST_CASE("scalar kernels match std::complex semantics") {
  const auto a = random_cvec(1, 13);
  const auto b = random_cvec(2, 13);
  std::vector<cplx> out(13), out_conj(13);
  efln::kernels::scalar::cmul(a.data(), b.data(), out.data(), 13);
  efln::kernels::scalar::cmul_conj(a.data(), b.data(), out_conj.data(), 13);
  for (std::size_t i = 0; i < 13; ++i) {
    CHECK(std::abs(out[i] - a[i] * b[i]) < 1e-14);
    CHECK(std::abs(out_conj[i] - a[i] * std::conj(b[i])) < 1e-14);
  }

  auto w = random_cvec(3, 13);
  auto w_ref = w;
  efln::kernels::scalar::axpy(0.25, a.data(), w.data(), 13);
  for (std::size_t i = 0; i < 13; ++i)
    CHECK(std::abs(w[i] - (w_ref[i] + 0.25 * a[i])) < 1e-14);
}

TEST_CASE("avx2 variants are bit-exact against scalar") {
  if (!efln::kernels::avx2::supported()) return;
  // Odd length exercises the scalar tail of the vector loops.
  for (std::size_t n : {1u, 4u, 7u, 64u, 129u}) {
    const auto a = random_cvec(10 + static_cast<unsigned>(n), n);
    const auto b = random_cvec(20 + static_cast<unsigned>(n), n);
    std::vector<cplx> s(n), v(n);

    efln::kernels::scalar::cmul(a.data(), b.data(), s.data(), n);
    efln::kernels::avx2::cmul(a.data(), b.data(), v.data(), n);
    CHECK(bit_equal(s, v));

    efln::kernels::scalar::cmul_conj(a.data(), b.data(), s.data(), n);
    efln::kernels::avx2::cmul_conj(a.data(), b.data(), v.data(), n);
    CHECK(bit_equal(s, v));

    auto ws = random_cvec(30, n);
    auto wv = ws;
    efln::kernels::scalar::axpy(1e-3, a.data(), ws.data(), n);
    efln::kernels::avx2::axpy(1e-3, a.data(), wv.data(), n);
    CHECK(bit_equal(ws, wv));

    std::vector<double> xr(n), acc_s(n), acc_v;
    for (std::size_t i = 0; i < n; ++i) {
      xr[i] = a[i].real();
      acc_s[i] = b[i].real();
    }
    acc_v = acc_s;
    efln::kernels::scalar::vadd(xr.data(), acc_s.data(), n);
    efln::kernels::avx2::vadd(xr.data(), acc_v.data(), n);
    CHECK(std::memcmp(acc_s.data(), acc_v.data(), n * sizeof(double)) == 0);
  }
}

TEST_CASE("dot agrees across variants to reduction-order noise") {
  if (!efln::kernels::avx2::supported()) return;
  const std::size_t n = 1001;
  efln::dsp::SeededRng rng(5);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = rng.uniform(-1.0, 1.0);
    b[i] = rng.uniform(-1.0, 1.0);
  }
  const double ds = efln::kernels::scalar::dot(a.data(), b.data(), n);
  const double dv = efln::kernels::avx2::dot(a.data(), b.data(), n);
  CHECK(dv == doctest::Approx(ds).epsilon(1e-12));
}

TEST_CASE("variant selection") {
  const auto original = efln::kernels::active_variant();
  CHECK(efln::kernels::select_variant("scalar"));
  CHECK(efln::kernels::active_variant() == "scalar");
  CHECK_FALSE(efln::kernels::select_variant("neon"));
  if (efln::kernels::avx2::supported()) {
    CHECK(efln::kernels::select_variant("avx2"));
    CHECK(efln::kernels::active_variant() == "avx2");
  }
  CHECK(efln::kernels::select_variant(original));
}
