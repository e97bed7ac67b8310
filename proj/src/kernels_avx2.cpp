#include "efln/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#define EFLN_X86 1
#include <immintrin.h>
#else
#define EFLN_X86 0
#endif

namespace efln::kernels::avx2 {

#if EFLN_X86

bool supported() { return __builtin_cpu_supports("avx2"); }

// Two interleaved complex doubles per 256-bit register. The arithmetic is
// arranged to match the scalar formulas operation-for-operation:
//   re = ar*br - ai*bi,  im = ai*br + ar*bi

__attribute__((target("avx2"))) void cmul(const cplx* a, const cplx* b, cplx* out,
                                          std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  auto* po = reinterpret_cast<double*>(out);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * j);
    __m256d vb = _mm256_loadu_pd(pb + 2 * j);
    __m256d br = _mm256_permute_pd(vb, 0x0);   // [br0 br0 br1 br1]
    __m256d bi = _mm256_permute_pd(vb, 0xF);   // [bi0 bi0 bi1 bi1]
    __m256d asw = _mm256_permute_pd(va, 0x5);  // [ai0 ar0 ai1 ar1]
    __m256d r = _mm256_addsub_pd(_mm256_mul_pd(va, br), _mm256_mul_pd(asw, bi));
    _mm256_storeu_pd(po + 2 * j, r);
  }
  if (j < n) scalar::cmul(a + j, b + j, out + j, n - j);
}

__attribute__((target("avx2"))) void cmul_conj(const cplx* a, const cplx* b, cplx* out,
                                               std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  auto* po = reinterpret_cast<double*>(out);
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * j);
    __m256d vb = _mm256_loadu_pd(pb + 2 * j);
    __m256d br = _mm256_permute_pd(vb, 0x0);
    __m256d bi = _mm256_xor_pd(_mm256_permute_pd(vb, 0xF), sign);  // -bi
    __m256d asw = _mm256_permute_pd(va, 0x5);
    __m256d r = _mm256_addsub_pd(_mm256_mul_pd(va, br), _mm256_mul_pd(asw, bi));
    _mm256_storeu_pd(po + 2 * j, r);
  }
  if (j < n) scalar::cmul_conj(a + j, b + j, out + j, n - j);
}

__attribute__((target("avx2"))) void axpy(double mu, const cplx* x, cplx* w, std::size_t n) {
  const auto* px = reinterpret_cast<const double*>(x);
  auto* pw = reinterpret_cast<double*>(w);
  const __m256d vmu = _mm256_set1_pd(mu);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * j);
    __m256d vw = _mm256_loadu_pd(pw + 2 * j);
    _mm256_storeu_pd(pw + 2 * j, _mm256_add_pd(vw, _mm256_mul_pd(vmu, vx)));
  }
  if (j < n) scalar::axpy(mu, x + j, w + j, n - j);
}

__attribute__((target("avx2"))) void vadd(const double* x, double* acc, std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d vx = _mm256_loadu_pd(x + j);
    __m256d va = _mm256_loadu_pd(acc + j);
    _mm256_storeu_pd(acc + j, _mm256_add_pd(va, vx));
  }
  for (; j < n; ++j) acc[j] += x[j];
}

__attribute__((target("avx2"))) double dot(const double* a, const double* b, std::size_t n) {
  __m256d s = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4)
    s = _mm256_add_pd(s, _mm256_mul_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, s);
  double r = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; j < n; ++j) r += a[j] * b[j];
  return r;
}

#else

bool supported() { return false; }
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) { scalar::cmul(a, b, out, n); }
void cmul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  scalar::cmul_conj(a, b, out, n);
}
void axpy(double mu, const cplx* x, cplx* w, std::size_t n) { scalar::axpy(mu, x, w, n); }
void vadd(const double* x, double* acc, std::size_t n) { scalar::vadd(x, acc, n); }
double dot(const double* a, const double* b, std::size_t n) { return scalar::dot(a, b, n); }

#endif

}  // namespace efln::kernels::avx2
