#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

// Data-parallel inner loops of the overlap-save pipeline. Scalar reference
// implementations plus AVX2 variants selected once at startup; the two must
// agree bit-for-bit for cmul/cmul_conj/axpy (same operation order, no FMA)
// and to rounding noise for the reduction in dot.

namespace efln::kernels {

using cplx = std::complex<double>;

namespace scalar {
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void cmul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void axpy(double mu, const cplx* x, cplx* w, std::size_t n);
void vadd(const double* x, double* acc, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool supported();
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void cmul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n);
void axpy(double mu, const cplx* x, cplx* w, std::size_t n);
void vadd(const double* x, double* acc, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
}  // namespace avx2

// Dispatched entry points (function pointers bound on first use).

/// out[j] = a[j] * b[j]
extern void (*cmul)(const cplx*, const cplx*, cplx*, std::size_t);
/// out[j] = a[j] * conj(b[j])
extern void (*cmul_conj)(const cplx*, const cplx*, cplx*, std::size_t);
/// w[j] += mu * x[j]
extern void (*axpy)(double, const cplx*, cplx*, std::size_t);
/// acc[j] += x[j]
extern void (*vadd)(const double*, double*, std::size_t);
/// sum_j a[j] * b[j]
extern double (*dot)(const double*, const double*, std::size_t);

/// Name of the active variant ("avx2" or "scalar").
std::string_view active_variant();

/// Force a variant by name for testing; returns false if unavailable.
bool select_variant(std::string_view name);

}  // namespace efln::kernels
