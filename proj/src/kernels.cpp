#include "efln/kernels.hpp"

namespace efln::kernels {

namespace scalar {

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double ar = a[j].real(), ai = a[j].imag();
    const double br = b[j].real(), bi = b[j].imag();
    out[j] = {ar * br - ai * bi, ai * br + ar * bi};
  }
}

void cmul_conj(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double ar = a[j].real(), ai = a[j].imag();
    const double br = b[j].real(), bi = b[j].imag();
    out[j] = {ar * br + ai * bi, ai * br - ar * bi};
  }
}

void axpy(double mu, const cplx* x, cplx* w, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j)
    w[j] = {w[j].real() + mu * x[j].real(), w[j].imag() + mu * x[j].imag()};
}

void vadd(const double* x, double* acc, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) acc[j] += x[j];
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += a[j] * b[j];
  return s;
}

}  // namespace scalar

namespace {

struct Table {
  void (*cmul)(const cplx*, const cplx*, cplx*, std::size_t);
  void (*cmul_conj)(const cplx*, const cplx*, cplx*, std::size_t);
  void (*axpy)(double, const cplx*, cplx*, std::size_t);
  void (*vadd)(const double*, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  std::string_view name;
};

constexpr Table kScalar{scalar::cmul, scalar::cmul_conj, scalar::axpy,
                        scalar::vadd, scalar::dot, "scalar"};
constexpr Table kAvx2{avx2::cmul, avx2::cmul_conj, avx2::axpy,
                      avx2::vadd, avx2::dot, "avx2"};

std::string_view g_name = "scalar";

void bind(const Table& t) {
  cmul = t.cmul;
  cmul_conj = t.cmul_conj;
  axpy = t.axpy;
  vadd = t.vadd;
  dot = t.dot;
  g_name = t.name;
}

struct Init {
  Init() { bind(avx2::supported() ? kAvx2 : kScalar); }
};
Init g_init;

}  // namespace

void (*cmul)(const cplx*, const cplx*, cplx*, std::size_t) = scalar::cmul;
void (*cmul_conj)(const cplx*, const cplx*, cplx*, std::size_t) = scalar::cmul_conj;
void (*axpy)(double, const cplx*, cplx*, std::size_t) = scalar::axpy;
void (*vadd)(const double*, double*, std::size_t) = scalar::vadd;
double (*dot)(const double*, const double*, std::size_t) = scalar::dot;

std::string_view active_variant() { return g_name; }

bool select_variant(std::string_view name) {
  if (name == "scalar") {
    bind(kScalar);
    return true;
  }
  if (name == "avx2" && avx2::supported()) {
    bind(kAvx2);
    return true;
  }
  return false;
}

}  // namespace efln::kernels
