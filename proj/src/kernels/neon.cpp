#include "hecke/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace hecke::kernels {

#if defined(__aarch64__)

namespace {

double dot(const double* x, const double* y, std::size_t n) {
  float64x2_t a0 = vdupq_n_f64(0), a1 = vdupq_n_f64(0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 = vfmaq_f64(a0, vld1q_f64(x + i), vld1q_f64(y + i));
    a1 = vfmaq_f64(a1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(a0, a1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_squares(const double* x, std::size_t n) {
  float64x2_t a0 = vdupq_n_f64(0), a1 = vdupq_n_f64(0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t v0 = vld1q_f64(x + i);
    const float64x2_t v1 = vld1q_f64(x + i + 2);
    a0 = vfmaq_f64(a0, v0, v0);
    a1 = vfmaq_f64(a1, v1, v1);
  }
  double s = vaddvq_f64(vaddq_f64(a0, a1));
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void spmv(std::size_t rows, const std::uint32_t* row_ptr, const std::uint32_t* cols,
          const double* vals, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    std::uint32_t k = row_ptr[r];
    const std::uint32_t end = row_ptr[r + 1];
    float64x2_t acc = vdupq_n_f64(0);
    for (; k + 2 <= end; k += 2) {
      const double pair[2] = {x[cols[k]], x[cols[k + 1]]};
      acc = vfmaq_f64(acc, vld1q_f64(vals + k), vld1q_f64(pair));
    }
    double s = vaddvq_f64(acc);
    for (; k < end; ++k) s += vals[k] * x[cols[k]];
    y[r] = s;
  }
}

}  // namespace

const KernelTable* neon_table() {
  static const KernelTable t{Isa::neon, dot, sum_squares, axpy, scale, spmv};
  return &t;
}

#else

const KernelTable* neon_table() { return nullptr; }

#endif

}  // namespace hecke::kernels
