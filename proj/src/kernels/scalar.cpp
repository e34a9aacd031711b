#include "hecke/kernels.hpp"

namespace hecke::kernels {

namespace {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_squares(const double* x, std::size_t n) {
  double s = 0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void spmv(std::size_t rows, const std::uint32_t* row_ptr, const std::uint32_t* cols,
          const double* vals, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0;
    for (std::uint32_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += vals[k] * x[cols[k]];
    y[r] = s;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{Isa::scalar, dot, sum_squares, axpy, scale, spmv};
  return t;
}

}  // namespace hecke::kernels
