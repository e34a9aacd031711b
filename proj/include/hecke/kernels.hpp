#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hecke::kernels {

enum class Isa { scalar, avx2, neon };

std::string to_string(Isa isa);

/// Dense and CSR kernels on double arrays used by the norm estimators.
struct KernelTable {
  Isa isa;
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*sum_squares)(const double* x, std::size_t n);
  /// y += a·x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  /// x *= a
  void (*scale)(double a, double* x, std::size_t n);
  /// y = A·x for A in CSR form (row_ptr has rows+1 entries).
  void (*spmv)(std::size_t rows, const std::uint32_t* row_ptr, const std::uint32_t* cols,
               const double* vals, const double* x, double* y);
};

const KernelTable& scalar_table();
/// nullptr when the variant was not compiled in.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Variants that are compiled in and supported by the running CPU.
std::vector<Isa> available();
/// Best available variant, unless HECKE_KERNELS=scalar|avx2|neon overrides it.
const KernelTable& active();
/// Forces a variant; throws std::invalid_argument when it is unavailable.
void select(Isa isa);
const KernelTable& table(Isa isa);

}  // namespace hecke::kernels
