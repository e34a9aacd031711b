#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hecke/algebra.hpp"
#include "hecke/coset.hpp"

namespace hecke {

/// Complex CSR matrix with split real and imaginary value arrays over one
/// sparsity pattern. Columns within a row are sorted.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint32_t> row_ptr{0};
  std::vector<std::uint32_t> col_idx;
  std::vector<double> re;
  std::vector<double> im;

  using Column = std::vector<std::pair<std::uint32_t, std::complex<double>>>;
  /// Builds from column lists (row index, value); duplicate rows are summed.
  static SparseMatrix from_columns(std::size_t rows, const std::vector<Column>& columns);

  std::size_t nnz() const { return col_idx.size(); }
  bool is_real() const;
  std::complex<double> at(std::size_t r, std::size_t c) const;
  SparseMatrix adjoint() const;
};

/// Matrix of λ(f) from the ball of radius r (columns) into the ball of radius
/// r + ℓ (rows), ℓ the largest length on supp f. No image coefficient is lost.
struct TruncatedOperator {
  BallIndex domain;
  BallIndex codomain;
  SparseMatrix matrix;
};

template <class Scalar>
TruncatedOperator truncate(const BasicHeckeElement<Scalar>& f, const LengthFunction& length, double radius);

/// Matrix of λ(f) restricted to the given columns, keeping rows whose length
/// passes `keep_row`. Rows are ordered by (length, key).
struct OperatorBlock {
  std::vector<RightBallEntry> rows;
  std::vector<RightBallEntry> cols;
  SparseMatrix matrix;
};

template <class Scalar>
OperatorBlock assemble_block(const BasicHeckeElement<Scalar>& f, const LengthFunction& length,
                             std::vector<RightBallEntry> columns,
                             const std::function<bool(double)>& keep_row);

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iter = 10000;
  std::uint64_t seed = 0;
  /// Iterations without a new smallest relative change before a pass stops.
  int plateau_window = 50;
};

struct PowerResult {
  double value = 0;
  int iterations = 0;
  double residual = 0;
  bool converged = false;
  std::vector<std::complex<double>> vector;
};

/// Largest singular value by power iteration on MᴴM. The reported value is
/// max ‖Mv‖ over the unit iterates, hence a lower bound for ‖M‖. One pass
/// starts at the normalized all-ones vector, a second at a seeded random one.
PowerResult power_norm(const SparseMatrix& m, const PowerIterationOptions& opts = {});
/// ‖M‖ evaluated at a given (not necessarily normalized) vector: ‖Mv‖/‖v‖.
double norm_at(const SparseMatrix& m, const std::vector<std::complex<double>>& v);

/// Operator norm: dense SVD for matrices with both sides ≤ dense_limit, power
/// iteration above.
double spectral_norm(const SparseMatrix& m, const PowerIterationOptions& opts = {},
                     std::size_t dense_limit = 64);

struct NormBracket {
  double radius = 0;
  double lower = 0;
  double upper = 0;
  std::string lower_method;
  std::string upper_method;
  int iterations = 0;
  double residual = 0;
  bool converged = false;
};

/// Certified lower bound ‖λ(f)‖ ≥ ‖M_r‖ from the column-exact truncation.
template <class Scalar>
NormBracket norm_lower(const BasicHeckeElement<Scalar>& f, const LengthFunction& length,
                       double radius, const PowerIterationOptions& opts = {});

/// Schur-test bound √(‖f‖₁‖f*‖₁) with ‖·‖₁ summed over right cosets.
template <class Scalar>
double norm_upper(const BasicHeckeElement<Scalar>& f);

/// Brackets over increasing radii. Each radius also re-evaluates the previous
/// radius' maximizer (zero-padded), so the lower bounds are nondecreasing.
template <class Scalar>
std::vector<NormBracket> norm_profile(const BasicHeckeElement<Scalar>& f,
                                      const LengthFunction& length,
                                      const std::vector<double>& radii,
                                      const PowerIterationOptions& opts = {});

}  // namespace hecke
