#include "hecke/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "hecke/errors.hpp"
#include "hecke/kernels.hpp"
#include "hecke/parallel.hpp"
#include "hecke/random.hpp"

namespace hecke {

// ---------------------------------------------------------------- sparse matrix

SparseMatrix SparseMatrix::from_columns(std::size_t rows, const std::vector<Column>& columns) {
  std::vector<std::vector<std::pair<std::uint32_t, std::complex<double>>>> by_row(rows);
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [r, v] : columns[c]) {
      if (r >= rows) throw std::out_of_range("row index outside the matrix");
      by_row[r].emplace_back(static_cast<std::uint32_t>(c), v);
    }
  SparseMatrix m;
  m.rows = rows;
  m.cols = columns.size();
  m.row_ptr.assign(1, 0);
  for (auto& row : by_row) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < row.size();) {
      std::complex<double> v = row[i].second;
      std::size_t j = i + 1;
      for (; j < row.size() && row[j].first == row[i].first; ++j) v += row[j].second;
      if (v != std::complex<double>{}) {
        m.col_idx.push_back(row[i].first);
        m.re.push_back(v.real());
        m.im.push_back(v.imag());
      }
      i = j;
    }
    m.row_ptr.push_back(static_cast<std::uint32_t>(m.col_idx.size()));
  }
  return m;
}

bool SparseMatrix::is_real() const {
  return std::all_of(im.begin(), im.end(), [](double x) { return x == 0.0; });
}

std::complex<double> SparseMatrix::at(std::size_t r, std::size_t c) const {
  for (std::uint32_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
    if (col_idx[k] == c) return {re[k], im[k]};
  return {};
}

SparseMatrix SparseMatrix::adjoint() const {
  std::vector<Column> cols_of_adjoint(rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::uint32_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
      cols_of_adjoint[r].emplace_back(col_idx[k], std::complex<double>(re[k], -im[k]));
  return from_columns(cols, cols_of_adjoint);
}

// ---------------------------------------------------------------- assembly

namespace {

template <class Scalar>
std::complex<double> as_complex(const Scalar& c) {
  return ScalarTraits<Scalar>::to_complex(c);
}

template <class Scalar>
BasicL2Vector<Scalar> column_image(const BasicHeckeElement<Scalar>& f, const CosetKey& col) {
  BasicL2Vector<Scalar> e(f.pair());
  e.add(col, Scalar(1));
  return apply_regular_rep(f, e);
}

bool by_length_then_key(const RightBallEntry& a, const RightBallEntry& b) {
  if (a.length != b.length) return a.length < b.length;
  return a.key < b.key;
}

}  // namespace

template <class Scalar>
TruncatedOperator truncate(const BasicHeckeElement<Scalar>& f, const LengthFunction& length,
                           double radius) {
  if (radius < 0) throw std::invalid_argument("truncation radius must be nonnegative");
  const HeckePair& pair = *f.pair();
  const double reach = max_support_length(f, length);
  TruncatedOperator t;
  t.domain = enumerate_ball(pair, length, radius);
  t.codomain = enumerate_ball(pair, length, radius + reach);
  const auto& cols = t.domain.rights();
  std::vector<SparseMatrix::Column> columns(cols.size());
  parallel_for(cols.size(), [&](std::size_t j) {
    const auto image = column_image(f, cols[j].key);
    for (const auto& [key, c] : image.terms()) {
      const std::size_t row = t.codomain.right_index(key);
      if (row == BallIndex::npos)
        throw AuditFailure("image coset " + key.rep.key_string() + " lies outside the padded codomain");
      columns[j].emplace_back(static_cast<std::uint32_t>(row), as_complex(c));
    }
  });
  t.matrix = SparseMatrix::from_columns(t.codomain.rights().size(), columns);
  return t;
}

template <class Scalar>
OperatorBlock assemble_block(const BasicHeckeElement<Scalar>& f, const LengthFunction& length,
                             std::vector<RightBallEntry> columns,
                             const std::function<bool(double)>& keep_row) {
  OperatorBlock block;
  block.cols = std::move(columns);
  std::vector<std::vector<std::pair<RightBallEntry, std::complex<double>>>> images(block.cols.size());
  parallel_for(block.cols.size(), [&](std::size_t j) {
    const auto image = column_image(f, block.cols[j].key);
    for (const auto& [key, c] : image.terms()) {
      const double l = length(key.rep);
      if (keep_row(l)) images[j].push_back({RightBallEntry{key, l}, as_complex(c)});
    }
  });
  for (const auto& col : images)
    for (const auto& [row, c] : col) block.rows.push_back(row);
  std::sort(block.rows.begin(), block.rows.end(), by_length_then_key);
  block.rows.erase(std::unique(block.rows.begin(), block.rows.end(),
                               [](const auto& a, const auto& b) { return a.key == b.key; }),
                   block.rows.end());
  std::map<CosetKey, std::uint32_t> index;
  for (std::size_t i = 0; i < block.rows.size(); ++i)
    index.emplace(block.rows[i].key, static_cast<std::uint32_t>(i));
  std::vector<SparseMatrix::Column> cols(block.cols.size());
  for (std::size_t j = 0; j < images.size(); ++j)
    for (const auto& [row, c] : images[j]) cols[j].emplace_back(index.at(row.key), c);
  block.matrix = SparseMatrix::from_columns(block.rows.size(), cols);
  return block;
}

// ---------------------------------------------------------------- power iteration

namespace {

/// y = M x on split complex vectors.
void apply(const SparseMatrix& m, bool complex_values, const std::vector<double>& xr,
           const std::vector<double>& xi, std::vector<double>& yr, std::vector<double>& yi,
           std::vector<double>& tmp) {
  const auto& k = kernels::active();
  k.spmv(m.rows, m.row_ptr.data(), m.col_idx.data(), m.re.data(), xr.data(), yr.data());
  k.spmv(m.rows, m.row_ptr.data(), m.col_idx.data(), m.re.data(), xi.data(), yi.data());
  if (!complex_values) return;
  k.spmv(m.rows, m.row_ptr.data(), m.col_idx.data(), m.im.data(), xi.data(), tmp.data());
  k.axpy(-1.0, tmp.data(), yr.data(), m.rows);
  k.spmv(m.rows, m.row_ptr.data(), m.col_idx.data(), m.im.data(), xr.data(), tmp.data());
  k.axpy(1.0, tmp.data(), yi.data(), m.rows);
}

double split_norm(const std::vector<double>& a, const std::vector<double>& b) {
  const auto& k = kernels::active();
  return std::sqrt(k.sum_squares(a.data(), a.size()) + k.sum_squares(b.data(), b.size()));
}

struct Pass {
  double value = 0;
  int iterations = 0;
  double residual = 0;
  bool converged = false;
  std::vector<double> vr, vi;
};

Pass run_pass(const SparseMatrix& m, const SparseMatrix& adj, bool complex_values,
              std::vector<double> vr, std::vector<double> vi, const PowerIterationOptions& opts) {
  const auto& k = kernels::active();
  Pass best;
  const double n0 = split_norm(vr, vi);
  if (n0 == 0) return best;
  k.scale(1.0 / n0, vr.data(), vr.size());
  k.scale(1.0 / n0, vi.data(), vi.size());

  std::vector<double> wr(m.rows), wi(m.rows), tr(std::max(m.rows, m.cols));
  std::vector<double> ur(m.cols), ui(m.cols);
  std::vector<double> dr(m.cols), di(m.cols);
  double smallest = std::numeric_limits<double>::infinity();
  int since_improvement = 0;
  best.vr = vr;
  best.vi = vi;
  for (int it = 1; it <= opts.max_iter; ++it) {
    apply(m, complex_values, vr, vi, wr, wi, tr);
    const double s = split_norm(wr, wi);
    best.iterations = it;
    if (s > best.value) {
      best.value = s;
      best.vr = vr;
      best.vi = vi;
    }
    if (s == 0) {
      best.converged = true;
      best.residual = 0;
      break;
    }
    // Relative Gram residual ‖MᴴMv − s²v‖/s²; the eigenvalue error is
    // quadratic in it, unlike the step-to-step change of s.
    apply(adj, complex_values, wr, wi, ur, ui, tr);
    const double mu = s * s;
    dr = ur;
    di = ui;
    k.axpy(-mu, vr.data(), dr.data(), dr.size());
    k.axpy(-mu, vi.data(), di.data(), di.size());
    const double residual = split_norm(dr, di) / mu;
    best.residual = residual;
    if (residual <= opts.tol) {
      best.converged = true;
      break;
    }
    if (residual < smallest) {
      smallest = residual;
      since_improvement = 0;
    } else if (++since_improvement >= opts.plateau_window) {
      break;
    }
    const double nu = split_norm(ur, ui);
    if (nu == 0) break;
    vr.swap(ur);
    vi.swap(ui);
    k.scale(1.0 / nu, vr.data(), vr.size());
    k.scale(1.0 / nu, vi.data(), vi.size());
  }
  return best;
}

}  // namespace

PowerResult power_norm(const SparseMatrix& m, const PowerIterationOptions& opts) {
  PowerResult out;
  out.vector.assign(m.cols, {});
  if (m.cols == 0 || m.rows == 0 || m.nnz() == 0) {
    out.converged = true;
    return out;
  }
  const bool complex_values = !m.is_real();
  const SparseMatrix adj = m.adjoint();

  Pass first = run_pass(m, adj, complex_values, std::vector<double>(m.cols, 1.0),
                        std::vector<double>(m.cols, 0.0), opts);
  std::mt19937_64 rng(splitmix64(opts.seed));
  std::vector<double> rr(m.cols), ri(m.cols, 0.0);
  for (auto& x : rr) x = 2 * uniform_unit(rng) - 1;
  if (complex_values)
    for (auto& x : ri) x = 2 * uniform_unit(rng) - 1;
  Pass second = run_pass(m, adj, complex_values, std::move(rr), std::move(ri), opts);

  const Pass& best = second.value > first.value ? second : first;
  out.value = best.value;
  out.iterations = first.iterations + second.iterations;
  out.residual = best.residual;
  out.converged = best.converged;
  for (std::size_t i = 0; i < m.cols; ++i) out.vector[i] = {best.vr[i], best.vi[i]};
  return out;
}

double norm_at(const SparseMatrix& m, const std::vector<std::complex<double>>& v) {
  if (v.size() != m.cols) throw std::invalid_argument("vector length does not match the matrix");
  std::vector<double> xr(m.cols), xi(m.cols), yr(m.rows), yi(m.rows), tmp(m.rows);
  for (std::size_t i = 0; i < m.cols; ++i) {
    xr[i] = v[i].real();
    xi[i] = v[i].imag();
  }
  const double n = split_norm(xr, xi);
  if (n == 0) return 0;
  apply(m, !m.is_real(), xr, xi, yr, yi, tmp);
  return split_norm(yr, yi) / n;
}

double spectral_norm(const SparseMatrix& m, const PowerIterationOptions& opts,
                     std::size_t dense_limit) {
  if (m.rows == 0 || m.cols == 0 || m.nnz() == 0) return 0;
  if (m.rows <= dense_limit && m.cols <= dense_limit) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m.rows),
                                                static_cast<Eigen::Index>(m.cols));
    for (std::size_t r = 0; r < m.rows; ++r)
      for (std::uint32_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k)
        d(static_cast<Eigen::Index>(r), m.col_idx[k]) = {m.re[k], m.im[k]};
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(d);
    return svd.singularValues()(0);
  }
  return power_norm(m, opts).value;
}

// ---------------------------------------------------------------- brackets

template <class Scalar>
double norm_upper(const BasicHeckeElement<Scalar>& f) {
  return std::sqrt(l1_right(f) * l1_right(involution(f)));
}

template <class Scalar>
NormBracket norm_lower(const BasicHeckeElement<Scalar>& f, const LengthFunction& length,
                       double radius, const PowerIterationOptions& opts) {
  return norm_profile(f, length, {radius}, opts).front();
}

template <class Scalar>
std::vector<NormBracket> norm_profile(const BasicHeckeElement<Scalar>& f,
                                      const LengthFunction& length,
                                      const std::vector<double>& radii,
                                      const PowerIterationOptions& opts) {
  std::vector<NormBracket> out;
  const double upper = norm_upper(f);
  BallIndex prev_domain;
  std::vector<std::complex<double>> prev_vector;
  for (const double r : radii) {
    const TruncatedOperator t = truncate(f, length, r);
    const PowerResult res = power_norm(t.matrix, opts);
    NormBracket b;
    b.radius = r;
    b.lower = res.value;
    b.upper = upper;
    b.lower_method = "power-iteration";
    b.upper_method = "schur";
    b.iterations = res.iterations;
    b.residual = res.residual;
    b.converged = res.converged;
    std::vector<std::complex<double>> keep = res.vector;
    if (!prev_vector.empty()) {
      std::vector<std::complex<double>> padded(t.domain.rights().size());
      bool nested = true;
      for (std::size_t i = 0; i < prev_domain.rights().size(); ++i) {
        const std::size_t j = t.domain.right_index(prev_domain.rights()[i].key);
        if (j == BallIndex::npos) {
          nested = false;
          break;
        }
        padded[j] = prev_vector[i];
      }
      if (nested) {
        const double carried = norm_at(t.matrix, padded);
        if (carried > b.lower) {
          b.lower = carried;
          b.lower_method = "power-iteration+warm-start";
          keep = std::move(padded);
        }
      }
    }
    prev_domain = t.domain;
    prev_vector = std::move(keep);
    out.push_back(std::move(b));
  }
  return out;
}

#define HECKE_INSTANTIATE(S)                                                                    \
  template TruncatedOperator truncate(const BasicHeckeElement<S>&, const LengthFunction&, double); \
  template OperatorBlock assemble_block(const BasicHeckeElement<S>&, const LengthFunction&,      \
                                        std::vector<RightBallEntry>,                            \
                                        const std::function<bool(double)>&);                    \
  template double norm_upper(const BasicHeckeElement<S>&);                                      \
  template NormBracket norm_lower(const BasicHeckeElement<S>&, const LengthFunction&, double,   \
                                  const PowerIterationOptions&);                                \
  template std::vector<NormBracket> norm_profile(const BasicHeckeElement<S>&,                   \
                                                 const LengthFunction&, const std::vector<double>&, \
                                                 const PowerIterationOptions&);

HECKE_INSTANTIATE(ExactComplex)
HECKE_INSTANTIATE(std::complex<double>)

#undef HECKE_INSTANTIATE

}  // namespace hecke
