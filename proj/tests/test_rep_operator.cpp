#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "generators.hpp"
#include "hecke/catalog.hpp"
#include "hecke/kernels.hpp"
#include "hecke/operator.hpp"
#include "oracles.hpp"

using namespace hecke;
using hecke::kernels::Isa;

namespace {

HeckeElement two_term(const PairPtr& p, long a, long b) {
  HeckeElement f(p);
  f.add(GroupElement::dihedral(0, 1), ExactComplex(Rational(a)));
  f.add(GroupElement::dihedral(1, 1), ExactComplex(Rational(b)));
  return f;
}

Eigen::MatrixXcd dense(const SparseMatrix& m) {
  Eigen::MatrixXcd d(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m.at(r, c);
  return d;
}

}  // namespace

TEST_CASE("truncation shapes") {
  const auto d = build_pair("dihedral");
  const auto& L = *d->length();
  const auto t = truncate(HeckeElement::delta(d, GroupElement::dihedral(1, 1)), L, 1);
  CHECK(t.matrix.cols == 3);
  CHECK(t.matrix.rows == 5);
  CHECK(t.matrix.nnz() == 6);
  for (std::size_t c = 0; c < 3; ++c) {
    int ones = 0;
    for (std::size_t r = 0; r < 5; ++r) ones += t.matrix.at(r, c) == std::complex<double>(1, 0);
    CHECK(ones == 2);
  }
  const auto id = truncate(HeckeElement::unit(d), L, 4);
  CHECK(id.matrix.nnz() == 9);
  for (std::size_t c = 0; c < 9; ++c) CHECK(id.matrix.at(id.codomain.right_index(id.domain.rights()[c].key), c) == std::complex<double>(1, 0));
  CHECK(truncate(HeckeElement(d), L, 3).matrix.nnz() == 0);
}

TEST_CASE("adjoint and CSR construction") {
  std::mt19937_64 rng(1);
  std::vector<SparseMatrix::Column> cols(5);
  for (auto& c : cols)
    for (std::uint32_t r = 0; r < 4; ++r)
      if (rng() % 2) c.emplace_back(r, std::complex<double>(double(rng() % 5), double(rng() % 3)));
  cols[0].emplace_back(0, 1.0);
  cols[0].emplace_back(0, 2.0);  // duplicates are summed
  const auto m = SparseMatrix::from_columns(4, cols);
  const auto a = m.adjoint();
  CHECK(dense(a).isApprox(dense(m).adjoint()));
}

TEST_CASE("power iteration against dense SVD") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t rows = 2 + rng() % 40, ncols = 2 + rng() % 40;
    std::vector<SparseMatrix::Column> cols(ncols);
    for (auto& c : cols)
      for (std::uint32_t r = 0; r < rows; ++r)
        if (rng() % 3 == 0) c.emplace_back(r, std::complex<double>(double(long(rng() % 7) - 3), double(long(rng() % 5) - 2)));
    const auto m = SparseMatrix::from_columns(rows, cols);
    const double truth = oracle::top_singular_value(dense(m));
    const auto res = power_norm(m);
    CHECK(res.value <= truth * (1 + 1e-12) + 1e-12);
    CHECK(res.value >= truth * (1 - 1e-6));
    CHECK(std::abs(spectral_norm(m) - truth) <= 1e-9 * (1 + truth));
    CHECK(std::abs(spectral_norm(m, {}, 0) - res.value) <= 1e-12 * (1 + truth));
  }
}

TEST_CASE("finite_index closed form max(|a+b|, |a-b|)") {
  const auto p = build_pair("finite_index");
  const auto& L = *p->length();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const long a = gen::pick(rng, -20, 20), b = gen::pick(rng, -20, 20);
    if (a == 0 && b == 0) continue;
    const double expect = std::max(std::abs(a + b), std::abs(a - b));
    CHECK(std::abs(norm_lower(two_term(p, a, b), L, 0).lower - expect) <= 1e-9);
    CHECK(oracle::cyclic_norm({double(a), double(b)}) == doctest::Approx(expect));
  }
  for (long n : {3, 5}) {
    const auto q = build_pair("finite_index", {{"index", std::to_string(n)}});
    for (int i = 0; i < 20; ++i) {
      HeckeElement f(q);
      std::vector<std::complex<double>> c(static_cast<std::size_t>(n));
      for (long j = 0; j < n; ++j) {
        const auto x = gen::coefficient(rng, true);
        f.add(GroupElement::dihedral(j, 1), x);
        c[static_cast<std::size_t>(j)] = x.to_complex();
      }
      CHECK(std::abs(norm_lower(f, *q->length(), 0).lower - oracle::cyclic_norm(c)) <= 1e-9);
    }
  }
}

TEST_CASE("dihedral brackets contain the Fourier norm") {
  const auto d = build_pair("dihedral");
  const auto& L = *d->length();
  const auto s1 = HeckeElement::delta(d, GroupElement::dihedral(1, 1));
  CHECK(norm_upper(s1) == 2.0);
  CHECK(norm_upper(HeckeElement::unit(d)) == 1.0);
  CHECK(norm_lower(HeckeElement::unit(d), L, 3).lower == doctest::Approx(1.0).epsilon(1e-12));
  const auto prof = norm_profile(s1, L, {1, 5, 20, 100});
  CHECK(prof.back().lower < 2.0);
  CHECK(prof.back().lower > 1.999);

  std::mt19937_64 rng(8);
  for (int i = 0; i < 40; ++i) {
    const auto f = gen::dihedral(d, rng, 6);
    const double truth = oracle::circle_sup(oracle::laurent(f));
    const auto br = norm_profile(f, L, {2, 8, 32});
    for (std::size_t j = 0; j < br.size(); ++j) {
      CHECK(br[j].lower <= truth * (1 + 1e-9));
      CHECK(br[j].upper >= truth * (1 - 1e-9));
      if (j) CHECK(br[j].lower >= br[j - 1].lower - 1e-9);
    }
    // ‖λ(f)‖ <= ‖λ(|f|)‖
    HeckeElement af(d);
    for (const auto& [k, c] : f.terms()) af.add(k, ExactComplex(Rational(abs(c.re))));
    CHECK(br.back().lower <= norm_upper(af) * (1 + 1e-12));
  }
}

TEST_CASE("brackets on every pair with a locally finite length") {
  for (const std::string name : {"semidirect", "sl3", "finite_index"}) {
    const auto p = build_pair(name);
    const auto& L = *p->length();
    const auto support = enumerate_ball(*p, L, 2);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 10; ++i) {
      const auto f = gen::from_ball(p, support, rng, 2);
      const auto br = norm_profile(f, L, {0, 1, 2});
      for (std::size_t j = 0; j < br.size(); ++j) {
        CHECK(br[j].lower <= br[j].upper * (1 + 1e-12));
        if (j) CHECK(br[j].lower >= br[j - 1].lower - 1e-9);
      }
    }
  }
}

TEST_CASE("norms do not depend on the kernel variant") {
  const auto d = build_pair("dihedral");
  std::mt19937_64 rng(77);
  const auto f = gen::dihedral(d, rng, 5);
  const Isa before = kernels::active().isa;
  std::vector<double> values;
  for (const auto isa : kernels::available()) {
    kernels::select(isa);
    values.push_back(norm_lower(f, *d->length(), 40).lower);
  }
  kernels::select(before);
  for (double v : values) CHECK(std::abs(v - values.front()) <= 1e-10 * (1 + values.front()));
}
