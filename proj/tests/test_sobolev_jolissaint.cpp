#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "hecke/catalog.hpp"
#include "hecke/jolissaint.hpp"
#include "oracles.hpp"

using namespace hecke;

namespace {

HeckeElement sigma(const PairPtr& p, long k, long c = 1) {
  return HeckeElement::delta(p, GroupElement::dihedral(k, 1), ExactComplex(Rational(c)));
}
L2Vector delta(const PairPtr& p, long m) { return L2Vector::delta(p, GroupElement::dihedral(m, 1)); }

const std::vector<std::pair<long, long>> kAlphas{{1, 4}, {1, 2}, {3, 4}};

}  // namespace

TEST_CASE("exact thresholds") {
  // N − √N for N = 4 is exactly 2
  CHECK(below_threshold(2, 4, make_rational(1, 2), true));
  CHECK_FALSE(below_threshold(3, 4, make_rational(1, 2), true));
  CHECK(below_threshold(0, 1, make_rational(1, 2), true));
  for (long N = 1; N <= 60; ++N)
    for (long L = 0; L <= N + 1; ++L)
      for (const auto& [a, b] : kAlphas) CHECK(below_threshold(double(L), N, make_rational(a, b), true) == oracle::below(L, N, a, b));
  CHECK(vanishing_threshold(3, make_rational(1, 2), true) == 9);
  CHECK(vanishing_threshold(1, make_rational(1, 4), true) == 1);
  CHECK(vanishing_threshold(0, make_rational(1, 2), true) == 1);
  CHECK(vanishing_threshold(2, make_rational(3, 4), true) == 3);
  CHECK_THROWS_AS(validate(JolissaintParams{Rational(1), 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(JolissaintParams{make_rational(1, 2), 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate(JolissaintParams{make_rational(1, 2), 1, 0}), std::invalid_argument);
}

TEST_CASE("projections") {
  const auto d = build_pair("dihedral");
  const auto& L = *d->length();
  const auto xi = delta(d, 0) + delta(d, 3);
  CHECK(project(xi, L, 2) == delta(d, 0));
  CHECK(project(xi, L, 3) == xi);
  CHECK(project(xi, L, -1).empty());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto v = gen::vector(d, rng, 6);
    const double r = double(gen::pick(rng, 0, 12)), t = double(gen::pick(rng, 0, 12));
    CHECK(project(project(v, L, r), L, t) == project(v, L, std::min(r, t)));
    CHECK(project(project(v, L, r), L, r) == project(v, L, r));
    CHECK(l2_squared(project(v, L, r)) <= l2_squared(v));
  }
  CHECK(project_threshold(xi, L, 4, make_rational(1, 2)) == delta(d, 0));
}

TEST_CASE("worked example: sigma_3, alpha 1/2, q 1, N 4") {
  const auto d = build_pair("dihedral");
  const auto r = rho(sigma(d, 3), *d->length(), JolissaintParams{make_rational(1, 2), 1, 4});
  CHECK(r.rho == doctest::Approx(oracle::rho(oracle::laurent(sigma(d, 3)), 1, 2, 1, 4)));
  CHECK(r.lower_block == doctest::Approx(1));
  CHECK(r.upper_block == doctest::Approx(1));
  CHECK(r.rho == doctest::Approx(8));
}

TEST_CASE("rho agrees with dense blocks") {
  const auto d = build_pair("dihedral");
  std::mt19937_64 rng(10);
  for (int i = 0; i < 40; ++i) {
    const auto f = gen::dihedral(d, rng, 7);
    const auto p = oracle::laurent(f);
    const auto& [a, b] = kAlphas[static_cast<std::size_t>(i) % 3];
    for (long N = 1; N <= 20; ++N) {
      const int q = 1 + i % 2;
      const double got = rho(f, *d->length(), JolissaintParams{make_rational(a, b), q, N}).rho;
      const double want = oracle::rho(p, a, b, q, N);
      CHECK(std::abs(got - want) <= 1e-9 * (1 + want));
    }
  }
}

TEST_CASE("vanishing, homogeneity, monotonicity in alpha, triangle inequality") {
  const auto d = build_pair("dihedral");
  const auto& L = *d->length();
  CHECK(nu(HeckeElement::unit(d), L, make_rational(1, 2), 1).nu == 0);
  for (long N = 1; N < 30; ++N) CHECK(rho(HeckeElement::unit(d), L, JolissaintParams{make_rational(1, 3), 2, N}).rho == 0);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 30; ++i) {
    const long g = gen::pick(rng, 0, 9);
    for (const auto& [a, b] : kAlphas) {
      const Rational alpha = make_rational(a, b);
      const long start = vanishing_threshold(double(g), alpha, true);
      for (long N = start; N < start + 10; ++N) CHECK(rho(sigma(d, g), L, JolissaintParams{alpha, 1, N}).rho == 0);
    }
    const auto f1 = gen::dihedral(d, rng, 6), f2 = gen::dihedral(d, rng, 6);
    const Rational half = make_rational(1, 2);
    const auto n1 = nu(f1, L, half, 1), n2 = nu(f2, L, half, 1);
    CHECK(nu(f1 + f2, L, half, 1).nu <= n1.nu + n2.nu + 1e-9);
    CHECK(nu(ExactComplex(Rational(-3)) * f1, L, half, 1).nu == doctest::Approx(3 * n1.nu));
    CHECK(nu(f1, L, make_rational(3, 4), 1).nu <= nu(f1, L, make_rational(1, 4), 1).nu + 1e-9);
    CHECK(n1.N_max == vanishing_threshold(max_support_length(f1, L), half, true));
    for (const auto& r : n1.profile) CHECK(r.rho <= n1.nu);
  }
}

TEST_CASE("submultiplicativity check: unit and zero") {
  const auto d = build_pair("dihedral");
  const auto& L = *d->length();
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    const auto f = gen::dihedral(d, rng, 5);
    CHECK(submultiplicativity_check(f, HeckeElement::unit(d), L, make_rational(1, 2), 1).passed);
  }
  const auto z = submultiplicativity_check(HeckeElement(d), HeckeElement(d), L, make_rational(1, 2), 1);
  CHECK(z.lhs == 0);
  CHECK(z.rhs == 0);
  CHECK(z.passed);
}

TEST_CASE("submultiplicativity check: sigma_1 twice gives a strictly positive left side over a zero right side") {
  // Each corner block of σ₁ is empty for α/2 = 1/4 because ℓ = 1 <= N^{1/4} for
  // every N, while σ₁∗σ₁ = σ₂ + 2σ₀ reaches length 2 from the ball of radius 0 at N = 1.
  const auto d = build_pair("dihedral");
  const auto r = submultiplicativity_check(sigma(d, 1), sigma(d, 1), *d->length(), make_rational(1, 2), 1);
  CHECK(r.nu_half_f1 == 0);
  CHECK(r.rhs == 0);
  CHECK(r.lhs == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK_FALSE(r.passed);
}

TEST_CASE("derivation") {
  const auto d = build_pair("dihedral");
  const auto& L = *d->length();
  const ExactComplex i(Rational(0), Rational(1));
  CHECK(derivation_apply(sigma(d, 1), delta(d, 0), L) == i * (delta(d, 1) + delta(d, -1)));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const auto xi = gen::vector(d, rng, 5);
    CHECK(derivation_apply(HeckeElement::unit(d), xi, L).empty());
    const auto f1 = gen::dihedral(d, rng, 6), f2 = gen::dihedral(d, rng, 6);
    auto rhs = derivation_apply(f1, apply_regular_rep(f2, xi), L);
    rhs += apply_regular_rep(f1, derivation_apply(f2, xi, L));
    CHECK(derivation_apply(convolve(f1, f2), xi, L) == rhs);
  }
  const auto g = build_pair("gl2q");
  CHECK_THROWS(derivation_apply(HeckeElement::unit(g), L2Vector::delta(g, identity(Backend::matrix2)), *g->length()));
}

TEST_CASE("Sobolev tail profile") {
  const auto d = build_pair("dihedral");
  const auto& L = *d->length();
  const auto f = sigma(d, 3) + sigma(d, 1, 2);
  const auto t = sobolev_tail_profile(f, L, {0, 1, 2});
  REQUIRE(t.tails.size() == 3);
  CHECK(t.tails[0].second == 2);  // length 3 only: two cosets with |1|²
  CHECK(t.tails[1].second == 2);
  CHECK(t.tails[2].second == 0);
  REQUIRE(t.norms.size() == 3);
  CHECK(t.norms[0].second == doctest::Approx(std::sqrt(10.0)));
  CHECK(t.norms[1].second == doctest::Approx(std::sqrt(2 * 16.0 + 8 * 4.0)));
}
