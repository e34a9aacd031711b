// Hand-rolled seeded generators for property tests.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hecke/algebra.hpp"
#include "hecke/catalog.hpp"
#include "hecke/coset.hpp"

namespace gen {

using hecke::ExactComplex;
using hecke::Rational;

inline long pick(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational small_rational(std::mt19937_64& rng, long num = 5, long den = 3) {
  return hecke::make_rational(pick(rng, -num, num), pick(rng, 1, den));
}

inline ExactComplex coefficient(std::mt19937_64& rng, bool complex) {
  ExactComplex c(small_rational(rng));
  if (complex && pick(rng, 0, 1)) c.im = small_rational(rng);
  if (c.is_zero()) c.re = 1;
  return c;
}

// 1..max_terms terms on double cosets drawn from the pair's own sampler.
inline hecke::HeckeElement element(const hecke::PairPtr& pair, std::mt19937_64& rng, int max_terms = 3,
                                   bool complex = true) {
  hecke::HeckeElement f(pair);
  const long terms = pick(rng, 1, max_terms);
  for (long i = 0; i < terms; ++i) f.add(pair->random_element(rng), coefficient(rng, complex));
  return f;
}

inline hecke::L2Vector vector(const hecke::PairPtr& pair, std::mt19937_64& rng, int max_terms = 4,
                              bool complex = true) {
  hecke::L2Vector xi(pair);
  const long terms = pick(rng, 1, max_terms);
  for (long i = 0; i < terms; ++i) xi.add(pair->random_element(rng), coefficient(rng, complex));
  return xi;
}

// Element supported on the double cosets of a ball; keeps operator truncations
// small on pairs with exponential growth.
inline hecke::HeckeElement from_ball(const hecke::PairPtr& pair, const hecke::BallIndex& ball, std::mt19937_64& rng,
                                     int max_terms = 3, bool complex = true) {
  hecke::HeckeElement f(pair);
  const auto& doubles = ball.doubles();
  const long terms = pick(rng, 1, max_terms);
  for (long i = 0; i < terms; ++i)
    f.add(doubles[static_cast<std::size_t>(pick(rng, 0, static_cast<long>(doubles.size()) - 1))].key,
          coefficient(rng, complex));
  return f;
}

// Dihedral element Σ c_a σ_a with a in [0, max_len] and small integer coefficients.
inline hecke::HeckeElement dihedral(const hecke::PairPtr& pair, std::mt19937_64& rng, long max_len,
                                    int max_terms = 4, bool nonnegative = false) {
  hecke::HeckeElement f(pair);
  const long terms = pick(rng, 1, max_terms);
  for (long i = 0; i < terms; ++i) {
    const long c = nonnegative ? pick(rng, 1, 9) : pick(rng, -9, 9);
    f.add(hecke::GroupElement::dihedral(pick(rng, 0, max_len), 1), ExactComplex(Rational(c == 0 ? 1 : c)));
  }
  return f;
}

}  // namespace gen
