#include <doctest.h>

#include <random>
#include <set>

#include "generators.hpp"
#include "hecke/catalog.hpp"
#include "hecke/coset.hpp"
#include "hecke/errors.hpp"
#include "oracles.hpp"

using namespace hecke;

namespace {
GroupElement m2(Rational a, Rational b, Rational c, Rational d) { return GroupElement::matrix(2, {a, b, c, d}); }
}  // namespace

TEST_CASE("dihedral decompositions") {
  const auto p = build_pair("dihedral");
  const auto cosets = decompose_double_coset(*p, GroupElement::dihedral(3, 1));
  REQUIRE(cosets.size() == 2);
  std::set<long> shifts{cosets[0].rep.as_dihedral().shift, cosets[1].rep.as_dihedral().shift};
  CHECK(shifts == std::set<long>{-3, 3});
  CHECK(degree(*p, GroupElement::dihedral(0, -1)) == 1);
  CHECK(degree(*p, GroupElement::dihedral(0, 1)) == 1);
  for (long n = 1; n <= 1000; ++n) {
    CHECK(degree(*p, GroupElement::dihedral(n, 1)) == 2);
    CHECK(degree(*p, GroupElement::dihedral(-n, -1)) == 2);
  }
}

TEST_CASE("finite_index: H normal, every degree 1") {
  for (long n : {2, 3, 7}) {
    const auto p = build_pair("finite_index", {{"index", std::to_string(n)}});
    for (long k = -20; k <= 20; ++k) CHECK(degree(*p, GroupElement::dihedral(k, 1)) == 1);
  }
}

TEST_CASE("gl2q degrees match psi of the elementary divisor ratio") {
  const auto p = build_pair("gl2q");
  for (long q : {2, 3, 5, 7}) CHECK(degree(*p, m2(1, 0, 0, q)) == q + 1);
  CHECK(degree(*p, m2(1, 0, 0, 4)) == 6);
  CHECK(degree(*p, m2(2, 0, 0, 2)) == 1);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto g = p->random_element(rng);
    CHECK(degree(*p, g) == static_cast<std::size_t>(oracle::gl2_degree(g.as_matrix().entries)));
  }
}

TEST_CASE("bost_connes degree is the numerator of the scale") {
  const auto p = build_pair("bost_connes");
  CHECK(degree(*p, GroupElement::affine(make_rational(3, 2), 0)) == 3);
  CHECK(degree(*p, GroupElement::affine(make_rational(5, 3), 0)) == 5);
  CHECK(degree(*p, GroupElement::affine(make_rational(2, 3), 0)) == 2);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const auto g = p->random_element(rng);
    CHECK(degree(*p, g) == g.as_affine().scale.get_num().get_ui());
  }
  // not unimodular
  const auto asym = degree_asymmetries(*p, {GroupElement::affine(make_rational(3, 2), 0), GroupElement::affine(1, 1)});
  REQUIRE(asym.size() == 1);
  CHECK(asym[0].degree == 3);
  CHECK(asym[0].inverse_degree == 2);
}

TEST_CASE("semidirect degree is the orbit size of the translation") {
  struct Case { int rank; std::string action; std::vector<long> gen; };
  for (const auto& c : {Case{2, "swap", {0, 1, 1, 0}}, Case{2, "rot4", {0, -1, 1, 0}}, Case{1, "neg", {-1}}}) {
    const auto p = build_pair("semidirect", {{"rank", std::to_string(c.rank)}, {"action", c.action}});
    std::mt19937_64 rng(4);
    for (int i = 0; i < 60; ++i) {
      const auto g = p->random_element(rng);
      const auto& m = g.as_matrix();
      std::vector<long> v;
      for (int r = 0; r < c.rank; ++r) v.push_back(m.at(r, c.rank).get_num().get_si());
      CHECK(degree(*p, g) == oracle::orbit_size(v, c.gen, c.rank));
    }
  }
}

TEST_CASE("sl3 degree is 1 exactly on the centralizer of T") {
  const auto p = build_pair("sl3");
  const auto& H = *p->subgroup_elements();
  const GroupElement T = is_identity(H[0]) ? H[1] : H[0];
  std::mt19937_64 rng(8);
  for (int i = 0; i < 60; ++i) {
    const auto g = p->random_element(rng);
    CHECK(degree(*p, g) == (mul(g, T) == mul(T, g) ? 1u : 2u));
  }
}

TEST_CASE("orbit closure does not depend on the generating set of H") {
  const auto d = build_pair("dihedral");
  const std::vector<GroupElement> flip{GroupElement::dihedral(0, -1)};
  for (long n = -6; n <= 6; ++n)
    CHECK(decompose_double_coset(*d, GroupElement::dihedral(n, 1), flip) == decompose_double_coset(*d, GroupElement::dihedral(n, 1)));
  const auto b = build_pair("bost_connes");
  const std::vector<GroupElement> other{GroupElement::affine(1, 2), GroupElement::affine(1, -3), GroupElement::affine(1, 3), GroupElement::affine(1, -2)};
  std::mt19937_64 rng(1);
  for (int i = 0; i < 40; ++i) {
    const auto g = b->random_element(rng);
    CHECK(decompose_double_coset(*b, g, other) == decompose_double_coset(*b, g));
  }
}

TEST_CASE("budget exceeded is reported") {
  const auto p = build_pair("gl2q");
  CHECK_THROWS_AS(decompose_double_coset(*p, m2(1, 0, 0, 101), 10), BudgetExceeded);
}

TEST_CASE("balls") {
  const auto d = build_pair("dihedral");
  const auto& L = *d->length();
  CHECK(enumerate_ball(*d, L, 0).doubles().size() == 1);
  for (int r = 0; r <= 12; ++r) {
    const auto ball = enumerate_ball(*d, L, r);
    CHECK(ball.doubles().size() == static_cast<std::size_t>(r + 1));
    CHECK(ball.rights().size() == static_cast<std::size_t>(2 * r + 1));
  }
  const auto fi = build_pair("finite_index");
  CHECK(enumerate_ball(*fi, *fi->length(), 0).doubles().size() == 2);
  CHECK_THROWS_AS(enumerate_ball(*build_pair("gl2q"), *build_pair("gl2q")->length(), 1), Unsupported);

  const auto ball = enumerate_ball(*d, L, 5);
  CHECK(ball.shell(3).size() == 1);
  CHECK(ball.right_shell(3).size() == 2);
  CHECK(ball.right_index(CosetKey{GroupElement::dihedral(7, 1)}) == BallIndex::npos);
}

TEST_CASE("right ball is partitioned by the decompositions of the double ball") {
  for (const auto& [name, r] : std::vector<std::pair<std::string, double>>{{"dihedral", 7}, {"semidirect", 3}, {"sl3", 2}}) {
    const auto p = build_pair(name);
    const auto ball = enumerate_ball(*p, *p->length(), r);
    std::multiset<CosetKey> covered;
    for (const auto& e : ball.doubles())
      for (const auto& c : *cached_decomposition(*p, e.key)) covered.insert(c);
    std::set<CosetKey> rights;
    for (const auto& e : ball.rights()) rights.insert(e.key);
    CHECK(covered.size() == rights.size());
    CHECK(std::set<CosetKey>(covered.begin(), covered.end()) == rights);
  }
}

TEST_CASE("shells are consistent with balls") {
  const auto p = build_pair("semidirect");
  const auto& L = *p->length();
  const auto all = enumerate_ball(*p, L, 4);
  std::size_t total = enumerate_ball(*p, L, 1).rights().size();
  total += enumerate_right_shell(*p, L, 1, 4).size();
  CHECK(total == all.rights().size());
  for (const auto& e : enumerate_double_shell(*p, L, 2, 3)) CHECK(e.length == 3);
}
