#include "hecke/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "hecke/coset.hpp"
#include "hecke/errors.hpp"
#include "hecke/random.hpp"

namespace hecke {

namespace {

// ---------------------------------------------------------------- helpers

bool is_integer(const Rational& q) { return q.get_den() == 1; }

bool all_integer(const MatrixElement& m) {
  return std::all_of(m.entries.begin(), m.entries.end(), is_integer);
}

GroupElement min_over(const std::vector<GroupElement>& candidates) {
  return *std::min_element(candidates.begin(), candidates.end());
}

GroupElement mat2(Rational a, Rational b, Rational c, Rational d) {
  return GroupElement::matrix(2, {std::move(a), std::move(b), std::move(c), std::move(d)});
}

std::vector<GroupElement> group_closure(const std::vector<GroupElement>& gens) {
  std::vector<GroupElement> out{identity(gens.front().backend())};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& s : gens) {
      GroupElement y = mul(out[i], s);
      if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(std::move(y));
      if (out.size() > 1024) throw std::invalid_argument("finite subgroup closure did not terminate");
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::string param(const PairParams& p, const std::string& key, const std::string& fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void reject_unknown(const PairParams& p, std::initializer_list<std::string> allowed,
                    const std::string& name) {
  for (const auto& [k, v] : p)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw std::invalid_argument("pair '" + name + "' has no parameter '" + k + "'");
}

// ---------------------------------------------------------------- dihedral

HeckePair::Definition dihedral_pair(const PairParams& params) {
  reject_unknown(params, {}, "dihedral");
  HeckePair::Definition d;
  d.name = "dihedral";
  d.description = "(D_inf, Z/2): infinite dihedral group with the flip subgroup";
  d.rd_status = RdStatus::expected;
  d.backend = Backend::dihedral;
  d.in_group = [](const GroupElement&) { return true; };
  d.in_subgroup = [](const GroupElement& g) { return g.as_dihedral().shift == 0; };
  const GroupElement flip = GroupElement::dihedral(0, -1);
  d.subgroup_generators = {flip};
  d.subgroup_elements = std::vector<GroupElement>{GroupElement::dihedral(0, 1), flip};
  d.group_generators = GeneratingSet::symmetric_closure({GroupElement::dihedral(1, 1), flip});
  // H(n,e) = {(n,e), (-n,-e)}; pick the translation.
  d.right_canonical = [](const GroupElement& g) {
    const auto& x = g.as_dihedral();
    return GroupElement::dihedral(x.sign * x.shift, 1);
  };
  d.double_canonical = [](const GroupElement& g) {
    const auto& x = g.as_dihedral();
    return GroupElement::dihedral(x.shift < 0 ? -x.shift : x.shift, 1);
  };
  d.length = LengthFunction::dihedral_abs();
  d.enumerate_doubles = [](const LengthFunction& L, double lo,
                           double hi) -> std::optional<std::vector<LengthRep>> {
    if (L.kind() != LengthFunction::Kind::dihedral_abs) return std::nullopt;
    std::vector<LengthRep> out;
    const auto first = static_cast<std::int64_t>(std::max(0.0, std::floor(lo) + 1));
    for (std::int64_t n = first; static_cast<double>(n) <= hi; ++n)
      out.push_back({GroupElement::dihedral(n, 1), static_cast<double>(n)});
    return out;
  };
  d.random_element = [](std::mt19937_64& rng) {
    return GroupElement::dihedral(uniform_int(rng, -12, 12), uniform_int(rng, 0, 1) ? 1 : -1);
  };
  d.notes = "Gelfand pair: its Hecke algebra is commutative";
  return d;
}

// ---------------------------------------------------------------- finite index

HeckePair::Definition finite_index_pair(const PairParams& params) {
  reject_unknown(params, {"index"}, "finite_index");
  const long n = std::stol(param(params, "index", "2"));
  if (n < 1 || n > 1000) throw std::invalid_argument("finite_index: index must be in [1, 1000]");
  HeckePair::Definition d;
  d.name = "finite_index";
  d.description = "(Z, nZ) with n = " + std::to_string(n) + ": finite-index normal subgroup";
  d.params = {{"index", std::to_string(n)}};
  d.rd_status = RdStatus::expected;
  d.backend = Backend::dihedral;
  d.in_group = [](const GroupElement& g) { return g.as_dihedral().sign == 1; };
  d.in_subgroup = [n](const GroupElement& g) {
    const auto& x = g.as_dihedral();
    return x.sign == 1 && x.shift % n == 0;
  };
  d.subgroup_generators = {GroupElement::dihedral(n, 1), GroupElement::dihedral(-n, 1)};
  d.group_generators = GeneratingSet::symmetric_closure({GroupElement::dihedral(1, 1)});
  auto canon = [n](const GroupElement& g) {
    const auto s = g.as_dihedral().shift;
    return GroupElement::dihedral(((s % n) + n) % n, 1);
  };
  d.right_canonical = canon;
  d.double_canonical = canon;
  d.length = LengthFunction::zero(true);
  d.enumerate_doubles = [n](const LengthFunction& L, double lo,
                            double hi) -> std::optional<std::vector<LengthRep>> {
    if (L.kind() != LengthFunction::Kind::zero) return std::nullopt;
    std::vector<LengthRep> out;
    if (lo < 0 && 0 <= hi)
      for (long k = 0; k < n; ++k) out.push_back({GroupElement::dihedral(k, 1), 0.0});
    return out;
  };
  d.random_element = [](std::mt19937_64& rng) {
    return GroupElement::dihedral(uniform_int(rng, -10, 10), 1);
  };
  d.notes = "Haagerup inequality holds with L = 0 and C = sqrt(index)";
  return d;
}

// ---------------------------------------------------------------- GL(2,Q)+ / SL(2,Z)

struct IntMatrix2 {
  Integer a, b, c, d;
};

/// g = scale · M with M a primitive integer matrix.
std::pair<Rational, IntMatrix2> primitive_form(const MatrixElement& g) {
  Integer l = 1;
  for (const auto& e : g.entries) l = lcm(l, Integer(e.get_den()));
  std::vector<Integer> ints;
  Integer gc = 0;
  for (const auto& e : g.entries) {
    Integer v = e.get_num() * (l / e.get_den());
    gc = gcd(gc, v);
    ints.push_back(v);
  }
  for (auto& v : ints) v /= gc;
  const Rational scale = make_rational(gc, l);
  return {scale, IntMatrix2{ints[0], ints[1], ints[2], ints[3]}};
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Row-style Hermite form under left multiplication by SL(2,Z):
/// [[a, b], [0, d]] with a, d > 0 and 0 <= b < d.
IntMatrix2 hermite_form(IntMatrix2 m) {
  while (m.c != 0) {
    const Integer q = floor_div(m.a, m.c);
    m.a -= q * m.c;
    m.b -= q * m.d;
    // (r1, r2) ← (r2, -r1), determinant one
    std::swap(m.a, m.c);
    std::swap(m.b, m.d);
    m.c = -m.c;
    m.d = -m.d;
  }
  if (m.a < 0) {
    m.a = -m.a;
    m.b = -m.b;
    m.d = -m.d;
  }
  const Integer q = floor_div(m.b, m.d);
  m.b -= q * m.d;
  return m;
}

HeckePair::Definition gl2q_pair(const PairParams& params) {
  reject_unknown(params, {}, "gl2q");
  HeckePair::Definition d;
  d.name = "gl2q";
  d.description = "(GL(2,Q)+, SL(2,Z)): the modular Hecke pair";
  d.rd_status = RdStatus::unknown;
  d.backend = Backend::matrix2;
  d.in_group = [](const GroupElement& g) { return sgn(determinant(g.as_matrix())) > 0; };
  d.in_subgroup = [](const GroupElement& g) {
    const auto& m = g.as_matrix();
    return all_integer(m) && determinant(m) == 1;
  };
  const GroupElement S = mat2(0, -1, 1, 0);
  const GroupElement T = mat2(1, 1, 0, 1);
  d.subgroup_generators = GeneratingSet::symmetric_closure({S, T}).elements;
  d.group_generators = GeneratingSet::symmetric_closure({S, T, mat2(1, 0, 0, 2), mat2(1, 0, 0, 3)});
  d.right_canonical = [](const GroupElement& g) {
    auto [scale, m] = primitive_form(g.as_matrix());
    const IntMatrix2 h = hermite_form(m);
    return mat2(scale * Rational(h.a), scale * Rational(h.b), 0, scale * Rational(h.d));
  };
  d.double_canonical = [](const GroupElement& g) {
    auto [scale, m] = primitive_form(g.as_matrix());
    const Integer det = m.a * m.d - m.b * m.c;  // elementary divisors (1, det)
    return mat2(scale, 0, 0, scale * Rational(det));
  };
  auto divisor_log = [](const GroupElement& g) {
    auto [scale, m] = primitive_form(g.as_matrix());
    const Integer det = m.a * m.d - m.b * m.c;
    return std::log(det.get_d());
  };
  d.length = LengthFunction::custom("elementary-divisor-log", divisor_log, false, false);
  d.random_element = [S, T](std::mt19937_64& rng) {
    auto word = [&] {
      GroupElement w = identity(Backend::matrix2);
      const auto len = uniform_int(rng, 0, 2);
      for (std::int64_t i = 0; i < len; ++i) {
        switch (uniform_int(rng, 0, 3)) {
          case 0: w = mul(w, S); break;
          case 1: w = mul(w, inv(S)); break;
          case 2: w = mul(w, T); break;
          default: w = mul(w, inv(T)); break;
        }
      }
      return w;
    };
    static const Rational scales[] = {Rational(1), Rational(1), Rational(2), Rational(1, 2)};
    const Rational& c = scales[uniform_int(rng, 0, 3)];
    const GroupElement diag = mat2(c, 0, 0, c * Rational(uniform_int(rng, 1, 4)));
    return mul(mul(word(), diag), word());
  };
  d.notes =
      "candidate length log(d2/d1) of the elementary divisors; not locally finite (central "
      "scalars have length 0)";
  return d;
}

// ---------------------------------------------------------------- Bost-Connes

HeckePair::Definition bost_connes_pair(const PairParams& params) {
  reject_unknown(params, {}, "bost_connes");
  HeckePair::Definition d;
  d.name = "bost_connes";
  d.description = "(P+_Q, P+_Z): ax+b group over Q with a > 0, integer translations";
  d.rd_status = RdStatus::unknown;
  d.backend = Backend::affine;
  d.in_group = [](const GroupElement&) { return true; };
  d.in_subgroup = [](const GroupElement& g) {
    const auto& x = g.as_affine();
    return x.scale == 1 && is_integer(x.shift);
  };
  d.subgroup_generators = {GroupElement::affine(1, 1), GroupElement::affine(1, -1)};
  d.group_generators = GeneratingSet::symmetric_closure(
      {GroupElement::affine(2, 0), GroupElement::affine(3, 0), GroupElement::affine(1, 1)});
  // H(a,b) = {(a, b + n a)}
  d.right_canonical = [](const GroupElement& g) {
    const auto& x = g.as_affine();
    const Rational t = x.shift / x.scale;
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return GroupElement::affine(x.scale, x.shift - x.scale * Rational(fl));
  };
  // H(a,b)H = {(a, b + n a + m)}; aZ + Z = (1/q)Z for a = p/q
  d.double_canonical = [](const GroupElement& g) {
    const auto& x = g.as_affine();
    const Rational t = x.shift * Rational(x.scale.get_den());
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return GroupElement::affine(x.scale, x.shift - make_rational(fl, x.scale.get_den()));
  };
  d.random_element = [](std::mt19937_64& rng) {
    const Rational a = make_rational(uniform_int(rng, 1, 3), uniform_int(rng, 1, 3));
    static const long dens[] = {1, 2, 3, 6};
    const Rational b = make_rational(uniform_int(rng, -6, 6), dens[uniform_int(rng, 0, 3)]);
    return GroupElement::affine(a, b);
  };
  d.notes = "not unimodular: deg(g) and deg(g^-1) differ; no length function attached";
  return d;
}

// ---------------------------------------------------------------- SL(3,Z) / <T>

GroupElement mat3(std::initializer_list<long> v) {
  std::vector<Rational> e;
  for (long x : v) e.emplace_back(x);
  return GroupElement::matrix(3, std::move(e));
}

HeckePair::Definition sl3_pair(const PairParams& params) {
  reject_unknown(params, {}, "sl3");
  HeckePair::Definition d;
  d.name = "sl3";
  d.description = "(SL(3,Z), <T>): finite non-normal subgroup of a group without (RD)";
  d.rd_status = RdStatus::non_example;
  d.backend = Backend::matrix3;
  const GroupElement T = mat3({0, 1, 0, 1, 0, 0, 0, 0, -1});
  const GroupElement one = identity(Backend::matrix3);
  d.in_group = [](const GroupElement& g) {
    const auto& m = g.as_matrix();
    return all_integer(m) && determinant(m) == 1;
  };
  d.in_subgroup = [T, one](const GroupElement& g) { return g == one || g == T; };
  d.subgroup_generators = {T};
  d.subgroup_elements = group_closure({T});
  std::vector<GroupElement> elementary;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) {
        std::vector<Rational> e{1, 0, 0, 0, 1, 0, 0, 0, 1};
        e[static_cast<std::size_t>(3 * i + j)] = 1;
        elementary.push_back(GroupElement::matrix(3, std::move(e)));
      }
  d.group_generators = GeneratingSet::symmetric_closure(elementary);
  d.right_canonical = [T](const GroupElement& g) { return min_over({g, mul(T, g)}); };
  d.double_canonical = [T](const GroupElement& g) {
    const GroupElement tg = mul(T, g);
    return min_over({g, tg, mul(g, T), mul(tg, T)});
  };
  d.length = LengthFunction::word_length(d.group_generators, *d.subgroup_elements);
  const auto gens = d.group_generators.elements;
  d.random_element = [gens, T](std::mt19937_64& rng) {
    GroupElement w = identity(Backend::matrix3);
    const auto len = uniform_int(rng, 1, 4);
    for (std::int64_t i = 0; i < len; ++i)
      w = mul(w, gens[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(gens.size()) - 1))]);
    if (uniform_int(rng, 0, 1)) w = mul(w, T);
    return w;
  };
  d.notes = "S T S^-1 is not in H, so H is not normal";
  return d;
}

// ---------------------------------------------------------------- Z^k ⋊ F

HeckePair::Definition semidirect_pair(const PairParams& params) {
  reject_unknown(params, {"rank", "action"}, "semidirect");
  const int rank = std::stoi(param(params, "rank", "2"));
  if (rank != 1 && rank != 2) throw std::invalid_argument("semidirect: rank must be 1 or 2");
  const std::string action = param(params, "action", rank == 2 ? "swap" : "neg");
  const int dim = rank + 1;
  const Backend backend = rank == 1 ? Backend::matrix2 : Backend::matrix3;

  // Embeds a linear part A and translation v as [[A, v], [0, 1]].
  auto affine_matrix = [dim, rank](const std::vector<long>& A, const std::vector<long>& v) {
    std::vector<Rational> e(static_cast<std::size_t>(dim * dim), Rational(0));
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) e[static_cast<std::size_t>(i * dim + j)] = A[static_cast<std::size_t>(i * rank + j)];
      e[static_cast<std::size_t>(i * dim + rank)] = v[static_cast<std::size_t>(i)];
    }
    e[static_cast<std::size_t>(dim * dim - 1)] = 1;
    return GroupElement::matrix(dim, std::move(e));
  };
  std::vector<long> gen;
  if (rank == 1) {
    if (action != "neg") throw std::invalid_argument("semidirect rank 1 supports action=neg only");
    gen = {-1};
  } else if (action == "swap") {
    gen = {0, 1, 1, 0};
  } else if (action == "neg") {
    gen = {-1, 0, 0, -1};
  } else if (action == "rot4") {
    gen = {0, -1, 1, 0};
  } else {
    throw std::invalid_argument("semidirect: action must be swap, neg or rot4");
  }
  const std::vector<long> zero(static_cast<std::size_t>(rank), 0);
  const GroupElement f = affine_matrix(gen, zero);
  const auto F = group_closure({f});

  HeckePair::Definition d;
  d.name = "semidirect";
  d.description = "(Z^" + std::to_string(rank) + " x| F, F) with F generated by '" + action + "'";
  d.params = {{"rank", std::to_string(rank)}, {"action", action}};
  d.rd_status = RdStatus::expected;
  d.backend = backend;
  auto linear_part = [dim, rank](const GroupElement& g) {
    const auto& m = g.as_matrix();
    std::vector<Rational> e(static_cast<std::size_t>(dim * dim), Rational(0));
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) e[static_cast<std::size_t>(i * dim + j)] = m.at(i, j);
    e[static_cast<std::size_t>(dim * dim - 1)] = 1;
    return GroupElement::matrix(dim, std::move(e));
  };
  d.in_group = [F, linear_part, dim, rank](const GroupElement& g) {
    const auto& m = g.as_matrix();
    if (!all_integer(m)) return false;
    for (int j = 0; j < rank; ++j)
      if (sgn(m.at(rank, j)) != 0) return false;
    if (m.at(rank, rank) != 1 || m.dim != dim) return false;
    return std::find(F.begin(), F.end(), linear_part(g)) != F.end();
  };
  d.in_subgroup = [F](const GroupElement& g) { return std::find(F.begin(), F.end(), g) != F.end(); };
  d.subgroup_generators = GeneratingSet::symmetric_closure({f}).elements;
  d.subgroup_elements = F;
  std::vector<GroupElement> gg{f};
  for (int i = 0; i < rank; ++i) {
    std::vector<long> v = zero;
    v[static_cast<std::size_t>(i)] = 1;
    std::vector<long> I(static_cast<std::size_t>(rank * rank), 0);
    for (int k = 0; k < rank; ++k) I[static_cast<std::size_t>(k * rank + k)] = 1;
    gg.push_back(affine_matrix(I, v));
  }
  d.group_generators = GeneratingSet::symmetric_closure(gg);
  d.right_canonical = [F](const GroupElement& g) {
    std::vector<GroupElement> c;
    for (const auto& h : F) c.push_back(mul(h, g));
    return min_over(c);
  };
  d.double_canonical = [F](const GroupElement& g) {
    std::vector<GroupElement> c;
    for (const auto& h1 : F) {
      const GroupElement hg = mul(h1, g);
      for (const auto& h2 : F) c.push_back(mul(hg, h2));
    }
    return min_over(c);
  };
  auto l1 = [rank](const GroupElement& g) {
    const auto& m = g.as_matrix();
    Rational s = 0;
    for (int i = 0; i < rank; ++i) s += abs(m.at(i, rank));
    return to_double(s);
  };
  d.length = LengthFunction::custom("translation-l1", l1, true, true);
  auto dcanon = d.double_canonical;
  d.enumerate_doubles = [rank, affine_matrix, dcanon](const LengthFunction& L, double lo,
                                                      double hi) -> std::optional<std::vector<LengthRep>> {
    if (L.name() != "translation-l1") return std::nullopt;
    std::set<GroupElement> reps;
    const auto R = static_cast<long>(std::floor(hi));
    std::vector<long> I(static_cast<std::size_t>(rank * rank), 0);
    for (int k = 0; k < rank; ++k) I[static_cast<std::size_t>(k * rank + k)] = 1;
    auto visit = [&](const std::vector<long>& v) {
      long n = 0;
      for (long x : v) n += std::labs(x);
      if (static_cast<double>(n) > lo && static_cast<double>(n) <= hi)
        reps.insert(dcanon(affine_matrix(I, v)));
    };
    if (rank == 1) {
      for (long x = -R; x <= R; ++x) visit({x});
    } else {
      for (long x = -R; x <= R; ++x)
        for (long y = -(R - std::labs(x)); y <= R - std::labs(x); ++y) visit({x, y});
    }
    std::vector<LengthRep> out;
    for (const auto& g : reps) out.push_back({g, L(g)});
    return out;
  };
  d.random_element = [F, affine_matrix, rank](std::mt19937_64& rng) {
    std::vector<long> v;
    std::vector<long> I(static_cast<std::size_t>(rank * rank), 0);
    for (int k = 0; k < rank; ++k) {
      v.push_back(uniform_int(rng, -4, 4));
      I[static_cast<std::size_t>(k * rank + k)] = 1;
    }
    const auto& h = F[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(F.size()) - 1))];
    return mul(affine_matrix(I, v), h);
  };
  d.notes = "finite F acting on a free abelian group; length = l1 norm of the translation part";
  return d;
}

// ---------------------------------------------------------------- sanity

void sanity_check(const HeckePair& pair) {
  std::mt19937_64 rng(0x5eedULL);
  const auto hs = pair.subgroup_sample();
  auto fail = [&](const std::string& what, const GroupElement& g) {
    throw AuditFailure("pair '" + pair.name() + "' failed sanity check (" + what +
                       ") at element " + g.key_string());
  };
  for (int i = 0; i < 32; ++i) {
    const GroupElement g = pair.random_element(rng);
    if (!pair.in_group(g)) fail("sampler left G", g);
    const GroupElement r = pair.right_coset(g).rep;
    if (!pair.in_subgroup(mul(g, inv(r)))) fail("right representative outside Hg", g);
    if (!(pair.right_coset(r).rep == r)) fail("right canonicalizer not idempotent", g);
    const GroupElement dc = pair.double_coset(g).rep;
    if (!(pair.double_coset(dc).rep == dc)) fail("double canonicalizer not idempotent", g);
    if (!(pair.double_coset(r).rep == dc)) fail("double key differs on the right coset", g);
    for (const auto& h : hs) {
      if (!(pair.right_coset(mul(h, g)).rep == r)) fail("right key not H-invariant", g);
      if (!(pair.double_coset(mul(mul(h, g), hs.back())).rep == dc))
        fail("double key not H-bi-invariant", g);
    }
  }
}

}  // namespace

std::vector<PairDescriptor> catalog_list() {
  return {
      {"dihedral", "(D_inf, Z/2)", RdStatus::expected, true, "dihedral-abs", true, ""},
      {"finite_index", "(Z, nZ)", RdStatus::expected, true, "zero", false, "index=<n> (default 2)"},
      {"gl2q", "(GL(2,Q)+, SL(2,Z))", RdStatus::unknown, true, "elementary-divisor-log", false, ""},
      {"bost_connes", "(P+_Q, P+_Z)", RdStatus::unknown, false, "", false, ""},
      {"sl3", "(SL(3,Z), <T>)", RdStatus::non_example, true, "word", true, ""},
      {"semidirect", "(Z^k x| F, F)", RdStatus::expected, true, "translation-l1", true,
       "rank=1|2, action=swap|neg|rot4"},
  };
}

PairPtr build_pair(std::string_view name, const PairParams& params) {
  HeckePair::Definition def;
  if (name == "dihedral") def = dihedral_pair(params);
  else if (name == "finite_index") def = finite_index_pair(params);
  else if (name == "gl2q") def = gl2q_pair(params);
  else if (name == "bost_connes") def = bost_connes_pair(params);
  else if (name == "sl3") def = sl3_pair(params);
  else if (name == "semidirect") def = semidirect_pair(params);
  else throw std::invalid_argument("unknown pair '" + std::string(name) + "'");

  // Candidate lengths are attached only after they validate on a sample.
  std::optional<LengthFunction> candidate;
  if (def.name == "gl2q") std::swap(candidate, def.length);

  auto pair = std::make_shared<HeckePair>(def);
  sanity_check(*pair);
  if (candidate) {
    std::mt19937_64 rng(0x1e57ULL);
    std::vector<GroupElement> sample;
    for (int i = 0; i < 24; ++i) sample.push_back(pair->random_element(rng));
    const auto report = validate_length(*candidate, *pair, sample);
    if (!report.passed())
      throw AuditFailure("candidate length '" + candidate->name() + "' failed validation on '" +
                         pair->name() + "' (" + report.violations.front().axiom + ")");
    def.length = std::move(candidate);
    pair = std::make_shared<HeckePair>(std::move(def));
  }
  return pair;
}

LengthFunction make_length(const HeckePair& pair, std::string_view name) {
  if (name == "native") {
    if (!pair.length()) throw Unsupported("pair '" + pair.name() + "' has no length attached");
    return *pair.length();
  }
  if (name == "zero") return LengthFunction::zero(pair.name() == "finite_index");
  if (name == "word") {
    if (!pair.finite_subgroup())
      throw Unsupported("word length with free H letters needs a finite H");
    return LengthFunction::word_length(pair.group_generators(), *pair.subgroup_elements());
  }
  if (name == "matrix-log-norm") {
    if (pair.backend() == Backend::dihedral)
      throw Unsupported("matrix-log-norm needs a matrix or ax+b backend");
    return LengthFunction::matrix_log_norm();
  }
  if (name == "dihedral-abs") {
    if (pair.backend() != Backend::dihedral) throw Unsupported("dihedral-abs needs the dihedral backend");
    return LengthFunction::dihedral_abs();
  }
  if (pair.length() && pair.length()->name() == name) return *pair.length();
  throw Unsupported("unknown length '" + std::string(name) + "' for pair '" + pair.name() + "'");
}

}  // namespace hecke
