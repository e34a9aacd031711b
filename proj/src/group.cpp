#include "hecke/group.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_set>

#include "hecke/errors.hpp"

namespace hecke {

namespace {

int cmp_rational(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  return (c > 0) - (c < 0);
}

std::size_t hash_integer(const Integer& z) {
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(p->_mp_size) * 0x9e3779b97f4a7c15ULL;
  if (p->_mp_size != 0) h ^= static_cast<std::size_t>(mpz_getlimbn(p, 0)) + (h << 6) + (h >> 2);
  return h;
}

std::size_t hash_rational(const Rational& q) {
  return hash_integer(q.get_num()) * 31 + hash_integer(q.get_den());
}

void check_same(const GroupElement& a, const GroupElement& b) {
  if (a.backend() != b.backend())
    throw BackendMismatch("cannot multiply " + to_string(a.backend()) + " by " +
                          to_string(b.backend()));
}

MatrixElement matmul(const MatrixElement& a, const MatrixElement& b) {
  MatrixElement c{a.dim, std::vector<Rational>(a.entries.size())};
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      Rational s = 0;
      for (int k = 0; k < a.dim; ++k)
        if (sgn(a.at(i, k)) != 0 && sgn(b.at(k, j)) != 0) s += a.at(i, k) * b.at(k, j);
      c.at(i, j) = s;
    }
  return c;
}

MatrixElement matinv(const MatrixElement& m) {
  const Rational det = determinant(m);
  MatrixElement r{m.dim, std::vector<Rational>(m.entries.size())};
  if (m.dim == 2) {
    r.at(0, 0) = m.at(1, 1) / det;
    r.at(0, 1) = -m.at(0, 1) / det;
    r.at(1, 0) = -m.at(1, 0) / det;
    r.at(1, 1) = m.at(0, 0) / det;
    return r;
  }
  // 3×3 adjugate
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      r.at(i, j) = (m.at(r0, c0) * m.at(r1, c1) - m.at(r0, c1) * m.at(r1, c0)) / det;
    }
  return r;
}

}  // namespace

std::string to_string(Backend b) {
  switch (b) {
    case Backend::dihedral: return "dihedral";
    case Backend::affine: return "affine";
    case Backend::matrix2: return "matrix2";
    case Backend::matrix3: return "matrix3";
  }
  return "unknown";
}

Rational determinant(const MatrixElement& m) {
  if (m.dim == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
  return m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
         m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
         m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
}

GroupElement GroupElement::dihedral(std::int64_t shift, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("dihedral sign must be +1 or -1");
  return GroupElement(DihedralElement{shift, sign});
}

GroupElement GroupElement::affine(Rational scale, Rational shift) {
  scale.canonicalize();
  shift.canonicalize();
  if (sgn(scale) <= 0) throw std::invalid_argument("ax+b element needs a > 0");
  return GroupElement(AffineElement{std::move(scale), std::move(shift)});
}

GroupElement GroupElement::matrix(int dim, std::vector<Rational> entries) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("only 2x2 and 3x3 matrices are supported");
  if (entries.size() != static_cast<std::size_t>(dim * dim))
    throw std::invalid_argument("matrix entry count does not match its dimension");
  for (auto& e : entries) e.canonicalize();
  MatrixElement m{dim, std::move(entries)};
  if (sgn(determinant(m)) == 0) throw std::invalid_argument("singular matrix");
  return GroupElement(std::move(m));
}

Backend GroupElement::backend() const {
  switch (payload_.index()) {
    case 0: return Backend::dihedral;
    case 1: return Backend::affine;
    default: return std::get<MatrixElement>(payload_).dim == 2 ? Backend::matrix2 : Backend::matrix3;
  }
}

const DihedralElement& GroupElement::as_dihedral() const {
  if (auto* p = std::get_if<DihedralElement>(&payload_)) return *p;
  throw BackendMismatch("expected a dihedral element, got " + to_string(backend()));
}

const AffineElement& GroupElement::as_affine() const {
  if (auto* p = std::get_if<AffineElement>(&payload_)) return *p;
  throw BackendMismatch("expected an ax+b element, got " + to_string(backend()));
}

const MatrixElement& GroupElement::as_matrix() const {
  if (auto* p = std::get_if<MatrixElement>(&payload_)) return *p;
  throw BackendMismatch("expected a matrix element, got " + to_string(backend()));
}

std::vector<std::string> GroupElement::components() const {
  return std::visit(
      [](const auto& p) -> std::vector<std::string> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DihedralElement>) {
          return {std::to_string(p.shift), std::to_string(p.sign)};
        } else if constexpr (std::is_same_v<T, AffineElement>) {
          return {to_string(p.scale), to_string(p.shift)};
        } else {
          std::vector<std::string> out;
          out.reserve(p.entries.size());
          for (const auto& e : p.entries) out.push_back(to_string(e));
          return out;
        }
      },
      payload_);
}

std::string GroupElement::key_string() const {
  std::string out;
  for (const auto& c : components()) {
    if (!out.empty()) out += ':';
    out += c;
  }
  return out;
}

int compare(const GroupElement& a, const GroupElement& b) {
  const auto ba = static_cast<int>(a.backend());
  const auto bb = static_cast<int>(b.backend());
  if (ba != bb) return ba < bb ? -1 : 1;
  switch (a.payload_.index()) {
    case 0: {
      const auto& x = std::get<DihedralElement>(a.payload_);
      const auto& y = std::get<DihedralElement>(b.payload_);
      if (x.shift != y.shift) return x.shift < y.shift ? -1 : 1;
      if (x.sign != y.sign) return x.sign < y.sign ? -1 : 1;
      return 0;
    }
    case 1: {
      const auto& x = std::get<AffineElement>(a.payload_);
      const auto& y = std::get<AffineElement>(b.payload_);
      if (int c = cmp_rational(x.scale, y.scale)) return c;
      return cmp_rational(x.shift, y.shift);
    }
    default: {
      const auto& x = std::get<MatrixElement>(a.payload_);
      const auto& y = std::get<MatrixElement>(b.payload_);
      for (std::size_t i = 0; i < x.entries.size(); ++i)
        if (int c = cmp_rational(x.entries[i], y.entries[i])) return c;
      return 0;
    }
  }
}

std::size_t GroupElement::hash() const {
  return std::visit(
      [](const auto& p) -> std::size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DihedralElement>) {
          return std::hash<std::int64_t>{}(p.shift) * 2 + (p.sign > 0 ? 1 : 0);
        } else if constexpr (std::is_same_v<T, AffineElement>) {
          return hash_rational(p.scale) * 1000003ULL ^ hash_rational(p.shift);
        } else {
          std::size_t h = static_cast<std::size_t>(p.dim);
          for (const auto& e : p.entries) h = h * 1000003ULL ^ hash_rational(e);
          return h;
        }
      },
      payload_);
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
  check_same(a, b);
  switch (a.payload().index()) {
    case 0: {
      const auto& x = a.as_dihedral();
      const auto& y = b.as_dihedral();
      // (n,e)(m,d): x ↦ n + e(m + d x)
      return GroupElement::dihedral(x.shift + x.sign * y.shift, x.sign * y.sign);
    }
    case 1: {
      const auto& x = a.as_affine();
      const auto& y = b.as_affine();
      return GroupElement::affine(x.scale * y.scale, y.shift + x.shift * y.scale);
    }
    default: {
      auto m = matmul(a.as_matrix(), b.as_matrix());
      return GroupElement::matrix(m.dim, std::move(m.entries));
    }
  }
}

GroupElement inv(const GroupElement& a) {
  switch (a.payload().index()) {
    case 0: {
      const auto& x = a.as_dihedral();
      return GroupElement::dihedral(-x.sign * x.shift, x.sign);
    }
    case 1: {
      const auto& x = a.as_affine();
      return GroupElement::affine(1 / x.scale, -x.shift / x.scale);
    }
    default: {
      auto m = matinv(a.as_matrix());
      return GroupElement::matrix(m.dim, std::move(m.entries));
    }
  }
}

GroupElement identity(Backend backend) {
  switch (backend) {
    case Backend::dihedral: return GroupElement::dihedral(0, 1);
    case Backend::affine: return GroupElement::affine(1, 0);
    case Backend::matrix2: return GroupElement::matrix(2, {1, 0, 0, 1});
    case Backend::matrix3: return GroupElement::matrix(3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  }
  throw std::invalid_argument("unknown backend");
}

bool is_identity(const GroupElement& g) { return g == identity(g.backend()); }

GroupElement element_from_components(Backend backend, const std::vector<std::string>& comps) {
  auto expect = [&](std::size_t n) {
    if (comps.size() != n)
      throw std::invalid_argument(to_string(backend) + " element needs " + std::to_string(n) +
                                  " components, got " + std::to_string(comps.size()));
  };
  switch (backend) {
    case Backend::dihedral: {
      expect(2);
      const Rational n = parse_rational(comps[0]);
      const Rational e = parse_rational(comps[1]);
      if (n.get_den() != 1 || e.get_den() != 1 || !n.get_num().fits_slong_p())
        throw std::invalid_argument("dihedral components must be integers");
      return GroupElement::dihedral(n.get_num().get_si(), static_cast<int>(e.get_num().get_si()));
    }
    case Backend::affine:
      expect(2);
      return GroupElement::affine(parse_rational(comps[0]), parse_rational(comps[1]));
    case Backend::matrix2:
    case Backend::matrix3: {
      const int dim = backend == Backend::matrix2 ? 2 : 3;
      expect(static_cast<std::size_t>(dim * dim));
      std::vector<Rational> entries;
      for (const auto& c : comps) entries.push_back(parse_rational(c));
      return GroupElement::matrix(dim, std::move(entries));
    }
  }
  throw std::invalid_argument("unknown backend");
}

GeneratingSet GeneratingSet::symmetric_closure(std::vector<GroupElement> gens) {
  std::vector<GroupElement> out;
  auto push = [&](const GroupElement& g) {
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  };
  for (const auto& g : gens) {
    push(g);
    push(inv(g));
  }
  return GeneratingSet{std::move(out), true};
}

bool GeneratingSet::is_closed_under_inverse() const {
  return std::all_of(elements.begin(), elements.end(), [&](const GroupElement& g) {
    return std::find(elements.begin(), elements.end(), inv(g)) != elements.end();
  });
}

std::vector<WordBallEntry> enumerate_word_ball(const GeneratingSet& gens, int radius,
                                               std::size_t budget) {
  if (radius < 0) return {};
  if (!gens.symmetric || !gens.is_closed_under_inverse())
    throw std::invalid_argument("word balls need a symmetric generating set");
  if (gens.elements.empty()) throw std::invalid_argument("empty generating set");

  const GroupElement one = identity(gens.elements.front().backend());
  std::unordered_set<GroupElement, GroupElementHash> seen{one};
  std::vector<WordBallEntry> out{{one, 0}};
  std::vector<GroupElement> layer{one};
  for (int k = 1; k <= radius && !layer.empty(); ++k) {
    std::vector<GroupElement> next;
    for (const auto& x : layer)
      for (const auto& s : gens.elements) {
        GroupElement y = mul(x, s);
        if (seen.insert(y).second) {
          if (seen.size() > budget) throw BudgetExceeded("word ball exceeded budget", seen.size());
          next.push_back(std::move(y));
        }
      }
    std::sort(next.begin(), next.end());
    for (const auto& y : next) out.push_back({y, k});
    layer = std::move(next);
  }
  return out;
}

}  // namespace hecke
