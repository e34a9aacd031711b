#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "hecke/exact.hpp"

namespace hecke {

enum class Backend { dihedral, affine, matrix2, matrix3 };

std::string to_string(Backend b);

/// Element x ↦ shift + sign·x of the infinite dihedral group Z ⋊ Z/2.
struct DihedralElement {
  std::int64_t shift = 0;
  int sign = 1;
};

/// ax+b element, stored as the matrix [[1, shift], [0, scale]] with scale > 0.
struct AffineElement {
  Rational scale{1};
  Rational shift{0};
};

/// Invertible square rational matrix (2×2 or 3×3), row-major.
struct MatrixElement {
  int dim = 2;
  std::vector<Rational> entries;

  const Rational& at(int r, int c) const { return entries[static_cast<std::size_t>(r * dim + c)]; }
  Rational& at(int r, int c) { return entries[static_cast<std::size_t>(r * dim + c)]; }
};

/// An exact group element in canonical form: structural equality is group equality.
class GroupElement {
 public:
  using Payload = std::variant<DihedralElement, AffineElement, MatrixElement>;

  GroupElement() : payload_(DihedralElement{}) {}

  static GroupElement dihedral(std::int64_t shift, int sign);
  /// Throws std::invalid_argument unless scale > 0.
  static GroupElement affine(Rational scale, Rational shift);
  /// Throws std::invalid_argument on a singular matrix or unsupported size.
  static GroupElement matrix(int dim, std::vector<Rational> entries);

  Backend backend() const;
  const Payload& payload() const { return payload_; }
  const DihedralElement& as_dihedral() const;
  const AffineElement& as_affine() const;
  const MatrixElement& as_matrix() const;

  /// Canonical components as strings ("3", "-1", "3/2", ...), used for JSON keys.
  std::vector<std::string> components() const;
  /// Components joined by ':' (CSV-safe).
  std::string key_string() const;

  /// Total order: backend first, then payload lexicographically.
  friend int compare(const GroupElement& a, const GroupElement& b);
  friend bool operator==(const GroupElement& a, const GroupElement& b) { return compare(a, b) == 0; }
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return compare(a, b) < 0; }

  std::size_t hash() const;

 private:
  explicit GroupElement(Payload p) : payload_(std::move(p)) {}
  Payload payload_;
};

/// Throws BackendMismatch when the operands belong to different backends.
GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inv(const GroupElement& a);
GroupElement identity(Backend backend);
bool is_identity(const GroupElement& g);

/// Rebuilds an element from components produced by GroupElement::components().
GroupElement element_from_components(Backend backend, const std::vector<std::string>& components);

Rational determinant(const MatrixElement& m);

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const { return g.hash(); }
};

/// Finite generating set; when `symmetric` is set it is closed under inversion.
struct GeneratingSet {
  std::vector<GroupElement> elements;
  bool symmetric = false;

  /// Adds the missing inverses and sets the flag.
  static GeneratingSet symmetric_closure(std::vector<GroupElement> gens);
  bool is_closed_under_inverse() const;
};

struct WordBallEntry {
  GroupElement element;
  int length = 0;
};

inline constexpr std::size_t kDefaultBudget = 1'000'000;

/// Elements of word length <= radius, sorted by (length, canonical key).
/// Requires a symmetric set; radius < 0 gives an empty result.
/// Throws BudgetExceeded once more than `budget` elements are discovered.
std::vector<WordBallEntry> enumerate_word_ball(const GeneratingSet& gens, int radius,
                                               std::size_t budget = kDefaultBudget);

}  // namespace hecke
