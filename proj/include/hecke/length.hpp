#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hecke/group.hpp"

namespace hecke {

class HeckePair;

/// A length function G → [0, ∞). Cheap to copy; evaluation is thread-safe.
class LengthFunction {
 public:
  enum class Kind { word_length, matrix_log_norm, dihedral_abs, zero, custom };
  using Evaluator = std::function<double(const GroupElement&)>;

  /// Word length over `gens`; elements of `free_subgroup` (a finite subgroup,
  /// listed completely) cost nothing, so the length vanishes on it.
  static LengthFunction word_length(GeneratingSet gens, std::vector<GroupElement> free_subgroup = {},
                                    std::size_t budget = kDefaultBudget);
  /// log(‖g‖₁·‖g⁻¹‖₁) with the induced 1-norm; evaluated in floating point.
  static LengthFunction matrix_log_norm();
  /// |n| on the dihedral backend.
  static LengthFunction dihedral_abs();
  static LengthFunction zero(bool locally_finite);
  static LengthFunction custom(std::string name, Evaluator fn, bool integral, bool locally_finite);

  double operator()(const GroupElement& g) const;

  Kind kind() const;
  const std::string& name() const;
  /// Values are always integers (enables exact comparisons and exact weights).
  bool integral() const;
  /// Balls in H\G are finite for the pair this length is attached to.
  bool locally_finite() const;
  LengthFunction with_locally_finite(bool flag) const;

  /// Only for Kind::word_length.
  const GeneratingSet& generators() const;
  const std::vector<GroupElement>& free_subgroup() const;

 private:
  struct State;
  explicit LengthFunction(std::shared_ptr<const State> s) : state_(std::move(s)) {}
  std::shared_ptr<const State> state_;
};

std::string to_string(LengthFunction::Kind kind);

struct LengthViolation {
  std::string axiom;  // identity | symmetry | subadditivity | vanishing-on-H | double-coset-constancy
  std::vector<GroupElement> witnesses;
  double lhs = 0;
  double rhs = 0;
};

struct LengthReport {
  std::string length_name;
  std::size_t sample_size = 0;
  std::size_t checks = 0;
  std::vector<LengthViolation> violations;

  bool passed() const { return violations.empty(); }
};

/// Checks the length axioms on every element / pair of `sample` together with
/// H-invariance against the pair's subgroup sample. Violations are data.
LengthReport validate_length(const LengthFunction& length, const HeckePair& pair,
                             const std::vector<GroupElement>& sample);

}  // namespace hecke
