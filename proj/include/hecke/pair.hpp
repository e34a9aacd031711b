#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hecke/group.hpp"
#include "hecke/length.hpp"

namespace hecke {

enum class RdStatus { expected, non_example, unknown };
std::string to_string(RdStatus s);

/// Right coset Hg, identified by its canonical representative.
struct CosetKey {
  GroupElement rep;
  friend bool operator==(const CosetKey& a, const CosetKey& b) { return a.rep == b.rep; }
  friend bool operator<(const CosetKey& a, const CosetKey& b) { return a.rep < b.rep; }
};

/// Double coset HgH, identified by its canonical representative.
struct DoubleCosetKey {
  GroupElement rep;
  friend bool operator==(const DoubleCosetKey& a, const DoubleCosetKey& b) { return a.rep == b.rep; }
  friend bool operator<(const DoubleCosetKey& a, const DoubleCosetKey& b) { return a.rep < b.rep; }
};

struct CosetKeyHash {
  std::size_t operator()(const CosetKey& k) const { return k.rep.hash(); }
};

using PairParams = std::map<std::string, std::string>;

/// Double-coset representative with its length, as produced by ball enumerators.
struct LengthRep {
  GroupElement rep;
  double length = 0;
};

class DecompositionCache;

/// A Hecke pair (G, H): backend, subgroup data, canonicalizers and metadata.
/// Immutable after construction apart from the internal decomposition cache.
class HeckePair {
 public:
  struct Definition {
    std::string name;
    std::string description;
    PairParams params;
    RdStatus rd_status = RdStatus::unknown;
    Backend backend = Backend::dihedral;
    std::function<bool(const GroupElement&)> in_group;
    std::function<bool(const GroupElement&)> in_subgroup;
    /// Symmetric generating set of H (used for orbit closure).
    std::vector<GroupElement> subgroup_generators;
    /// All of H, when H is finite.
    std::optional<std::vector<GroupElement>> subgroup_elements;
    /// Symmetric generating set of G (random words, word lengths).
    GeneratingSet group_generators;
    std::function<GroupElement(const GroupElement&)> right_canonical;
    std::function<GroupElement(const GroupElement&)> double_canonical;
    std::optional<LengthFunction> length;
    /// Closed-form double-coset enumeration for lengths in (lo, hi]; nullopt when
    /// the given length is not one the pair knows how to enumerate.
    std::function<std::optional<std::vector<LengthRep>>(const LengthFunction&, double lo, double hi)>
        enumerate_doubles;
    std::function<GroupElement(std::mt19937_64&)> random_element;
    std::string notes;
  };

  explicit HeckePair(Definition def);
  ~HeckePair();
  HeckePair(const HeckePair&) = delete;
  HeckePair& operator=(const HeckePair&) = delete;

  const std::string& name() const { return def_.name; }
  const std::string& description() const { return def_.description; }
  const PairParams& params() const { return def_.params; }
  RdStatus rd_status() const { return def_.rd_status; }
  Backend backend() const { return def_.backend; }
  const std::string& notes() const { return def_.notes; }

  bool in_group(const GroupElement& g) const;
  bool in_subgroup(const GroupElement& g) const;
  const std::vector<GroupElement>& subgroup_generators() const { return def_.subgroup_generators; }
  const std::optional<std::vector<GroupElement>>& subgroup_elements() const {
    return def_.subgroup_elements;
  }
  bool finite_subgroup() const { return def_.subgroup_elements.has_value(); }
  /// Order of H; throws Unsupported for infinite H.
  std::size_t subgroup_order() const;
  /// All of H when finite, otherwise generators and their pairwise products.
  std::vector<GroupElement> subgroup_sample() const;
  const GeneratingSet& group_generators() const { return def_.group_generators; }

  CosetKey right_coset(const GroupElement& g) const;
  DoubleCosetKey double_coset(const GroupElement& g) const;

  const std::optional<LengthFunction>& length() const { return def_.length; }
  std::optional<std::vector<LengthRep>> enumerate_doubles(const LengthFunction& length, double lo,
                                                          double hi) const;
  GroupElement random_element(std::mt19937_64& rng) const;

  DecompositionCache& cache() const { return *cache_; }

 private:
  Definition def_;
  std::unique_ptr<DecompositionCache> cache_;
};

using PairPtr = std::shared_ptr<const HeckePair>;

}  // namespace hecke
