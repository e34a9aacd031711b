#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

#include "hecke/pair.hpp"

namespace hecke {

/// Per-pair memo of double-coset decompositions. Concurrent readers, one writer
/// at a time; a racing duplicate computation yields an identical value.
class DecompositionCache {
 public:
  using Entry = std::shared_ptr<const std::vector<CosetKey>>;

  Entry find(const DoubleCosetKey& key) const;
  Entry insert(const DoubleCosetKey& key, std::vector<CosetKey> cosets);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<DoubleCosetKey, Entry> map_;
};

/// The distinct right cosets inside HgH, sorted by canonical key. Computed by
/// orbit closure of Hg under right multiplication by the generators of H.
/// Throws BudgetExceeded ("not almost normal within budget") past `budget` cosets.
std::vector<CosetKey> decompose_double_coset(const HeckePair& pair, const GroupElement& g,
                                             std::size_t budget = kDefaultBudget);
/// Same, with an explicit generating set for H (bypasses the cache).
std::vector<CosetKey> decompose_double_coset(const HeckePair& pair, const GroupElement& g,
                                             const std::vector<GroupElement>& subgroup_generators,
                                             std::size_t budget = kDefaultBudget);
/// Shared, cached decomposition of a double coset.
DecompositionCache::Entry cached_decomposition(const HeckePair& pair, const DoubleCosetKey& key);

/// Number of right cosets in HgH.
std::size_t degree(const HeckePair& pair, const GroupElement& g);

struct DoubleBallEntry {
  DoubleCosetKey key;
  double length = 0;
  std::size_t degree = 0;
};

struct RightBallEntry {
  CosetKey key;
  double length = 0;
};

/// Double and right cosets with length <= radius, ordered by (length, key).
class BallIndex {
 public:
  BallIndex() = default;
  BallIndex(double radius, std::vector<DoubleBallEntry> doubles, std::vector<RightBallEntry> rights);

  double radius() const { return radius_; }
  const std::vector<DoubleBallEntry>& doubles() const { return doubles_; }
  const std::vector<RightBallEntry>& rights() const { return rights_; }

  /// Index of a right coset in rights(), or npos.
  std::size_t right_index(const CosetKey& key) const;
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  /// Shell C_k: double cosets with k <= L < k+1.
  std::vector<DoubleBallEntry> shell(double k) const;
  /// Right cosets with k <= L < k+1.
  std::vector<RightBallEntry> right_shell(double k) const;

 private:
  double radius_ = 0;
  std::vector<DoubleBallEntry> doubles_;
  std::vector<RightBallEntry> rights_;
  std::map<CosetKey, std::size_t> right_pos_;
};

/// Ball B_r in G//H (and the parallel ball in H\G). Requires a locally finite
/// length the pair can enumerate; throws Unsupported otherwise.
BallIndex enumerate_ball(const HeckePair& pair, const LengthFunction& length, double radius,
                         std::size_t budget = kDefaultBudget);

/// Double cosets with lo < L <= hi (ordered by length, key), with degrees.
std::vector<DoubleBallEntry> enumerate_double_shell(const HeckePair& pair, const LengthFunction& length,
                                                    double lo, double hi,
                                                    std::size_t budget = kDefaultBudget);
/// Right cosets with lo < L <= hi.
std::vector<RightBallEntry> enumerate_right_shell(const HeckePair& pair, const LengthFunction& length,
                                                  double lo, double hi,
                                                  std::size_t budget = kDefaultBudget);

/// Elements g (by double coset) whose degree differs from that of g⁻¹.
struct DegreeAsymmetry {
  DoubleCosetKey key;
  std::size_t degree = 0;
  std::size_t inverse_degree = 0;
};
std::vector<DegreeAsymmetry> degree_asymmetries(const HeckePair& pair,
                                                const std::vector<GroupElement>& elements);

}  // namespace hecke
