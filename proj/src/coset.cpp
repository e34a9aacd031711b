#include "hecke/coset.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <mutex>
#include <set>
#include <unordered_set>

#include "hecke/errors.hpp"

namespace hecke {

DecompositionCache::Entry DecompositionCache::find(const DoubleCosetKey& key) const {
  std::shared_lock lock(mutex_);
  auto it = map_.find(key);
  return it == map_.end() ? nullptr : it->second;
}

DecompositionCache::Entry DecompositionCache::insert(const DoubleCosetKey& key,
                                                     std::vector<CosetKey> cosets) {
  auto entry = std::make_shared<const std::vector<CosetKey>>(std::move(cosets));
  std::unique_lock lock(mutex_);
  return map_.emplace(key, std::move(entry)).first->second;
}

std::size_t DecompositionCache::size() const {
  std::shared_lock lock(mutex_);
  return map_.size();
}

std::vector<CosetKey> decompose_double_coset(const HeckePair& pair, const GroupElement& g,
                                             const std::vector<GroupElement>& subgroup_generators,
                                             std::size_t budget) {
  std::unordered_set<CosetKey, CosetKeyHash> seen;
  std::deque<CosetKey> queue;
  const CosetKey start = pair.right_coset(g);
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    const CosetKey c = std::move(queue.front());
    queue.pop_front();
    for (const auto& h : subgroup_generators) {
      CosetKey next = pair.right_coset(mul(c.rep, h));
      if (seen.insert(next).second) {
        if (seen.size() > budget)
          throw BudgetExceeded("double coset of " + g.key_string() +
                                   " is not almost normal within budget",
                               seen.size());
        queue.push_back(std::move(next));
      }
    }
  }
  std::vector<CosetKey> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CosetKey> decompose_double_coset(const HeckePair& pair, const GroupElement& g,
                                             std::size_t budget) {
  return decompose_double_coset(pair, g, pair.subgroup_generators(), budget);
}

DecompositionCache::Entry cached_decomposition(const HeckePair& pair, const DoubleCosetKey& key) {
  if (auto hit = pair.cache().find(key)) return hit;
  return pair.cache().insert(key, decompose_double_coset(pair, key.rep));
}

std::size_t degree(const HeckePair& pair, const GroupElement& g) {
  return cached_decomposition(pair, pair.double_coset(g))->size();
}

// ---------------------------------------------------------------- balls

BallIndex::BallIndex(double radius, std::vector<DoubleBallEntry> doubles,
                     std::vector<RightBallEntry> rights)
    : radius_(radius), doubles_(std::move(doubles)), rights_(std::move(rights)) {
  for (std::size_t i = 0; i < rights_.size(); ++i) right_pos_.emplace(rights_[i].key, i);
}

std::size_t BallIndex::right_index(const CosetKey& key) const {
  auto it = right_pos_.find(key);
  return it == right_pos_.end() ? npos : it->second;
}

std::vector<DoubleBallEntry> BallIndex::shell(double k) const {
  std::vector<DoubleBallEntry> out;
  for (const auto& e : doubles_)
    if (e.length >= k && e.length < k + 1) out.push_back(e);
  return out;
}

std::vector<RightBallEntry> BallIndex::right_shell(double k) const {
  std::vector<RightBallEntry> out;
  for (const auto& e : rights_)
    if (e.length >= k && e.length < k + 1) out.push_back(e);
  return out;
}

namespace {

bool by_length_then_key(const DoubleBallEntry& a, const DoubleBallEntry& b) {
  if (a.length != b.length) return a.length < b.length;
  return a.key < b.key;
}

bool same_elements(std::vector<GroupElement> a, std::vector<GroupElement> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

/// Double cosets of word length <= hi for a word length whose free letters are
/// exactly H: BFS over double-coset keys with neighbours H(x h s)H.
std::vector<LengthRep> word_length_doubles(const HeckePair& pair, const LengthFunction& length,
                                           double hi, std::size_t budget) {
  const auto& H = *pair.subgroup_elements();
  const auto& S = length.generators().elements;
  std::vector<LengthRep> out;
  if (hi < 0) return out;
  const int rmax = static_cast<int>(std::floor(hi));
  std::set<DoubleCosetKey> seen;
  std::vector<GroupElement> frontier{pair.double_coset(identity(pair.backend())).rep};
  seen.insert(DoubleCosetKey{frontier.front()});
  out.push_back({frontier.front(), 0.0});
  for (int k = 1; k <= rmax && !frontier.empty(); ++k) {
    std::set<DoubleCosetKey> layer;
    for (const auto& x : frontier)
      for (const auto& h : H) {
        const GroupElement xh = mul(x, h);
        for (const auto& s : S) {
          DoubleCosetKey key = pair.double_coset(mul(xh, s));
          if (!seen.contains(key)) layer.insert(std::move(key));
        }
      }
    frontier.clear();
    for (const auto& key : layer) {
      seen.insert(key);
      frontier.push_back(key.rep);
      out.push_back({key.rep, static_cast<double>(k)});
    }
    if (seen.size() > budget) throw BudgetExceeded("double-coset ball exceeded budget", seen.size());
  }
  return out;
}

std::vector<LengthRep> doubles_in_range(const HeckePair& pair, const LengthFunction& length,
                                        double lo, double hi, std::size_t budget) {
  if (!length.locally_finite())
    throw Unsupported("length '" + length.name() + "' is not locally finite on pair '" +
                      pair.name() + "'");
  if (auto closed = pair.enumerate_doubles(length, lo, hi)) return *closed;
  if (length.kind() == LengthFunction::Kind::word_length && pair.finite_subgroup() &&
      same_elements(length.free_subgroup(), *pair.subgroup_elements())) {
    auto all = word_length_doubles(pair, length, hi, budget);
    std::erase_if(all, [lo](const LengthRep& e) { return e.length <= lo; });
    return all;
  }
  throw Unsupported("no ball enumeration for length '" + length.name() + "' on pair '" +
                    pair.name() + "'");
}

}  // namespace

std::vector<DoubleBallEntry> enumerate_double_shell(const HeckePair& pair, const LengthFunction& length,
                                                    double lo, double hi, std::size_t budget) {
  std::vector<DoubleBallEntry> out;
  for (auto& [rep, len] : doubles_in_range(pair, length, lo, hi, budget)) {
    DoubleCosetKey key = pair.double_coset(rep);
    const std::size_t deg = cached_decomposition(pair, key)->size();
    out.push_back({std::move(key), len, deg});
  }
  std::sort(out.begin(), out.end(), by_length_then_key);
  return out;
}

std::vector<RightBallEntry> enumerate_right_shell(const HeckePair& pair, const LengthFunction& length,
                                                  double lo, double hi, std::size_t budget) {
  std::vector<RightBallEntry> out;
  for (const auto& d : enumerate_double_shell(pair, length, lo, hi, budget)) {
    for (const auto& c : *cached_decomposition(pair, d.key)) out.push_back({c, d.length});
    if (out.size() > budget) throw BudgetExceeded("right-coset ball exceeded budget", out.size());
  }
  std::sort(out.begin(), out.end(), [](const RightBallEntry& a, const RightBallEntry& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.key < b.key;
  });
  return out;
}

BallIndex enumerate_ball(const HeckePair& pair, const LengthFunction& length, double radius,
                         std::size_t budget) {
  if (radius < 0) return BallIndex(radius, {}, {});
  auto doubles = enumerate_double_shell(pair, length, -1.0, radius, budget);
  auto rights = enumerate_right_shell(pair, length, -1.0, radius, budget);
  return BallIndex(radius, std::move(doubles), std::move(rights));
}

std::vector<DegreeAsymmetry> degree_asymmetries(const HeckePair& pair,
                                                const std::vector<GroupElement>& elements) {
  std::map<DoubleCosetKey, DegreeAsymmetry> found;
  for (const auto& g : elements) {
    const std::size_t d = degree(pair, g);
    const std::size_t di = degree(pair, inv(g));
    if (d != di) {
      DoubleCosetKey key = pair.double_coset(g);
      found.emplace(key, DegreeAsymmetry{key, d, di});
    }
  }
  std::vector<DegreeAsymmetry> out;
  for (auto& [k, v] : found) out.push_back(std::move(v));
  return out;
}

}  // namespace hecke
