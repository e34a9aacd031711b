#include "hecke/pair.hpp"

#include <stdexcept>

#include "hecke/coset.hpp"
#include "hecke/errors.hpp"

namespace hecke {

std::string to_string(RdStatus s) {
  switch (s) {
    case RdStatus::expected: return "expected";
    case RdStatus::non_example: return "non-example";
    case RdStatus::unknown: return "unknown";
  }
  return "unknown";
}

HeckePair::HeckePair(Definition def)
    : def_(std::move(def)), cache_(std::make_unique<DecompositionCache>()) {
  if (!def_.right_canonical || !def_.double_canonical || !def_.in_subgroup || !def_.in_group)
    throw std::invalid_argument("pair '" + def_.name + "' is missing a canonicalizer or predicate");
  if (def_.subgroup_generators.empty())
    throw std::invalid_argument("pair '" + def_.name + "' needs generators for H");
}

HeckePair::~HeckePair() = default;

bool HeckePair::in_group(const GroupElement& g) const {
  return g.backend() == def_.backend && def_.in_group(g);
}

bool HeckePair::in_subgroup(const GroupElement& g) const {
  return g.backend() == def_.backend && def_.in_subgroup(g);
}

std::size_t HeckePair::subgroup_order() const {
  if (!def_.subgroup_elements) throw Unsupported("H is infinite for pair '" + def_.name + "'");
  return def_.subgroup_elements->size();
}

std::vector<GroupElement> HeckePair::subgroup_sample() const {
  if (def_.subgroup_elements) return *def_.subgroup_elements;
  std::vector<GroupElement> out{identity(def_.backend)};
  for (const auto& a : def_.subgroup_generators) {
    out.push_back(a);
    for (const auto& b : def_.subgroup_generators) out.push_back(mul(a, b));
  }
  return out;
}

CosetKey HeckePair::right_coset(const GroupElement& g) const {
  if (g.backend() != def_.backend)
    throw BackendMismatch("element backend " + to_string(g.backend()) + " does not match pair '" +
                          def_.name + "'");
  return CosetKey{def_.right_canonical(g)};
}

DoubleCosetKey HeckePair::double_coset(const GroupElement& g) const {
  if (g.backend() != def_.backend)
    throw BackendMismatch("element backend " + to_string(g.backend()) + " does not match pair '" +
                          def_.name + "'");
  return DoubleCosetKey{def_.double_canonical(g)};
}

std::optional<std::vector<LengthRep>> HeckePair::enumerate_doubles(const LengthFunction& length,
                                                                   double lo, double hi) const {
  if (!def_.enumerate_doubles) return std::nullopt;
  return def_.enumerate_doubles(length, lo, hi);
}

GroupElement HeckePair::random_element(std::mt19937_64& rng) const {
  if (!def_.random_element) throw Unsupported("pair '" + def_.name + "' has no sampler");
  return def_.random_element(rng);
}

}  // namespace hecke
