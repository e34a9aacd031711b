#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hecke/pair.hpp"

namespace hecke {

struct PairDescriptor {
  std::string name;
  std::string description;
  RdStatus rd_status = RdStatus::unknown;
  bool has_length = false;
  std::string length_name;
  bool finite_subgroup = false;
  std::string params_help;
};

std::vector<PairDescriptor> catalog_list();

/// Builds a catalog pair and runs a seeded sanity sample over its
/// canonicalizers. Throws std::invalid_argument for unknown names or bad
/// params, AuditFailure (with a witness) when the sanity sample fails.
PairPtr build_pair(std::string_view name, const PairParams& params = {});

/// Resolves a length by name for a pair: "native", "zero", "word",
/// "matrix-log-norm", "dihedral-abs". Throws Unsupported when unavailable.
LengthFunction make_length(const HeckePair& pair, std::string_view name);

}  // namespace hecke
