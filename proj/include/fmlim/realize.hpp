#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fmlim/structure.hpp"
#include "fmlim/types.hpp"

namespace fmlim {

/// Greedy construction state: element i has type entries[zeta[i]] and
/// image g[i] (unset while the construction is in progress).
struct RealizationPlan {
  std::size_t N = 0;
  std::vector<std::size_t> zeta;
  std::vector<std::optional<Element>> g;
};

/// Assigns N = multiplier·lcm(denominators) elements to types and builds g.
/// Throws PreconditionFailed or Stuck.
RealizationPlan plan_realization(const TypeMeasure& mu, std::size_t r, std::size_t multiplier = 1);

/// Finite mapping whose rank-r type distribution is exactly the rank-r
/// marginal of μ. Verified after construction.
FiniteMapping realize(const TypeMeasure& mu, std::size_t r, std::size_t multiplier = 1);

/// Checks that Υ is a consistent rank-R labelling of F: marks agree, no
/// cycle of length in (1, cutLength], images and capped preimage counts
/// match what the labels demand at rank r.
bool verify_upsilon(const FiniteMapping& F, const std::vector<LocalType>& upsilon, std::size_t r,
                    std::size_t cutLength);

/// Positive-mass types whose rank-r image type has no mass.
std::vector<LocalType> find_terminals(const TypeMeasure& mu, std::size_t r);

/// For each terminal, the lowest-id type in the pool (μ's support by
/// default) with more than r preimages of the terminal's rank-r type.
std::vector<std::pair<LocalType, LocalType>> find_hubs(const TypeMeasure& mu, const std::vector<LocalType>& terminals,
                                                      std::size_t r,
                                                      const std::optional<std::vector<LocalType>>& pool = std::nullopt);

/// E ⊎ (F2 × [nClose] × [nAway]). Copy (v,i,j) has id |E| + (i·nAway + j)·|F2| + v;
/// a terminal v of F2 maps to hubAssignment[v][i] in E instead of its own image.
/// Hubs must be pairwise more than 2·separation apart.
FiniteMapping merge(const FiniteMapping& E, const FiniteMapping& F2,
                    const std::map<Element, std::vector<Element>>& hubAssignment, std::size_t nClose,
                    std::size_t nAway, std::size_t separation);

}  // namespace fmlim
