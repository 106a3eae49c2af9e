#pragma once

#include <cstddef>
#include <utility>

#include "fmlim/rational.hpp"
#include "fmlim/structure.hpp"
#include "fmlim/types.hpp"

namespace fmlim {

/// A ≡_r B, decided by the r-round Ehrenfeucht–Fraïssé game.
bool ef_equivalent(const FiniteMapping& A, const FiniteMapping& B, std::size_t r,
                   std::size_t budget = kDefaultGameBudget);

/// Local distance: TV between the distributions of rank-r local classes of
/// uniformly random p-tuples (p >= 1).
Rational ldist(const FiniteMapping& A, const FiniteMapping& B, std::size_t p, std::size_t r,
               std::size_t budget = kDefaultGameBudget);

/// Largest gap |<φ,A> - <φ,B>| over formulas with p free variables and
/// quantifier rank at most r. 1 when A and B are not r-equivalent.
Rational fo_dist(const FiniteMapping& A, const FiniteMapping& B, std::size_t p, std::size_t r,
                 std::size_t budget = kDefaultGameBudget);

struct TruncatedDistance {
  Rational lower;
  Rational upper;
};

/// Σ_{p+r<=K} 2^-(p+r) fo_dist(p, r), plus the worst-case tail as the upper end.
TruncatedDistance dist_fo_truncated(const FiniteMapping& A, const FiniteMapping& B, std::size_t K,
                                    std::size_t budget = kDefaultGameBudget);

/// Σ_{s>K} (s+1) 2^-s, the weight of all terms beyond K.
Rational truncation_tail(std::size_t K);

}  // namespace fmlim
