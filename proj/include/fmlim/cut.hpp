#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "fmlim/structure.hpp"

namespace fmlim {

/// F × {0..m-1} with f(x,i) = (f(x), i+1 mod m); element (x,i) has id x*m+i.
/// Adds U0..U{m-1} for the second coordinate and one T predicate per
/// realized rank-typeRank type of x. A type that pins x to a cycle of length
/// ℓ (only possible when ℓ <= typeRank+1) gets the name "T<k>c<ℓ>",
/// otherwise "T<k>"; k numbers types by first occurrence.
FiniteMapping cycle_cut_product(const FiniteMapping& F, std::size_t m, std::size_t typeRank);

/// Undoes the cut: an element marked U<i> and "T<k>c<ℓ>" with ℓ | (i+1)
/// is sent ℓ-1 steps backwards along its cycle, which closes the ℓ-cycles
/// again. U and T predicates are dropped.
FiniteMapping rewire(const FiniteMapping& F, std::size_t cutLength, std::size_t cleanRank);

struct CutMark {
  bool is_u = false;
  std::size_t index = 0;
  std::optional<std::size_t> cycle;
};

/// Parses "U<i>", "T<k>" and "T<k>c<ℓ>"; nullopt for other names.
std::optional<CutMark> parse_cut_mark(const std::string& name);

}  // namespace fmlim
