#pragma once

#include "fmlim/formula.hpp"
#include "fmlim/rational.hpp"
#include "fmlim/structure.hpp"

namespace fmlim {

struct Residualization {
  FiniteMapping mapping;
  /// Recovers the input from `mapping`: apply_interpretation(interpretation, mapping) == input.
  Interpretation interpretation;
  /// Number of A_i/B_i pairs introduced.
  std::size_t cuts = 0;
};

/// Cuts F into components of at most ⌈εn⌉+1 elements, recording every cut
/// edge x -> y with marks A_i(x), B_i(y).
Residualization residualize(const FiniteMapping& F, const Rational& epsilon);

}  // namespace fmlim
