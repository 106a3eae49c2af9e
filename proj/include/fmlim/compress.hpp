#pragma once

#include <cstddef>

#include "fmlim/structure.hpp"

namespace fmlim {

/// Keeps at most r equivalent siblings below every element (lowest ids
/// first) and at most r isomorphic components; cyclic elements are never
/// pruned. The result is r-equivalent to F and no larger.
FiniteMapping standard_r_approximation(const FiniteMapping& F, std::size_t r);

}  // namespace fmlim
