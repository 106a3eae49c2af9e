#pragma once

#include <optional>
#include <vector>

#include "fmlim/rational.hpp"

namespace fmlim {

/// Sparse-ish row of a linear constraint: pairs (column, coefficient).
struct LinearRow {
  std::vector<std::pair<std::size_t, Rational>> terms;
  Rational rhs;
};

/// Finds x >= 0 with every row satisfied as an equality, or nullopt.
/// Exact two-phase simplex with Bland's rule; returns a basic solution.
std::optional<std::vector<Rational>> solve_feasibility(std::size_t columns, const std::vector<LinearRow>& rows);

}  // namespace fmlim
