#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fmlim/rational.hpp"
#include "fmlim/structure.hpp"

namespace fmlim {

/// Uniform iid images from std::mt19937_64(seed), drawn for v = 0..n-1, then
/// marks: for each predicate in order and each v, a draw d marks v when
/// d mod q < p (density p/q). Bounded draws use rejection sampling.
FiniteMapping random_mapping(std::size_t n, std::uint64_t seed,
                             const std::vector<std::pair<std::string, Rational>>& markDensities = {});

/// Number of cycles of each length 1..maxLength (index 0 unused).
std::vector<std::size_t> cycle_counts(const FiniteMapping& F, std::size_t maxLength);

struct CycleRow {
  std::size_t r = 0;
  double empirical = 0;
  Rational exact;  // n(n-1)…(n-r+1) / (r n^r)
};

Rational expected_cycles(std::size_t n, std::size_t r);

/// Sample k uses seed derived from (seed, k) by splitmix64.
std::vector<CycleRow> cycle_statistics(std::size_t n, std::size_t samples, std::size_t rMax, std::uint64_t seed);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace fmlim
