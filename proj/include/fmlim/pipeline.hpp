#pragma once

#include <cstddef>
#include <string>

#include "json.hpp"

#include "fmlim/rational.hpp"
#include "fmlim/structure.hpp"

namespace fmlim {

struct PipelineConfig {
  std::size_t r = 1;
  std::size_t rr = 1;           // rank at which the measure is realized
  std::size_t cleanRank = 3;    // rank of the extracted measure, >= 2rr+1
  std::size_t cutLength = 6;
  std::size_t cutTypeRank = 1;  // rank of the T marks added by the cut
  std::size_t elementaryRank = 1;
  Rational epsilon{1, 10};
  Rational epsilonResidual{1, 10};
  Rational epsilonMeasure{1, 100};
  std::size_t nAwayFactor = 2;
  std::size_t multiplier = 1;
  std::size_t maxElements = 10'000'000;
  std::size_t tupleBudget = 4'000'000;
  bool referenceSchedule = false;

  void validate() const;
};

/// Small constants that run on a laptop: rr = r, cleanRank = 2r+1, and the
/// cut is the least multiple of lcm(1..r+1) that is at least cleanRank+2.
PipelineConfig desk_schedule(std::size_t r, const Rational& epsilon);

/// rr = 4r², clean = 2rr+1, cut = clean!. Throws ScheduleInfeasible when the
/// cut product would exceed `maxElements` for an input of size n.
PipelineConfig reference_schedule(std::size_t r, const Rational& epsilon, std::size_t n,
                              std::size_t maxElements = 10'000'000);

struct PipelineResult {
  FiniteMapping output;
  nlohmann::json report;
};

/// residualize → cut → extract → rationalize → realize → rewire → merge → undo cuts.
/// On success ldist_1^r(output, F) <= ε.
PipelineResult pipeline(const FiniteMapping& F, std::size_t p, std::size_t r, const Rational& epsilon,
                        const PipelineConfig& config);

}  // namespace fmlim
