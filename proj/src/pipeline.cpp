#include "fmlim/pipeline.hpp"

#include <chrono>
#include <numeric>
#include <unordered_map>

#include "fmlim/cut.hpp"
#include "fmlim/equivalence.hpp"
#include "fmlim/error.hpp"
#include "fmlim/fmtp.hpp"
#include "fmlim/realize.hpp"
#include "fmlim/residualize.hpp"
#include "fmlim/types.hpp"

namespace fmlim {

void PipelineConfig::validate() const {
  if (rr < r) fail(ErrorCode::InvalidArgument, "schedule needs rr >= r");
  if (cleanRank < 2 * rr + 1) fail(ErrorCode::InvalidArgument, "schedule needs cleanRank >= 2rr+1");
  if (cutLength < 2) fail(ErrorCode::InvalidArgument, "schedule needs cutLength >= 2");
  for (std::size_t l = 1; l <= cutTypeRank + 1; ++l)
    if (cutLength % l != 0)
      fail(ErrorCode::InvalidArgument, "cut length must be divisible by every cycle length the cut marks record");
  if (epsilon <= 0 || epsilonResidual <= 0 || epsilonResidual >= 1 || epsilonMeasure <= 0)
    fail(ErrorCode::InvalidArgument, "schedule epsilons must be positive (and below 1 for residualization)");
  if (nAwayFactor == 0 || multiplier == 0) fail(ErrorCode::InvalidArgument, "factors must be positive");
}

PipelineConfig desk_schedule(std::size_t r, const Rational& epsilon) {
  PipelineConfig c;
  c.r = r;
  c.rr = r;
  c.cleanRank = 2 * r + 1;
  c.cutTypeRank = r;
  c.elementaryRank = r;
  std::size_t step = 1;
  for (std::size_t l = 1; l <= r + 1; ++l) step = std::lcm(step, l);
  c.cutLength = (c.cleanRank + 2 + step - 1) / step * step;
  c.epsilon = epsilon;
  c.epsilonResidual = epsilon;
  c.epsilonMeasure = epsilon / 10;
  return c;
}

PipelineConfig reference_schedule(std::size_t r, const Rational& epsilon, std::size_t n, std::size_t maxElements) {
  PipelineConfig c;
  c.r = r;
  c.rr = 4 * r * r;
  c.cleanRank = 2 * c.rr + 1;
  c.cutTypeRank = c.cleanRank;
  c.elementaryRank = r;
  c.epsilon = epsilon;
  c.epsilonResidual = epsilon * epsilon / Rational(4);
  c.epsilonMeasure = epsilon / 10;
  c.referenceSchedule = true;
  c.maxElements = maxElements;
  BigInt cut = 1;
  for (std::size_t k = 2; k <= c.cleanRank; ++k) cut *= k;
  if (cut * n > BigInt(maxElements))
    fail(ErrorCode::ScheduleInfeasible, "cut = clean! = " + std::to_string(c.cleanRank) + "! = " + cut.str() +
                                            "; the cut product of " + std::to_string(n) + " elements exceeds the budget of " +
                                            std::to_string(maxElements) + " elements");
  c.cutLength = static_cast<std::size_t>(cut);
  return c;
}

namespace {

using Clock = std::chrono::steady_clock;

class TypeLabels {
 public:
  nlohmann::json histogram(const FiniteMapping& F, std::size_t r) {
    nlohmann::json out = nlohmann::json::array();
    const auto mu = type_distribution(F, r);
    for (const auto& e : mu.entries()) {
      auto [it, inserted] = labels_.try_emplace(e.type.id(), labels_.size());
      out.push_back({{"type", it->second}, {"mass", to_string(e.mass)}});
    }
    return out;
  }

 private:
  std::unordered_map<TypeId, std::size_t> labels_;
};

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string certificate_hash(const CompanionCertificate& cert) {
  std::string text = std::to_string(cert.R) + ":" + std::to_string(cert.r);
  for (const auto& v : cert.values)
    text += ";" + std::to_string(v.tau.id()) + "," + std::to_string(v.t.id()) + "=" + to_string(v.s);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
  return buf;
}

// Restores every cut edge A_i -> B_i. Copies of the structure contain several
// B_i elements, so the A_i elements are shared out in id order with each B_i
// receiving as many as it had originally.
FiniteMapping undo_cuts(const FiniteMapping& merged, const FiniteMapping& residual, std::size_t cuts,
                        const std::vector<std::string>& keep) {
  std::vector<Element> image = merged.images();
  const auto& sig = merged.signature();
  for (std::size_t i = 1; i <= cuts; ++i) {
    const auto a = *sig.index_of("A" + std::to_string(i));
    const auto b = *sig.index_of("B" + std::to_string(i));
    const auto sources = merged.extension(a);
    const auto targets = merged.extension(b);
    const std::size_t share = residual.extension(a).size();
    if (targets.empty()) fail(ErrorCode::MalformedCut, "cut " + std::to_string(i) + " lost its target");
    for (std::size_t k = 0; k < sources.size(); ++k) image[sources[k]] = targets[(k / share) % targets.size()];
  }
  return reshape_predicates(with_images(merged, std::move(image)), keep);
}

}  // namespace

PipelineResult pipeline(const FiniteMapping& F, std::size_t p, std::size_t r, const Rational& epsilon,
                        const PipelineConfig& config) {
  config.validate();
  if (config.r != r || config.epsilon != epsilon)
    fail(ErrorCode::InvalidArgument, "schedule was built for different r or ε");
  TypeLabels labels;
  nlohmann::json report;
  report["schema"] = "fmlim.pipeline/1";
  report["schedule"] = {{"r", r},
                        {"rr", config.rr},
                        {"clean", config.cleanRank},
                        {"cut", config.cutLength},
                        {"cut_type_rank", config.cutTypeRank},
                        {"epsilon", to_string(epsilon)},
                        {"epsilon_residual", to_string(config.epsilonResidual)},
                        {"epsilon_measure", to_string(config.epsilonMeasure)},
                        {"reference", config.referenceSchedule}};
  report["input"] = {{"size", F.size()}, {"histogram", labels.histogram(F, r)}};
  nlohmann::json stages = nlohmann::json::array();
  auto started = Clock::now();
  auto stage = [&](const std::string& name, nlohmann::json details) {
    auto now = Clock::now();
    details["stage"] = name;
    details["ms"] = std::chrono::duration<double, std::milli>(now - started).count();
    started = now;
    stages.push_back(std::move(details));
  };

  auto res = residualize(F, config.epsilonResidual);
  std::size_t largest = 0;
  for (const auto& c : connected_components(res.mapping)) largest = std::max(largest, c.size());
  stage("residualize", {{"cuts", res.cuts}, {"largest_component", largest}, {"size", res.mapping.size()}});
  const auto& F1 = res.mapping;

  // Every type realized in a finite structure has positive mass.
  stage("clean", {{"types", type_distribution(F1, config.cleanRank).size()}, {"clean", true}});

  if (F1.size() * config.cutLength > config.maxElements)
    fail(ErrorCode::ScheduleInfeasible, "cut product would have " + std::to_string(F1.size() * config.cutLength) + " elements");
  auto cut = cycle_cut_product(F1, config.cutLength, config.cutTypeRank);
  stage("cut", {{"size", cut.size()}});

  auto mu = type_distribution(cut, config.cleanRank);
  stage("extract", {{"types", mu.size()}});

  auto mu_hat = approximate_measure(mu, config.epsilonMeasure, config.rr);
  auto cert = restricted_fmtp_certificate(mu_hat, config.rr);
  if (!std::holds_alternative<CompanionCertificate>(cert))
    fail(ErrorCode::Infeasible, "rational measure lost its certificate");
  stage("rationalize", {{"tv", to_string(total_variation(mu, mu_hat))},
                        {"certificate", certificate_hash(std::get<CompanionCertificate>(cert))}});

  auto F3 = realize(mu_hat, config.rr, config.multiplier);
  stage("realize", {{"size", F3.size()}, {"histogram", labels.histogram(F3, r)}});

  auto F2 = rewire(F3, config.cutLength, config.cleanRank);
  stage("rewire", {{"size", F2.size()},
                   {"histogram", labels.histogram(F2, r)},
                   {"ldist_to_residual", to_string(ldist(F2, F1, 1, r))}});

  // A finite structure has no terminals: every image type is realized.
  const Rational ratio = Rational(static_cast<long>(F1.size())) / (Rational(static_cast<long>(F2.size())) * config.epsilonResidual);
  const auto n_close = static_cast<std::size_t>((numerator(ratio) + denominator(ratio) - 1) / denominator(ratio));
  const Rational inverse = 1 / config.epsilonResidual;
  const auto n_away = config.nAwayFactor *
                      static_cast<std::size_t>((numerator(inverse) + denominator(inverse) - 1) / denominator(inverse));
  if (F1.size() + F2.size() * n_close * n_away > config.maxElements)
    fail(ErrorCode::ScheduleInfeasible, "merged structure would exceed the element budget");
  auto merged = merge(F1, F2, {}, n_close, n_away, r);
  stage("merge", {{"size", merged.size()}, {"terminals", 0}, {"n_close", n_close}, {"n_away", n_away}});

  auto output = undo_cuts(merged, F1, res.cuts, F.signature().predicates());
  const Rational final_ldist = ldist(output, F, 1, r);
  nlohmann::json final_stage{{"size", output.size()}, {"histogram", labels.histogram(output, r)},
                             {"ldist_1", to_string(final_ldist)}};
  if (p >= 2) {
    const double tuples = std::pow(static_cast<double>(output.size()), static_cast<double>(p)) +
                          std::pow(static_cast<double>(F.size()), static_cast<double>(p));
    if (tuples <= static_cast<double>(config.tupleBudget)) {
      final_stage["ldist_p"] = to_string(ldist(output, F, p, r, config.tupleBudget));
    } else {
      final_stage["ldist_p"] = nullptr;
      final_stage["ldist_p_skipped"] = "too many " + std::to_string(p) + "-tuples";
    }
  }
  stage("undo_cuts", final_stage);
  report["stages"] = stages;
  report["final"] = {{"ldist_1", to_string(final_ldist)}, {"within_epsilon", final_ldist <= epsilon}};
  if (final_ldist > epsilon)
    fail(ErrorCode::Infeasible, "pipeline output is at local distance " + to_string(final_ldist) + " > ε");
  return {output, report};
}

}  // namespace fmlim
