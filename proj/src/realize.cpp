#include "fmlim/realize.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "fmlim/error.hpp"
#include "fmlim/fmtp.hpp"

namespace fmlim {

namespace {

// Rank-r facts about one rank-R label.
struct LabelInfo {
  TypeId proj = 0;
  TypeId img = 0;
  std::unordered_map<TypeId, std::size_t> adm;  // capped preimage counts

  std::size_t adm_of(TypeId t) const {
    auto it = adm.find(t);
    return it == adm.end() ? 0 : it->second;
  }
};

LabelInfo describe(const LocalType& tau, std::size_t r) {
  LabelInfo info;
  info.proj = project(tau, r).id();
  info.img = local_type(tau.witness(), tau.witness().image(tau.root()), r).id();
  for (const auto& [t, count] : preimage_types(tau, r)) info.adm[t.id()] = count;
  return info;
}

std::string describe_key(std::size_t a, std::size_t count) {
  return "adm-=" + std::to_string(a) + ", used=" + std::to_string(count);
}

}  // namespace

RealizationPlan plan_realization(const TypeMeasure& mu, std::size_t r, std::size_t multiplier) {
  if (multiplier == 0) fail(ErrorCode::InvalidArgument, "multiplier must be at least 1");
  if (mu.rank() < 2 * r + 1) fail(ErrorCode::RankTooLow, "realization needs rank >= 2r+1");
  auto report = check_realizability_preconditions(mu, mu.rank(), r);
  if (!report.ok()) {
    std::string text;
    for (const auto& p : report.problems) text += (text.empty() ? "" : "; ") + p;
    fail(ErrorCode::PreconditionFailed, text);
  }

  const auto& entries = mu.entries();
  BigInt lcm = 1;
  for (const auto& e : entries) {
    BigInt d = denominator(e.mass);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  const BigInt total = lcm * multiplier;
  if (total > BigInt(std::numeric_limits<Element>::max() / 2))
    fail(ErrorCode::BudgetExceeded, "realization would need " + total.str() + " elements");

  RealizationPlan plan;
  plan.N = static_cast<std::size_t>(total);
  for (std::size_t a = 0; a < entries.size(); ++a) {
    Rational share = entries[a].mass * Rational(total);
    auto count = static_cast<std::size_t>(numerator(share));
    plan.zeta.insert(plan.zeta.end(), count, a);
  }
  plan.g.assign(plan.N, std::nullopt);

  std::vector<LabelInfo> info;
  for (const auto& e : entries) info.push_back(describe(e.type, r));
  std::unordered_map<TypeId, std::vector<Element>> by_proj;
  for (Element j = 0; j < plan.N; ++j) by_proj[info[plan.zeta[j]].proj].push_back(j);

  std::vector<std::unordered_map<TypeId, std::size_t>> used(plan.N);
  for (Element i = 0; i < plan.N; ++i) {
    const auto& me = info[plan.zeta[i]];
    const TypeId t1 = me.proj;
    std::optional<Element> best;
    std::pair<std::size_t, std::size_t> best_key;
    auto it = by_proj.find(me.img);
    if (it != by_proj.end()) {
      for (auto j : it->second) {
        const std::size_t a = info[plan.zeta[j]].adm_of(t1);
        const std::size_t c = used[j][t1];
        if (a != r + 1 && a <= c) continue;
        const std::pair key{a, c};
        if (!best || key < best_key) {
          best = j;
          best_key = key;
        }
      }
    }
    if (!best) {
      std::string diag = "element " + std::to_string(i) + " (type #" + std::to_string(plan.zeta[i]) +
                         ") has no eligible image; candidates:";
      if (it != by_proj.end())
        for (auto j : it->second)
          diag += " " + std::to_string(j) + "[" + describe_key(info[plan.zeta[j]].adm_of(t1), used[j][t1]) + "]";
      fail(ErrorCode::Stuck, diag);
    }
    plan.g[i] = *best;
    ++used[*best][t1];
  }
  return plan;
}

FiniteMapping realize(const TypeMeasure& mu, std::size_t r, std::size_t multiplier) {
  auto plan = plan_realization(mu, r, multiplier);
  const auto& entries = mu.entries();
  const Signature& sig = entries.front().type.witness().signature();
  for (const auto& e : entries)
    if (e.type.witness().signature() != sig)
      fail(ErrorCode::SignatureMismatch, "witnesses of the measure disagree on the signature");

  std::vector<Element> image(plan.N);
  std::vector<std::vector<Element>> marks(sig.predicate_count());
  std::vector<LocalType> upsilon;
  upsilon.reserve(plan.N);
  for (Element i = 0; i < plan.N; ++i) {
    image[i] = *plan.g[i];
    const auto& tau = entries[plan.zeta[i]].type;
    for (auto p : tau.witness().marks_of(tau.root())) marks[p].push_back(i);
    upsilon.push_back(tau);
  }
  FiniteMapping F(sig, std::move(image), std::move(marks));
  if (!verify_upsilon(F, upsilon, r, mu.rank()))
    fail(ErrorCode::Stuck, "constructed mapping violates the labelling conditions");
  if (total_variation(type_distribution(F, r), project(mu, r)) != 0)
    fail(ErrorCode::Stuck, "constructed mapping has the wrong rank-" + std::to_string(r) + " statistics");
  return F;
}

bool verify_upsilon(const FiniteMapping& F, const std::vector<LocalType>& upsilon, std::size_t r,
                    std::size_t cutLength) {
  const std::size_t n = F.size();
  if (upsilon.size() != n) fail(ErrorCode::InvalidArgument, "labelling must cover every element");
  std::unordered_map<TypeId, LabelInfo> cache;
  std::vector<const LabelInfo*> label(n);
  for (Element v = 0; v < n; ++v) {
    const auto& tau = upsilon[v];
    if (tau.rank() < 2 * r + 1) fail(ErrorCode::RankTooLow, "labels need rank >= 2r+1");
    auto it = cache.find(tau.id());
    if (it == cache.end()) it = cache.emplace(tau.id(), describe(tau, r)).first;
    label[v] = &it->second;
  }
  for (Element v = 0; v < n; ++v)
    if (F.mark_set_id(v) != upsilon[v].witness().mark_set_id(upsilon[v].root())) return false;
  const auto cyc = cyclic_part(F);
  for (Element v = 0; v < n; ++v)
    if (cyc.cycle_length[v] > 1 && cyc.cycle_length[v] <= cutLength) return false;
  for (Element v = 0; v < n; ++v) {
    if (label[v]->img != label[F.image(v)]->proj) return false;
    std::unordered_map<TypeId, std::size_t> seen;
    for (auto u : F.preimages(v)) ++seen[label[u]->proj];
    for (const auto& [t, c] : seen)
      if (std::min(r, c) != std::min(r, label[v]->adm_of(t))) return false;
    for (const auto& [t, a] : label[v]->adm)
      if (!seen.contains(t) && std::min(r, a) != 0) return false;
  }
  return true;
}

std::vector<LocalType> find_terminals(const TypeMeasure& mu, std::size_t r) {
  if (mu.rank() < r + 1) fail(ErrorCode::RankTooLow, "terminals need rank >= r+1");
  std::vector<LocalType> out;
  for (const auto& e : mu.entries()) {
    auto img = local_type(e.type.witness(), e.type.witness().image(e.type.root()), r);
    if (mu.projected_mass(img) == 0) out.push_back(e.type);
  }
  return out;
}

std::vector<std::pair<LocalType, LocalType>> find_hubs(const TypeMeasure& mu, const std::vector<LocalType>& terminals,
                                                      std::size_t r, const std::optional<std::vector<LocalType>>& pool) {
  std::vector<LocalType> candidates;
  if (pool) {
    candidates = *pool;
  } else {
    for (const auto& e : mu.entries()) candidates.push_back(e.type);
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) { return a.id() < b.id(); });
  std::vector<std::pair<LocalType, LocalType>> out;
  for (const auto& terminal : terminals) {
    if (mu.mass_of(terminal) == 0) fail(ErrorCode::InvalidArgument, "terminal is not in the measure's support");
    const auto t = project(terminal, r);
    std::optional<LocalType> hub;
    for (const auto& c : candidates) {
      if (c.rank() < 2 * r + 1) continue;
      if (adm_minus(c, t) > r) {
        hub = c;
        break;
      }
    }
    if (!hub) fail(ErrorCode::NoHubAvailable, "no hub with more than " + std::to_string(r) + " preimages of the terminal's type");
    out.emplace_back(terminal, *hub);
  }
  return out;
}

}  // namespace fmlim
