#include "fmlim/fmtp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "fmlim/error.hpp"
#include "fmlim/lp.hpp"

namespace fmlim {

FmtpSides check_fmtp(const FiniteMapping& F, const std::vector<Element>& A, const std::vector<Element>& B) {
  const std::size_t n = F.size();
  std::vector<char> in_a(n, 0), in_b(n, 0);
  for (auto v : A) {
    F.check_element(v);
    in_a[v] = 1;
  }
  for (auto v : B) {
    F.check_element(v);
    in_b[v] = 1;
  }
  std::size_t left = 0;
  for (Element v = 0; v < n; ++v)
    if (in_a[v] && in_b[F.image(v)]) ++left;
  std::size_t right = 0;
  for (Element y = 0; y < n; ++y) {
    if (!in_b[y]) continue;
    for (auto x : F.preimages(y))
      if (in_a[x]) ++right;
  }
  const BigInt size(n);
  return {Rational(BigInt(left), size), Rational(BigInt(right), size)};
}

Rational CompanionCertificate::value(const LocalType& tau, const LocalType& t) const {
  for (const auto& v : values)
    if (v.tau == tau && v.t == t) return v.s;
  return 0;
}

namespace {

// Combinatorial skeleton of the balance system for a support of rank-R types.
// Only equations touched by some support type can be non-trivial: every
// other one reads 0 = 0 (or has only free s-values, which can be 0).
struct Skeleton {
  std::size_t R = 0, r = 0;
  std::vector<LocalType> support;
  std::vector<LocalType> small;  // distinct rank-r types that occur anywhere
  std::unordered_map<TypeId, std::size_t> small_index;
  std::vector<std::size_t> proj, img;
  std::vector<std::map<std::size_t, std::size_t>> adm;  // capped preimage counts by small index
  std::vector<std::vector<std::size_t>> by_proj;
  std::set<std::pair<std::size_t, std::size_t>> equations;

  std::size_t index_of(const LocalType& t) {
    auto [it, inserted] = small_index.try_emplace(t.id(), small.size());
    if (inserted) small.push_back(t);
    return it->second;
  }

  std::size_t adm_of(std::size_t a, std::size_t t) const {
    auto it = adm[a].find(t);
    return it == adm[a].end() ? 0 : it->second;
  }

  Skeleton(std::vector<LocalType> types, std::size_t R_, std::size_t r_) : R(R_), r(r_), support(std::move(types)) {
    if (R < 2 * r + 1) fail(ErrorCode::RankTooLow, "restricted FMTP needs rank >= 2r+1");
    adm.resize(support.size());
    for (std::size_t a = 0; a < support.size(); ++a) {
      const auto& tau = support[a];
      proj.push_back(index_of(project(tau, r)));
      img.push_back(index_of(local_type(tau.witness(), tau.witness().image(tau.root()), r)));
      for (const auto& [t, count] : preimage_types(tau, r)) adm[a][index_of(t)] = count;
    }
    by_proj.resize(small.size());
    for (std::size_t a = 0; a < support.size(); ++a) {
      by_proj[proj[a]].push_back(a);
      equations.emplace(proj[a], img[a]);
      for (const auto& [t, c] : adm[a]) {
        equations.emplace(t, proj[a]);
      }
    }
  }
};

std::vector<LocalType> support_of(const TypeMeasure& mu) {
  std::vector<LocalType> out;
  for (const auto& e : mu.entries()) out.push_back(e.type);
  return out;
}

}  // namespace

CertificateResult restricted_fmtp_certificate(const TypeMeasure& mu, std::size_t r) {
  Skeleton sk(support_of(mu), mu.rank(), r);
  const auto& entries = mu.entries();
  CompanionCertificate cert;
  cert.R = mu.rank();
  cert.r = r;
  const Rational rr(static_cast<long>(r));
  for (const auto& [t1, t2] : sk.equations) {
    Rational lhs = 0, fixed = 0, free_mass = 0;
    for (auto a : sk.by_proj[t1])
      if (sk.img[a] == t2) lhs += entries[a].mass;
    for (auto a : sk.by_proj[t2]) {
      const auto adm = sk.adm_of(a, t1);
      if (adm < r) {
        fixed += entries[a].mass * static_cast<long>(adm);
      } else {
        free_mass += entries[a].mass;
      }
    }
    const Rational need = fixed + rr * free_mass;
    const bool feasible = free_mass == 0 ? lhs == fixed : lhs >= need;
    if (!feasible) {
      std::string why = free_mass == 0 ? "all s-values are fixed and the sides differ"
                                       : "even the smallest admissible s-values overshoot";
      return Violation{sk.small[t1], sk.small[t2], lhs, need, why};
    }
    const Rational uniform = free_mass == 0 ? Rational(0) : (lhs - fixed) / free_mass;
    for (auto a : sk.by_proj[t2]) {
      const auto adm = sk.adm_of(a, t1);
      Rational s = adm < r ? Rational(static_cast<long>(adm)) : uniform;
      if (s != 0) cert.values.push_back({entries[a].type, sk.small[t1], s});
    }
  }
  return cert;
}

std::optional<std::string> verify_certificate(const TypeMeasure& mu, const CompanionCertificate& certificate) {
  if (certificate.R != mu.rank()) return "certificate rank differs from the measure's";
  const std::size_t r = certificate.r;
  Skeleton sk(support_of(mu), mu.rank(), r);
  const auto& entries = mu.entries();
  std::map<std::pair<TypeId, TypeId>, Rational> s;
  for (const auto& v : certificate.values) {
    if (v.tau.rank() != mu.rank() || v.t.rank() != r) return "certificate value has the wrong rank";
    if (v.s < 0) return "negative s-value";
    s[{v.tau.id(), v.t.id()}] = v.s;
  }
  std::vector<std::map<std::size_t, Rational>> given(entries.size());
  auto equations = sk.equations;
  std::unordered_map<TypeId, std::size_t> entry_index;
  for (std::size_t a = 0; a < entries.size(); ++a) entry_index[entries[a].type.id()] = a;
  for (const auto& [key, value] : s) {
    auto ai = entry_index.find(key.first);
    if (ai == entry_index.end()) return "s-value for a type outside the support";
    auto ti = sk.small_index.find(key.second);
    if (ti == sk.small_index.end()) {
      if (value != 0) return "s-value for a rank-r type no support type relates to";
      continue;
    }
    const auto a = ai->second;
    given[a][ti->second] = value;
    equations.emplace(ti->second, sk.proj[a]);
  }
  auto lookup = [&](std::size_t a, std::size_t t) {
    auto it = given[a].find(t);
    return it == given[a].end() ? Rational(0) : it->second;
  };
  const Rational rr(static_cast<long>(r));
  for (std::size_t a = 0; a < entries.size(); ++a) {
    std::set<std::size_t> ts;
    for (const auto& [t, c] : sk.adm[a]) ts.insert(t);
    for (const auto& [t, v] : given[a]) ts.insert(t);
    for (auto t : ts) {
      const Rational value = lookup(a, t);
      const std::size_t adm = sk.adm_of(a, t);
      const bool ok = value < rr ? value == Rational(static_cast<long>(adm)) : adm >= r;
      if (!ok) return "s-value " + to_string(value) + " disagrees with adm- = " + std::to_string(adm);
    }
  }
  for (const auto& [t1, t2] : equations) {
    Rational lhs = 0, rhs = 0;
    for (auto a : sk.by_proj[t1])
      if (sk.img[a] == t2) lhs += entries[a].mass;
    for (auto a : sk.by_proj[t2]) rhs += lookup(a, t1) * entries[a].mass;
    if (lhs != rhs) return "balance equation fails: " + to_string(lhs) + " != " + to_string(rhs);
  }
  return std::nullopt;
}

namespace {

// LP search for a nearby feasible rational measure on the given support.
std::optional<TypeMeasure> solve_near(const std::vector<LocalType>& support, const std::vector<Rational>& target,
                                      std::size_t R, std::size_t r, const Rational& epsilon, const Rational& delta) {
  Skeleton sk(support, R, r);
  const std::size_t k = support.size();
  const std::size_t slack = 3 * k;
  std::size_t columns = 3 * k + 1;
  std::vector<LinearRow> rows;

  LinearRow total;
  for (std::size_t a = 0; a < k; ++a) total.terms.emplace_back(a, 1);
  total.rhs = 1 - delta * static_cast<long>(k);
  rows.push_back(total);
  for (std::size_t a = 0; a < k; ++a)
    rows.push_back({{{a, 1}, {k + a, -1}, {2 * k + a, 1}}, target[a] - delta});
  LinearRow budget;
  for (std::size_t c = k; c < 3 * k; ++c) budget.terms.emplace_back(c, 1);
  budget.terms.emplace_back(slack, 1);
  budget.rhs = epsilon;
  rows.push_back(budget);

  const Rational rr(static_cast<long>(r));
  for (const auto& [t1, t2] : sk.equations) {
    // Σ_{L} x_a - Σ_{fixed} adm x_b - Σ_{free} (r x_b + y_b) = 0, with x = x' + δ.
    std::map<std::size_t, Rational> coef;
    for (auto a : sk.by_proj[t1])
      if (sk.img[a] == t2) coef[a] += 1;
    for (auto a : sk.by_proj[t2]) {
      const auto adm = sk.adm_of(a, t1);
      if (adm < r) {
        coef[a] -= static_cast<long>(adm);
      } else {
        coef[a] -= rr;
        coef[columns++] = -1;
      }
    }
    LinearRow row;
    Rational constant = 0;
    for (const auto& [c, v] : coef) {
      if (v == 0) continue;
      row.terms.emplace_back(c, v);
      if (c < k) constant += v * delta;
    }
    if (row.terms.empty()) continue;
    row.rhs = -constant;
    rows.push_back(row);
  }
  auto x = solve_feasibility(columns, rows);
  if (!x) return std::nullopt;
  std::vector<TypeMeasure::Entry> entries;
  for (std::size_t a = 0; a < k; ++a) entries.push_back({support[a], (*x)[a] + delta});
  return TypeMeasure(R, std::move(entries));
}

TypeMeasure approximate_support(const std::vector<LocalType>& support, const std::vector<Rational>& target,
                                std::size_t R, std::size_t r, const Rational& epsilon) {
  if (epsilon <= 0) fail(ErrorCode::InvalidArgument, "ε must be positive");
  if (R < 2 * r + 1) fail(ErrorCode::RankTooLow, "approximation needs rank >= 2r+1");
  Rational delta = *std::min_element(target.begin(), target.end()) / 2;
  if (delta <= 0) fail(ErrorCode::InvalidArgument, "support masses must be positive");
  for (int attempt = 0; attempt < kApproximationRetries; ++attempt, delta /= 2) {
    auto candidate = solve_near(support, target, R, r, epsilon, delta);
    if (!candidate) continue;
    auto result = restricted_fmtp_certificate(*candidate, r);
    if (!std::holds_alternative<CompanionCertificate>(result)) continue;
    return *candidate;
  }
  fail(ErrorCode::Infeasible, "no measure satisfying the restricted FMTP lies within the requested distance");
}

}  // namespace

TypeMeasure approximate_measure(const TypeMeasure& mu, const Rational& epsilon, std::size_t r) {
  if (epsilon <= 0) fail(ErrorCode::InvalidArgument, "ε must be positive");
  if (std::holds_alternative<CompanionCertificate>(restricted_fmtp_certificate(mu, r))) return mu;
  std::vector<Rational> target;
  for (const auto& e : mu.entries()) target.push_back(e.mass);
  return approximate_support(support_of(mu), target, mu.rank(), r, epsilon);
}

TypeMeasure approximate_measure(const RealTypeMeasure& mu, const Rational& epsilon, std::size_t r) {
  if (mu.entries.empty()) fail(ErrorCode::InvalidArgument, "empty measure");
  std::vector<LocalType> support;
  std::vector<Rational> target;
  for (const auto& [t, m] : mu.entries) {
    if (t.rank() != mu.rank) fail(ErrorCode::RankMismatch, "measure entry has the wrong rank");
    if (!(m > 0)) fail(ErrorCode::InvalidArgument, "masses must be positive");
    support.push_back(t);
    target.push_back(from_double(m));
  }
  auto out = approximate_support(support, target, mu.rank, r, epsilon);
  if (total_variation(mu, out) >= epsilon) fail(ErrorCode::Infeasible, "approximation drifted too far");
  return out;
}

Rational total_variation(const RealTypeMeasure& a, const TypeMeasure& b) {
  if (a.rank != b.rank()) fail(ErrorCode::RankMismatch, "total variation needs equal ranks");
  std::map<TypeId, Rational> diff;
  for (const auto& [t, m] : a.entries) diff[t.id()] += from_double(m);
  for (const auto& e : b.entries()) diff[e.type.id()] -= e.mass;
  Rational sum = 0;
  for (const auto& [id, d] : diff) sum += abs(d);
  return sum / 2;
}

RealizabilityReport check_realizability_preconditions(const TypeMeasure& mu, std::size_t cutLength, std::size_t r) {
  if (mu.rank() < 2 * r + 1) fail(ErrorCode::RankTooLow, "realizability needs rank >= 2r+1");
  RealizabilityReport report;
  std::set<TypeId> projected;
  for (const auto& e : mu.entries()) projected.insert(project(e.type, mu.rank() - 1).id());
  for (std::size_t a = 0; a < mu.size(); ++a) {
    const auto& tau = mu.entries()[a].type;
    if (!projected.contains(transport(tau).id())) {
      report.clean = false;
      report.problems.push_back("type #" + std::to_string(a) + ": image type carries no mass");
    }
    const auto& W = tau.witness();
    const auto cyc = cyclic_part(W);
    for (auto v : ball(W, tau.root(), mu.rank())) {
      const auto len = cyc.cycle_length[v];
      if (len > 1 && len <= cutLength) {
        report.acyclic = false;
        report.problems.push_back("type #" + std::to_string(a) + ": witness has a cycle of length " +
                                  std::to_string(len));
        break;
      }
    }
  }
  auto cert = restricted_fmtp_certificate(mu, r);
  if (auto* v = std::get_if<Violation>(&cert)) {
    report.certified = false;
    report.problems.push_back("restricted FMTP fails: " + v->reason + " (" + to_string(v->lhs) + " vs " +
                              to_string(v->rhs) + ")");
  }
  return report;
}

}  // namespace fmlim
