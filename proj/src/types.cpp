#include "fmlim/types.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "fmlim/error.hpp"

namespace fmlim {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::int64_t>& key) const noexcept {
    std::size_t seed = key.size();
    for (auto x : key) seed ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};

}  // namespace

struct TypeRegistry::Impl {
  mutable std::mutex mutex;
  std::unordered_map<std::vector<std::int64_t>, TypeId, KeyHash> ids;
};

TypeRegistry::Impl& TypeRegistry::impl() const {
  static Impl instance;
  return instance;
}

TypeRegistry& TypeRegistry::instance() {
  static TypeRegistry registry;
  return registry;
}

TypeId TypeRegistry::intern(const std::vector<std::int64_t>& key) {
  auto& d = impl();
  std::lock_guard lock(d.mutex);
  auto [it, inserted] = d.ids.try_emplace(key, static_cast<TypeId>(d.ids.size()));
  return it->second;
}

std::size_t TypeRegistry::size() const {
  auto& d = impl();
  std::lock_guard lock(d.mutex);
  return d.ids.size();
}

GameTypeEngine::GameTypeEngine(const FiniteMapping& F, GameKind kind, std::size_t budget)
    : F_(F), kind_(kind), budget_(budget) {}

TypeId GameTypeEngine::type_of(std::span<const Element> tuple, std::size_t rounds) {
  for (auto v : tuple) F_.check_element(v);
  nodes_ = 0;
  std::vector<Element> pebbles(tuple.begin(), tuple.end());
  return recurse(pebbles, rounds);
}

void GameTypeEngine::atomic_pattern(const std::vector<Element>& tuple, std::vector<std::int64_t>& key) const {
  const auto L = tuple.size();
  for (std::size_t i = 0; i < L; ++i) {
    std::size_t first = i;
    for (std::size_t j = 0; j < i; ++j)
      if (tuple[j] == tuple[i]) {
        first = j;
        break;
      }
    key.push_back(static_cast<std::int64_t>(first));
    if (first != i) continue;
    const Element image = F_.image(tuple[i]);
    std::int64_t target = -1;
    for (std::size_t j = 0; j < L; ++j)
      if (tuple[j] == image) {
        target = static_cast<std::int64_t>(j);
        break;
      }
    key.push_back(target);
    key.push_back(F_.mark_set_id(tuple[i]));
  }
}

TypeId GameTypeEngine::recurse(std::vector<Element>& tuple, std::size_t rounds) {
  if (++nodes_ > budget_)
    fail(ErrorCode::BudgetExceeded, "game search visited more than " + std::to_string(budget_) + " positions");
  std::vector<std::int64_t> key{static_cast<std::int64_t>(kind_), static_cast<std::int64_t>(rounds),
                                static_cast<std::int64_t>(tuple.size())};
  atomic_pattern(tuple, key);
  if (rounds > 0) {
    std::vector<Element> moves;
    if (kind_ == GameKind::Local) {
      for (auto a : tuple) {
        moves.push_back(F_.image(a));
        for (auto w : F_.preimages(a)) moves.push_back(w);
      }
      std::sort(moves.begin(), moves.end());
      moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
    } else {
      moves.resize(F_.size());
      for (Element v = 0; v < F_.size(); ++v) moves[v] = v;
    }
    std::vector<TypeId> children;
    children.reserve(moves.size());
    for (auto c : moves) {
      tuple.push_back(c);
      children.push_back(recurse(tuple, rounds - 1));
      tuple.pop_back();
    }
    std::sort(children.begin(), children.end());
    children.erase(std::unique(children.begin(), children.end()), children.end());
    key.push_back(-2);
    key.insert(key.end(), children.begin(), children.end());
  }
  return TypeRegistry::instance().intern(key);
}

LocalType local_type(const FiniteMapping& F, Element v, std::size_t r) {
  F.check_element(v);
  GameTypeEngine engine(F, GameKind::Local, static_cast<std::size_t>(-1));
  const Element root[1] = {v};
  return LocalType(F, v, r, engine.type_of(root, r));
}

std::vector<LocalType> local_types(const FiniteMapping& F, std::size_t r) {
  GameTypeEngine engine(F, GameKind::Local, static_cast<std::size_t>(-1));
  std::vector<LocalType> out;
  out.reserve(F.size());
  for (Element v = 0; v < F.size(); ++v) {
    const Element root[1] = {v};
    out.emplace_back(F, v, r, engine.type_of(root, r));
  }
  return out;
}

bool types_equal(const LocalType& a, const LocalType& b) {
  if (a.rank() != b.rank())
    fail(ErrorCode::RankMismatch, "comparing types of rank " + std::to_string(a.rank()) + " and " + std::to_string(b.rank()));
  return a.id() == b.id();
}

LocalType project(const LocalType& t, std::size_t r) {
  if (r > t.rank())
    fail(ErrorCode::RankIncrease, "cannot project rank " + std::to_string(t.rank()) + " to rank " + std::to_string(r));
  if (r == t.rank()) return t;
  return local_type(t.witness(), t.root(), r);
}

LocalType transport(const LocalType& t) {
  if (t.rank() == 0) fail(ErrorCode::RankZero, "transport needs a type of rank at least 1");
  return local_type(t.witness(), t.witness().image(t.root()), t.rank() - 1);
}

int adm_plus(const LocalType& tau, const LocalType& t) {
  if (tau.rank() < t.rank() + 1)
    fail(ErrorCode::RankTooLow, "adm+ needs rank(tau) >= rank(t) + 1");
  return local_type(tau.witness(), tau.witness().image(tau.root()), t.rank()).id() == t.id() ? 1 : 0;
}

std::vector<std::pair<LocalType, std::size_t>> preimage_types(const LocalType& tau, std::size_t r) {
  if (tau.rank() < 2 * r + 1) fail(ErrorCode::RankTooLow, "preimage counts need rank(tau) >= 2r + 1");
  GameTypeEngine engine(tau.witness(), GameKind::Local, static_cast<std::size_t>(-1));
  std::vector<std::pair<LocalType, std::size_t>> out;
  for (auto u : tau.witness().preimages(tau.root())) {
    const Element root[1] = {u};
    LocalType t(tau.witness(), u, r, engine.type_of(root, r));
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == t; });
    if (it == out.end()) {
      out.emplace_back(t, 1);
    } else {
      it->second = std::min(it->second + 1, r + 1);
    }
  }
  return out;
}

std::size_t adm_minus(const LocalType& tau, const LocalType& t) {
  if (tau.rank() < 2 * t.rank() + 1)
    fail(ErrorCode::RankTooLow, "adm- needs rank(tau) >= 2 rank(t) + 1");
  for (const auto& [type, count] : preimage_types(tau, t.rank()))
    if (type == t) return count;
  return 0;
}

LocalType compact_witness(const LocalType& t) {
  auto region = ball(t.witness(), t.root(), t.rank() + 1);
  auto root = static_cast<Element>(std::lower_bound(region.begin(), region.end(), t.root()) - region.begin());
  return local_type(restrict(t.witness(), region), root, t.rank());
}

TypeMeasure::TypeMeasure(std::size_t rank, std::vector<Entry> entries) : rank_(rank), entries_(std::move(entries)) {
  Rational total = 0;
  std::vector<TypeId> seen;
  for (const auto& e : entries_) {
    if (e.type.rank() != rank_) fail(ErrorCode::RankMismatch, "measure entry has the wrong rank");
    if (e.mass <= 0) fail(ErrorCode::InvalidArgument, "measure masses must be positive");
    if (std::find(seen.begin(), seen.end(), e.type.id()) != seen.end())
      fail(ErrorCode::InvalidArgument, "measure lists the same type twice");
    seen.push_back(e.type.id());
    total += e.mass;
  }
  if (total != 1) fail(ErrorCode::InvalidArgument, "measure masses sum to " + to_string(total) + ", not 1");
}

Rational TypeMeasure::mass_of(const LocalType& t) const {
  for (const auto& e : entries_)
    if (e.type == t) return e.mass;
  return 0;
}

Rational TypeMeasure::projected_mass(const LocalType& t) const {
  if (t.rank() > rank_) fail(ErrorCode::RankIncrease, "cannot project onto a higher rank");
  Rational total = 0;
  for (const auto& e : entries_)
    if (project(e.type, t.rank()) == t) total += e.mass;
  return total;
}

TypeMeasure type_distribution(const FiniteMapping& F, std::size_t r) {
  auto types = local_types(F, r);
  std::vector<std::size_t> counts;
  std::vector<std::size_t> first;
  std::unordered_map<TypeId, std::size_t> slot;
  for (std::size_t v = 0; v < types.size(); ++v) {
    auto [it, inserted] = slot.try_emplace(types[v].id(), counts.size());
    if (inserted) {
      counts.push_back(0);
      first.push_back(v);
    }
    ++counts[it->second];
  }
  std::vector<TypeMeasure::Entry> entries;
  for (std::size_t i = 0; i < counts.size(); ++i)
    entries.push_back({types[first[i]], Rational(BigInt(counts[i]), BigInt(F.size()))});
  return TypeMeasure(r, std::move(entries));
}

TypeMeasure project(const TypeMeasure& mu, std::size_t r) {
  if (r > mu.rank()) fail(ErrorCode::RankIncrease, "cannot project a measure to a higher rank");
  std::vector<TypeMeasure::Entry> entries;
  for (const auto& e : mu.entries()) {
    auto t = project(e.type, r);
    auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& x) { return x.type == t; });
    if (it == entries.end()) {
      entries.push_back({t, e.mass});
    } else {
      it->mass += e.mass;
    }
  }
  return TypeMeasure(r, std::move(entries));
}

Rational total_variation(const TypeMeasure& a, const TypeMeasure& b) {
  if (a.rank() != b.rank()) fail(ErrorCode::RankMismatch, "total variation needs equal ranks");
  std::map<TypeId, Rational> diff;
  for (const auto& e : a.entries()) diff[e.type.id()] += e.mass;
  for (const auto& e : b.entries()) diff[e.type.id()] -= e.mass;
  Rational sum = 0;
  for (const auto& [id, d] : diff) sum += abs(d);
  return sum / 2;
}

}  // namespace fmlim
