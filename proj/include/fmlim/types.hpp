#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fmlim/rational.hpp"
#include "fmlim/structure.hpp"

namespace fmlim {

using TypeId = std::int64_t;

/// Which Ehrenfeucht–Fraïssé variant a game type belongs to. In the local
/// game every new pebble must be Gaifman-adjacent to an earlier one.
enum class GameKind : std::int64_t { Local = 0, Global = 1 };

/// Session-wide registry of game types. A k-round type of a pebbled tuple is
/// the pair (atomic pattern of the tuple, set of (k-1)-round types of its
/// one-pebble extensions); hash-consing that pair gives ids that are equal
/// exactly when Duplicator wins the k-round game between the two tuples.
/// Insert-if-absent is atomic, so ids are stable and shared across threads.
class TypeRegistry {
 public:
  static TypeRegistry& instance();

  TypeId intern(const std::vector<std::int64_t>& key);
  std::size_t size() const;

 private:
  TypeRegistry() = default;
  struct Impl;
  Impl& impl() const;
};

inline constexpr std::size_t kDefaultGameBudget = 1'000'000;

/// Computes game types of pebbled tuples in one structure.
class GameTypeEngine {
 public:
  GameTypeEngine(const FiniteMapping& F, GameKind kind, std::size_t budget = kDefaultGameBudget);

  /// k-round type of the tuple. The node budget applies per call.
  TypeId type_of(std::span<const Element> tuple, std::size_t rounds);

 private:
  TypeId recurse(std::vector<Element>& tuple, std::size_t rounds);
  void atomic_pattern(const std::vector<Element>& tuple, std::vector<std::int64_t>& key) const;

  const FiniteMapping& F_;
  GameKind kind_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
};

/// Rank-r local type, represented by a pointed witness structure.
class LocalType {
 public:
  LocalType(FiniteMapping witness, Element root, std::size_t rank, TypeId id)
      : witness_(std::move(witness)), root_(root), rank_(rank), id_(id) {}

  const FiniteMapping& witness() const noexcept { return witness_; }
  Element root() const noexcept { return root_; }
  std::size_t rank() const noexcept { return rank_; }
  /// Canonical id; equal ids at equal rank mean equal types.
  TypeId id() const noexcept { return id_; }

  /// Same type (ranks must agree; mismatched ranks compare unequal).
  friend bool operator==(const LocalType& a, const LocalType& b) { return a.rank_ == b.rank_ && a.id_ == b.id_; }

 private:
  FiniteMapping witness_;
  Element root_;
  std::size_t rank_;
  TypeId id_;
};

LocalType local_type(const FiniteMapping& F, Element v, std::size_t r);

/// Rank-r types of every element (one shared engine, cheaper than n calls).
std::vector<LocalType> local_types(const FiniteMapping& F, std::size_t r);

/// Throws RankMismatch when the ranks differ.
bool types_equal(const LocalType& a, const LocalType& b);

LocalType project(const LocalType& t, std::size_t r);

/// Rank-(rank-1) type of the image of the witness element.
LocalType transport(const LocalType& t);

/// 1 iff the image of τ's witness has rank-(t.rank) type t.
int adm_plus(const LocalType& tau, const LocalType& t);

/// min(t.rank + 1, number of t-typed preimages of τ's witness).
std::size_t adm_minus(const LocalType& tau, const LocalType& t);

/// Rank-r types of the preimages of τ's witness, with multiplicities capped
/// at r + 1 (ordered by first preimage).
std::vector<std::pair<LocalType, std::size_t>> preimage_types(const LocalType& tau, std::size_t r);

/// The ball of radius rank+1 around the root, which determines the rank-r
/// type and everything derived from it at lower ranks.
LocalType compact_witness(const LocalType& t);

/// Probability distribution over rank-R local types.
class TypeMeasure {
 public:
  struct Entry {
    LocalType type;
    Rational mass;
  };

  /// Validates: equal ranks, pairwise distinct types, positive masses, sum 1.
  TypeMeasure(std::size_t rank, std::vector<Entry> entries);

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  /// Mass of a type (0 when absent).
  Rational mass_of(const LocalType& t) const;
  /// Σ μ(τ) over τ refining t (t.rank <= rank()).
  Rational projected_mass(const LocalType& t) const;

 private:
  std::size_t rank_;
  std::vector<Entry> entries_;
};

TypeMeasure type_distribution(const FiniteMapping& F, std::size_t r);

/// Rank-r marginal of a measure over higher-rank types.
TypeMeasure project(const TypeMeasure& mu, std::size_t r);

/// Total variation (half L1) between measures of equal rank.
Rational total_variation(const TypeMeasure& a, const TypeMeasure& b);

}  // namespace fmlim
