#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fmlim {

using Element = std::uint32_t;

/// One unary function symbol plus an ordered list of unary predicates.
class Signature {
 public:
  explicit Signature(std::string function = "f", std::vector<std::string> predicates = {});

  const std::string& function() const noexcept { return function_; }
  const std::vector<std::string>& predicates() const noexcept { return predicates_; }
  std::size_t predicate_count() const noexcept { return predicates_.size(); }
  std::optional<std::size_t> index_of(const std::string& predicate) const;
  bool has_predicate(const std::string& predicate) const { return index_of(predicate).has_value(); }

  Signature with_predicates(const std::vector<std::string>& extra) const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::string function_;
  std::vector<std::string> predicates_;
};

/// Unvalidated description of a mapping, as read from a file or assembled by
/// hand. `validate` turns it into a FiniteMapping.
struct RawMapping {
  Signature signature;
  std::vector<std::int64_t> image;
  std::map<std::string, std::vector<std::int64_t>> marks;
};

/// A finite mapping: a total endofunction on {0..n-1} with unary marks and
/// the implicit uniform measure. Immutable; copies share storage.
class FiniteMapping {
 public:
  /// `marks[p]` lists the elements carrying predicate p (any order,
  /// duplicates ignored). Throws on any invariant violation.
  FiniteMapping(Signature signature, std::vector<Element> image,
                std::vector<std::vector<Element>> marks = {});

  std::size_t size() const noexcept { return data_->image.size(); }
  const Signature& signature() const noexcept { return data_->signature; }
  Element image(Element v) const { return data_->image[v]; }
  const std::vector<Element>& images() const noexcept { return data_->image; }

  std::span<const Element> preimages(Element v) const {
    const auto& d = *data_;
    return {d.preimage.data() + d.preimage_offset[v], d.preimage.data() + d.preimage_offset[v + 1]};
  }
  /// Predicate indices carried by v, ascending.
  std::span<const std::uint32_t> marks_of(Element v) const {
    const auto& d = *data_;
    return {d.marks.data() + d.mark_offset[v], d.marks.data() + d.mark_offset[v + 1]};
  }
  bool has_mark(std::size_t predicate, Element v) const;
  /// Elements carrying the predicate, ascending.
  std::vector<Element> extension(std::size_t predicate) const;
  std::vector<std::vector<Element>> all_extensions() const;

  /// Session-wide id of the set of predicate *names* carried by v; equal ids
  /// across structures mean equal mark sets.
  std::int64_t mark_set_id(Element v) const { return data_->mark_set_id[v]; }

  void check_element(Element v) const;

  friend bool operator==(const FiniteMapping& a, const FiniteMapping& b);

 private:
  struct Data {
    Signature signature;
    std::vector<Element> image;
    std::vector<std::uint32_t> preimage_offset;
    std::vector<Element> preimage;
    std::vector<std::uint32_t> mark_offset;
    std::vector<std::uint32_t> marks;
    std::vector<std::int64_t> mark_set_id;
  };
  std::shared_ptr<const Data> data_;
};

FiniteMapping validate(const RawMapping& candidate);

std::vector<Element> preimage(const FiniteMapping& F, Element v);

/// Gaifman distance; nullopt when u and v lie in different components.
std::optional<std::size_t> distance(const FiniteMapping& F, Element u, Element v);

/// Distances from `source` to every element (nullopt = unreachable).
std::vector<std::optional<std::size_t>> distances_from(const FiniteMapping& F, Element source);

/// Elements at Gaifman distance at most `radius` from v, ascending.
std::vector<Element> ball(const FiniteMapping& F, Element v, std::size_t radius);

/// Components ordered by their least element; each component ascending.
std::vector<std::vector<Element>> connected_components(const FiniteMapping& F);

struct CyclicPart {
  std::vector<bool> on_cycle;
  /// Steps needed to reach a cyclic element; 0 exactly on cycles.
  std::vector<std::size_t> height;
  /// Length of the cycle an element lies on, 0 for non-cyclic elements.
  std::vector<std::size_t> cycle_length;
};

CyclicPart cyclic_part(const FiniteMapping& F);

FiniteMapping disjoint_union(const FiniteMapping& A, const FiniteMapping& B);

/// Restriction to X (re-indexed in ascending order): f(v) is kept when it
/// stays inside X, otherwise v becomes a fixed point.
FiniteMapping restrict(const FiniteMapping& F, const std::vector<Element>& X);

FiniteMapping mark_element(const FiniteMapping& F, Element v, const std::string& predicate);

/// Same signature and marks, new function.
FiniteMapping with_images(const FiniteMapping& F, std::vector<Element> image);

/// Keep only the listed predicates (in the given order), optionally adding
/// new ones with explicit extensions.
FiniteMapping reshape_predicates(const FiniteMapping& F, const std::vector<std::string>& keep,
                                 const std::vector<std::pair<std::string, std::vector<Element>>>& added = {});

/// Process-wide id of a predicate name.
std::int64_t symbol_id(const std::string& name);

}  // namespace fmlim
