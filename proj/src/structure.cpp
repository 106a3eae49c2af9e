#include "fmlim/structure.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_map>

#include "fmlim/error.hpp"

namespace fmlim {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<std::int64_t>& key) const noexcept {
    std::size_t seed = key.size();
    for (auto x : key) seed ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};

class SymbolTable {
 public:
  std::int64_t symbol(const std::string& name) {
    std::lock_guard lock(mutex_);
    auto [it, inserted] = names_.try_emplace(name, static_cast<std::int64_t>(names_.size()));
    return it->second;
  }
  std::int64_t mark_set(const std::vector<std::int64_t>& sorted_symbols) {
    std::lock_guard lock(mutex_);
    auto [it, inserted] = sets_.try_emplace(sorted_symbols, static_cast<std::int64_t>(sets_.size()));
    return it->second;
  }
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

 private:
  std::mutex mutex_;
  std::unordered_map<std::string, std::int64_t> names_;
  std::unordered_map<std::vector<std::int64_t>, std::int64_t, VectorHash> sets_;
};

}  // namespace

std::int64_t symbol_id(const std::string& name) { return SymbolTable::instance().symbol(name); }

Signature::Signature(std::string function, std::vector<std::string> predicates)
    : function_(std::move(function)), predicates_(std::move(predicates)) {
  if (function_.empty()) fail(ErrorCode::InvalidArgument, "empty function symbol name");
  std::set<std::string> seen;
  for (const auto& p : predicates_) {
    if (p.empty()) fail(ErrorCode::InvalidArgument, "empty predicate name");
    if (p == function_) fail(ErrorCode::DuplicatePredicate, "predicate '" + p + "' clashes with the function symbol");
    if (!seen.insert(p).second) fail(ErrorCode::DuplicatePredicate, "predicate '" + p + "' declared twice");
  }
}

std::optional<std::size_t> Signature::index_of(const std::string& predicate) const {
  auto it = std::find(predicates_.begin(), predicates_.end(), predicate);
  if (it == predicates_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - predicates_.begin());
}

Signature Signature::with_predicates(const std::vector<std::string>& extra) const {
  auto all = predicates_;
  all.insert(all.end(), extra.begin(), extra.end());
  return Signature(function_, std::move(all));
}

FiniteMapping::FiniteMapping(Signature signature, std::vector<Element> image,
                             std::vector<std::vector<Element>> marks) {
  const std::size_t n = image.size();
  if (n == 0) fail(ErrorCode::EmptyDomain, "a mapping needs at least one element");
  for (std::size_t v = 0; v < n; ++v) {
    if (image[v] >= n)
      fail(ErrorCode::OutOfRangeImage, "f(" + std::to_string(v) + ") = " + std::to_string(image[v]) + " >= " + std::to_string(n));
  }
  const std::size_t c = signature.predicate_count();
  if (marks.size() > c) fail(ErrorCode::UnknownPredicate, "more mark lists than declared predicates");
  marks.resize(c);

  auto d = std::make_shared<Data>();
  d->signature = std::move(signature);

  d->preimage_offset.assign(n + 1, 0);
  for (auto w : image) ++d->preimage_offset[w + 1];
  std::partial_sum(d->preimage_offset.begin(), d->preimage_offset.end(), d->preimage_offset.begin());
  d->preimage.resize(n);
  auto cursor = d->preimage_offset;
  for (std::size_t v = 0; v < n; ++v) d->preimage[cursor[image[v]]++] = static_cast<Element>(v);

  std::vector<std::vector<std::uint32_t>> per_element(n);
  for (std::size_t p = 0; p < c; ++p) {
    for (auto v : marks[p]) {
      if (v >= n)
        fail(ErrorCode::ElementOutOfRange, "predicate '" + d->signature.predicates()[p] + "' marks element " + std::to_string(v));
      per_element[v].push_back(static_cast<std::uint32_t>(p));
    }
  }
  std::vector<std::int64_t> ids(c);
  for (std::size_t p = 0; p < c; ++p) ids[p] = symbol_id(d->signature.predicates()[p]);

  d->mark_offset.assign(n + 1, 0);
  d->mark_set_id.resize(n);
  std::vector<std::int64_t> names;
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = per_element[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    d->mark_offset[v + 1] = d->mark_offset[v] + static_cast<std::uint32_t>(list.size());
    d->marks.insert(d->marks.end(), list.begin(), list.end());
    names.clear();
    for (auto p : list) names.push_back(ids[p]);
    std::sort(names.begin(), names.end());
    d->mark_set_id[v] = SymbolTable::instance().mark_set(names);
  }
  d->image = std::move(image);
  data_ = std::move(d);
}

bool FiniteMapping::has_mark(std::size_t predicate, Element v) const {
  auto m = marks_of(v);
  return std::binary_search(m.begin(), m.end(), static_cast<std::uint32_t>(predicate));
}

std::vector<Element> FiniteMapping::extension(std::size_t predicate) const {
  std::vector<Element> out;
  for (Element v = 0; v < size(); ++v)
    if (has_mark(predicate, v)) out.push_back(v);
  return out;
}

std::vector<std::vector<Element>> FiniteMapping::all_extensions() const {
  std::vector<std::vector<Element>> out(signature().predicate_count());
  for (Element v = 0; v < size(); ++v)
    for (auto p : marks_of(v)) out[p].push_back(v);
  return out;
}

void FiniteMapping::check_element(Element v) const {
  if (v >= size())
    fail(ErrorCode::ElementOutOfRange, "element " + std::to_string(v) + " outside domain of size " + std::to_string(size()));
}

bool operator==(const FiniteMapping& a, const FiniteMapping& b) {
  if (a.data_ == b.data_) return true;
  return a.signature() == b.signature() && a.images() == b.images() && a.data_->marks == b.data_->marks &&
         a.data_->mark_offset == b.data_->mark_offset;
}

FiniteMapping validate(const RawMapping& candidate) {
  const auto n = candidate.image.size();
  if (n == 0) fail(ErrorCode::EmptyDomain, "a mapping needs at least one element");
  std::vector<Element> image(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto w = candidate.image[v];
    if (w < 0 || static_cast<std::uint64_t>(w) >= n)
      fail(ErrorCode::OutOfRangeImage, "f(" + std::to_string(v) + ") = " + std::to_string(w) + " outside 0.." + std::to_string(n - 1));
    image[v] = static_cast<Element>(w);
  }
  std::vector<std::vector<Element>> marks(candidate.signature.predicate_count());
  for (const auto& [name, elements] : candidate.marks) {
    auto p = candidate.signature.index_of(name);
    if (!p) fail(ErrorCode::UnknownPredicate, "predicate '" + name + "' is not declared");
    for (auto v : elements) {
      if (v < 0 || static_cast<std::uint64_t>(v) >= n)
        fail(ErrorCode::ElementOutOfRange, "predicate '" + name + "' marks element " + std::to_string(v));
      marks[*p].push_back(static_cast<Element>(v));
    }
  }
  return FiniteMapping(candidate.signature, std::move(image), std::move(marks));
}

std::vector<Element> preimage(const FiniteMapping& F, Element v) {
  F.check_element(v);
  auto pre = F.preimages(v);
  return {pre.begin(), pre.end()};
}

std::vector<std::optional<std::size_t>> distances_from(const FiniteMapping& F, Element source) {
  F.check_element(source);
  std::vector<std::optional<std::size_t>> dist(F.size());
  std::deque<Element> queue{source};
  dist[source] = 0;
  auto visit = [&](Element from, Element to) {
    if (!dist[to]) {
      dist[to] = *dist[from] + 1;
      queue.push_back(to);
    }
  };
  while (!queue.empty()) {
    Element u = queue.front();
    queue.pop_front();
    visit(u, F.image(u));
    for (auto w : F.preimages(u)) visit(u, w);
  }
  return dist;
}

std::optional<std::size_t> distance(const FiniteMapping& F, Element u, Element v) {
  F.check_element(v);
  return distances_from(F, u)[v];
}

std::vector<Element> ball(const FiniteMapping& F, Element v, std::size_t radius) {
  F.check_element(v);
  std::vector<Element> layer{v}, out{v};
  std::vector<bool> seen(F.size(), false);
  seen[v] = true;
  for (std::size_t step = 0; step < radius && !layer.empty(); ++step) {
    std::vector<Element> next;
    auto add = [&](Element w) {
      if (!seen[w]) {
        seen[w] = true;
        next.push_back(w);
      }
    };
    for (auto u : layer) {
      add(F.image(u));
      for (auto w : F.preimages(u)) add(w);
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Element>> connected_components(const FiniteMapping& F) {
  const auto n = F.size();
  std::vector<Element> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Element x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Element v = 0; v < n; ++v) {
    auto a = find(v), b = find(F.image(v));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<Element>> parts;
  std::vector<std::int64_t> slot(n, -1);
  for (Element v = 0; v < n; ++v) {
    auto root = find(v);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::int64_t>(parts.size());
      parts.emplace_back();
    }
    parts[slot[root]].push_back(v);
  }
  return parts;
}

CyclicPart cyclic_part(const FiniteMapping& F) {
  const auto n = F.size();
  CyclicPart out{std::vector<bool>(n, false), std::vector<std::size_t>(n, 0), std::vector<std::size_t>(n, 0)};
  // 0 = unvisited, 1 = on current walk, 2 = done
  std::vector<std::uint8_t> state(n, 0);
  std::vector<Element> walk;
  for (Element start = 0; start < n; ++start) {
    if (state[start]) continue;
    walk.clear();
    Element v = start;
    while (state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = F.image(v);
    }
    if (state[v] == 1) {
      auto it = std::find(walk.begin(), walk.end(), v);
      auto len = static_cast<std::size_t>(walk.end() - it);
      for (auto c = it; c != walk.end(); ++c) {
        out.on_cycle[*c] = true;
        out.cycle_length[*c] = len;
        state[*c] = 2;
      }
      walk.erase(it, walk.end());
    }
    for (auto w = walk.rbegin(); w != walk.rend(); ++w) {
      out.height[*w] = out.height[F.image(*w)] + 1;
      state[*w] = 2;
    }
  }
  return out;
}

FiniteMapping disjoint_union(const FiniteMapping& A, const FiniteMapping& B) {
  if (!(A.signature() == B.signature())) fail(ErrorCode::SignatureMismatch, "disjoint union needs equal signatures");
  const auto shift = static_cast<Element>(A.size());
  std::vector<Element> image = A.images();
  for (auto w : B.images()) image.push_back(w + shift);
  auto marks = A.all_extensions();
  auto marks_b = B.all_extensions();
  for (std::size_t p = 0; p < marks.size(); ++p)
    for (auto v : marks_b[p]) marks[p].push_back(v + shift);
  return FiniteMapping(A.signature(), std::move(image), std::move(marks));
}

FiniteMapping restrict(const FiniteMapping& F, const std::vector<Element>& X) {
  if (X.empty()) fail(ErrorCode::EmptyRestriction, "restriction to the empty set");
  std::vector<Element> sorted = X;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::int64_t> index(F.size(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    F.check_element(sorted[i]);
    index[sorted[i]] = static_cast<std::int64_t>(i);
  }
  std::vector<Element> image(sorted.size());
  std::vector<std::vector<Element>> marks(F.signature().predicate_count());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    auto w = index[F.image(sorted[i])];
    image[i] = w >= 0 ? static_cast<Element>(w) : static_cast<Element>(i);
    for (auto p : F.marks_of(sorted[i])) marks[p].push_back(static_cast<Element>(i));
  }
  return FiniteMapping(F.signature(), std::move(image), std::move(marks));
}

FiniteMapping mark_element(const FiniteMapping& F, Element v, const std::string& predicate) {
  F.check_element(v);
  if (F.signature().has_predicate(predicate) || predicate == F.signature().function())
    fail(ErrorCode::DuplicatePredicate, "predicate '" + predicate + "' already in the signature");
  return reshape_predicates(F, F.signature().predicates(), {{predicate, {v}}});
}

FiniteMapping with_images(const FiniteMapping& F, std::vector<Element> image) {
  if (image.size() != F.size()) fail(ErrorCode::InvalidArgument, "image vector has the wrong length");
  return FiniteMapping(F.signature(), std::move(image), F.all_extensions());
}

FiniteMapping reshape_predicates(const FiniteMapping& F, const std::vector<std::string>& keep,
                                 const std::vector<std::pair<std::string, std::vector<Element>>>& added) {
  auto extensions = F.all_extensions();
  std::vector<std::string> names;
  std::vector<std::vector<Element>> marks;
  for (const auto& name : keep) {
    auto p = F.signature().index_of(name);
    if (!p) fail(ErrorCode::UnknownPredicate, "predicate '" + name + "' is not declared");
    names.push_back(name);
    marks.push_back(extensions[*p]);
  }
  for (const auto& [name, elements] : added) {
    names.push_back(name);
    marks.push_back(elements);
  }
  return FiniteMapping(Signature(F.signature().function(), std::move(names)), F.images(), std::move(marks));
}

}  // namespace fmlim
