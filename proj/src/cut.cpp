#include "fmlim/cut.hpp"

#include <charconv>
#include <unordered_map>

#include "fmlim/error.hpp"
#include "fmlim/types.hpp"

namespace fmlim {

namespace {

std::optional<std::size_t> parse_number(std::string_view text) {
  if (text.empty() || (text.size() > 1 && text[0] == '0')) return std::nullopt;
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace

std::optional<CutMark> parse_cut_mark(const std::string& name) {
  if (name.size() < 2) return std::nullopt;
  std::string_view body(name);
  body.remove_prefix(1);
  if (name[0] == 'U') {
    auto i = parse_number(body);
    if (!i) return std::nullopt;
    return CutMark{true, *i, std::nullopt};
  }
  if (name[0] != 'T') return std::nullopt;
  auto c = body.find('c');
  auto k = parse_number(body.substr(0, c));
  if (!k) return std::nullopt;
  if (c == std::string_view::npos) return CutMark{false, *k, std::nullopt};
  auto l = parse_number(body.substr(c + 1));
  if (!l || *l == 0) return std::nullopt;
  return CutMark{false, *k, *l};
}

FiniteMapping cycle_cut_product(const FiniteMapping& F, std::size_t m, std::size_t typeRank) {
  if (m < 2) fail(ErrorCode::InvalidArgument, "cycle_cut_product needs m >= 2");
  const std::size_t n = F.size();
  const auto types = local_types(F, typeRank);
  const auto cyc = cyclic_part(F);

  std::vector<Element> image(n * m);
  std::vector<std::vector<Element>> marks(F.signature().predicate_count());
  std::vector<std::pair<std::string, std::vector<Element>>> added;
  for (std::size_t i = 0; i < m; ++i) added.emplace_back("U" + std::to_string(i), std::vector<Element>{});
  std::unordered_map<TypeId, std::size_t> slot;

  for (Element x = 0; x < n; ++x) {
    auto [it, inserted] = slot.try_emplace(types[x].id(), added.size());
    if (inserted) {
      std::string name = "T" + std::to_string(slot.size() - 1);
      if (cyc.cycle_length[x] > 0 && cyc.cycle_length[x] <= typeRank + 1)
        name += "c" + std::to_string(cyc.cycle_length[x]);
      added.emplace_back(name, std::vector<Element>{});
    }
    for (std::size_t i = 0; i < m; ++i) {
      const auto id = static_cast<Element>(x * m + i);
      image[id] = static_cast<Element>(F.image(x) * m + (i + 1) % m);
      added[i].second.push_back(id);
      added[it->second].second.push_back(id);
      for (auto p : F.marks_of(x)) marks[p].push_back(id);
    }
  }
  FiniteMapping product(F.signature(), std::move(image), std::move(marks));
  return reshape_predicates(product, F.signature().predicates(), added);
}

FiniteMapping rewire(const FiniteMapping& F, std::size_t cutLength, std::size_t cleanRank) {
  const auto& preds = F.signature().predicates();
  std::vector<std::optional<CutMark>> parsed(preds.size());
  std::vector<std::string> keep;
  bool has_u = false;
  for (std::size_t p = 0; p < preds.size(); ++p) {
    parsed[p] = parse_cut_mark(preds[p]);
    if (!parsed[p]) {
      keep.push_back(preds[p]);
    } else if (parsed[p]->is_u) {
      if (parsed[p]->index >= cutLength)
        fail(ErrorCode::MalformedCut, "predicate " + preds[p] + " exceeds the cut length");
      has_u = true;
    }
  }
  if (!has_u) fail(ErrorCode::MissingCutPredicates, "no U predicates to rewire");

  const std::size_t n = F.size();
  std::vector<std::optional<std::size_t>> u_index(n), cycle(n);
  for (Element v = 0; v < n; ++v) {
    for (auto p : F.marks_of(v)) {
      if (!parsed[p]) continue;
      if (parsed[p]->is_u) {
        if (u_index[v]) fail(ErrorCode::MalformedCut, "element " + std::to_string(v) + " has two U marks");
        u_index[v] = parsed[p]->index;
      } else if (parsed[p]->cycle) {
        cycle[v] = parsed[p]->cycle;
      }
    }
    if (!u_index[v]) fail(ErrorCode::MalformedCut, "element " + std::to_string(v) + " has no U mark");
    if (cycle[v] && (*cycle[v] > cleanRank + 1 || cutLength % *cycle[v] != 0))
      fail(ErrorCode::MalformedCut, "cycle length " + std::to_string(*cycle[v]) + " is incompatible with the cut");
  }

  std::vector<Element> image = F.images();
  for (Element v = 0; v < n; ++v) {
    if (!cycle[v]) continue;
    const std::size_t len = *cycle[v];
    if ((*u_index[v] + 1) % len != 0) continue;
    Element y = v;
    for (std::size_t step = 0; step + 1 < len; ++step) {
      std::optional<Element> back;
      for (auto w : F.preimages(y)) {
        if (cycle[w] != cycle[v]) continue;
        if (back) fail(ErrorCode::MalformedCut, "element " + std::to_string(y) + " has two cycle predecessors");
        back = w;
      }
      if (!back) fail(ErrorCode::MalformedCut, "element " + std::to_string(y) + " has no cycle predecessor");
      y = *back;
    }
    image[v] = y;
  }
  return reshape_predicates(with_images(F, std::move(image)), keep);
}

}  // namespace fmlim
