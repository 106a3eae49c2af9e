#include "fmlim/residualize.hpp"

#include <algorithm>

#include "fmlim/error.hpp"

namespace fmlim {

namespace {

// Number of strict tree descendants of each element. Components small
// enough to keep their cycles never matter, so cycle edges are ignored.
std::vector<std::size_t> descendant_counts(const FiniteMapping& F, const std::vector<Element>& image) {
  const std::size_t n = image.size();
  auto cyc = cyclic_part(with_images(F, image));
  std::vector<std::size_t> count(n, 0);
  std::vector<Element> order(n);
  for (Element v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](Element a, Element b) { return cyc.height[a] > cyc.height[b]; });
  for (auto v : order)
    if (!cyc.on_cycle[v]) count[image[v]] += count[v] + 1;
  return count;
}

}  // namespace

Residualization residualize(const FiniteMapping& F, const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= 1) fail(ErrorCode::InvalidArgument, "residualize needs 0 < ε < 1");
  const std::size_t n = F.size();
  const Rational limit = epsilon * static_cast<long>(n);
  auto exceeds = [&](std::size_t size) { return Rational(static_cast<long>(size)) > limit; };

  std::vector<Element> image = F.images();
  std::vector<std::pair<std::string, std::vector<Element>>> added;
  std::size_t next = 1;
  auto add_cut = [&](std::vector<Element> sources, Element target) {
    for (auto w : sources) image[w] = w;
    added.emplace_back("A" + std::to_string(next), std::move(sources));
    added.emplace_back("B" + std::to_string(next), std::vector<Element>{target});
    ++next;
  };

  auto cyc = cyclic_part(F);
  for (const auto& component : connected_components(F)) {
    if (!exceeds(component.size())) continue;
    auto v = *std::find_if(component.begin(), component.end(), [&](Element x) { return cyc.on_cycle[x]; });
    if (cyc.cycle_length[v] > 1) add_cut({v}, F.image(v));
  }

  // Preimage lists change only by removing cut sources, so rebuild lazily.
  for (;;) {
    auto count = descendant_counts(F, image);
    std::vector<std::vector<Element>> children(n);
    for (Element v = 0; v < n; ++v)
      if (image[v] != v) children[image[v]].push_back(v);
    std::optional<Element> chosen;
    for (Element u = 0; u < n && !chosen; ++u) {
      if (!exceeds(count[u])) continue;
      if (std::all_of(children[u].begin(), children[u].end(), [&](Element x) { return !exceeds(count[x]); }))
        chosen = u;
    }
    if (!chosen) break;
    add_cut(children[*chosen], *chosen);
  }

  Residualization out{F, {}, next - 1};
  if (out.cuts == 0) return out;

  std::vector<std::string> keep = F.signature().predicates();
  out.mapping = reshape_predicates(with_images(F, image), keep, added);

  Formula any_a = Formula::falsity();
  Formula pairs = Formula::falsity();
  for (std::size_t i = 1; i <= out.cuts; ++i) {
    auto a = Formula::predicate("A" + std::to_string(i), {"x1", 0});
    auto b = Formula::predicate("B" + std::to_string(i), {"x2", 0});
    any_a = i == 1 ? a : Formula::disjunction(any_a, a);
    auto pair = Formula::conjunction(a, b);
    pairs = i == 1 ? pair : Formula::disjunction(pairs, pair);
    out.interpretation.dropped.insert("A" + std::to_string(i));
    out.interpretation.dropped.insert("B" + std::to_string(i));
  }
  out.interpretation.eta = Formula::disjunction(
      Formula::conjunction(Formula::equal({"x1", 1}, {"x2", 0}), Formula::negation(any_a)), pairs);
  return out;
}

}  // namespace fmlim
