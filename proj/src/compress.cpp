#include "fmlim/compress.hpp"

#include <algorithm>
#include <map>

namespace fmlim {

FiniteMapping standard_r_approximation(const FiniteMapping& F, std::size_t r) {
  const std::size_t n = F.size();
  const auto cyc = cyclic_part(F);
  std::vector<Element> order(n);
  for (Element v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) { return cyc.height[a] > cyc.height[b]; });

  std::map<std::vector<std::int64_t>, std::int64_t> classes;
  std::vector<std::int64_t> cls(n, -1);
  std::vector<std::vector<Element>> kept_children(n);
  for (auto v : order) {
    std::map<std::int64_t, std::vector<Element>> by_class;
    for (auto u : F.preimages(v))
      if (!cyc.on_cycle[u]) by_class[cls[u]].push_back(u);
    std::vector<std::int64_t> key{F.mark_set_id(v)};
    for (auto& [c, members] : by_class) {
      std::sort(members.begin(), members.end());
      if (members.size() > r) members.resize(r);
      key.insert(key.end(), members.size(), c);
      kept_children[v].insert(kept_children[v].end(), members.begin(), members.end());
    }
    cls[v] = classes.try_emplace(key, static_cast<std::int64_t>(classes.size())).first->second;
  }

  std::map<std::vector<std::int64_t>, std::size_t> copies;
  std::vector<Element> kept;
  for (const auto& component : connected_components(F)) {
    auto start = *std::find_if(component.begin(), component.end(), [&](Element x) { return cyc.on_cycle[x]; });
    std::vector<std::int64_t> sequence;
    Element x = start;
    do {
      sequence.push_back(cls[x]);
      x = F.image(x);
    } while (x != start);
    auto best = sequence;
    for (std::size_t s = 1; s < sequence.size(); ++s) {
      std::vector<std::int64_t> rotated(sequence.begin() + s, sequence.end());
      rotated.insert(rotated.end(), sequence.begin(), sequence.begin() + s);
      best = std::min(best, rotated);
    }
    if (++copies[best] > r) continue;
    std::vector<Element> stack;
    for (auto v : component)
      if (cyc.on_cycle[v]) stack.push_back(v);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      kept.push_back(v);
      for (auto u : kept_children[v]) stack.push_back(u);
    }
  }
  if (kept.empty()) return F;
  std::sort(kept.begin(), kept.end());
  return restrict(F, kept);
}

}  // namespace fmlim
