#include "fmlim/error.hpp"
#include "fmlim/realize.hpp"

namespace fmlim {

FiniteMapping merge(const FiniteMapping& E, const FiniteMapping& F2,
                    const std::map<Element, std::vector<Element>>& hubAssignment, std::size_t nClose,
                    std::size_t nAway, std::size_t separation) {
  if (E.signature() != F2.signature()) fail(ErrorCode::SignatureMismatch, "E and F2 have different signatures");
  if (nClose == 0 || nAway == 0) fail(ErrorCode::InvalidArgument, "nClose and nAway must be positive");
  const std::size_t e = E.size(), m = F2.size();
  const std::size_t total = e + m * nClose * nAway;
  if (total > std::numeric_limits<Element>::max() / 2) fail(ErrorCode::BudgetExceeded, "merged structure too large");

  std::vector<Element> hubs;
  for (const auto& [v, list] : hubAssignment) {
    F2.check_element(v);
    if (list.size() < nClose)
      fail(ErrorCode::InsufficientHubs, "terminal " + std::to_string(v) + " has " + std::to_string(list.size()) +
                                            " hubs, needs " + std::to_string(nClose));
    for (std::size_t i = 0; i < nClose; ++i) {
      E.check_element(list[i]);
      hubs.push_back(list[i]);
    }
  }
  std::sort(hubs.begin(), hubs.end());
  hubs.erase(std::unique(hubs.begin(), hubs.end()), hubs.end());
  for (std::size_t a = 0; a < hubs.size(); ++a) {
    auto dist = distances_from(E, hubs[a]);
    for (std::size_t b = a + 1; b < hubs.size(); ++b)
      if (dist[hubs[b]] && *dist[hubs[b]] <= 2 * separation)
        fail(ErrorCode::HubsTooClose, "hubs " + std::to_string(hubs[a]) + " and " + std::to_string(hubs[b]) +
                                          " are at distance " + std::to_string(*dist[hubs[b]]));
  }

  std::vector<Element> image(total);
  std::vector<std::vector<Element>> marks = E.all_extensions();
  for (Element v = 0; v < e; ++v) image[v] = E.image(v);
  for (std::size_t i = 0; i < nClose; ++i)
    for (std::size_t j = 0; j < nAway; ++j) {
      const std::size_t base = e + (i * nAway + j) * m;
      for (Element v = 0; v < m; ++v) {
        const auto id = static_cast<Element>(base + v);
        auto hub = hubAssignment.find(v);
        image[id] = hub != hubAssignment.end() ? hub->second[i] : static_cast<Element>(base + F2.image(v));
        for (auto p : F2.marks_of(v)) marks[p].push_back(id);
      }
    }
  return FiniteMapping(E.signature(), std::move(image), std::move(marks));
}

}  // namespace fmlim
