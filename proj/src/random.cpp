#include "fmlim/random.hpp"

#include <random>

#include "fmlim/error.hpp"

namespace fmlim {

namespace {

std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    auto x = gen();
    if (x < limit) return x % bound;
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

FiniteMapping random_mapping(std::size_t n, std::uint64_t seed,
                             const std::vector<std::pair<std::string, Rational>>& markDensities) {
  if (n == 0) fail(ErrorCode::EmptyDomain, "random_mapping needs n >= 1");
  std::mt19937_64 gen(seed);
  std::vector<Element> image(n);
  for (auto& x : image) x = static_cast<Element>(bounded(gen, n));
  std::vector<std::string> names;
  std::vector<std::vector<Element>> marks;
  for (const auto& [name, density] : markDensities) {
    if (density < 0 || density > 1) fail(ErrorCode::InvalidArgument, "mark density must lie in [0,1]");
    const auto p = static_cast<std::uint64_t>(numerator(density));
    const auto q = static_cast<std::uint64_t>(denominator(density));
    names.push_back(name);
    marks.emplace_back();
    for (Element v = 0; v < n; ++v)
      if (bounded(gen, q) < p) marks.back().push_back(v);
  }
  return FiniteMapping(Signature("f", names), std::move(image), std::move(marks));
}

std::vector<std::size_t> cycle_counts(const FiniteMapping& F, std::size_t maxLength) {
  std::vector<std::size_t> counts(maxLength + 1, 0);
  auto cyc = cyclic_part(F);
  for (Element v = 0; v < F.size(); ++v) {
    auto len = cyc.cycle_length[v];
    if (len >= 1 && len <= maxLength) ++counts[len];
  }
  for (std::size_t l = 1; l <= maxLength; ++l) counts[l] /= l;
  return counts;
}

Rational expected_cycles(std::size_t n, std::size_t r) {
  if (r == 0 || r > n) return 0;
  BigInt num = 1, den = r;
  for (std::size_t k = 0; k < r; ++k) {
    num *= n - k;
    den *= n;
  }
  return Rational(num, den);
}

std::vector<CycleRow> cycle_statistics(std::size_t n, std::size_t samples, std::size_t rMax, std::uint64_t seed) {
  if (samples == 0 || rMax == 0) fail(ErrorCode::InvalidArgument, "need samples >= 1 and rMax >= 1");
  std::vector<std::size_t> totals(rMax + 1, 0);
  for (std::size_t k = 0; k < samples; ++k) {
    auto counts = cycle_counts(random_mapping(n, derive_seed(seed, k)), rMax);
    for (std::size_t l = 1; l <= rMax; ++l) totals[l] += counts[l];
  }
  std::vector<CycleRow> rows;
  for (std::size_t l = 1; l <= rMax; ++l)
    rows.push_back({l, static_cast<double>(totals[l]) / static_cast<double>(samples), expected_cycles(n, l)});
  return rows;
}

}  // namespace fmlim
