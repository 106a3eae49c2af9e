#include "fmlim/equivalence.hpp"

#include <map>

#include "fmlim/error.hpp"

namespace fmlim {

namespace {

void require_same_signature(const FiniteMapping& A, const FiniteMapping& B) {
  if (A.signature() != B.signature()) fail(ErrorCode::SignatureMismatch, "structures have different signatures");
}

// Adds the class distribution of all p-tuples of F (weighted sign * n^-p) to acc.
void accumulate_tuple_classes(const FiniteMapping& F, GameKind kind, std::size_t p, std::size_t r,
                              std::size_t budget, int sign, std::map<TypeId, Rational>& acc) {
  const std::size_t n = F.size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < p; ++i) {
    if (count > budget / n + 1)
      fail(ErrorCode::BudgetExceeded, "too many " + std::to_string(p) + "-tuples to enumerate");
    count *= n;
  }
  if (count > budget) fail(ErrorCode::BudgetExceeded, "too many " + std::to_string(p) + "-tuples to enumerate");
  const Rational weight = Rational(BigInt(sign), BigInt(count));
  GameTypeEngine engine(F, kind, budget);
  std::vector<Element> tuple(p, 0);
  for (std::size_t k = 0; k < count; ++k) {
    acc[engine.type_of(tuple, r)] += weight;
    for (std::size_t i = 0; i < p; ++i) {
      if (++tuple[i] < n) break;
      tuple[i] = 0;
    }
  }
}

Rational half_l1(const std::map<TypeId, Rational>& diff) {
  Rational sum = 0;
  for (const auto& [id, d] : diff) sum += abs(d);
  return sum / 2;
}

}  // namespace

bool ef_equivalent(const FiniteMapping& A, const FiniteMapping& B, std::size_t r, std::size_t budget) {
  require_same_signature(A, B);
  GameTypeEngine ea(A, GameKind::Global, budget);
  GameTypeEngine eb(B, GameKind::Global, budget);
  return ea.type_of({}, r) == eb.type_of({}, r);
}

Rational ldist(const FiniteMapping& A, const FiniteMapping& B, std::size_t p, std::size_t r, std::size_t budget) {
  require_same_signature(A, B);
  if (p == 0) fail(ErrorCode::InvalidArgument, "ldist needs p >= 1");
  if (p == 1) return total_variation(type_distribution(A, r), type_distribution(B, r));
  std::map<TypeId, Rational> diff;
  accumulate_tuple_classes(A, GameKind::Local, p, r, budget, 1, diff);
  accumulate_tuple_classes(B, GameKind::Local, p, r, budget, -1, diff);
  return half_l1(diff);
}

Rational fo_dist(const FiniteMapping& A, const FiniteMapping& B, std::size_t p, std::size_t r, std::size_t budget) {
  if (!ef_equivalent(A, B, r, budget)) return 1;
  if (p == 0) return 0;
  std::map<TypeId, Rational> diff;
  accumulate_tuple_classes(A, GameKind::Global, p, r, budget, 1, diff);
  accumulate_tuple_classes(B, GameKind::Global, p, r, budget, -1, diff);
  return half_l1(diff);
}

Rational truncation_tail(std::size_t K) {
  Rational head = 0;
  Rational weight = 1;
  for (std::size_t s = 0; s <= K; ++s) {
    head += weight * static_cast<long>(s + 1);
    weight /= 2;
  }
  return Rational(4) - head;
}

TruncatedDistance dist_fo_truncated(const FiniteMapping& A, const FiniteMapping& B, std::size_t K,
                                    std::size_t budget) {
  require_same_signature(A, B);
  Rational lower = 0;
  Rational weight = 1;
  for (std::size_t s = 0; s <= K; ++s) {
    for (std::size_t p = 0; p <= s; ++p) lower += weight * fo_dist(A, B, p, s - p, budget);
    weight /= 2;
  }
  return {lower, lower + truncation_tail(K)};
}

}  // namespace fmlim
