#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fmlim/error.hpp"
#include "fmlim/formula.hpp"
#include "fmlim/structure.hpp"

namespace testing {

using fmlim::Element;
using fmlim::FiniteMapping;
using fmlim::Signature;

/// Code of the fmlim::Error thrown by fn, nullopt when nothing is thrown.
template <class Fn>
std::optional<fmlim::ErrorCode> code_of(Fn&& fn) {
  try {
    fn();
  } catch (const fmlim::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline FiniteMapping mapping(std::vector<Element> image, std::vector<std::string> names = {},
                             std::vector<std::vector<Element>> marks = {}) {
  if (marks.empty()) marks.resize(names.size());
  return FiniteMapping(Signature("f", std::move(names)), std::move(image), std::move(marks));
}

inline FiniteMapping cycle(std::size_t n) {
  std::vector<Element> image(n);
  for (Element v = 0; v < n; ++v) image[v] = static_cast<Element>((v + 1) % n);
  return mapping(image);
}

inline FiniteMapping fixed_point() { return mapping({0}); }

/// Center 0 (a fixed point) with k leaves 1..k.
inline FiniteMapping star(std::size_t k) { return mapping(std::vector<Element>(k + 1, 0)); }

inline FiniteMapping relabel(const FiniteMapping& F, const std::vector<Element>& perm) {
  const std::size_t n = F.size();
  std::vector<Element> image(n);
  for (Element v = 0; v < n; ++v) image[perm[v]] = perm[F.image(v)];
  auto ext = F.all_extensions();
  for (auto& e : ext)
    for (auto& v : e) v = perm[v];
  return FiniteMapping(F.signature(), std::move(image), std::move(ext));
}

inline std::vector<Element> random_permutation(std::size_t n, std::mt19937_64& gen) {
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), gen);
  return perm;
}

inline std::vector<std::string> mark_names(const FiniteMapping& F, Element v) {
  std::vector<std::string> out;
  for (auto p : F.marks_of(v)) out.push_back(F.signature().predicates()[p]);
  std::sort(out.begin(), out.end());
  return out;
}

/// min{a+b : f^a(u) = f^b(v)}, straight from the definition.
inline std::optional<std::size_t> brute_distance(const FiniteMapping& F, Element u, Element v) {
  const std::size_t n = F.size();
  std::vector<Element> fu{u}, fv{v};
  for (std::size_t k = 0; k < 2 * n; ++k) {
    fu.push_back(F.image(fu.back()));
    fv.push_back(F.image(fv.back()));
  }
  std::optional<std::size_t> best;
  for (std::size_t a = 0; a < fu.size(); ++a)
    for (std::size_t b = 0; b < fv.size(); ++b)
      if (fu[a] == fv[b] && (!best || a + b < *best)) best = a + b;
  return best;
}

/// Plain Ehrenfeucht–Fraïssé game search without any hashing. In the local
/// variant both players must pick neighbours of pebbled elements.
class NaiveGame {
 public:
  NaiveGame(const FiniteMapping& A, const FiniteMapping& B, bool local) : A_(A), B_(B), local_(local) {}

  bool duplicator_wins(std::vector<Element> a, std::vector<Element> b, std::size_t rounds) const {
    if (!partial_iso(a, b)) return false;
    if (rounds == 0) return true;
    for (auto x : moves(A_, a)) {
      bool answered = false;
      for (auto y : moves(B_, b)) {
        a.push_back(x);
        b.push_back(y);
        answered = duplicator_wins(a, b, rounds - 1);
        a.pop_back();
        b.pop_back();
        if (answered) break;
      }
      if (!answered) return false;
    }
    for (auto y : moves(B_, b)) {
      bool answered = false;
      for (auto x : moves(A_, a)) {
        a.push_back(x);
        b.push_back(y);
        answered = duplicator_wins(a, b, rounds - 1);
        a.pop_back();
        b.pop_back();
        if (answered) break;
      }
      if (!answered) return false;
    }
    return true;
  }

 private:
  std::vector<Element> moves(const FiniteMapping& F, const std::vector<Element>& t) const {
    std::vector<Element> out;
    if (!local_) {
      out.resize(F.size());
      std::iota(out.begin(), out.end(), 0);
      return out;
    }
    for (auto x : t) {
      out.push_back(F.image(x));
      for (auto w : F.preimages(x)) out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool partial_iso(const std::vector<Element>& a, const std::vector<Element>& b) const {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (mark_names(A_, a[i]) != mark_names(B_, b[i])) return false;
      for (std::size_t j = 0; j < a.size(); ++j) {
        if ((a[i] == a[j]) != (b[i] == b[j])) return false;
        if ((A_.image(a[i]) == a[j]) != (B_.image(b[i]) == b[j])) return false;
      }
    }
    return true;
  }

  const FiniteMapping& A_;
  const FiniteMapping& B_;
  bool local_;
};

/// Random clean formula over the given predicates with free variables x1..xp.
class FormulaGenerator {
 public:
  FormulaGenerator(std::vector<std::string> predicates, std::uint64_t seed)
      : predicates_(std::move(predicates)), gen_(seed) {}

  fmlim::Formula generate(std::size_t p, std::size_t depth, bool guarded = false) {
    std::vector<std::string> vars;
    for (std::size_t i = 1; i <= p; ++i) vars.push_back("x" + std::to_string(i));
    return build(vars, depth, guarded);
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }

  fmlim::Formula atom(const std::vector<std::string>& vars) {
    using fmlim::Formula;
    if (vars.empty()) return pick(2) ? Formula::truth() : Formula::falsity();
    const auto& x = vars[pick(vars.size())];
    const auto& y = vars[pick(vars.size())];
    switch (pick(predicates_.empty() ? 3 : 4)) {
      case 0: return Formula::equal({x, 0}, {y, 0});
      case 1: return Formula::equal({x, 1}, {y, 0});
      case 2: return Formula::equal({x, 1}, {x, 0});
      default: return Formula::predicate(predicates_[pick(predicates_.size())], {x, 0});
    }
  }

  fmlim::Formula build(std::vector<std::string> vars, std::size_t depth, bool guarded) {
    using fmlim::Formula;
    if (depth == 0 || pick(4) == 0) return atom(vars);
    switch (pick(5)) {
      case 0: return Formula::negation(build(vars, depth - 1, guarded));
      case 1: return Formula::conjunction(build(vars, depth - 1, guarded), build(vars, depth - 1, guarded));
      case 2: return Formula::disjunction(build(vars, depth - 1, guarded), build(vars, depth - 1, guarded));
      default: {
        if (guarded && vars.empty()) return atom(vars);
        std::string y = "y" + std::to_string(counter_++);
        std::optional<fmlim::Term> guard;
        if (guarded) guard = fmlim::Term{vars[pick(vars.size())], 0};
        auto inner = vars;
        inner.push_back(y);
        auto body = build(inner, depth - 1, guarded);
        return pick(2) ? Formula::exists(y, body, guard) : Formula::forall(y, body, guard);
      }
    }
  }

  std::vector<std::string> predicates_;
  std::mt19937_64 gen_;
  std::size_t counter_ = 0;
};

}  // namespace testing
