#include <algorithm>
#include <functional>

#include "fmlim/error.hpp"
#include "fmlim/formula.hpp"

namespace fmlim {

namespace {

struct SlotTerm {
  std::size_t slot;
  unsigned iterate;
};

struct Compiled {
  FormulaKind kind = FormulaKind::True;
  SlotTerm lhs{}, rhs{};
  std::size_t predicate = 0;
  bool predicate_known = false;
  std::size_t bound = 0;
  std::optional<SlotTerm> guard;
  std::vector<Compiled> children;
};

class Compiler {
 public:
  Compiler(const FiniteMapping& F, const std::vector<std::string>& free) : F_(F) {
    for (const auto& v : free) scope_.emplace_back(v, slots_++);
  }
  std::size_t slot_count() const { return slots_; }

  Compiled compile(const Formula& phi) {
    const auto& n = phi.node();
    Compiled c;
    c.kind = n.kind;
    switch (n.kind) {
      case FormulaKind::True:
      case FormulaKind::False: break;
      case FormulaKind::Equal:
        c.lhs = resolve(n.lhs);
        c.rhs = resolve(n.rhs);
        break;
      case FormulaKind::Predicate: {
        c.lhs = resolve(n.lhs);
        auto p = F_.signature().index_of(n.name);
        if (!p) fail(ErrorCode::UnknownPredicate, "predicate '" + n.name + "' is not in the structure's signature");
        c.predicate = *p;
        c.predicate_known = true;
        break;
      }
      case FormulaKind::Exists:
      case FormulaKind::Forall:
        if (n.guard) c.guard = resolve(*n.guard);
        c.bound = slots_++;
        scope_.emplace_back(n.name, c.bound);
        c.children.push_back(compile(n.children[0]));
        scope_.pop_back();
        break;
      default:
        for (const auto& child : n.children) c.children.push_back(compile(child));
    }
    return c;
  }

 private:
  SlotTerm resolve(const Term& t) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == t.variable) return {it->second, t.iterate};
    fail(ErrorCode::UnboundVariable, "variable '" + t.variable + "' is not bound");
  }

  const FiniteMapping& F_;
  std::vector<std::pair<std::string, std::size_t>> scope_;
  std::size_t slots_ = 0;
};

class Evaluator {
 public:
  Evaluator(const FiniteMapping& F, std::size_t slots) : F_(F), env_(slots, 0) {}

  std::vector<Element>& env() { return env_; }

  bool eval(const Compiled& c) {
    switch (c.kind) {
      case FormulaKind::True: return true;
      case FormulaKind::False: return false;
      case FormulaKind::Equal: return value(c.lhs) == value(c.rhs);
      case FormulaKind::Predicate: return F_.has_mark(c.predicate, value(c.lhs));
      case FormulaKind::Not: return !eval(c.children[0]);
      case FormulaKind::And: return eval(c.children[0]) && eval(c.children[1]);
      case FormulaKind::Or: return eval(c.children[0]) || eval(c.children[1]);
      case FormulaKind::Implies: return !eval(c.children[0]) || eval(c.children[1]);
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        const bool existential = c.kind == FormulaKind::Exists;
        auto body = [&](Element w) {
          env_[c.bound] = w;
          return eval(c.children[0]);
        };
        if (c.guard) {
          Element center = value(*c.guard);
          // Gaifman neighbours of the guard: its image and its preimages.
          std::vector<Element> around{F_.image(center)};
          for (auto w : F_.preimages(center))
            if (w != around.front()) around.push_back(w);
          for (auto w : around)
            if (body(w) == existential) return existential;
          return !existential;
        }
        for (Element w = 0; w < F_.size(); ++w)
          if (body(w) == existential) return existential;
        return !existential;
      }
    }
    return false;
  }

 private:
  Element value(const SlotTerm& t) const {
    Element v = env_[t.slot];
    for (unsigned i = 0; i < t.iterate; ++i) v = F_.image(v);
    return v;
  }

  const FiniteMapping& F_;
  std::vector<Element> env_;
};

}  // namespace

bool evaluate(const FiniteMapping& F, const Formula& phi, const Assignment& assignment) {
  auto free = free_variables(phi);
  for (const auto& v : free) {
    auto it = assignment.find(v);
    if (it == assignment.end()) fail(ErrorCode::UnboundVariable, "no value for free variable '" + v + "'");
    F.check_element(it->second);
  }
  Compiler compiler(F, free);
  auto compiled = compiler.compile(phi);
  Evaluator evaluator(F, compiler.slot_count());
  for (std::size_t i = 0; i < free.size(); ++i) evaluator.env()[i] = assignment.at(free[i]);
  return evaluator.eval(compiled);
}

Rational stone_pairing(const FiniteMapping& F, const Formula& phi, std::size_t budget) {
  auto free = free_variables(phi);
  const std::size_t n = F.size();
  const std::size_t p = free.size();
  BigInt total = 1;
  for (std::size_t i = 0; i < p; ++i) total *= n;
  if (total > budget)
    fail(ErrorCode::BudgetExceeded, "n^p = " + total.str() + " assignments exceed the budget of " + std::to_string(budget));
  Compiler compiler(F, free);
  auto compiled = compiler.compile(phi);
  Evaluator evaluator(F, compiler.slot_count());
  auto& env = evaluator.env();
  std::size_t satisfied = 0;
  // odometer over the first p slots
  while (true) {
    if (evaluator.eval(compiled)) ++satisfied;
    std::size_t i = 0;
    while (i < p && ++env[i] == n) env[i++] = 0;
    if (i == p) break;
  }
  return Rational(BigInt(satisfied), total);
}

}  // namespace fmlim
