#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fmlim/rational.hpp"
#include "fmlim/structure.hpp"

namespace fmlim {

/// f applied `iterate` times to a variable.
struct Term {
  std::string variable;
  unsigned iterate = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

enum class FormulaKind { True, False, Equal, Predicate, Not, And, Or, Implies, Exists, Forall };

/// Immutable first-order formula over a mapping signature. Cheap to copy.
class Formula {
 public:
  struct Node {
    FormulaKind kind;
    Term lhs, rhs;               // Equal: lhs = rhs; Predicate: lhs is the argument
    std::string name;            // predicate name or bound variable
    std::optional<Term> guard;   // quantifiers: "exists y ~ t"
    std::vector<Formula> children;
  };

  static Formula truth();
  static Formula falsity();
  static Formula equal(Term lhs, Term rhs);
  static Formula predicate(std::string name, Term argument);
  static Formula negation(Formula child);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula exists(std::string variable, Formula body, std::optional<Term> guard = std::nullopt);
  static Formula forall(std::string variable, Formula body, std::optional<Term> guard = std::nullopt);

  FormulaKind kind() const noexcept { return node_->kind; }
  const Node& node() const noexcept { return *node_; }
  const Formula& child(std::size_t i) const { return node_->children.at(i); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);
  std::shared_ptr<const Node> node_;
};

/// Canonical fully parenthesised text; `parse(print(φ))` rebuilds φ.
std::string print(const Formula& phi, const std::string& function = "f");

/// Free variables in natural order (x1 < x2 < x10 < y).
std::vector<std::string> free_variables(const Formula& phi);

/// No iterated f, f only in atoms of the shape f(x)=y / y=f(x), predicates
/// applied to variables, guards on plain variables.
bool is_clean(const Formula& phi);

enum class RankKind { Quantifier, Local };

/// Nesting depth of the presented clean form (not the minimum over
/// equivalent formulas). Local rank additionally requires every quantifier
/// to be guarded, either with "~ t" or by a leading adjacency conjunct
/// (exists y (f(y)=x & ...)) / antecedent (forall y (f(y)=x -> ...)).
std::size_t rank(const Formula& phi, RankKind kind);

/// Clean guarded formula in x1, x2 that holds iff dist(x1, x2) <= r.
Formula build_delta(std::size_t r);

/// Rename free variables (capture-avoiding: every bound variable of the
/// result is fresh).
Formula substitute(const Formula& phi, const std::map<std::string, std::string>& renaming);

// ---- parsing -------------------------------------------------------------

/// Grammar (LL(1)):
///   formula  := disj ( "->" formula )?
///   disj     := conj ( "|" conj )*
///   conj     := unary ( "&" unary )*
///   unary    := "!" unary | quant | "(" formula ")" | "true" | "false" | atom
///   quant    := ("exists" | "forall") ident ( "~" term )? unary
///   atom     := term ("=" | "!=") term | Pred "(" term ")"
///   term     := f "(" term ")" | ident
Formula parse(const std::string& text, const Signature& signature);

// ---- evaluation ----------------------------------------------------------

using Assignment = std::map<std::string, Element>;

bool evaluate(const FiniteMapping& F, const Formula& phi, const Assignment& assignment);

/// Default cap on enumerated assignments.
inline constexpr std::size_t kDefaultEvaluationBudget = 10'000'000;

/// |φ(F)| / n^p with p the number of free variables.
Rational stone_pairing(const FiniteMapping& F, const Formula& phi,
                       std::size_t budget = kDefaultEvaluationBudget);

// ---- interpretations -----------------------------------------------------

/// Basic interpretation: η(x1, x2) defines the new f, κ redefines (or adds)
/// predicates as formulas in x1, dropped predicates disappear.
struct Interpretation {
  Formula eta = Formula::equal({"x1", 1}, {"x2", 0});
  std::map<std::string, Formula> kappa;
  std::set<std::string> dropped;

  bool has_trivial_eta() const;
};

FiniteMapping apply_interpretation(const Interpretation& I, const FiniteMapping& F);

/// I(φ): evaluate(I(A), φ) == evaluate(A, I(φ)).
Formula translate(const Interpretation& I, const Formula& phi);

}  // namespace fmlim
