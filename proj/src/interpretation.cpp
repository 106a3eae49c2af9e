#include "fmlim/error.hpp"
#include "fmlim/formula.hpp"

namespace fmlim {

bool Interpretation::has_trivial_eta() const {
  return eta == Formula::equal({"x1", 1}, {"x2", 0});
}

namespace {

void check_free(const Formula& phi, const std::set<std::string>& allowed, const char* what) {
  for (const auto& v : free_variables(phi))
    if (!allowed.count(v)) fail(ErrorCode::UnboundVariable, std::string(what) + " has unexpected free variable '" + v + "'");
}

}  // namespace

FiniteMapping apply_interpretation(const Interpretation& I, const FiniteMapping& F) {
  check_free(I.eta, {"x1", "x2"}, "eta");
  const std::size_t n = F.size();
  std::vector<Element> image(n);
  if (I.has_trivial_eta()) {
    image = F.images();
  } else {
    for (Element u = 0; u < n; ++u) {
      std::size_t count = 0;
      for (Element v = 0; v < n; ++v) {
        if (evaluate(F, I.eta, {{"x1", u}, {"x2", v}})) {
          image[u] = v;
          ++count;
        }
      }
      if (count != 1)
        fail(ErrorCode::EtaNotFunctional,
             "element " + std::to_string(u) + " has " + std::to_string(count) + " eta-images");
    }
  }

  std::vector<std::string> names;
  std::vector<std::vector<Element>> marks;
  auto extensions = F.all_extensions();
  for (std::size_t p = 0; p < F.signature().predicate_count(); ++p) {
    const auto& name = F.signature().predicates()[p];
    if (I.dropped.count(name) || I.kappa.count(name)) continue;
    names.push_back(name);
    marks.push_back(extensions[p]);
  }
  for (const auto& [name, kappa] : I.kappa) {
    if (I.dropped.count(name)) continue;
    check_free(kappa, {"x1"}, "kappa");
    std::vector<Element> extension;
    for (Element v = 0; v < n; ++v)
      if (evaluate(F, kappa, {{"x1", v}})) extension.push_back(v);
    names.push_back(name);
    marks.push_back(std::move(extension));
  }
  return FiniteMapping(Signature(F.signature().function(), std::move(names)), std::move(image), std::move(marks));
}

namespace {

class Translator {
 public:
  explicit Translator(const Interpretation& I) : I_(I), trivial_(I.has_trivial_eta()) {}

  Formula eta(const std::string& x, const std::string& y) const {
    return substitute(I_.eta, {{"x1", x}, {"x2", y}});
  }

  Formula run(const Formula& phi) const {
    const auto& n = phi.node();
    switch (n.kind) {
      case FormulaKind::True:
      case FormulaKind::False: return phi;
      case FormulaKind::Equal: {
        if (n.lhs.iterate == 0 && n.rhs.iterate == 0) return phi;
        if (trivial_) return phi;
        // clean: exactly one side is f(var)
        if (n.lhs.iterate == 1) return eta(n.lhs.variable, n.rhs.variable);
        return eta(n.rhs.variable, n.lhs.variable);
      }
      case FormulaKind::Predicate: {
        if (auto it = I_.kappa.find(n.name); it != I_.kappa.end())
          return substitute(it->second, {{"x1", n.lhs.variable}});
        if (I_.dropped.count(n.name))
          fail(ErrorCode::UnknownSymbol, "predicate '" + n.name + "' is dropped by the interpretation");
        return phi;
      }
      case FormulaKind::Not: return Formula::negation(run(n.children[0]));
      case FormulaKind::And: return Formula::conjunction(run(n.children[0]), run(n.children[1]));
      case FormulaKind::Or: return Formula::disjunction(run(n.children[0]), run(n.children[1]));
      case FormulaKind::Implies: return Formula::implication(run(n.children[0]), run(n.children[1]));
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        const bool existential = n.kind == FormulaKind::Exists;
        auto body = run(n.children[0]);
        if (!n.guard || trivial_)
          return existential ? Formula::exists(n.name, body, n.guard) : Formula::forall(n.name, body, n.guard);
        // Neighbours in I(A) are eta-images or eta-preimages.
        const auto& g = n.guard->variable;
        auto adjacent = Formula::disjunction(eta(n.name, g), eta(g, n.name));
        return existential ? Formula::exists(n.name, Formula::conjunction(adjacent, body))
                           : Formula::forall(n.name, Formula::implication(adjacent, body));
      }
    }
    return phi;
  }

 private:
  const Interpretation& I_;
  bool trivial_;
};

}  // namespace

Formula translate(const Interpretation& I, const Formula& phi) {
  if (!is_clean(phi)) fail(ErrorCode::NotClean, "translation needs a clean formula: " + print(phi));
  return Translator(I).run(phi);
}

}  // namespace fmlim
