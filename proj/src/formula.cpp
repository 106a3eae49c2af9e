#include "fmlim/formula.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>

#include "fmlim/error.hpp"

namespace fmlim {

Formula Formula::make(Node node) { return Formula(std::make_shared<const Node>(std::move(node))); }

Formula Formula::truth() { return make({FormulaKind::True, {}, {}, {}, {}, {}}); }
Formula Formula::falsity() { return make({FormulaKind::False, {}, {}, {}, {}, {}}); }
Formula Formula::equal(Term lhs, Term rhs) {
  return make({FormulaKind::Equal, std::move(lhs), std::move(rhs), {}, {}, {}});
}
Formula Formula::predicate(std::string name, Term argument) {
  return make({FormulaKind::Predicate, std::move(argument), {}, std::move(name), {}, {}});
}
Formula Formula::negation(Formula child) { return make({FormulaKind::Not, {}, {}, {}, {}, {std::move(child)}}); }
Formula Formula::conjunction(Formula a, Formula b) {
  return make({FormulaKind::And, {}, {}, {}, {}, {std::move(a), std::move(b)}});
}
Formula Formula::disjunction(Formula a, Formula b) {
  return make({FormulaKind::Or, {}, {}, {}, {}, {std::move(a), std::move(b)}});
}
Formula Formula::implication(Formula a, Formula b) {
  return make({FormulaKind::Implies, {}, {}, {}, {}, {std::move(a), std::move(b)}});
}
Formula Formula::exists(std::string variable, Formula body, std::optional<Term> guard) {
  return make({FormulaKind::Exists, {}, {}, std::move(variable), std::move(guard), {std::move(body)}});
}
Formula Formula::forall(std::string variable, Formula body, std::optional<Term> guard) {
  return make({FormulaKind::Forall, {}, {}, std::move(variable), std::move(guard), {std::move(body)}});
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.lhs == y.lhs && x.rhs == y.rhs && x.name == y.name && x.guard == y.guard &&
         x.children == y.children;
}

namespace {

std::string print_term(const Term& t, const std::string& function) {
  std::string out;
  for (unsigned i = 0; i < t.iterate; ++i) out += function + "(";
  out += t.variable;
  out.append(t.iterate, ')');
  return out;
}

void print_into(const Formula& phi, const std::string& fn, std::string& out) {
  const auto& n = phi.node();
  switch (n.kind) {
    case FormulaKind::True: out += "true"; return;
    case FormulaKind::False: out += "false"; return;
    case FormulaKind::Equal: out += print_term(n.lhs, fn) + "=" + print_term(n.rhs, fn); return;
    case FormulaKind::Predicate: out += n.name + "(" + print_term(n.lhs, fn) + ")"; return;
    case FormulaKind::Not:
      out += "!";
      print_into(n.children[0], fn, out);
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies: {
      const char* op = n.kind == FormulaKind::And ? " & " : n.kind == FormulaKind::Or ? " | " : " -> ";
      out += "(";
      print_into(n.children[0], fn, out);
      out += op;
      print_into(n.children[1], fn, out);
      out += ")";
      return;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      out += n.kind == FormulaKind::Exists ? "exists " : "forall ";
      out += n.name;
      if (n.guard) out += " ~ " + print_term(*n.guard, fn);
      out += " ";
      print_into(n.children[0], fn, out);
      return;
  }
}

void collect_free(const Formula& phi, std::vector<std::string>& bound, std::set<std::string>& out) {
  const auto& n = phi.node();
  auto use = [&](const Term& t) {
    if (std::find(bound.begin(), bound.end(), t.variable) == bound.end()) out.insert(t.variable);
  };
  switch (n.kind) {
    case FormulaKind::True:
    case FormulaKind::False: return;
    case FormulaKind::Equal: use(n.lhs); use(n.rhs); return;
    case FormulaKind::Predicate: use(n.lhs); return;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      if (n.guard) use(*n.guard);
      bound.push_back(n.name);
      collect_free(n.children[0], bound, out);
      bound.pop_back();
      return;
    default:
      for (const auto& c : n.children) collect_free(c, bound, out);
  }
}

bool natural_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    auto pos = s.size();
    while (pos > 0 && std::isdigit(static_cast<unsigned char>(s[pos - 1]))) --pos;
    std::string digits = s.substr(pos);
    while (digits.size() > 1 && digits.front() == '0') digits.erase(0, 1);
    return std::make_tuple(s.substr(0, pos), digits.size(), digits, s);
  };
  return split(a) < split(b);
}

// Does `atom` link `y` to some other variable through a single f-application?
bool is_adjacency_atom(const Formula& atom, const std::string& y) {
  if (atom.kind() != FormulaKind::Equal) return false;
  const auto& a = atom.node().lhs;
  const auto& b = atom.node().rhs;
  if (a.iterate + b.iterate != 1) return false;
  if (a.variable == b.variable) return false;
  return a.variable == y || b.variable == y;
}

void flatten_and(const Formula& phi, std::vector<Formula>& out) {
  if (phi.kind() == FormulaKind::And) {
    flatten_and(phi.child(0), out);
    flatten_and(phi.child(1), out);
  } else {
    out.push_back(phi);
  }
}

bool has_implicit_guard(const Formula& q) {
  const auto& y = q.node().name;
  const auto& body = q.child(0);
  std::vector<Formula> conjuncts;
  if (q.kind() == FormulaKind::Exists) {
    flatten_and(body, conjuncts);
  } else if (body.kind() == FormulaKind::Implies) {
    flatten_and(body.child(0), conjuncts);
  }
  return std::any_of(conjuncts.begin(), conjuncts.end(), [&](const Formula& c) { return is_adjacency_atom(c, y); });
}

std::size_t rank_of(const Formula& phi, RankKind kind) {
  const auto& n = phi.node();
  switch (n.kind) {
    case FormulaKind::Not: return rank_of(n.children[0], kind);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies: return std::max(rank_of(n.children[0], kind), rank_of(n.children[1], kind));
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      if (kind == RankKind::Local && !n.guard && !has_implicit_guard(phi))
        fail(ErrorCode::NotGuarded, "quantifier over '" + n.name + "' is not neighbour-guarded");
      return 1 + rank_of(n.children[0], kind);
    default: return 0;
  }
}

std::atomic<std::uint64_t> fresh_counter{0};

std::string fresh_variable() { return "_v" + std::to_string(fresh_counter.fetch_add(1)); }

Term rename_term(Term t, const std::map<std::string, std::string>& renaming) {
  if (auto it = renaming.find(t.variable); it != renaming.end()) t.variable = it->second;
  return t;
}

Formula substitute_impl(const Formula& phi, std::map<std::string, std::string> renaming) {
  const auto& n = phi.node();
  switch (n.kind) {
    case FormulaKind::True:
    case FormulaKind::False: return phi;
    case FormulaKind::Equal: return Formula::equal(rename_term(n.lhs, renaming), rename_term(n.rhs, renaming));
    case FormulaKind::Predicate: return Formula::predicate(n.name, rename_term(n.lhs, renaming));
    case FormulaKind::Not: return Formula::negation(substitute_impl(n.children[0], renaming));
    case FormulaKind::And:
      return Formula::conjunction(substitute_impl(n.children[0], renaming), substitute_impl(n.children[1], renaming));
    case FormulaKind::Or:
      return Formula::disjunction(substitute_impl(n.children[0], renaming), substitute_impl(n.children[1], renaming));
    case FormulaKind::Implies:
      return Formula::implication(substitute_impl(n.children[0], renaming), substitute_impl(n.children[1], renaming));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      std::optional<Term> guard;
      if (n.guard) guard = rename_term(*n.guard, renaming);
      auto fresh = fresh_variable();
      renaming[n.name] = fresh;
      auto body = substitute_impl(n.children[0], renaming);
      return n.kind == FormulaKind::Exists ? Formula::exists(fresh, body, guard) : Formula::forall(fresh, body, guard);
    }
  }
  return phi;
}

}  // namespace

std::string print(const Formula& phi, const std::string& function) {
  std::string out;
  print_into(phi, function, out);
  return out;
}

std::vector<std::string> free_variables(const Formula& phi) {
  std::vector<std::string> bound;
  std::set<std::string> names;
  collect_free(phi, bound, names);
  std::vector<std::string> out(names.begin(), names.end());
  std::sort(out.begin(), out.end(), natural_less);
  return out;
}

bool is_clean(const Formula& phi) {
  const auto& n = phi.node();
  switch (n.kind) {
    case FormulaKind::True:
    case FormulaKind::False: return true;
    case FormulaKind::Equal: return n.lhs.iterate + n.rhs.iterate <= 1;
    case FormulaKind::Predicate: return n.lhs.iterate == 0;
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      if (n.guard && n.guard->iterate != 0) return false;
      return is_clean(n.children[0]);
    default:
      return std::all_of(n.children.begin(), n.children.end(), [](const Formula& c) { return is_clean(c); });
  }
}

std::size_t rank(const Formula& phi, RankKind kind) {
  if (!is_clean(phi)) fail(ErrorCode::NotClean, "rank is only defined on clean formulas: " + print(phi));
  return rank_of(phi, kind);
}

Formula build_delta(std::size_t r) {
  // D_k(a, b) := a=b | exists z_k ~ a D_{k-1}(z_k, b)
  auto build = [](auto&& self, const std::string& a, std::size_t k) -> Formula {
    auto same = Formula::equal({a, 0}, {"x2", 0});
    if (k == 0) return same;
    auto z = "z" + std::to_string(k);
    return Formula::disjunction(same, Formula::exists(z, self(self, z, k - 1), Term{a, 0}));
  };
  return build(build, "x1", r);
}

Formula substitute(const Formula& phi, const std::map<std::string, std::string>& renaming) {
  return substitute_impl(phi, renaming);
}

}  // namespace fmlim
