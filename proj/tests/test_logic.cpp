#include "doctest.h"
#include "support.hpp"

#include "fmlim/error.hpp"
#include "fmlim/formula.hpp"
#include "fmlim/random.hpp"

using namespace fmlim;
using namespace testing;

namespace {

const Signature kSig("f", {"M1", "M2"});

}  // namespace

TEST_CASE("parsing builds the expected shapes") {
  auto phi = parse("exists y (f(y)=x1 & M1(y))", kSig);
  CHECK(phi.kind() == FormulaKind::Exists);
  CHECK(phi.node().name == "y");
  CHECK(phi.child(0).kind() == FormulaKind::And);
  CHECK(free_variables(phi) == std::vector<std::string>{"x1"});

  auto iter = parse("f(f(x1))=x1", kSig);
  CHECK(iter.node().lhs.iterate == 2);
  CHECK_FALSE(is_clean(iter));
  CHECK(is_clean(phi));

  CHECK(code_of([] { parse("exists y (f(y)=x1", kSig); }) == ErrorCode::SyntaxError);
  try {
    parse("exists y (f(y)=x1", kSig);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("end of input") != std::string::npos);
  }
  CHECK(code_of([] { parse("Q(x1)", kSig); }) == ErrorCode::UnknownSymbol);
  CHECK(code_of([] { parse("M1(x1, x2)", kSig); }) == ErrorCode::ArityError);
  CHECK(code_of([] { parse("x1 = ", kSig); }) == ErrorCode::SyntaxError);
}

TEST_CASE("printing and parsing round-trip") {
  for (const char* text : {"exists y ~ x1 (M1(y) & !(y = x1))", "forall z (f(z)=x1 -> M2(z))", "x1 != x2 | true",
                           "((M1(x1) -> M2(x1)) -> false)", "f(f(x2)) = f(x1)"}) {
    auto phi = parse(text, kSig);
    CHECK(parse(print(phi), kSig) == phi);
  }
  FormulaGenerator gen({"M1", "M2"}, 7);
  for (int k = 0; k < 200; ++k) {
    auto phi = gen.generate(k % 3, 4, k % 2 == 0);
    CHECK(parse(print(phi), kSig) == phi);
  }
}

TEST_CASE("evaluation") {
  CHECK(evaluate(cycle(2), parse("f(f(x1))=x1", kSig), {{"x1", 0}}));
  CHECK(evaluate(fixed_point(), parse("f(x1)=x1", kSig), {{"x1", 0}}));
  CHECK_FALSE(evaluate(cycle(3), parse("exists y (f(y)=x1 & f(x1)=y)", kSig), {{"x1", 0}}));
  CHECK(code_of([] { evaluate(cycle(3), parse("x1=x2", kSig), {{"x1", 0}}); }) == ErrorCode::UnboundVariable);
}

TEST_CASE("stone pairings") {
  CHECK(stone_pairing(mapping({0, 1, 2, 3}), parse("x1=x2", kSig)) == Rational(1, 4));
  auto marked = mapping({0, 1, 2, 3, 4}, {"M1"}, {{1, 3}});
  CHECK(stone_pairing(marked, parse("M1(x1)", Signature("f", {"M1"}))) == Rational(2, 5));
  CHECK(stone_pairing(cycle(3), parse("exists y f(y)=x1", kSig)) == 1);
  CHECK(code_of([] { stone_pairing(cycle(50), parse("x1=x2 & x3=x4 & x5=x1", kSig), 1000); }) ==
        ErrorCode::BudgetExceeded);

  FormulaGenerator gen({}, 11);
  for (int k = 0; k < 50; ++k) {
    auto s = stone_pairing(random_mapping(6, k), gen.generate(0, 4));
    CHECK((s == 0 || s == 1));
  }
}

TEST_CASE("ranks") {
  CHECK(rank(parse("M1(x1)", kSig), RankKind::Quantifier) == 0);
  CHECK(rank(parse("f(x1)=x1", kSig), RankKind::Local) == 0);
  CHECK(rank(parse("exists y (f(y)=x1 & M1(y))", kSig), RankKind::Local) == 1);
  CHECK(rank(parse("exists y ~ x1 forall z ~ y M1(z)", kSig), RankKind::Local) == 2);
  CHECK(code_of([] { rank(parse("f(f(x1))=x1", kSig), RankKind::Quantifier); }) == ErrorCode::NotClean);
  CHECK(code_of([] { rank(parse("exists y M1(y)", kSig), RankKind::Local); }) == ErrorCode::NotGuarded);
}

TEST_CASE("distance formulas") {
  CHECK(print(build_delta(0)) == "x1=x2");
  CHECK(stone_pairing(cycle(3), build_delta(1)) == 1);
  CHECK(stone_pairing(mapping({0, 1, 2, 3, 4}), build_delta(1)) == Rational(1, 5));
  for (std::size_t r = 0; r <= 3; ++r) {
    auto delta = build_delta(r);
    CHECK(is_clean(delta));
    CHECK(rank(delta, RankKind::Local) <= r);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      auto F = random_mapping(4 + seed * 3, 500 + seed);
      for (Element u = 0; u < F.size(); ++u)
        for (Element v = 0; v < F.size(); ++v) {
          auto d = distance(F, u, v);
          CHECK(evaluate(F, delta, {{"x1", u}, {"x2", v}}) == (d && *d <= r));
        }
    }
  }
}

TEST_CASE("applying interpretations") {
  Interpretation identity;
  identity.eta = parse("x1=x2", kSig);
  auto F = apply_interpretation(identity, cycle(4));
  for (Element v = 0; v < 4; ++v) CHECK(F.image(v) == v);

  Interpretation square;
  square.eta = parse("f(f(x1))=x2", kSig);
  auto G = apply_interpretation(square, cycle(4));
  CHECK(connected_components(G).size() == 2);
  CHECK(G.image(0) == 2);

  Interpretation both;
  both.eta = parse("f(x1)=x2 | f(x2)=x1", kSig);
  CHECK(code_of([&] { apply_interpretation(both, cycle(3)); }) == ErrorCode::EtaNotFunctional);

  Interpretation relabel;
  relabel.kappa.insert_or_assign("M1", parse("f(x1)=x1", Signature()));
  CHECK(print(translate(relabel, parse("M1(x1)", kSig))) == "f(x1)=x1");
  Interpretation trivial;
  auto phi = parse("exists y ~ x1 (M1(y) & f(y)=x1)", kSig);
  CHECK(translate(trivial, phi) == phi);
}

TEST_CASE("interpretation duality and rank bound") {
  FormulaGenerator gen({"M1"}, 23);
  const Signature sig("f", {"M1"});
  std::vector<std::string> etas = {"f(x1)=x2", "x1=x2", "f(f(x1))=x2", "(M1(x1) & x1=x2) | (!M1(x1) & f(x1)=x2)"};
  std::vector<std::string> kappas = {"M1(x1)", "f(x1)=x1", "exists y (f(y)=x1 & M1(y))", "!M1(x1)"};
  for (std::uint64_t k = 0; k < 40; ++k) {
    auto A = random_mapping(3 + k % 6, 900 + k, {{"M1", Rational(1, 2)}});
    Interpretation I;
    I.eta = parse(etas[k % etas.size()], sig);
    I.kappa.insert_or_assign("M1", parse(kappas[(k / 2) % kappas.size()], sig));
    auto phi = gen.generate(k % 3, 3);
    CHECK(stone_pairing(apply_interpretation(I, A), phi) == stone_pairing(A, translate(I, phi)));
  }

  // Guarded case with trivial η: ranks add.
  for (std::uint64_t k = 0; k < 40; ++k) {
    Interpretation I;
    I.kappa.insert_or_assign("M1", parse(k % 2 ? "exists y (f(y)=x1 & M1(y))" : "f(x1)=x1", sig));
    auto phi = gen.generate(1 + k % 2, 3, true);
    const auto bound = rank(phi, RankKind::Local) + rank(I.kappa.at("M1"), RankKind::Local);
    CHECK(rank(translate(I, phi), RankKind::Local) <= bound);
  }
}
