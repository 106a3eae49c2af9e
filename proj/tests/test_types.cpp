#include "doctest.h"
#include "support.hpp"

#include "fmlim/random.hpp"
#include "fmlim/types.hpp"

using namespace fmlim;
using namespace testing;

TEST_CASE("local types of small shapes") {
  for (std::size_t r = 0; r <= 4; ++r) {
    auto F = cycle(3);
    CHECK(local_type(F, 0, r) == local_type(F, 1, r));
    CHECK(local_type(F, 0, r) == local_type(F, 2, r));
  }
  auto S = star(3);
  CHECK(local_type(S, 1, 1) == local_type(S, 3, 1));
  CHECK_FALSE(local_type(S, 0, 1) == local_type(S, 1, 1));
  auto P = mapping({0}, {"P"}, {{0}});
  auto Q = mapping({0}, {"P"}, {{}});
  CHECK_FALSE(local_type(P, 0, 0) == local_type(Q, 0, 0));
  CHECK(code_of([] { local_type(cycle(3), 3, 1); }) == ErrorCode::ElementOutOfRange);
}

TEST_CASE("game search against a plain Ehrenfeucht–Fraïssé solver") {
  CHECK(types_equal(local_type(cycle(5), 0, 1), local_type(cycle(7), 0, 1)));
  CHECK_FALSE(types_equal(local_type(cycle(5), 0, 4), local_type(cycle(7), 0, 4)));
  CHECK(code_of([] { types_equal(local_type(cycle(5), 0, 1), local_type(cycle(5), 0, 2)); }) ==
        ErrorCode::RankMismatch);

  std::mt19937_64 gen(1);
  for (std::uint64_t k = 0; k < 60; ++k) {
    auto A = random_mapping(3 + k % 6, 1000 + k, {{"P", Rational(1, 3)}});
    auto B = random_mapping(3 + (k / 3) % 6, 2000 + k, {{"P", Rational(1, 3)}});
    const std::size_t r = k % 3;
    NaiveGame game(A, B, true);
    for (Element u = 0; u < A.size(); ++u) {
      Element v = static_cast<Element>(gen() % B.size());
      CHECK((local_type(A, u, r) == local_type(B, v, r)) == game.duplicator_wins({u}, {v}, r));
    }
  }
}

TEST_CASE("types are isomorphism invariant and form an equivalence") {
  std::mt19937_64 gen(2);
  for (std::uint64_t k = 0; k < 30; ++k) {
    auto F = random_mapping(5 + k, 3000 + k, {{"P", Rational(1, 4)}});
    auto perm = random_permutation(F.size(), gen);
    auto G = relabel(F, perm);
    for (Element v = 0; v < F.size(); ++v) CHECK(local_type(F, v, 2) == local_type(G, perm[v], 2));
  }
}

TEST_CASE("projection") {
  auto t = local_type(cycle(4), 0, 3);
  CHECK(project(t, 3) == t);
  CHECK(code_of([&] { project(t, 4); }) == ErrorCode::RankIncrease);
  CHECK_FALSE(project(local_type(fixed_point(), 0, 2), 0) == project(local_type(cycle(2), 0, 2), 0));

  for (std::uint64_t k = 0; k < 30; ++k) {
    auto F = random_mapping(12, 4000 + k);
    for (Element v = 0; v < F.size(); ++v)
      for (std::size_t r = 0; r <= 2; ++r) CHECK(project(local_type(F, v, 3), r) == local_type(F, v, r));
    for (Element u = 0; u < F.size(); ++u)
      for (Element v = 0; v < F.size(); ++v)
        if (local_type(F, u, 3) == local_type(F, v, 3)) CHECK(local_type(F, u, 1) == local_type(F, v, 1));
  }
}

TEST_CASE("transport") {
  auto fp = local_type(fixed_point(), 0, 2);
  CHECK(project(transport(fp), 1) == local_type(fixed_point(), 0, 1));
  auto S = star(4);
  CHECK(transport(local_type(S, 1, 1)) == local_type(S, 0, 0));
  CHECK(code_of([] { transport(local_type(cycle(3), 0, 0)); }) == ErrorCode::RankZero);
  for (std::uint64_t k = 0; k < 50; ++k) {
    auto F = random_mapping(2 + k % 39, 5000 + k);
    for (Element v = 0; v < F.size(); ++v)
      for (std::size_t r = 0; r <= 2; ++r)
        CHECK(local_type(F, F.image(v), r) == project(transport(local_type(F, v, r + 1)), r));
  }
}

TEST_CASE("type distributions") {
  auto c3 = type_distribution(cycle(3), 2);
  REQUIRE(c3.size() == 1);
  CHECK(c3.entries()[0].mass == 1);
  auto S = type_distribution(star(3), 1);
  CHECK(S.mass_of(local_type(star(3), 0, 1)) == Rational(1, 4));
  CHECK(S.mass_of(local_type(star(3), 1, 1)) == Rational(3, 4));

  auto A = random_mapping(7, 1), B = random_mapping(5, 2);
  auto U = type_distribution(disjoint_union(A, B), 1);
  auto mA = type_distribution(A, 1), mB = type_distribution(B, 1);
  Rational total = 0;
  for (const auto& e : U.entries()) {
    CHECK(e.mass == (7 * mA.mass_of(e.type) + 5 * mB.mass_of(e.type)) / 12);
    total += e.mass;
  }
  CHECK(total == 1);
  CHECK_THROWS_AS(TypeMeasure(1, {{local_type(cycle(3), 0, 1), Rational(1, 2)}}), Error);
}

TEST_CASE("admissibility counts") {
  auto S = star(4);
  auto leaf3 = local_type(S, 1, 3);
  CHECK(adm_plus(leaf3, local_type(S, 0, 1)) == 1);
  CHECK(adm_plus(leaf3, local_type(S, 1, 1)) == 0);
  auto fp = local_type(fixed_point(), 0, 2);
  CHECK(adm_plus(fp, project(fp, 1)) == 1);
  CHECK(code_of([&] { adm_plus(local_type(S, 1, 1), local_type(S, 0, 1)); }) == ErrorCode::RankTooLow);

  auto S5 = star(5);
  auto center = local_type(S5, 0, 6);
  CHECK(adm_minus(center, local_type(S5, 1, 2)) == 3);
  CHECK(adm_minus(center, local_type(S5, 0, 2)) == 1);
  CHECK(adm_minus(local_type(cycle(3), 0, 4), local_type(cycle(3), 0, 1)) == 1);
  CHECK(code_of([&] { adm_minus(local_type(S5, 0, 4), local_type(S5, 1, 2)); }) == ErrorCode::RankTooLow);

  // Caps hold and the count does not depend on the chosen witness.
  for (std::uint64_t k = 0; k < 20; ++k) {
    auto F = random_mapping(25, 6000 + k);
    for (Element u = 0; u < F.size(); ++u)
      for (Element w : {Element(0), Element(u / 2)}) {
        auto tu = local_type(F, u, 3), tw = local_type(F, w, 3);
        if (!(tu == tw)) continue;
        for (Element x = 0; x < F.size(); x += 3) {
          auto t = local_type(F, x, 1);
          CHECK(adm_minus(tu, t) <= 2);
          CHECK(adm_minus(tu, t) == adm_minus(tw, t));
        }
      }
  }
}

TEST_CASE("compact witnesses keep the type") {
  for (std::uint64_t k = 0; k < 20; ++k) {
    auto F = random_mapping(30, 7000 + k, {{"P", Rational(1, 2)}});
    for (Element v = 0; v < F.size(); v += 4)
      for (std::size_t r = 0; r <= 3; ++r) {
        auto t = local_type(F, v, r);
        auto c = compact_witness(t);
        CHECK(c == t);
        for (std::size_t s = 0; s < r; ++s) CHECK(project(c, s) == project(t, s));
        if (r >= 1) CHECK(transport(c) == transport(t));
      }
  }
}

TEST_CASE("formula consistency of equal types") {
  FormulaGenerator gen({"P"}, 99);
  for (std::uint64_t k = 0; k < 20; ++k) {
    auto F = random_mapping(10, 8000 + k, {{"P", Rational(1, 2)}});
    auto G = random_mapping(10, 9000 + k, {{"P", Rational(1, 2)}});
    for (int trial = 0; trial < 10; ++trial) {
      auto phi = gen.generate(1, 3, true);
      const auto r = rank(phi, RankKind::Local);
      for (Element u = 0; u < F.size(); ++u)
        for (Element v = 0; v < G.size(); ++v)
          if (local_type(F, u, r) == local_type(G, v, r))
            CHECK(evaluate(F, phi, {{"x1", u}}) == evaluate(G, phi, {{"x1", v}}));
    }
  }
}
