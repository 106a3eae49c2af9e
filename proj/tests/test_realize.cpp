#include "doctest.h"
#include "support.hpp"

#include "fmlim/cut.hpp"
#include "fmlim/equivalence.hpp"
#include "fmlim/pipeline.hpp"
#include "fmlim/random.hpp"
#include "fmlim/realize.hpp"
#include "fmlim/residualize.hpp"

using namespace fmlim;
using namespace testing;

namespace {

/// Disjoint union, ids of B shifted by |A|.
FiniteMapping disjoint(const FiniteMapping& A, const FiniteMapping& B) {
  std::vector<Element> image;
  for (Element v = 0; v < A.size(); ++v) image.push_back(A.image(v));
  for (Element v = 0; v < B.size(); ++v) image.push_back(static_cast<Element>(A.size() + B.image(v)));
  auto marks = A.all_extensions();
  auto other = B.all_extensions();
  for (std::size_t p = 0; p < marks.size(); ++p)
    for (auto v : other[p]) marks[p].push_back(static_cast<Element>(A.size() + v));
  return FiniteMapping(A.signature(), std::move(image), std::move(marks));
}

/// Fixed center 0 with `paths` chains x -> y -> 0.
FiniteMapping broom(std::size_t paths) {
  std::vector<Element> image{0};
  for (std::size_t i = 0; i < paths; ++i) {
    const auto y = static_cast<Element>(image.size());
    image.push_back(0);
    image.push_back(y);
  }
  return mapping(image);
}

bool same_distribution(const FiniteMapping& A, const FiniteMapping& B, std::size_t r) {
  return total_variation(type_distribution(A, r), type_distribution(B, r)) == 0;
}

}  // namespace

TEST_CASE("realizing the measure of a cut cycle") {
  auto cut = cycle_cut_product(cycle(3), 6, 2);
  auto mu = type_distribution(cut, 3);
  REQUIRE(mu.size() == 6);
  for (std::size_t m = 1; m <= 3; ++m) {
    auto F = realize(mu, 1, m);
    CHECK(F.size() == 6 * m);
    CHECK(total_variation(type_distribution(F, 1), project(mu, 1)) == 0);
  }
  auto single = realize(mu, 1, 1);
  CHECK(cycle_counts(single, 6)[6] == 1);
  CHECK(same_distribution(single, cut, 3));
}

TEST_CASE("realization plans satisfy the labelling conditions") {
  for (std::uint64_t k = 0; k < 6; ++k) {
    auto G = random_mapping(25, 70 + k, {{"P", Rational(1, 2)}});
    auto mu = type_distribution(cycle_cut_product(G, 6, 3), 3);
    auto plan = plan_realization(mu, 1);
    std::vector<LocalType> upsilon;
    for (auto z : plan.zeta) upsilon.push_back(mu.entries()[z].type);
    auto F = realize(mu, 1);
    CHECK(verify_upsilon(F, upsilon, 1, 3));
    for (Element v = 0; v < F.size(); ++v) CHECK(local_type(F, v, 1) == project(upsilon[v], 1));
  }
}

TEST_CASE("realization preconditions") {
  TypeMeasure leaf(3, {{local_type(star(5), 1, 3), Rational(1)}});
  CHECK(code_of([&] { realize(leaf, 1); }) == ErrorCode::PreconditionFailed);
  CHECK(code_of([] { realize(type_distribution(cycle(3), 2), 1); }) == ErrorCode::RankTooLow);
  CHECK(code_of([] { realize(type_distribution(cycle(3), 3), 1, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("labelling checks") {
  auto C = cycle(2);
  std::vector<LocalType> labels{local_type(C, 0, 3), local_type(C, 1, 3)};
  CHECK_FALSE(verify_upsilon(C, labels, 1, 2));
  CHECK(verify_upsilon(C, labels, 1, 1));

  auto P = mapping({1, 2, 3, 4, 5, 0}, {"P"}, {{0}});
  std::vector<LocalType> own;
  for (Element v = 0; v < 6; ++v) own.push_back(local_type(P, v, 3));
  CHECK(verify_upsilon(P, own, 1, 3));
  auto flipped = mapping({1, 2, 3, 4, 5, 0}, {"P"}, {{1}});
  CHECK_FALSE(verify_upsilon(flipped, own, 1, 3));
}

TEST_CASE("cut and rewire") {
  auto cut = cycle_cut_product(cycle(3), 6, 2);
  CHECK(cut.size() == 18);
  auto back = rewire(cut, 6, 2);
  CHECK(back.size() == 18);
  CHECK(same_distribution(back, cycle(3), 2));

  auto fp = rewire(cycle_cut_product(fixed_point(), 2, 1), 2, 1);
  CHECK(same_distribution(fp, fixed_point(), 1));

  CHECK(code_of([] { rewire(cycle(3), 6, 2); }) == ErrorCode::MissingCutPredicates);

  for (std::uint64_t k = 0; k < 8; ++k) {
    auto G = random_mapping(10 + 5 * k, 50 + k, {{"P", Rational(1, 3)}});
    auto H = cycle_cut_product(G, 6, 2);
    auto counts = cycle_counts(H, H.size());
    for (std::size_t len = 1; len < counts.size(); ++len)
      if (counts[len] > 0) CHECK(len % 6 == 0);
    for (std::size_t r = 0; r <= 2; ++r) CHECK(same_distribution(rewire(H, 6, 2), G, r));
  }
}

TEST_CASE("cut marks parse") {
  auto u = parse_cut_mark("U3");
  REQUIRE(u);
  CHECK(u->is_u);
  CHECK(u->index == 3);
  auto t = parse_cut_mark("T2c3");
  REQUIRE(t);
  CHECK_FALSE(t->is_u);
  CHECK(t->cycle == std::optional<std::size_t>(3));
  CHECK_FALSE(parse_cut_mark("P"));
  CHECK_FALSE(parse_cut_mark("U"));
}

TEST_CASE("terminals and hubs") {
  CHECK(find_terminals(type_distribution(random_mapping(30, 5), 3), 1).empty());
  CHECK(find_terminals(type_distribution(fixed_point(), 3), 1).empty());

  const auto leaf = local_type(star(5), 1, 3);
  TypeMeasure mu(3, {{leaf, Rational(1)}});
  auto terminals = find_terminals(mu, 1);
  REQUIRE(terminals.size() == 1);
  CHECK(terminals.front() == leaf);

  const auto center = local_type(star(5), 0, 3);
  auto hubs = find_hubs(mu, terminals, 1, std::vector<LocalType>{local_type(cycle(4), 0, 3), center});
  REQUIRE(hubs.size() == 1);
  CHECK(hubs.front().second == center);
  CHECK(find_hubs(mu, {}, 1).empty());
  CHECK(code_of([&] { find_hubs(mu, terminals, 1, std::vector<LocalType>{local_type(cycle(4), 0, 3)}); }) ==
        ErrorCode::NoHubAvailable);
}

TEST_CASE("merging copies") {
  auto E10 = disjoint(star(4), star(4));
  CHECK(merge(E10, cycle(6), {}, 2, 3, 1).size() == 46);

  auto E = disjoint(broom(3), broom(3));
  const Element hub0 = 0, hub1 = 7;
  auto F2 = mapping({1, 1});
  std::map<Element, std::vector<Element>> hubs{{1, {hub0, hub1}}};
  const std::size_t nClose = 2, nAway = 3;
  auto M = merge(E, F2, hubs, nClose, nAway, 1);
  REQUIRE(M.size() == E.size() + F2.size() * nClose * nAway);

  const auto pathStart = local_type(E, 2, 2);
  for (std::size_t i = 0; i < nClose; ++i)
    for (std::size_t j = 0; j < nAway; ++j) {
      const auto base = static_cast<Element>(E.size() + (i * nAway + j) * F2.size());
      CHECK(M.image(base + 1) == hubs.at(1)[i]);
      CHECK(local_type(M, base, 2) == pathStart);
    }
  CHECK(ef_equivalent(M, E, 2));

  const Rational bound = Rational(BigInt(E.size() + nClose * F2.size()), BigInt(E.size() + nAway * nClose * F2.size()));
  CHECK(stone_pairing(M, build_delta(2)) < bound);

  CHECK(code_of([&] { merge(E, F2, {{1, {hub0, 1}}}, 2, 1, 1); }) == ErrorCode::HubsTooClose);
  CHECK(code_of([&] { merge(E, F2, {{1, {hub0}}}, 2, 1, 1); }) == ErrorCode::InsufficientHubs);
}

TEST_CASE("residualization") {
  auto F = random_mapping(60, 12);
  auto res = residualize(F, Rational(1, 10));
  CHECK(apply_interpretation(res.interpretation, res.mapping) == F);
  CHECK(code_of([&] { residualize(F, Rational(0)); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { residualize(F, Rational(1)); }) == ErrorCode::InvalidArgument);

  auto residual = residualize(disjoint(star(2), star(2)), Rational(1, 2));
  CHECK(residual.cuts == 0);
}

TEST_CASE("pipeline") {
  auto F = random_mapping(80, 21);
  auto config = desk_schedule(1, Rational(1, 10));
  auto result = pipeline(F, 2, 1, Rational(1, 10), config);
  CHECK(ldist(result.output, F, 1, 1) <= Rational(1, 10));
  CHECK(result.report["final"]["within_epsilon"] == true);

  FiniteMapping stars = star(2);
  for (int i = 0; i < 9; ++i) stars = disjoint(stars, star(2));
  auto quiet = pipeline(stars, 2, 1, Rational(1, 5), desk_schedule(1, Rational(1, 5)));
  CHECK(same_distribution(quiet.output, stars, 1));

  auto code = code_of([] { reference_schedule(2, Rational(1, 10), 300); });
  CHECK(code == ErrorCode::ScheduleInfeasible);
  try {
    reference_schedule(2, Rational(1, 10), 300);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("cut = clean! = ") != std::string::npos);
  }
  CHECK(code_of([&] { pipeline(F, 2, 2, Rational(1, 10), config); }) == ErrorCode::InvalidArgument);
}
