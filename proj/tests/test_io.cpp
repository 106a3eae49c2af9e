#include "doctest.h"
#include "support.hpp"

#include <filesystem>

#include "fmlim/io.hpp"
#include "fmlim/random.hpp"

using namespace fmlim;
using namespace testing;

TEST_CASE("map text round trip") {
  const std::string c3 = "fmap 1\nn 3\nfunction f\npredicates\n0 -> 1\n1 -> 2\n2 -> 0\n";
  CHECK(format_map(cycle(3)) == c3);
  CHECK(format_map(parse_map(c3)) == c3);

  auto F = random_mapping(40, 8, {{"Q", Rational(1, 2)}, {"P", Rational(1, 3)}});
  auto text = format_map(F);
  CHECK(parse_map(text) == F);
  CHECK(format_map(parse_map(text)) == text);

  auto commented = parse_map("# a comment\nfmap 1\nn 2\nfunction g\npredicates P\n1 -> 0 P\n0 -> 0  # fixed\n");
  CHECK(commented.size() == 2);
  CHECK(commented.signature().function() == "g");
  CHECK(commented.has_mark(0, 1));
}

TEST_CASE("map parse errors") {
  auto error_of = [](const std::string& text) -> std::string {
    try {
      parse_map(text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      return e.what();
    }
    return "";
  };
  const std::string head = "fmap 1\nn 2\nfunction f\npredicates P\n";
  CHECK(error_of(head + "0 -> 1\n0 -> 1\n").find("line 6") != std::string::npos);
  CHECK(error_of(head + "0 -> 2\n1 -> 0\n").find("line 5") != std::string::npos);
  CHECK_FALSE(error_of(head + "0 -> 1 Q\n1 -> 0\n").empty());
  CHECK_FALSE(error_of(head + "0 -> 1\n").empty());
  CHECK_FALSE(error_of("fmap 2\nn 1\nfunction f\npredicates\n0 -> 0\n").empty());
  CHECK_FALSE(error_of(head + "0 => 1\n1 -> 0\n").empty());
  CHECK(error_of(head + "0 -> 1 P P\n1 -> 0\n").find("line 5") != std::string::npos);
}

TEST_CASE("files") {
  const auto path = (std::filesystem::temp_directory_path() / "fmlim_io_test.map").string();
  auto F = random_mapping(12, 1, {{"P", Rational(1, 2)}});
  write_map(F, path);
  CHECK(read_map(path) == F);
  std::filesystem::remove(path);
  CHECK(code_of([] { read_map("/nonexistent/dir/file.map"); }) == ErrorCode::IoError);
}

TEST_CASE("type and measure json") {
  auto F = random_mapping(25, 3, {{"P", Rational(1, 2)}});
  auto t = local_type(F, 4, 2);
  auto back = type_from_json(nlohmann::json::parse(type_to_json(t).dump()));
  CHECK(back == t);

  auto mu = type_distribution(F, 3);
  auto j = measure_to_json(mu);
  CHECK(j["schema"] == "fmlim.measure/1");
  auto nu = measure_from_json(nlohmann::json::parse(j.dump()));
  CHECK(nu.size() == mu.size());
  CHECK(total_variation(mu, nu) == 0);

  auto cert = std::get<CompanionCertificate>(restricted_fmtp_certificate(mu, 1));
  auto cj = certificate_to_json(cert, mu);
  CHECK(cj.is_object());

  CHECK(code_of([] { measure_from_json(nlohmann::json::parse(R"({"schema":"other"})")); }) == ErrorCode::ParseError);
}

TEST_CASE("random mappings") {
  CHECK(random_mapping(50, 9) == random_mapping(50, 9));
  CHECK_FALSE(random_mapping(50, 9) == random_mapping(50, 10));
  CHECK(random_mapping(1, 123) == fixed_point());
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));

  auto marked = random_mapping(2000, 5, {{"P", Rational(1, 4)}});
  CHECK(marked.extension(0).size() > 400);
  CHECK(marked.extension(0).size() < 600);
}

TEST_CASE("cycle statistics") {
  for (std::size_t n : {1, 5, 100, 2000}) CHECK(expected_cycles(n, 1) == 1);
  CHECK(expected_cycles(2000, 2) == Rational(1999, 4000));
  for (std::size_t r = 1; r <= 3; ++r) {
    const Rational limit = Rational(BigInt(1), BigInt(r));
    Rational prev = 0;
    for (std::size_t n : {100, 1000, 10000}) {
      const Rational gap = abs(expected_cycles(n, r) - limit);
      if (n > 100) CHECK(gap <= prev);
      prev = gap;
    }
  }
  CHECK(cycle_counts(cycle(3), 3) == std::vector<std::size_t>{0, 0, 0, 1});

  auto rows = cycle_statistics(100, 2000, 2, 11);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].r == 1);
  CHECK(rows[0].exact == 1);
  CHECK(std::abs(rows[0].empirical - 1.0) < 0.1);
}
