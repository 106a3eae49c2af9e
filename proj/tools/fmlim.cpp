#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fmlim/compress.hpp"
#include "fmlim/cut.hpp"
#include "fmlim/equivalence.hpp"
#include "fmlim/error.hpp"
#include "fmlim/fmtp.hpp"
#include "fmlim/io.hpp"
#include "fmlim/pipeline.hpp"
#include "fmlim/random.hpp"
#include "fmlim/realize.hpp"
#include "fmlim/types.hpp"

using nlohmann::json;
using namespace fmlim;

namespace {

void emit_map(const FiniteMapping& F, const std::string& out) {
  if (out.empty()) {
    std::cout << format_map(F);
  } else {
    write_map(F, out);
  }
}

void emit_json(const json& j, const std::string& out = {}) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text(out, j.dump(2) + "\n");
  }
}

json histogram(const FiniteMapping& F, std::size_t r, bool witnesses) {
  auto types = local_types(F, r);
  auto mu = type_distribution(F, r);
  json list = json::array();
  for (const auto& e : mu.entries()) {
    std::size_t count = 0;
    for (const auto& t : types) count += t == e.type;
    json item{{"mass", to_string(e.mass)}, {"count", count}, {"representative", e.type.root()}};
    if (witnesses) item["type"] = type_to_json(e.type);
    list.push_back(item);
  }
  return {{"schema", "fmlim.types/1"}, {"rank", r}, {"size", F.size()}, {"types", list}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fmlim: local types, games and approximation pipelines for finite mappings"};
  app.require_subcommand(1);

  std::string file, other, out;
  std::size_t rank = 1, r = 1, p = 1, m = 6, clean = 3, multiplier = 1, trials = 1000, n = 100, samples = 1000,
              rmax = 3;
  std::uint64_t seed = 1;
  std::string kind = "local", eps = "1/10";
  bool witnesses = false, reference = false, table = false;
  std::vector<std::string> marks;

  auto* types = app.add_subcommand("types", "rank-r type histogram as JSON");
  types->add_option("file", file)->required();
  types->add_option("--rank", rank, "type rank")->required();
  types->add_flag("--witness", witnesses, "include witness balls");

  auto* dist = app.add_subcommand("dist", "local or first-order distance between two mappings");
  dist->add_option("a", file)->required();
  dist->add_option("b", other)->required();
  dist->add_option("--p", p, "number of free variables");
  dist->add_option("--r", r, "rank");
  dist->add_option("--kind", kind, "local | fo")->check(CLI::IsMember({"local", "fo"}));

  auto* ef = app.add_subcommand("ef", "decide r-equivalence by the Ehrenfeucht–Fraïssé game");
  ef->add_option("a", file)->required();
  ef->add_option("b", other)->required();
  ef->add_option("--r", r)->required();

  auto* fmtp = app.add_subcommand("fmtp", "check the mass transport identity on random subset pairs");
  fmtp->add_option("file", file)->required();
  fmtp->add_option("--trials", trials);
  fmtp->add_option("--seed", seed);

  auto* extract = app.add_subcommand("measure", "type distribution with witnesses, as a measure file");
  extract->add_option("file", file)->required();
  extract->add_option("--rank", rank)->required();
  extract->add_option("-o,--output", out);

  auto* cert = app.add_subcommand("certificate", "restricted FMTP certificate of a mapping's type measure");
  cert->add_option("file", file)->required();
  cert->add_option("--rank", rank)->required();
  cert->add_option("--r", r)->required();

  auto* cut = app.add_subcommand("cut", "cycle-cut product");
  cut->add_option("file", file)->required();
  cut->add_option("--m", m)->required();
  cut->add_option("--type-rank", rank)->required();
  cut->add_option("-o,--output", out);

  auto* rewire_cmd = app.add_subcommand("rewire", "undo a cycle cut");
  rewire_cmd->add_option("file", file)->required();
  rewire_cmd->add_option("--m", m)->required();
  rewire_cmd->add_option("--clean", clean)->required();
  rewire_cmd->add_option("-o,--output", out);

  auto* realize_cmd = app.add_subcommand("realize", "build a mapping from a measure file");
  realize_cmd->add_option("measure", file)->required();
  realize_cmd->add_option("--r", r)->required();
  realize_cmd->add_option("--multiplier", multiplier);
  realize_cmd->add_option("-o,--output", out);

  auto* compress_cmd = app.add_subcommand("compress", "standard r-approximation");
  compress_cmd->add_option("file", file)->required();
  compress_cmd->add_option("--r", r)->required();
  compress_cmd->add_option("-o,--output", out);

  auto* pipe = app.add_subcommand("pipeline", "end-to-end approximation; prints the report");
  pipe->add_option("file", file)->required();
  pipe->add_option("--p", p);
  pipe->add_option("--r", r);
  pipe->add_option("--eps", eps);
  pipe->add_flag("--paper-schedule", reference, "use the full rank schedule (rr = 4r², cut = clean!)");
  pipe->add_option("-o,--output", out, "where to write the output mapping");

  auto* rnd = app.add_subcommand("random", "seeded random mapping");
  rnd->add_option("--n", n)->required();
  rnd->add_option("--seed", seed);
  rnd->add_option("--mark", marks, "NAME=DENSITY, e.g. P=1/2");
  rnd->add_option("-o,--output", out);

  auto* cycles = app.add_subcommand("cycles", "cycle counts of random mappings vs the exact mean");
  cycles->add_option("--n", n)->required();
  cycles->add_option("--samples", samples);
  cycles->add_option("--rmax", rmax);
  cycles->add_option("--seed", seed);
  cycles->add_flag("--table", table, "human-readable table instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*types) {
      emit_json(histogram(read_map(file), rank, witnesses));
    } else if (*dist) {
      auto A = read_map(file), B = read_map(other);
      Rational d = kind == "local" ? ldist(A, B, p, r) : fo_dist(A, B, p, r);
      emit_json({{"kind", kind}, {"p", p}, {"r", r}, {"distance", to_string(d)}});
    } else if (*ef) {
      emit_json({{"r", r}, {"equivalent", ef_equivalent(read_map(file), read_map(other), r)}});
    } else if (*fmtp) {
      auto F = read_map(file);
      std::mt19937_64 gen(seed);
      std::size_t failures = 0;
      for (std::size_t k = 0; k < trials; ++k) {
        std::vector<Element> A, B;
        for (Element v = 0; v < F.size(); ++v) {
          if (gen() & 1) A.push_back(v);
          if (gen() & 1) B.push_back(v);
        }
        failures += !check_fmtp(F, A, B).holds();
      }
      emit_json({{"trials", trials}, {"failures", failures}});
    } else if (*extract) {
      emit_json(measure_to_json(type_distribution(read_map(file), rank)), out);
    } else if (*cert) {
      auto mu = type_distribution(read_map(file), rank);
      auto result = restricted_fmtp_certificate(mu, r);
      if (auto* v = std::get_if<Violation>(&result)) {
        emit_json({{"certified", false},
                   {"violation", {{"t1", type_to_json(v->t1)}, {"t2", type_to_json(v->t2)}, {"lhs", to_string(v->lhs)},
                                  {"rhs", to_string(v->rhs)}, {"reason", v->reason}}}});
        return 1;
      }
      const auto& c = std::get<CompanionCertificate>(result);
      auto check = verify_certificate(mu, c);
      emit_json({{"certified", true}, {"reverified", !check}, {"measure", measure_to_json(mu)},
                 {"certificate", certificate_to_json(c, mu)}});
    } else if (*cut) {
      emit_map(cycle_cut_product(read_map(file), m, rank), out);
    } else if (*rewire_cmd) {
      emit_map(rewire(read_map(file), m, clean), out);
    } else if (*realize_cmd) {
      auto mu = measure_from_json(json::parse(read_text(file)));
      emit_map(realize(mu, r, multiplier), out);
    } else if (*compress_cmd) {
      emit_map(standard_r_approximation(read_map(file), r), out);
    } else if (*pipe) {
      auto F = read_map(file);
      const Rational epsilon = parse_rational(eps);
      auto config = reference ? reference_schedule(r, epsilon, F.size()) : desk_schedule(r, epsilon);
      auto result = pipeline(F, p, r, epsilon, config);
      if (!out.empty()) write_map(result.output, out);
      emit_json(result.report);
    } else if (*rnd) {
      std::vector<std::pair<std::string, Rational>> densities;
      for (const auto& spec : marks) {
        auto eq = spec.find('=');
        if (eq == std::string::npos) fail(ErrorCode::InvalidArgument, "--mark expects NAME=DENSITY");
        densities.emplace_back(spec.substr(0, eq), parse_rational(spec.substr(eq + 1)));
      }
      emit_map(random_mapping(n, seed, densities), out);
    } else if (*cycles) {
      auto rows = cycle_statistics(n, samples, rmax, seed);
      if (table) {
        std::cout << "r\tempirical_mean\texact_mean\texact_mean_float\n";
        for (const auto& row : rows)
          std::cout << row.r << '\t' << row.empirical << '\t' << to_string(row.exact) << '\t' << to_double(row.exact) << "\n";
      } else {
        json list = json::array();
        for (const auto& row : rows)
          list.push_back({{"r", row.r}, {"empirical_mean_float", row.empirical}, {"exact_mean", to_string(row.exact)}});
        emit_json({{"n", n}, {"samples", samples}, {"seed", seed}, {"rows", list}});
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
