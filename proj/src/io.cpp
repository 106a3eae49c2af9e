#include "fmlim/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "fmlim/error.hpp"

namespace fmlim {

std::string format_map(const FiniteMapping& F) {
  std::ostringstream out;
  const auto& sig = F.signature();
  out << "fmap 1\n";
  out << "n " << F.size() << "\n";
  out << "function " << sig.function() << "\n";
  out << "predicates";
  for (const auto& p : sig.predicates()) out << ' ' << p;
  out << "\n";
  for (Element v = 0; v < F.size(); ++v) {
    out << v << " -> " << F.image(v);
    for (auto p : F.marks_of(v)) out << ' ' << sig.predicates()[p];
    out << "\n";
  }
  return out.str();
}

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& message) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + message);
}

std::int64_t parse_index(const std::string& word, std::size_t line) {
  if (word.empty() || word.find_first_not_of("0123456789") != std::string::npos || word.size() > 12)
    parse_error(line, "expected a non-negative integer, got '" + word + "'");
  return std::stoll(word);
}

}  // namespace

FiniteMapping parse_map(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  enum class Part { Magic, Size, Function, Predicates, Body } part = Part::Magic;
  RawMapping candidate;
  std::string function = "f";
  std::vector<std::string> predicates;
  std::vector<char> seen;
  std::int64_t n = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::vector<std::string> w;
    for (std::string x; words >> x;) w.push_back(x);
    if (w.empty()) continue;
    switch (part) {
      case Part::Magic:
        if (w.size() != 2 || w[0] != "fmap" || w[1] != "1") parse_error(line, "expected 'fmap 1'");
        part = Part::Size;
        break;
      case Part::Size:
        if (w.size() != 2 || w[0] != "n") parse_error(line, "expected 'n <size>'");
        n = parse_index(w[1], line);
        if (n == 0) parse_error(line, "a mapping needs at least one element");
        seen.assign(static_cast<std::size_t>(n), 0);
        candidate.image.assign(static_cast<std::size_t>(n), -1);
        part = Part::Function;
        break;
      case Part::Function:
        if (w.size() != 2 || w[0] != "function") parse_error(line, "expected 'function <name>'");
        function = w[1];
        part = Part::Predicates;
        break;
      case Part::Predicates:
        if (w[0] != "predicates") parse_error(line, "expected 'predicates ...'");
        predicates.assign(w.begin() + 1, w.end());
        try {
          candidate.signature = Signature(function, predicates);
        } catch (const Error& e) {
          parse_error(line, e.what());
        }
        for (const auto& p : predicates) candidate.marks[p];
        part = Part::Body;
        break;
      case Part::Body: {
        if (w.size() < 3 || w[1] != "->") parse_error(line, "expected '<id> -> <image> [marks]'");
        auto id = parse_index(w[0], line);
        auto image = parse_index(w[2], line);
        if (id >= n) parse_error(line, "id " + w[0] + " out of range");
        if (image >= n) parse_error(line, "image " + w[2] + " out of range");
        if (seen[id]) parse_error(line, "duplicate id " + w[0]);
        seen[id] = 1;
        candidate.image[id] = image;
        for (std::size_t k = 3; k < w.size(); ++k) {
          auto it = candidate.marks.find(w[k]);
          if (it == candidate.marks.end()) parse_error(line, "undeclared predicate '" + w[k] + "'");
          if (!it->second.empty() && it->second.back() == id) parse_error(line, "mark '" + w[k] + "' listed twice");
          it->second.push_back(id);
        }
        break;
      }
    }
  }
  if (part != Part::Body) parse_error(line, "incomplete header");
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v]) parse_error(line, "element " + std::to_string(v) + " has no record");
  return validate(candidate);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) fail(ErrorCode::IoError, "write to " + path + " failed");
}

FiniteMapping read_map(const std::string& path) { return parse_map(read_text(path)); }

void write_map(const FiniteMapping& F, const std::string& path) { write_text(path, format_map(F)); }

nlohmann::json type_to_json(const LocalType& t) {
  auto c = compact_witness(t);
  return {{"rank", c.rank()}, {"root", c.root()}, {"witness", format_map(c.witness())}};
}

LocalType type_from_json(const nlohmann::json& j) {
  try {
    auto W = parse_map(j.at("witness").get<std::string>());
    auto root = j.at("root").get<Element>();
    W.check_element(root);
    return local_type(W, root, j.at("rank").get<std::size_t>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed type: ") + e.what());
  }
}

nlohmann::json measure_to_json(const TypeMeasure& mu) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : mu.entries()) {
    auto t = type_to_json(e.type);
    t["mass"] = to_string(e.mass);
    entries.push_back(std::move(t));
  }
  return {{"schema", "fmlim.measure/1"}, {"rank", mu.rank()}, {"entries", entries}};
}

TypeMeasure measure_from_json(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<std::string>() != "fmlim.measure/1") fail(ErrorCode::ParseError, "unknown measure schema");
    const auto rank = j.at("rank").get<std::size_t>();
    std::vector<TypeMeasure::Entry> entries;
    for (const auto& e : j.at("entries")) {
      auto t = type_from_json(e);
      if (t.rank() != rank) fail(ErrorCode::ParseError, "measure entry has the wrong rank");
      entries.push_back({t, parse_rational(e.at("mass").get<std::string>())});
    }
    return TypeMeasure(rank, std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("malformed measure: ") + e.what());
  }
}

nlohmann::json certificate_to_json(const CompanionCertificate& cert, const TypeMeasure& mu) {
  std::map<TypeId, std::size_t> index;
  for (std::size_t a = 0; a < mu.size(); ++a) index[mu.entries()[a].type.id()] = a;
  nlohmann::json values = nlohmann::json::array();
  for (const auto& v : cert.values) {
    auto t = type_to_json(v.t);
    values.push_back({{"tau", index.at(v.tau.id())}, {"t", t}, {"s", to_string(v.s)}});
  }
  return {{"schema", "fmlim.certificate/1"}, {"R", cert.R}, {"r", cert.r}, {"values", values}};
}

}  // namespace fmlim
