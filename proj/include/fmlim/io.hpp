#pragma once

#include <string>

#include "json.hpp"

#include "fmlim/fmtp.hpp"
#include "fmlim/structure.hpp"
#include "fmlim/types.hpp"

namespace fmlim {

/// Canonical MapFile text (see docs/formats.md).
std::string format_map(const FiniteMapping& F);
/// Throws ParseError with the offending line number.
FiniteMapping parse_map(const std::string& text);

FiniteMapping read_map(const std::string& path);
void write_map(const FiniteMapping& F, const std::string& path);

/// Type with its compact witness ball inlined as MapFile text.
nlohmann::json type_to_json(const LocalType& t);
LocalType type_from_json(const nlohmann::json& j);

nlohmann::json measure_to_json(const TypeMeasure& mu);
TypeMeasure measure_from_json(const nlohmann::json& j);

/// Certificate values reference measure entries by index.
nlohmann::json certificate_to_json(const CompanionCertificate& cert, const TypeMeasure& mu);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace fmlim
