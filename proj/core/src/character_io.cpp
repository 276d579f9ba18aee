#include "iwasawa/character_io.hpp"

#include <fstream>
#include <sstream>

#include "iwasawa/errors.hpp"
#include "json.hpp"

namespace iwasawa {

DirichletCharacter parse_character_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CharacterError(std::string("character file is not valid JSON: ") + e.what(),
                         "byte=" + std::to_string(e.byte));
  }
  if (!doc.is_object()) throw CharacterError("character file must hold an object", "root");
  for (const char* key : {"p", "d", "values"}) {
    if (!doc.contains(key)) throw CharacterError(std::string("missing key \"") + key + "\"", key);
  }
  if (!doc["p"].is_number_unsigned() || !doc["d"].is_number_unsigned()) {
    throw CharacterError("\"p\" and \"d\" must be positive integers", "p,d");
  }
  if (!doc["values"].is_object()) throw CharacterError("\"values\" must be an object", "values");
  const unsigned p = doc["p"].get<unsigned>();
  const unsigned d = doc["d"].get<unsigned>();
  std::map<unsigned, long> exps;
  for (const auto& [key, val] : doc["values"].items()) {
    unsigned long a = 0;
    std::size_t used = 0;
    try {
      a = std::stoul(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size()) throw CharacterError("value key \"" + key + "\" is not an integer", key);
    if (!val.is_number_integer()) {
      throw CharacterError("exponent for a=" + key + " is not an integer", key);
    }
    exps[static_cast<unsigned>(a)] = val.get<long>();
  }
  try {
    return DirichletCharacter::build_validate(p, d, exps);
  } catch (const DomainError& e) {
    throw CharacterError(e.what(), "p=" + std::to_string(p));
  }
}

DirichletCharacter load_character_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CharacterError("cannot open character file " + path, path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_character_json(buf.str());
}

std::string character_to_json(const DirichletCharacter& chi) {
  nlohmann::ordered_json doc;
  doc["p"] = chi.prime();
  doc["d"] = chi.conductor();
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  for (unsigned a = 1; a < chi.conductor(); ++a) {
    if (chi.table()[a] >= 0) values[std::to_string(a)] = chi.table()[a];
  }
  doc["values"] = values;
  return doc.dump();
}

}  // namespace iwasawa
