#pragma once

#include <string>

#include "iwasawa/characters.hpp"

namespace iwasawa {

// {"p": 5, "d": 4, "values": {"1": 0, "3": 2}} with values exponents of
// omega(g) mod p-1 (g the least primitive root mod p). Validation failures
// raise CharacterError carrying the witness.
DirichletCharacter parse_character_json(const std::string& text);
DirichletCharacter load_character_file(const std::string& path);
std::string character_to_json(const DirichletCharacter& chi);

}  // namespace iwasawa
