#pragma once

#include <json.hpp>

#include "charp/ratfun.hpp"
#include "charp/rationals.hpp"

namespace charp {

using json = nlohmann::json;

// Shared JSON encodings:
//   field               {"p": int, "k": int, "modulus": [ints]}
//   element             [ints]            (k residues, low to high)
//   polynomial          [element, ...]    (low to high)
//   rational function   {"num": poly, "den": poly}
//   point               "inf" or element
//   rational number     "a/b"
// Decoding validates shapes and reports JSON-pointer-style locations.

json field_to_json(const Field& f);
Field field_from_json(const json& j, const std::string& where);

json element_to_json(const FieldElement& x);
FieldElement element_from_json(const json& j, Field f, const std::string& where);

json poly_to_json(const Polynomial& p);
Polynomial poly_from_json(const json& j, Field f, const std::string& where);

json ratfun_to_json(const RationalFunction& r);
RationalFunction ratfun_from_json(const json& j, Field f, const std::string& where);

json point_to_json(const Point& p);
Point point_from_json(const json& j, Field f, const std::string& where);

json rat_to_json(const Rat& r);
Rat rat_from_json(const json& j, const std::string& where);

// decoding helpers
const json& require_key(const json& j, const std::string& key, const std::string& where);
u64 require_uint(const json& j, const std::string& where);

}  // namespace charp
