#pragma once

#include <nlohmann/json.hpp>

#include "proxalg/finba.hpp"
#include "proxalg/rational.hpp"
#include "proxalg/regopen.hpp"

// JSON encodings of the value types. Rationals travel as "p/q" strings so
// that no reader ever sees a rounded number.

namespace proxalg {

inline void to_json(nlohmann::ordered_json& j, const Interval& iv) {
  j = nlohmann::ordered_json{{"lo", rat_str(iv.lo)},
                             {"hi", rat_str(iv.hi)},
                             {"lo_open", iv.lo_open},
                             {"hi_open", iv.hi_open}};
}

inline void from_json(const nlohmann::ordered_json& j, Interval& iv) {
  iv.lo = rat_parse(j.at("lo").get<std::string>());
  iv.hi = rat_parse(j.at("hi").get<std::string>());
  iv.lo_open = j.value("lo_open", true);
  iv.hi_open = j.value("hi_open", true);
}

inline void to_json(nlohmann::ordered_json& j, const RegOpen& u) {
  j = nlohmann::ordered_json{{"parts", u.parts}};
}

inline void from_json(const nlohmann::ordered_json& j, RegOpen& u) {
  std::vector<Interval> raw = j.at("parts").get<std::vector<Interval>>();
  RegOpen canon = regularize(raw);
  // Inputs must already be in canonical regular-open form; silently fixing
  // them up would mask malformed files.
  if (canon.parts != raw)
    throw std::invalid_argument("regopen parts are not canonical (run regularize first)");
  u = canon;
}

}  // namespace proxalg
