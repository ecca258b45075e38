#pragma once

#include <string>

#include "proxalg/flat.hpp"
#include "proxalg/jsonio.hpp"

namespace proxalg {

inline void to_json(nlohmann::ordered_json& j, const FlatQ& a) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& [t, e] : a.steps)
    steps.push_back(nlohmann::ordered_json::array({rat_str(t), e}));
  j = nlohmann::ordered_json{{"carrier", "finba:" + std::to_string(a.alg.atoms)},
                             {"steps", steps}};
}

inline void to_json(nlohmann::ordered_json& j, const FlatRO& a) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& [t, e] : a.steps) {
    nlohmann::ordered_json je = e;
    steps.push_back(nlohmann::ordered_json::array({rat_str(t), je}));
  }
  j = nlohmann::ordered_json{{"carrier", "regopen"}, {"steps", steps}};
}

inline void from_json(const nlohmann::ordered_json& j, FlatQ& a) {
  std::string carrier = j.at("carrier").get<std::string>();
  if (carrier.rfind("finba:", 0) != 0)
    throw std::invalid_argument("expected a finba carrier");
  FinBoolAlg alg(std::stoi(carrier.substr(6)));
  std::vector<std::pair<Rational, std::uint32_t>> steps;
  for (const auto& s : j.at("steps"))
    steps.emplace_back(rat_parse(s.at(0).get<std::string>()), s.at(1).get<std::uint32_t>());
  for (const auto& [t, e] : steps)
    if ((e & ~alg.top()) != 0) throw std::invalid_argument("mask outside the algebra");
  a = FlatQ::from_samples(alg, std::move(steps));
}

inline void from_json(const nlohmann::ordered_json& j, FlatRO& a) {
  if (j.at("carrier").get<std::string>() != "regopen")
    throw std::invalid_argument("expected a regopen carrier");
  std::vector<std::pair<Rational, RegOpen>> steps;
  for (const auto& s : j.at("steps"))
    steps.emplace_back(rat_parse(s.at(0).get<std::string>()), s.at(1).get<RegOpen>());
  a = FlatRO::from_samples(RegOpenAlg{}, std::move(steps));
}

template <class Alg>
void to_json(nlohmann::ordered_json& j, const OrthDecomp<Alg>& d) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [v, cell] : d.terms) {
    nlohmann::ordered_json je = cell;
    terms.push_back(nlohmann::ordered_json::array({rat_str(v), je}));
  }
  j = nlohmann::ordered_json{{"terms", terms}, {"full", d.full}};
}

}  // namespace proxalg
