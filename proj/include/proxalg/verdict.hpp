#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace proxalg {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Error, Undecidable };

inline std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Error: return "error";
    case Status::Undecidable: return "undecidable";
  }
  return "error";
}

// Outcome of a check. On failure `axiom` names the violated law and
// `counterexample` holds the witnessing elements in their JSON encodings,
// so a failing run can be replayed by hand.
struct Verdict {
  Status status = Status::Pass;
  std::string axiom;
  Json counterexample;
  std::uint64_t seed = 0;
  std::uint64_t checked = 0;

  bool passed() const { return status == Status::Pass; }

  static Verdict pass(std::uint64_t checked = 0, std::uint64_t seed = 0) {
    Verdict v;
    v.status = Status::Pass;
    v.checked = checked;
    v.seed = seed;
    return v;
  }
  static Verdict fail(std::string axiom, Json cex = {}, std::uint64_t seed = 0) {
    Verdict v;
    v.status = Status::Fail;
    v.axiom = std::move(axiom);
    v.counterexample = std::move(cex);
    v.seed = seed;
    return v;
  }
  static Verdict undecidable(std::string why, Json cex = {}) {
    Verdict v;
    v.status = Status::Undecidable;
    v.axiom = std::move(why);
    v.counterexample = std::move(cex);
    return v;
  }

  Json to_json() const {
    Json j;
    j["status"] = status_name(status);
    if (!axiom.empty()) j["law"] = axiom;
    if (!counterexample.is_null()) j["counterexample"] = counterexample;
    j["seed"] = seed;
    j["checked"] = checked;
    return j;
  }
};

}  // namespace proxalg
