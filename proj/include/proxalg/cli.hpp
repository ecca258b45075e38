#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "proxalg/functors.hpp"
#include "proxalg/random.hpp"

namespace proxalg {

struct CliOptions {
  bool json = false;
  std::optional<std::uint64_t> seed;
  bool exhaustive = false;
  int samples = 0;  // 0 = per-suite default
  int max_atoms = 3;
};

struct CliResult {
  int exit_code = 0;
  Json report;
};

// Domain-level failure of an otherwise valid instance (non-invertible
// element, join outside the decidable fragment, unrelated interpolation
// inputs). Distinct from parse/validation problems, which exit with 2.
struct TypedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace cli_detail {

inline std::uint64_t effective_seed(const Json& inst, const CliOptions& opt) {
  if (opt.seed) return *opt.seed;
  if (inst.contains("seed")) return inst.at("seed").get<std::uint64_t>();
  return 0;
}

inline int effective_samples(const Json& inst, const CliOptions& opt, int dflt) {
  if (opt.samples > 0) return opt.samples;
  if (inst.contains("samples")) return inst.at("samples").get<int>();
  return dflt;
}

inline int finba_atoms(const std::string& carrier) {
  if (carrier.rfind("finba:", 0) != 0)
    throw std::invalid_argument("expected carrier \"finba:N\" or \"regopen\"");
  int n = std::stoi(carrier.substr(6));
  return n;
}

inline ProximityRel<FinBoolAlg> parse_finba_relation(const FinBoolAlg& A, const Json& r) {
  if (r.is_string()) {
    if (r.get<std::string>() == "leq") return leq_rel(A);
    throw std::invalid_argument("unknown relation \"" + r.get<std::string>() +
                                "\" on a finite carrier");
  }
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const auto& p : r) {
    std::uint32_t a = p.at(0).get<std::uint32_t>();
    std::uint32_t b = p.at(1).get<std::uint32_t>();
    if ((a & ~A.top()) != 0 || (b & ~A.top()) != 0)
      throw std::invalid_argument("relation pair outside the algebra");
    pairs.insert({a, b});
  }
  return table_rel(A, pairs);
}

inline std::vector<RegOpen> regopen_pool(std::uint64_t seed, int n) {
  Sampler s(seed);
  std::vector<RegOpen> pool{regopen_empty(), regopen_full()};
  for (int i = 0; i < n; ++i) {
    RegOpen v = s.regopen();
    pool.push_back(v);
    if (!v.empty()) pool.push_back(shrink_witness(v));
  }
  return pool;
}

template <class Alg>
std::vector<FlatElem<Alg>> flat_pool(const Alg& A, std::uint64_t seed, int n) {
  Sampler s(seed);
  std::vector<FlatElem<Alg>> pool{FlatElem<Alg>::zero(A), FlatElem<Alg>::one(A)};
  for (int i = 0; i < n; ++i) {
    auto a = s.flat(A);
    pool.push_back(a);
    pool.push_back(flat_add(a, FlatElem<Alg>::constant(A, Rational(s.pick(0, 2)))));
  }
  return pool;
}

// Pool whose related pairs under the closure lift are guaranteed to exist:
// indicators of a set and of a shrunken copy at comparable heights.
inline std::vector<FlatRO> closure_flat_pool(std::uint64_t seed, int n) {
  RegOpenAlg RO;
  Sampler s(seed);
  std::vector<FlatRO> pool{FlatRO::zero(RO), FlatRO::one(RO)};
  for (int i = 0; i < n; ++i) {
    RegOpen v = s.regopen();
    if (v.empty()) continue;
    RegOpen u = shrink_witness(v);
    Rational h(s.pick(1, 4), s.pick(1, 2));
    pool.push_back(FlatRO::chi(RO, u, h));
    pool.push_back(FlatRO::chi(RO, v, h + Rational(s.pick(0, 2))));
    pool.push_back(FlatRO::constant(RO, h));
  }
  return pool;
}

template <class Alg>
FlatRel<Alg> named_flat_rel(const Alg& A, const std::string& name) {
  FlatRel<Alg> out;
  out.alg = A;
  out.name = name;
  if (name == "full") {
    out.decide = [](const FlatElem<Alg>&, const FlatElem<Alg>&) { return true; };
  } else if (name == "equality") {
    out.decide = [](const FlatElem<Alg>& a, const FlatElem<Alg>& b) { return a == b; };
    out.shrink = [A](const FlatElem<Alg>& a) -> std::optional<FlatElem<Alg>> {
      if (a == FlatElem<Alg>::zero(A)) return std::nullopt;
      return flat_scalar(make_rational(1, 2), a);
    };
  } else {
    throw std::invalid_argument("unknown relation \"" + name + "\"");
  }
  return out;
}

inline std::vector<Rational> default_scalars() {
  return {make_rational(1, 2), Rational(1), Rational(2)};
}

inline Verdict check_devries(const Json& inst, const CliOptions& opt) {
  std::string carrier = inst.at("carrier").get<std::string>();
  if (carrier == "regopen") {
    if (inst.at("relation").get<std::string>() != "closure")
      throw std::invalid_argument("the regopen carrier supports the \"closure\" relation");
    std::uint64_t seed = effective_seed(inst, opt);
    int n = effective_samples(inst, opt, 40);
    return check_de_vries_sampled(closure_rel(), regopen_pool(seed, n), seed);
  }
  FinBoolAlg A(finba_atoms(carrier));
  return check_de_vries(parse_finba_relation(A, inst.at("relation")));
}

inline Verdict check_proximity_suite(const Json& inst, const CliOptions& opt) {
  std::string carrier = inst.at("carrier").get<std::string>();
  std::string rel = inst.at("relation").get<std::string>();
  std::uint64_t seed = effective_seed(inst, opt);
  int n = effective_samples(inst, opt, 12);
  if (carrier == "regopen") {
    RegOpenAlg RO;
    auto pool = closure_flat_pool(seed, n);
    if (rel == "closure")
      return check_proximity(lift_proximity(closure_rel()), pool, default_scalars(), seed);
    return check_proximity(named_flat_rel(RO, rel), pool, default_scalars(), seed);
  }
  FinBoolAlg A(finba_atoms(carrier));
  auto pool = flat_pool(A, seed, n);
  if (rel == "leq")
    return check_proximity(lift_proximity(leq_rel(A)), pool, default_scalars(), seed);
  return check_proximity(named_flat_rel(A, rel), pool, default_scalars(), seed);
}

inline Verdict check_morphism_suite(const Json& inst) {
  MorphismTable t = inst.at("sigma").get<MorphismTable>();
  auto rel_src = inst.contains("source_relation")
                     ? parse_finba_relation(t.source(), inst.at("source_relation"))
                     : leq_rel(t.source());
  auto rel_tgt = inst.contains("target_relation")
                     ? parse_finba_relation(t.target(), inst.at("target_relation"))
                     : leq_rel(t.target());
  return check_de_vries_morphism(t, rel_src, rel_tgt);
}

inline Verdict check_weakpm_suite(const Json& inst, const CliOptions& opt) {
  MorphismTable t = inst.at("sigma").get<MorphismTable>();
  WeakProxMorphism alpha{t};
  FinBoolAlg S = alpha.source();
  std::uint64_t seed = effective_seed(inst, opt);
  int n = effective_samples(inst, opt, 6);
  Sampler s(seed);
  std::vector<FlatQ> pool{FlatQ::zero(S), FlatQ::one(S)};
  for (auto e : S.elements())
    if (e != 0) pool.push_back(FlatQ::chi(S, e));
  for (int i = 0; i < n; ++i) pool.push_back(s.flat(S));
  return verify_full_morphism(alpha, pool, default_scalars(), seed);
}

inline Verdict check_claim_suite(const Json& inst, const CliOptions& opt) {
  std::uint64_t seed = effective_seed(inst, opt);
  std::vector<std::pair<StepFn, StepFn>> pairs;
  if (inst.contains("pairs")) {
    for (const auto& p : inst.at("pairs")) {
      StepFn f = normalize(p.at(0).get<StepFn>());
      StepFn g = normalize(p.at(1).get<StepFn>());
      pairs.emplace_back(std::move(f), std::move(g));
    }
  } else {
    int n = effective_samples(inst, opt, 200);
    Sampler s(seed);
    for (int i = 0; i < n; ++i) pairs.emplace_back(s.normal_stepfn(), s.normal_stepfn());
  }
  std::uint64_t checked = 0;
  for (const auto& [f, g] : pairs) {
    auto rep = claim_equivalence(f, g);
    ++checked;
    if (!rep.agree()) {
      Json cex{{"f", f},
               {"g", g},
               {"kt", rep.kt},
               {"threshold", rep.threshold},
               {"componentwise", rep.componentwise}};
      Verdict v = Verdict::fail("claim-agreement", std::move(cex), seed);
      v.checked = checked;
      return v;
    }
  }
  return Verdict::pass(checked, seed);
}

inline Verdict check_roundtrip_suite(const Json& inst, const CliOptions& opt) {
  std::uint64_t seed = effective_seed(inst, opt);
  int n = effective_samples(inst, opt, 100);
  std::uint64_t checked = 0;

  // indicator round trip on finite carriers, exhaustive
  for (int atoms = 0; atoms <= opt.max_atoms; ++atoms) {
    FinBoolAlg A(atoms);
    auto base = leq_rel(A);
    auto back = functor_id(functor_sp(base));
    for (auto e : A.elements())
      for (auto f : A.elements()) {
        ++checked;
        if (back.rel(e, f) != base.rel(e, f))
          return Verdict::fail("idempotent-roundtrip",
                               Json{{"atoms", atoms}, {"e", e}, {"f", f}}, seed);
      }
  }
  // indicator round trip over the regular opens, sampled
  {
    auto base = closure_rel();
    auto back = functor_id(functor_sp(base));
    Sampler s(seed);
    for (int i = 0; i < n; ++i) {
      RegOpen u = s.regopen();
      RegOpen v = s.regopen();
      ++checked;
      if (back.rel(u, v) != base.rel(u, v))
        return Verdict::fail("idempotent-roundtrip", Json{{"u", u}, {"v", v}}, seed);
    }
  }
  // level-set correspondence between normal functions and flat elements
  {
    Sampler s(seed + 1);
    RegOpenAlg RO;
    for (int i = 0; i < n; ++i) {
      auto f = s.normal_stepfn();
      ++checked;
      if (!(flat_to_stepfn(stepfn_to_flat(f)) == f))
        return Verdict::fail("iso-roundtrip", Json{{"fn", f}}, seed);
      auto b = s.flat(RO, 3, 4);
      if (!(stepfn_to_flat(flat_to_stepfn(b)) == b))
        return Verdict::fail("iso-roundtrip", Json{{"elem", b}}, seed);
    }
  }
  // decomposition round trip with the truncation identities
  {
    Sampler s(seed + 2);
    FinBoolAlg A(std::max(1, opt.max_atoms));
    for (int i = 0; i < n; ++i) {
      auto a = s.flat(A);
      ++checked;
      if (!(to_decreasing(to_orthogonal(a)) == a))
        return Verdict::fail("decomposition-roundtrip", Json{{"elem", a}}, seed);
      Verdict t = truncation_identity(a);
      if (!t.passed()) {
        t.counterexample["elem"] = a;
        return t;
      }
    }
  }
  return Verdict::pass(checked, seed);
}

inline Json parse_orth_terms_finba(const Json& jd, OrthDecomp<FinBoolAlg>& d) {
  FinBoolAlg A(finba_atoms(jd.at("carrier").get<std::string>()));
  d.alg = A;
  for (const auto& t : jd.at("terms")) {
    std::uint32_t cell = t.at(1).get<std::uint32_t>();
    if ((cell & ~A.top()) != 0) throw std::invalid_argument("mask outside the algebra");
    d.terms.emplace_back(rat_parse(t.at(0).get<std::string>()), cell);
  }
  return Json{};
}

inline Json parse_orth_terms_regopen(const Json& jd, OrthDecomp<RegOpenAlg>& d) {
  d.alg = RegOpenAlg{};
  for (const auto& t : jd.at("terms"))
    d.terms.emplace_back(rat_parse(t.at(0).get<std::string>()), t.at(1).get<RegOpen>());
  return Json{};
}

inline bool elem_is_finba(const Json& e) {
  return e.at("carrier").get<std::string>().rfind("finba:", 0) == 0;
}

}  // namespace cli_detail

inline CliResult run_check(const Json& inst, const std::string& suite,
                           const CliOptions& opt) {
  using namespace cli_detail;
  CliResult out;
  try {
    Verdict v;
    if (suite == "devries") v = check_devries(inst, opt);
    else if (suite == "proximity") v = check_proximity_suite(inst, opt);
    else if (suite == "morphism") v = check_morphism_suite(inst);
    else if (suite == "weakpm") v = check_weakpm_suite(inst, opt);
    else if (suite == "claim") v = check_claim_suite(inst, opt);
    else if (suite == "roundtrip") v = check_roundtrip_suite(inst, opt);
    else throw std::invalid_argument("unknown suite \"" + suite + "\"");
    out.report = v.to_json();
    out.exit_code = v.passed() ? 0 : 1;
  } catch (const TypedError& e) {
    out.report = Json{{"status", "error"}, {"reason", e.what()}};
    out.exit_code = 1;
  } catch (const std::exception& e) {
    out.report = Json{{"status", "error"}, {"reason", e.what()}};
    out.exit_code = 2;
  }
  return out;
}

inline CliResult run_compute(const Json& inst, const std::string& op,
                             const CliOptions& opt) {
  using namespace cli_detail;
  CliResult out;
  try {
    Json result;
    if (op == "baire-upper" || op == "baire-lower" || op == "normalize") {
      StepFn f = inst.at("fn").get<StepFn>();
      StepFn g = op == "baire-upper" ? baire_upper(f)
               : op == "baire-lower" ? baire_lower(f)
                                     : normalize(f);
      result = Json{{"fn", g}};
    } else if (op == "decompose-orth") {
      const Json& je = inst.at("elem");
      if (elem_is_finba(je)) result = Json{{"decomp", to_orthogonal(je.get<FlatQ>())}};
      else result = Json{{"decomp", to_orthogonal(je.get<FlatRO>())}};
      result["decomp"]["carrier"] = je.at("carrier");
    } else if (op == "decompose-decr") {
      const Json& jd = inst.at("decomp");
      if (jd.at("carrier").get<std::string>() == "regopen") {
        OrthDecomp<RegOpenAlg> d;
        parse_orth_terms_regopen(jd, d);
        result = Json{{"elem", to_decreasing(d)}};
      } else {
        OrthDecomp<FinBoolAlg> d;
        parse_orth_terms_finba(jd, d);
        result = Json{{"elem", to_decreasing(d)}};
      }
    } else if (op == "invert") {
      const Json& je = inst.at("elem");
      if (elem_is_finba(je)) {
        auto inv = flat_invert(je.get<FlatQ>());
        if (!inv) throw TypedError("element is not invertible");
        result = Json{{"elem", *inv}};
      } else {
        auto inv = flat_invert(je.get<FlatRO>());
        if (!inv) throw TypedError("element is not invertible");
        result = Json{{"elem", *inv}};
      }
    } else if (op == "annihilator") {
      std::string carrier = inst.at("carrier").get<std::string>();
      if (carrier == "regopen") {
        std::vector<FlatRO> gens;
        for (const auto& g : inst.at("gens")) gens.push_back(g.get<FlatRO>());
        result = Json{{"elem", flat_annihilator(gens, RegOpenAlg{})}};
      } else {
        FinBoolAlg A(finba_atoms(carrier));
        std::vector<FlatQ> gens;
        for (const auto& g : inst.at("gens")) gens.push_back(g.get<FlatQ>());
        result = Json{{"elem", flat_annihilator(gens, A)}};
      }
    } else if (op == "compose-star") {
      MorphismTable t1 = inst.at("sigma1").get<MorphismTable>();
      MorphismTable t2 = inst.at("sigma2").get<MorphismTable>();
      auto rel1 = inst.contains("relation")
                      ? parse_finba_relation(t1.target(), inst.at("relation"))
                      : leq_rel(t1.target());
      std::vector<FlatQ> probes;
      if (inst.contains("probes"))
        for (const auto& p : inst.at("probes")) probes.push_back(p.get<FlatQ>());
      else {
        FinBoolAlg S = t1.source();
        Sampler s(effective_seed(inst, opt));
        probes.push_back(FlatQ::one(S));
        for (int i = 0; i < effective_samples(inst, opt, 8); ++i)
          probes.push_back(s.flat(S));
      }
      auto res = star_compose_weak(WeakProxMorphism{t2}, WeakProxMorphism{t1}, rel1, probes);
      if (!res.morphism) {
        Json j = res.verdict.to_json();
        throw TypedError(j.at("law").get<std::string>());
      }
      result = Json{{"sigma", res.morphism->table}};
    } else if (op == "interpolate") {
      RegOpen u = inst.at("u").get<RegOpen>();
      RegOpen v = inst.at("v").get<RegOpen>();
      if (!closure_contained(u, v))
        throw TypedError("inputs are not related by closure containment");
      result = Json{{"w", interpolate(u, v)}};
    } else if (op == "iso") {
      if (inst.contains("fn")) {
        StepFn f = inst.at("fn").get<StepFn>();
        if (!is_normal(f)) throw TypedError("only normal functions correspond");
        result = Json{{"elem", stepfn_to_flat(f)}};
      } else {
        result = Json{{"fn", flat_to_stepfn(inst.at("elem").get<FlatRO>())}};
      }
    } else {
      throw std::invalid_argument("unknown op \"" + op + "\"");
    }
    out.report = result;
    out.exit_code = 0;
  } catch (const TypedError& e) {
    out.report = Json{{"status", "error"}, {"reason", e.what()}};
    out.exit_code = 1;
  } catch (const std::exception& e) {
    out.report = Json{{"status", "error"}, {"reason", e.what()}};
    out.exit_code = 2;
  }
  return out;
}

inline Json load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return Json::parse(in);
}

inline CliResult run_check_file(const std::string& path, const std::string& suite,
                                const CliOptions& opt) {
  Json inst;
  try {
    inst = load_instance(path);
  } catch (const std::exception& e) {
    return CliResult{2, Json{{"status", "error"}, {"reason", e.what()}}};
  }
  return run_check(inst, suite, opt);
}

inline CliResult run_compute_file(const std::string& path, const std::string& op,
                                  const CliOptions& opt) {
  Json inst;
  try {
    inst = load_instance(path);
  } catch (const std::exception& e) {
    return CliResult{2, Json{{"status", "error"}, {"reason", e.what()}}};
  }
  return run_compute(inst, op, opt);
}

}  // namespace proxalg
