#pragma once

#include <cstdint>
#include <vector>

#include "proxalg/proximity.hpp"

namespace proxalg {

// Total map between two finite Boolean algebras, tabulated on every
// element of the source. Candidate for the morphism axioms
//   M1  s(0) = 0
//   M2  s(a /\ b) = s(a) /\ s(b)
//   M3  a < b  implies  -s(-a) < s(b)
//   M4  s(a) = \/ { s(b) : b < a }
struct MorphismTable {
  int src_atoms = 1;
  int tgt_atoms = 1;
  std::vector<std::uint32_t> img;  // indexed by source element mask

  FinBoolAlg source() const { return FinBoolAlg(src_atoms); }
  FinBoolAlg target() const { return FinBoolAlg(tgt_atoms); }

  std::uint32_t apply(std::uint32_t a) const {
    if (a >= img.size()) throw std::invalid_argument("element outside source algebra");
    return img[a];
  }

  friend bool operator==(const MorphismTable&, const MorphismTable&) = default;
};

// The table of the Boolean homomorphism dual to a point map
// g : atoms(target) -> atoms(source); s(a) = { y : g(y) in a }.
inline MorphismTable hom_from_atom_map(int src_atoms, int tgt_atoms,
                                       const std::vector<int>& g) {
  MorphismTable t;
  t.src_atoms = src_atoms;
  t.tgt_atoms = tgt_atoms;
  t.img.resize(std::size_t{1} << src_atoms);
  for (std::uint32_t a = 0; a < t.img.size(); ++a) {
    std::uint32_t out = 0;
    for (int y = 0; y < tgt_atoms; ++y)
      if (a & (1u << g[y])) out |= (1u << y);
    t.img[a] = out;
  }
  return t;
}

// All Boolean homomorphisms between the two algebras, one per atom map.
inline std::vector<MorphismTable> all_boolean_homs(int src_atoms, int tgt_atoms) {
  std::vector<MorphismTable> out;
  std::vector<int> g(tgt_atoms, 0);
  while (true) {
    out.push_back(hom_from_atom_map(src_atoms, tgt_atoms, g));
    int i = 0;
    for (; i < tgt_atoms; ++i) {
      if (++g[i] < src_atoms) break;
      g[i] = 0;
    }
    if (i == tgt_atoms) break;
  }
  return out;
}

inline Verdict check_de_vries_morphism(const MorphismTable& t,
                                       const ProximityRel<FinBoolAlg>& rel_src,
                                       const ProximityRel<FinBoolAlg>& rel_tgt) {
  FinBoolAlg S = t.source();
  FinBoolAlg T = t.target();
  std::uint64_t checked = 0;
  if (t.apply(S.bot()) != T.bot())
    return Verdict::fail("M1", Json{{"image_of_0", t.apply(S.bot())}});
  for (auto a : S.elements())
    for (auto b : S.elements()) {
      ++checked;
      if (t.apply(S.meet(a, b)) != T.meet(t.apply(a), t.apply(b)))
        return Verdict::fail("M2", Json{{"a", a}, {"b", b}});
      if (rel_src.rel(a, b)) {
        auto lhs = T.complement(t.apply(S.complement(a)));
        if (!rel_tgt.rel(lhs, t.apply(b)))
          return Verdict::fail("M3", Json{{"a", a}, {"b", b}});
      }
    }
  for (auto a : S.elements()) {
    ++checked;
    std::uint32_t join = T.bot();
    for (auto b : S.elements())
      if (rel_src.rel(b, a)) join = T.join(join, t.apply(b));
    if (join != t.apply(a))
      return Verdict::fail("M4", Json{{"a", a}, {"join", join}, {"image", t.apply(a)}});
  }
  return Verdict::pass(checked);
}

// Composite in the de Vries category: (t2 * t1)(a) = \/ { t2(t1(b)) : b <1 a }.
inline MorphismTable star_compose(const MorphismTable& t2, const MorphismTable& t1,
                                  const ProximityRel<FinBoolAlg>& rel1) {
  if (t1.tgt_atoms != t2.src_atoms)
    throw std::invalid_argument("star_compose: middle algebras differ");
  FinBoolAlg S = t1.source();
  FinBoolAlg T = t2.target();
  MorphismTable out;
  out.src_atoms = t1.src_atoms;
  out.tgt_atoms = t2.tgt_atoms;
  out.img.resize(S.size());
  for (auto a : S.elements()) {
    std::uint32_t join = T.bot();
    for (auto b : S.elements())
      if (rel1.rel(b, a)) join = T.join(join, t2.apply(t1.apply(b)));
    out.img[a] = join;
  }
  return out;
}

inline MorphismTable identity_morphism(int atoms) {
  MorphismTable t;
  t.src_atoms = t.tgt_atoms = atoms;
  t.img.resize(std::size_t{1} << atoms);
  for (std::uint32_t a = 0; a < t.img.size(); ++a) t.img[a] = a;
  return t;
}

inline void to_json(nlohmann::ordered_json& j, const MorphismTable& t) {
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (std::uint32_t a = 0; a < t.img.size(); ++a)
    m[std::to_string(a)] = std::to_string(t.img[a]);
  j = nlohmann::ordered_json{
      {"source_atoms", t.src_atoms}, {"target_atoms", t.tgt_atoms}, {"map", m}};
}

inline void from_json(const nlohmann::ordered_json& j, MorphismTable& t) {
  t.src_atoms = j.at("source_atoms").get<int>();
  t.tgt_atoms = j.at("target_atoms").get<int>();
  std::size_t n = std::size_t{1} << t.src_atoms;
  t.img.assign(n, 0);
  const auto& m = j.at("map");
  if (m.size() != n) throw std::invalid_argument("morphism map must be total");
  std::uint32_t tgt_top = (t.tgt_atoms == 0) ? 0u : ((1u << t.tgt_atoms) - 1u);
  for (auto it = m.begin(); it != m.end(); ++it) {
    std::size_t a = std::stoul(it.key());
    std::uint32_t v = static_cast<std::uint32_t>(std::stoul(it.value().get<std::string>()));
    if (a >= n || (v & ~tgt_top) != 0)
      throw std::invalid_argument("morphism map entry outside the algebras");
    t.img[a] = v;
  }
}

}  // namespace proxalg
