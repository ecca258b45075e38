#pragma once

#include <optional>

#include "proxalg/flatlaws.hpp"
#include "proxalg/morphism.hpp"
#include "proxalg/stepfn.hpp"

namespace proxalg {

// A flat algebra together with its base proximity and the threshold-wise
// lift: the image of (B, rel) under the flat-algebra functor.
template <class Alg>
struct ProxAlgebra {
  Alg carrier;
  ProximityRel<Alg> base;
  FlatRel<Alg> rel;
};

template <class Alg>
ProxAlgebra<Alg> functor_sp(const ProximityRel<Alg>& base) {
  return ProxAlgebra<Alg>{base.alg, base, lift_proximity(base)};
}

// The idempotent functor: restrict the lifted proximity back to the
// characteristic elements. By the threshold-wise definition this returns
// the base relation itself, but it is computed through the flat relation
// so the round trip is an actual check.
template <class Alg>
ProximityRel<Alg> functor_id(const ProxAlgebra<Alg>& A) {
  ProximityRel<Alg> out = A.base;
  out.name = "id(" + A.rel.name + ")";
  auto rel = std::make_shared<FlatRel<Alg>>(A.rel);
  out.decide = [rel](const Alg& alg, const typename Alg::Elem& e,
                     const typename Alg::Elem& f) {
    return rel->decide(FlatElem<Alg>::chi(alg, e), FlatElem<Alg>::chi(alg, f));
  };
  return out;
}

// The idempotent functor on the normal step functions with the
// Katetov-Tong relation: regular opens with cl(U) inside V, computed
// through the characteristic-function dictionary.
inline ProximityRel<RegOpenAlg> functor_id_stepfn() {
  ProximityRel<RegOpenAlg> out = closure_rel();
  out.name = "id(stepfn)";
  out.decide = [](const RegOpenAlg&, const RegOpen& u, const RegOpen& v) {
    return kt_proximity(chi_of(u), chi_of(v));
  };
  return out;
}

// Weak proximity morphism between flat algebras over finite Boolean
// algebras, generated by a de Vries morphism table on the idempotents and
// acting threshold by threshold.
struct WeakProxMorphism {
  MorphismTable table;

  FinBoolAlg source() const { return table.source(); }
  FinBoolAlg target() const { return table.target(); }

  FlatQ apply(const FlatQ& a) const {
    std::vector<std::pair<Rational, std::uint32_t>> samples;
    samples.reserve(a.steps.size());
    for (const auto& [t, e] : a.steps) samples.emplace_back(t, table.apply(e));
    return FlatQ::from_samples(target(), std::move(samples));
  }
};

inline WeakProxMorphism lift_morphism(const MorphismTable& sigma,
                                      const ProximityRel<FinBoolAlg>& rel_src,
                                      const ProximityRel<FinBoolAlg>& rel_tgt) {
  Verdict v = check_de_vries_morphism(sigma, rel_src, rel_tgt);
  if (!v.passed())
    throw std::invalid_argument("table fails the morphism axioms: " + v.axiom);
  return WeakProxMorphism{sigma};
}

inline WeakProxMorphism lift_morphism(const MorphismTable& sigma) {
  return lift_morphism(sigma, leq_rel(sigma.source()), leq_rel(sigma.target()));
}

// The decreasing-form route: with a = r_0 + sum_i r_i e_i, the image is
// r_0 + sum_i r_i s(e_i). Must agree with WeakProxMorphism::apply.
inline FlatQ apply_decreasing_rule(const MorphismTable& sigma, const FlatQ& a) {
  FinBoolAlg T(sigma.tgt_atoms);
  FlatQ out = FlatQ::constant(T, a.steps.front().first);
  for (std::size_t i = 1; i < a.steps.size(); ++i) {
    Rational gap = a.steps[i].first - a.steps[i - 1].first;
    out = flat_add(out, FlatQ::chi(T, sigma.apply(a.steps[i].second), gap));
  }
  return out;
}

// Full morphism laws over <=-lifted proximities. Every element is
// reflexive there, so PM6..PM8 quantify over the whole pool; the appendix
// inequalities are checked for all relation-qualified triples.
inline Verdict verify_full_morphism(const WeakProxMorphism& alpha,
                                    const std::vector<FlatQ>& pool,
                                    const std::vector<Rational>& scalars,
                                    std::uint64_t seed = 0) {
  FinBoolAlg S = alpha.source();
  FinBoolAlg T = alpha.target();
  auto rel_s = lift_proximity(leq_rel(S));
  auto rel_t = lift_proximity(leq_rel(T));
  auto zeroS = FlatQ::zero(S);
  std::uint64_t checked = 0;
  auto fail = [&](std::string ax, Json j) {
    Verdict v = Verdict::fail(std::move(ax), std::move(j), seed);
    v.checked = checked;
    return v;
  };
  if (!(alpha.apply(zeroS) == FlatQ::zero(T)) ||
      !(alpha.apply(FlatQ::one(S)) == FlatQ::one(T)))
    return fail("PM1", {});
  for (const auto& a : pool) {
    ++checked;
    for (const auto& r : scalars) {
      if (r <= 0) continue;
      if (!(alpha.apply(flat_scalar(r, a)) == flat_scalar(r, alpha.apply(a)))) {
        Json j{{"a", a}, {"r", rat_str(r)}};
        return fail("PM5", j);
      }
    }
  }
  for (const auto& a : pool)
    for (const auto& b : pool) {
      ++checked;
      if (!(alpha.apply(flat_meet(a, b)) == flat_meet(alpha.apply(a), alpha.apply(b))))
        return fail("PM2", detail::flat_cex("a", a, "b", b));
      if (rel_s.decide(a, b)) {
        auto lhs = flat_neg(alpha.apply(flat_neg(a)));
        if (!rel_t.decide(lhs, alpha.apply(b)))
          return fail("PM3", detail::flat_cex("a", a, "b", b));
        // PM4: the join over the relation is attained at b itself, so
        // monotonicity plus membership decide it.
        if (!flat_leq(alpha.apply(a), alpha.apply(b)))
          return fail("PM4", detail::flat_cex("a", a, "b", b));
      }
      if (!(alpha.apply(flat_join(a, b)) == flat_join(alpha.apply(a), alpha.apply(b))))
        return fail("PM6", detail::flat_cex("a", a, "b", b));
      if (!(alpha.apply(flat_add(a, b)) == flat_add(alpha.apply(a), alpha.apply(b))))
        return fail("PM7", detail::flat_cex("a", a, "b", b));
      if (flat_leq(zeroS, b) &&
          !(alpha.apply(flat_mul(b, a)) == flat_mul(alpha.apply(b), alpha.apply(a))))
        return fail("PM8", detail::flat_cex("a", a, "b", b));
      // Appendix inequality: images of nonnegatives are superadditive and
      // supermultiplicative.
      if (flat_leq(zeroS, a) && flat_leq(zeroS, b)) {
        if (!flat_leq(flat_add(alpha.apply(a), alpha.apply(b)),
                      alpha.apply(flat_add(a, b))))
          return fail("A1-add", detail::flat_cex("a", a, "b", b));
        if (!flat_leq(flat_mul(alpha.apply(a), alpha.apply(b)),
                      alpha.apply(flat_mul(a, b))))
          return fail("A1-mul", detail::flat_cex("a", a, "b", b));
      }
    }
  // Triples with b related to c drive the one-sided join/add/mul bounds.
  for (const auto& a : pool)
    for (const auto& b : pool)
      for (const auto& c : pool) {
        if (!rel_s.decide(b, c)) continue;
        ++checked;
        auto ia = alpha.apply(a), ic = alpha.apply(c);
        if (!flat_leq(alpha.apply(flat_join(a, b)), flat_join(ia, ic)))
          return fail("A5-join", Json{{"a", a}, {"b", b}, {"c", c}});
        if (!flat_leq(alpha.apply(flat_add(a, b)), flat_add(ia, ic)))
          return fail("A5-add", Json{{"a", a}, {"b", b}, {"c", c}});
        if (flat_leq(zeroS, a) && flat_leq(zeroS, b) &&
            !flat_leq(alpha.apply(flat_mul(a, b)), flat_mul(ia, ic)))
          return fail("A5-mul", Json{{"a", a}, {"b", b}, {"c", c}});
      }
  Verdict v = Verdict::pass(checked, seed);
  return v;
}

// Inverse bound: for 0 <= b related to c with b invertible, alpha(c) is
// invertible and alpha(c)^{-1} <= alpha(b^{-1}).
inline Verdict inverse_monotone(const WeakProxMorphism& alpha, const FlatQ& b,
                                const FlatQ& c) {
  FinBoolAlg S = alpha.source();
  auto rel_s = lift_proximity(leq_rel(S));
  if (!flat_leq(FlatQ::zero(S), b) || !rel_s.decide(b, c))
    throw std::invalid_argument("inverse_monotone needs 0 <= b related to c");
  auto binv = flat_invert(b);
  if (!binv) throw std::invalid_argument("inverse_monotone needs b invertible");
  auto cinv = flat_invert(alpha.apply(c));
  if (!cinv) return Verdict::fail("A4-invertible", Json{{"c", c}});
  if (!flat_leq(*cinv, alpha.apply(*binv)))
    return Verdict::fail("A4-bound", detail::flat_cex("b", b, "c", c));
  return Verdict::pass(2);
}

// Composite of weak morphisms: the defining join runs over all t related
// to s, and on these carriers it stabilizes at the star-composite of the
// idempotent tables. The probe set is used to certify stabilization: for
// each probe the join must already be attained at a finite witness (the
// probe itself when reflexive, else one interpolation step).
struct StarResult {
  std::optional<WeakProxMorphism> morphism;
  Verdict verdict;
};

inline StarResult star_compose_weak(const WeakProxMorphism& a2, const WeakProxMorphism& a1,
                                    const ProximityRel<FinBoolAlg>& rel1,
                                    const std::vector<FlatQ>& probes) {
  StarResult out;
  MorphismTable composite = star_compose(a2.table, a1.table, rel1);
  WeakProxMorphism alpha{composite};
  auto lifted1 = lift_proximity(rel1);
  for (const auto& s : probes) {
    FlatQ best = alpha.apply(s);
    std::optional<FlatQ> witness;
    if (lifted1.decide(s, s)) {
      witness = s;
    } else if (lifted1.interpolant && lifted1.shrink) {
      if (auto small = lifted1.shrink(s); small && lifted1.decide(*small, s))
        witness = lifted1.interpolant(*small, s);
    }
    if (!witness || !(a2.apply(a1.apply(*witness)) == best)) {
      Json j;
      j["probe"] = s;
      out.verdict = Verdict::undecidable("star join does not stabilize at the interpolant stage", j);
      return out;
    }
  }
  out.morphism = alpha;
  out.verdict = Verdict::pass(probes.size());
  return out;
}

}  // namespace proxalg
