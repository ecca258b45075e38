#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "proxalg/flatjson.hpp"
#include "proxalg/flatlaws.hpp"
#include "proxalg/random.hpp"

using namespace proxalg;

namespace {

// Independent oracle for the finite-atom carrier: a flat element is the
// same data as a rational-valued function on atoms (the value at an atom
// is the last threshold whose chain element contains it), and every
// algebra operation acts pointwise on those values.
using AtomVals = std::vector<Rational>;

AtomVals atom_values(const FlatQ& a) {
  AtomVals vals(a.alg.atoms, Rational(0));
  for (int k = 0; k < a.alg.atoms; ++k)
    for (const auto& [t, e] : a.steps)
      if (e & (1u << k)) vals[k] = t;
  return vals;
}

FlatQ from_atom_values(const FinBoolAlg& A, const AtomVals& vals) {
  std::map<Rational, std::uint32_t> by_value;
  for (int k = 0; k < A.atoms; ++k)
    if (vals[k] != 0) by_value[vals[k]] |= (1u << k);
  OrthDecomp<FinBoolAlg> d;
  d.alg = A;
  for (auto& [v, mask] : by_value) d.terms.emplace_back(v, mask);
  return to_decreasing(d);
}

AtomVals zip(const AtomVals& x, const AtomVals& y, Rational (*op)(const Rational&, const Rational&)) {
  AtomVals out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = op(x[k], y[k]);
  return out;
}

Rational v_add(const Rational& a, const Rational& b) { return a + b; }
Rational v_mul(const Rational& a, const Rational& b) { return a * b; }
Rational v_max(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational v_min(const Rational& a, const Rational& b) { return a < b ? a : b; }

FinBoolAlg pq{2};
const std::uint32_t P = 1u, Q = 2u;

FlatQ mk(std::vector<std::pair<Rational, std::uint32_t>> samples) {
  return FlatQ::from_samples(pq, std::move(samples));
}

}  // namespace

TEST_CASE("evaluation follows the three-case threshold rule") {
  auto a = mk({{Rational(1), pq.top()}, {Rational(3), P}});
  CHECK(a.eval(Rational(-5)) == pq.top());
  CHECK(a.eval(Rational(1)) == pq.top());
  CHECK(a.eval(Rational(2)) == P);
  CHECK(a.eval(Rational(3)) == P);
  CHECK(a.eval(Rational(4)) == pq.bot());

  auto e = FlatQ::chi(pq, P);
  CHECK(e.eval(make_rational(1, 2)) == P);
  CHECK(e.eval(Rational(0)) == pq.top());
  CHECK(e.eval(Rational(1)) == P);
  CHECK(e.eval(Rational(2)) == pq.bot());
}

TEST_CASE("canonical form rejects malformed sample lists") {
  CHECK_THROWS_AS(mk({{Rational(1), P}}), std::invalid_argument);
  CHECK_THROWS_AS(mk({{Rational(2), pq.top()}, {Rational(1), P}}), std::invalid_argument);
  CHECK_THROWS_AS(mk({{Rational(0), pq.top()}, {Rational(1), P}, {Rational(2), Q}}),
                  std::invalid_argument);
  CHECK(FlatQ::zero(pq).steps.size() == 1);
  CHECK(FlatQ::zero(pq).eval(Rational(1)) == pq.bot());
  CHECK(mk({{Rational(1), pq.top()}, {Rational(2), pq.top()}, {Rational(3), P}}) ==
        mk({{Rational(2), pq.top()}, {Rational(3), P}}));
}

TEST_CASE("arithmetic worked examples on the two-atom carrier") {
  auto a = mk({{Rational(1), pq.top()}, {Rational(3), P}});  // 1 + 2p
  auto b = FlatQ::chi(pq, Q, Rational(2));                   // 2q

  CHECK(flat_add(a, b) == FlatQ::constant(pq, Rational(3)));
  CHECK(flat_add(FlatQ::zero(pq), a) == a);
  CHECK(flat_mul(a, b) == b);

  CHECK(flat_leq(a, a));
  CHECK_FALSE(flat_leq(b, a));
  CHECK(flat_leq(FlatQ::chi(pq, P), FlatQ::one(pq)));
  CHECK(flat_leq(FlatQ::chi(pq, Q), FlatQ::one(pq)));

  CHECK(flat_pos(a) == a);
  CHECK(flat_negpart(a) == FlatQ::zero(pq));
  CHECK(flat_norm(a) == Rational(3));

  auto z = FlatQ::zero(pq);
  CHECK(flat_pos(z) == z);
  CHECK(flat_negpart(z) == z);
  CHECK(flat_abs(z) == z);
  CHECK(flat_norm(z) == Rational(0));

  auto c = from_atom_values(pq, {Rational(-1), Rational(2)});
  CHECK(atom_values(flat_pos(c)) == AtomVals{Rational(0), Rational(2)});
  CHECK(atom_values(flat_negpart(c)) == AtomVals{Rational(1), Rational(0)});
  CHECK(flat_norm(c) == Rational(2));
}

TEST_CASE("orthogonal and decreasing forms convert both ways") {
  auto a = mk({{Rational(1), pq.top()}, {Rational(3), P}});
  auto d = to_orthogonal(a);
  REQUIRE(d.terms.size() == 2);
  CHECK(d.full);
  CHECK(d.terms[0] == std::pair{Rational(1), Q});
  CHECK(d.terms[1] == std::pair{Rational(3), P});
  CHECK(to_decreasing(d) == a);

  auto e = FlatQ::chi(pq, P);
  auto de = to_orthogonal(e);
  REQUIRE(de.terms.size() == 1);
  CHECK(de.terms[0] == std::pair{Rational(1), P});
  CHECK_FALSE(de.full);

  auto third = mk({{make_rational(1, 3), pq.top()}, {Rational(1), Q}});
  auto dt = to_orthogonal(third);
  REQUIRE(dt.terms.size() == 2);
  CHECK(dt.terms[0] == std::pair{make_rational(1, 3), P});
  CHECK(dt.terms[1] == std::pair{Rational(1), Q});

  OrthDecomp<FinBoolAlg> z;
  z.alg = pq;
  z.terms = {{Rational(2), Q}, {Rational(0), P}};
  CHECK(to_decreasing(z) == FlatQ::chi(pq, Q, Rational(2)));

  OrthDecomp<FinBoolAlg> one_term;
  one_term.alg = pq;
  one_term.terms = {{Rational(5), pq.top()}};
  CHECK(to_decreasing(one_term) == FlatQ::constant(pq, Rational(5)));

  OrthDecomp<FinBoolAlg> bad;
  bad.alg = pq;
  bad.terms = {{Rational(1), P}, {Rational(2), pq.top()}};
  CHECK_THROWS_AS(to_decreasing(bad), std::invalid_argument);
}

TEST_CASE("random elements agree with the per-atom oracle") {
  for (int atoms : {1, 2, 3, 4}) {
    FinBoolAlg A(atoms);
    Sampler s(1000 + atoms);
    for (int it = 0; it < 200; ++it) {
      auto a = s.flat(A);
      auto b = s.flat(A);
      auto va = atom_values(a);
      auto vb = atom_values(b);
      INFO("atoms=" << atoms << " it=" << it);
      REQUIRE(from_atom_values(A, va) == a);
      CHECK(flat_add(a, b) == from_atom_values(A, zip(va, vb, v_add)));
      CHECK(flat_mul(a, b) == from_atom_values(A, zip(va, vb, v_mul)));
      CHECK(flat_join(a, b) == from_atom_values(A, zip(va, vb, v_max)));
      CHECK(flat_meet(a, b) == from_atom_values(A, zip(va, vb, v_min)));
      AtomVals vneg(va.size());
      for (std::size_t k = 0; k < va.size(); ++k) vneg[k] = -va[k];
      CHECK(flat_neg(a) == from_atom_values(A, vneg));
      Rational r = s.rational();
      AtomVals vsc(va.size());
      for (std::size_t k = 0; k < va.size(); ++k) vsc[k] = r * va[k];
      CHECK(flat_scalar(r, a) == from_atom_values(A, vsc));
      bool leq = true;
      for (std::size_t k = 0; k < va.size(); ++k) leq = leq && va[k] <= vb[k];
      CHECK(flat_leq(a, b) == leq);
      Rational n(0);
      for (const auto& v : va)
        if (rat_abs(v) > n) n = rat_abs(v);
      CHECK(flat_norm(a) == n);
      CHECK(to_decreasing(to_orthogonal(a)) == a);
    }
  }
}

TEST_CASE("vector lattice laws hold on random triples") {
  FinBoolAlg A(3);
  Sampler s(77);
  auto zero = FlatQ::zero(A);
  for (int it = 0; it < 300; ++it) {
    auto a = s.flat(A);
    auto b = s.flat(A);
    auto c = s.flat(A);
    INFO("it=" << it);
    CHECK(flat_add(a, flat_neg(a)) == zero);
    CHECK(flat_sub(flat_pos(a), flat_negpart(a)) == a);
    CHECK(flat_meet(flat_pos(a), flat_negpart(a)) == zero);
    CHECK(flat_abs(a) == flat_add(flat_pos(a), flat_negpart(a)));
    CHECK(flat_add(a, b) == flat_add(b, a));
    CHECK(flat_mul(a, b) == flat_mul(b, a));
    CHECK(flat_add(flat_add(a, b), c) == flat_add(a, flat_add(b, c)));
    CHECK(flat_mul(flat_mul(a, b), c) == flat_mul(a, flat_mul(b, c)));
    CHECK(flat_mul(a, flat_add(b, c)) == flat_add(flat_mul(a, b), flat_mul(a, c)));
    CHECK(flat_add(flat_join(a, b), flat_meet(a, b)) == flat_add(a, b));
    CHECK(flat_join(a, flat_meet(a, b)) == a);
    CHECK(flat_norm(flat_add(a, b)) <= flat_norm(a) + flat_norm(b));
    CHECK(flat_norm(flat_mul(a, b)) <= flat_norm(a) * flat_norm(b));
    auto ap = flat_pos(a), bp = flat_pos(b), cp = flat_pos(c);
    if (flat_meet(ap, bp) == zero)
      CHECK(flat_meet(flat_mul(ap, cp), bp) == zero);
  }
}

TEST_CASE("truncation identities of the decreasing representation") {
  auto a = mk({{Rational(1), pq.top()}, {Rational(3), P}});
  auto one_trunc = flat_pos(flat_meet(flat_sub(a, FlatQ::constant(pq, Rational(1))),
                                      FlatQ::constant(pq, Rational(2))));
  CHECK(one_trunc == FlatQ::chi(pq, P, Rational(2)));

  auto third = mk({{make_rational(1, 3), pq.top()}, {Rational(1), Q}});
  auto t2 = flat_pos(flat_meet(flat_sub(third, FlatQ::constant(pq, make_rational(1, 3))),
                               FlatQ::constant(pq, make_rational(2, 3))));
  CHECK(t2 == FlatQ::chi(pq, Q, make_rational(2, 3)));

  CHECK(truncation_identity(a).status == Status::Pass);
  CHECK(truncation_identity(FlatQ::constant(pq, Rational(5))).status == Status::Pass);

  FinBoolAlg A(3);
  Sampler s(501);
  for (int it = 0; it < 200; ++it) {
    auto x = s.flat(A);
    INFO("it=" << it);
    CHECK(truncation_identity(x).status == Status::Pass);
    // (a /\ p) - (a /\ r) = [(a - r) /\ (p - r)] \/ 0 for rationals r < p.
    Rational r = s.rational();
    Rational p = r + Rational(s.pick(1, 8), 4);
    auto cp = FlatQ::constant(A, p);
    auto cr = FlatQ::constant(A, r);
    auto lhs = flat_sub(flat_meet(x, cp), flat_meet(x, cr));
    auto rhs = flat_pos(flat_meet(flat_sub(x, cr), FlatQ::constant(A, p - r)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("compatible decreasing forms compute join and meet chainwise") {
  FinBoolAlg A(3);
  Sampler s(222);
  for (int it = 0; it < 200; ++it) {
    auto a = s.flat(A);
    auto b = s.flat(A);
    auto ts = detail::sorted_unique([&] {
      auto v = a.thresholds();
      auto w = b.thresholds();
      v.insert(v.end(), w.begin(), w.end());
      return v;
    }());
    std::vector<std::pair<Rational, std::uint32_t>> js, ms;
    for (const auto& t : ts) {
      js.emplace_back(t, A.join(a.eval(t), b.eval(t)));
      ms.emplace_back(t, A.meet(a.eval(t), b.eval(t)));
    }
    INFO("it=" << it);
    CHECK(flat_join(a, b) == FlatQ::from_samples(A, std::move(js)));
    CHECK(flat_meet(a, b) == FlatQ::from_samples(A, std::move(ms)));
  }
}

TEST_CASE("inversion exists exactly when the element is bounded below by a positive constant") {
  auto a = mk({{Rational(1), pq.top()}, {Rational(3), P}});
  auto inv = flat_invert(a);
  REQUIRE(inv.has_value());
  CHECK(*inv == mk({{make_rational(1, 3), pq.top()}, {Rational(1), Q}}));
  CHECK(flat_mul(a, *inv) == FlatQ::one(pq));

  CHECK(flat_invert(FlatQ::one(pq)) == FlatQ::one(pq));
  CHECK_FALSE(flat_invert(FlatQ::chi(pq, Q, Rational(2))).has_value());
  CHECK_FALSE(flat_invert(FlatQ::zero(pq)).has_value());

  FinBoolAlg A(3);
  Sampler s(333);
  for (int it = 0; it < 300; ++it) {
    auto x = s.flat(A);
    auto vx = atom_values(x);
    bool expect = true;
    for (const auto& v : vx) expect = expect && v != 0;
    auto ix = flat_invert(x);
    INFO("it=" << it);
    CHECK(ix.has_value() == expect);
    if (ix) CHECK(flat_mul(x, *ix) == FlatQ::one(A));
  }
}

TEST_CASE("annihilators are the complements of joined supports") {
  auto a = mk({{Rational(1), pq.top()}, {Rational(3), P}});
  CHECK(flat_annihilator(std::vector<FlatQ>{a}, pq) == FlatQ::zero(pq));
  CHECK(flat_annihilator(std::vector<FlatQ>{}, pq) == FlatQ::one(pq));
  CHECK(flat_annihilator(std::vector<FlatQ>{FlatQ::chi(pq, Q, Rational(2))}, pq) ==
        FlatQ::chi(pq, P));

  // Maximality: on a finite carrier, scan all idempotents.
  FinBoolAlg A(3);
  Sampler s(91);
  for (int it = 0; it < 100; ++it) {
    std::vector<FlatQ> gens{s.flat(A), s.flat(A)};
    auto e = annihilator_elem(gens, A);
    std::uint32_t best = 0;
    for (auto cand : A.elements()) {
      bool kills = true;
      for (const auto& g : gens)
        kills = kills && flat_mul(FlatQ::chi(A, cand), g) == FlatQ::zero(A);
      if (kills) best |= cand;
    }
    INFO("it=" << it);
    CHECK(e == best);
    // The ideal eD is closed downward in absolute value.
    auto x = s.flat(A);
    auto y = flat_mul(FlatQ::chi(A, e), s.flat(A));
    if (flat_leq(flat_abs(x), flat_abs(y)))
      CHECK(flat_mul(FlatQ::chi(A, e), x) == x);
  }
}

TEST_CASE("the order lift of a relation matches the pointwise order") {
  FinBoolAlg A(2);
  auto lifted = lift_proximity(leq_rel(A));
  Sampler s(11);
  for (int it = 0; it < 300; ++it) {
    auto a = s.flat(A);
    auto b = s.flat(A);
    CHECK(lifted.decide(a, b) == flat_leq(a, b));
  }
  CHECK(lifted.decide(FlatQ::zero(A), FlatQ::zero(A)));
}

TEST_CASE("the closure lift relates indicator elements by closure containment") {
  auto lifted = lift_proximity(closure_rel());
  RegOpenAlg RO;
  RegOpen u = regularize({Interval{make_rational(1, 4), make_rational(1, 2), true, true}});
  RegOpen v = regularize({Interval{make_rational(1, 8), make_rational(3, 4), true, true}});
  CHECK(lifted.decide(FlatRO::chi(RO, u), FlatRO::chi(RO, v)));
  CHECK_FALSE(lifted.decide(FlatRO::chi(RO, v), FlatRO::chi(RO, u)));
  CHECK_FALSE(lifted.decide(FlatRO::chi(RO, u), FlatRO::chi(RO, u)));
  CHECK(lifted.decide(FlatRO::zero(RO), FlatRO::zero(RO)));
  CHECK(lifted.decide(FlatRO::one(RO), FlatRO::one(RO)));
  // Height matters: the taller indicator is not below the shorter one.
  CHECK(lifted.decide(FlatRO::chi(RO, u, make_rational(1, 2)), FlatRO::chi(RO, v)));
  CHECK_FALSE(lifted.decide(FlatRO::chi(RO, u, Rational(2)), FlatRO::chi(RO, v)));
}

namespace {

std::vector<FlatRO> closure_pool(std::uint64_t seed, int n) {
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

}  // namespace

TEST_CASE("the closure lift passes the ordered-algebra axiom suite") {
  auto lifted = lift_proximity(closure_rel());
  auto pool = closure_pool(40, 12);
  std::vector<Rational> scalars{make_rational(1, 2), Rational(1), Rational(3)};
  auto v = check_proximity(lifted, pool, scalars, 40);
  INFO(v.to_json().dump());
  CHECK(v.status == Status::Pass);
  CHECK(v.checked > 50);
}

TEST_CASE("the order lift over a finite carrier passes the axiom suite") {
  FinBoolAlg A(3);
  auto lifted = lift_proximity(leq_rel(A));
  Sampler s(41);
  std::vector<FlatQ> pool{FlatQ::zero(A), FlatQ::one(A)};
  for (int i = 0; i < 10; ++i) {
    auto a = s.flat(A);
    pool.push_back(a);
    pool.push_back(flat_add(a, FlatQ::constant(A, Rational(s.pick(0, 2)))));
    pool.push_back(flat_join(a, s.flat(A)));
  }
  std::vector<Rational> scalars{make_rational(1, 2), Rational(2)};
  auto v = check_proximity(lifted, pool, scalars, 41);
  INFO(v.to_json().dump());
  CHECK(v.status == Status::Pass);
}

TEST_CASE("degenerate relations fail the axiom suite with counterexamples") {
  FinBoolAlg A(2);
  Sampler s(42);
  std::vector<FlatQ> pool{FlatQ::zero(A), FlatQ::one(A)};
  for (int i = 0; i < 6; ++i) pool.push_back(s.flat(A));

  FlatRel<FinBoolAlg> full;
  full.alg = A;
  full.name = "full";
  full.decide = [](const FlatQ&, const FlatQ&) { return true; };
  auto vf = check_proximity(full, pool, {Rational(1)}, 42);
  CHECK(vf.status == Status::Fail);
  CHECK(vf.axiom == "P2");

  FlatRel<FinBoolAlg> equal;
  equal.alg = A;
  equal.name = "equality";
  equal.decide = [](const FlatQ& a, const FlatQ& b) { return a == b; };
  equal.shrink = [&A](const FlatQ& a) -> std::optional<FlatQ> {
    if (a == FlatQ::zero(A)) return std::nullopt;
    return flat_scalar(make_rational(1, 2), a);
  };
  auto ve = check_proximity(equal, pool, {Rational(1)}, 42);
  CHECK(ve.status == Status::Fail);
  INFO(ve.to_json().dump());
  CHECK((ve.axiom == "P10" || ve.axiom == "P3"));
}

TEST_CASE("ideal separation of idempotents reduces to the base relation") {
  FinBoolAlg A(3);
  auto base = leq_rel(A);
  auto lifted = lift_proximity(base);
  for (auto e : A.elements())
    for (auto f : A.elements()) {
      INFO("e=" << e << " f=" << f);
      CHECK(well_inside_ideals(FlatQ::chi(A, e), FlatQ::chi(A, f), base) == base.rel(e, f));
      CHECK(well_inside_ideals(FlatQ::chi(A, e), FlatQ::chi(A, f), base) ==
            (e == 0 || lifted.decide(FlatQ::chi(A, e), FlatQ::chi(A, f))));
    }

  auto cbase = closure_rel();
  auto clifted = lift_proximity(cbase);
  RegOpenAlg RO;
  Sampler s(55);
  for (int it = 0; it < 100; ++it) {
    RegOpen u = s.regopen();
    RegOpen v = s.regopen();
    INFO("it=" << it);
    CHECK(well_inside_ideals(FlatRO::chi(RO, u), FlatRO::chi(RO, v), cbase) ==
          cbase.rel(u, v));
    if (!u.empty())
      CHECK(well_inside_ideals(FlatRO::chi(RO, u), FlatRO::chi(RO, v), cbase) ==
            clifted.decide(FlatRO::chi(RO, u), FlatRO::chi(RO, v)));
  }
}

TEST_CASE("multiplicative splitting witness separates the epsilon truncation") {
  FinBoolAlg A(3);
  Sampler s(66);
  for (int it = 0; it < 100; ++it) {
    auto a = flat_pos(s.flat(A));
    auto f = A.join(flat_support(a), s.finba_elem(A));
    Rational eps(s.pick(1, 8), s.pick(1, 4));
    INFO("it=" << it << " eps=" << rat_str(eps));
    auto v = m4_splitting_witness(a, f, eps);
    INFO(v.to_json().dump());
    CHECK(v.status == Status::Pass);
  }
  auto bad = flat_neg(FlatQ::one(A));
  CHECK_THROWS_AS(m4_splitting_witness(bad, A.top(), Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(m4_splitting_witness(FlatQ::one(A), A.top(), Rational(0)),
                  std::invalid_argument);
}

TEST_CASE("inner approximation witness under the order relation") {
  FinBoolAlg A(3);
  auto base = leq_rel(A);
  Sampler s(67);
  for (int it = 0; it < 100; ++it) {
    auto f = s.finba_elem(A);
    auto a = flat_meet(flat_pos(s.flat(A)), FlatQ::chi(A, f));
    Rational eps(s.pick(1, 8), 8);
    INFO("it=" << it);
    auto v = m4_inner_witness(a, f, eps, base);
    INFO(v.to_json().dump());
    CHECK(v.status == Status::Pass);
  }
}

TEST_CASE("inner approximation witness under the closure relation") {
  RegOpenAlg RO;
  auto base = closure_rel();
  Sampler s(68);
  int done = 0;
  for (int it = 0; it < 200 && done < 80; ++it) {
    RegOpen f = s.regopen();
    if (f.empty()) continue;
    // Sample a strictly inside f: a sum of indicators of parts whose
    // closures sit inside f.
    RegOpen u1 = shrink_witness(f);
    RegOpen u2 = shrink_witness(u1);
    Rational h1(s.pick(1, 4), 8);
    Rational h2(s.pick(1, 4), 8);
    auto a = flat_add(FlatRO::chi(RO, u1, h1), FlatRO::chi(RO, u2, h2));
    Rational eps(s.pick(1, 8), 8);
    INFO("it=" << it);
    auto v = m4_inner_witness(a, f, eps, base);
    INFO(v.to_json().dump());
    CHECK(v.status == Status::Pass);
    ++done;
  }
  CHECK(done >= 80);
}

TEST_CASE("flat elements round trip through JSON") {
  auto a = mk({{Rational(1), pq.top()}, {Rational(3), P}});
  Json j = a;
  CHECK(j["carrier"] == "finba:2");
  auto back = j.template get<FlatQ>();
  CHECK(back == a);

  Json bad = j;
  bad["steps"][1][1] = 7;  // mask out of range for two atoms
  FlatQ dummy;
  CHECK_THROWS_AS(bad.template get_to<FlatQ>(dummy), std::exception);

  RegOpenAlg RO;
  RegOpen u = regularize({Interval{make_rational(1, 4), make_rational(1, 2), true, true}});
  auto b = flat_add(FlatRO::chi(RO, u, make_rational(3, 2)), FlatRO::one(RO));
  Json jb = b;
  CHECK(jb["carrier"] == "regopen");
  auto bback = jb.template get<FlatRO>();
  CHECK(bback == b);

  Json jd = to_orthogonal(a);
  CHECK(jd["full"] == true);
  CHECK(jd["terms"].size() == 2);
}

TEST_CASE("regular-open carrier operations agree with interior sampling") {
  RegOpenAlg RO;
  Sampler s(73);
  auto value_at = [](const FlatRO& a, const Rational& x) {
    Rational val = a.steps.front().first;
    for (const auto& [t, e] : a.steps) {
      bool inside = false;
      for (const auto& part : e.parts)
        inside = inside || (part.lo < x && x < part.hi);
      if (inside) val = t;
    }
    return val;
  };
  auto sample_points = [](std::initializer_list<const FlatRO*> fs) {
    std::vector<Rational> ends{Rational(0), Rational(1)};
    for (const auto* f : fs)
      for (const auto& [t, e] : f->steps)
        for (const auto& part : e.parts) {
          ends.push_back(part.lo);
          ends.push_back(part.hi);
        }
    ends = detail::sorted_unique(std::move(ends));
    std::vector<Rational> mids;
    for (std::size_t i = 0; i + 1 < ends.size(); ++i)
      mids.push_back((ends[i] + ends[i + 1]) / 2);
    return mids;
  };
  int done = 0;
  for (int it = 0; it < 60; ++it) {
    auto a = s.flat(RO, 3, 4);
    auto b = s.flat(RO, 3, 4);
    auto sum = flat_add(a, b);
    auto top = flat_join(a, b);
    auto bot = flat_meet(a, b);
    auto na = flat_neg(a);
    auto prod = flat_mul_nonneg(flat_pos(a), flat_pos(b));
    for (const auto& x : sample_points({&a, &b, &sum, &top, &bot, &na, &prod})) {
      Rational va = value_at(a, x), vb = value_at(b, x);
      INFO("it=" << it << " x=" << rat_str(x));
      CHECK(value_at(sum, x) == va + vb);
      CHECK(value_at(top, x) == std::max(va, vb));
      CHECK(value_at(bot, x) == std::min(va, vb));
      CHECK(value_at(na, x) == -va);
      CHECK(value_at(prod, x) == std::max(va, Rational(0)) * std::max(vb, Rational(0)));
      ++done;
    }
  }
  CHECK(done > 100);
}
