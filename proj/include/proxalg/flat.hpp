#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "proxalg/proximity.hpp"
#include "proxalg/rational.hpp"

namespace proxalg {

// Element of the algebra of decreasing step functions from R into a
// Boolean algebra B: finitely many thresholds r_0 < ... < r_n carrying a
// strictly decreasing chain 1 = e_0 > e_1 > ... > e_n > 0. The encoded
// function is
//   a(r) = 1    for r <= r_0,
//   a(r) = e_i  for r_{i-1} < r <= r_i,
//   a(r) = 0    for r > r_n.
// The constant c is the single step (c, 1).
template <class Alg>
struct FlatElem {
  using Elem = typename Alg::Elem;

  Alg alg;
  std::vector<std::pair<Rational, Elem>> steps;

  Elem eval(const Rational& r) const {
    for (const auto& [t, e] : steps)
      if (r <= t) return e;
    return alg.bot();
  }

  std::vector<Rational> thresholds() const {
    std::vector<Rational> out;
    out.reserve(steps.size());
    for (const auto& [t, e] : steps) out.push_back(t);
    return out;
  }

  bool is_constant() const { return steps.size() == 1; }

  static FlatElem constant(Alg a, Rational c) {
    FlatElem out;
    out.alg = a;
    out.steps.emplace_back(std::move(c), out.alg.top());
    return out;
  }

  static FlatElem zero(Alg a) { return constant(a, Rational(0)); }
  static FlatElem one(Alg a) { return constant(a, Rational(1)); }

  // height * chi(e): value `height` on e, zero elsewhere. Requires
  // height >= 0; with height 0 or e = 0 this is the zero element.
  static FlatElem chi(Alg a, const Elem& e, Rational height = Rational(1)) {
    if (height < 0) throw std::invalid_argument("chi with negative height");
    if (height == 0 || a.eq(e, a.bot())) return zero(a);
    if (a.eq(e, a.top())) return constant(a, height);
    FlatElem out;
    out.alg = a;
    out.steps.emplace_back(Rational(0), a.top());
    out.steps.emplace_back(std::move(height), e);
    return out;
  }

  // Canonicalize a sampled description: `samples` lists (r, value at r)
  // at strictly increasing r covering every point where the function
  // changes, with value 0 beyond the last sample. Dropped are samples
  // whose value equals the next one's, and a trailing zero value.
  static FlatElem from_samples(Alg a, std::vector<std::pair<Rational, Elem>> samples) {
    FlatElem out;
    out.alg = a;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (i + 1 < samples.size()) {
        if (!(samples[i].first < samples[i + 1].first))
          throw std::invalid_argument("flat samples not strictly increasing");
        if (a.eq(samples[i].second, samples[i + 1].second)) continue;
        if (!a.leq(samples[i + 1].second, samples[i].second))
          throw std::invalid_argument("flat samples not decreasing");
      } else if (a.eq(samples[i].second, a.bot())) {
        continue;
      }
      out.steps.push_back(samples[i]);
    }
    if (out.steps.empty() || !a.eq(out.steps.front().second, a.top()))
      throw std::invalid_argument("flat element must start at the top of the chain");
    return out;
  }

  friend bool operator==(const FlatElem& x, const FlatElem& y) {
    if (!(x.alg == y.alg) || x.steps.size() != y.steps.size()) return false;
    for (std::size_t i = 0; i < x.steps.size(); ++i)
      if (x.steps[i].first != y.steps[i].first ||
          !x.alg.eq(x.steps[i].second, y.steps[i].second))
        return false;
    return true;
  }
};

using FlatQ = FlatElem<FinBoolAlg>;
using FlatRO = FlatElem<RegOpenAlg>;

namespace detail {
inline std::vector<Rational> sorted_unique(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}
}  // namespace detail

// Pairwise-disjoint decomposition sum r_i e_i. `full` records whether the
// cells join to 1 (zero-coefficient cells are never stored).
template <class Alg>
struct OrthDecomp {
  using Elem = typename Alg::Elem;
  Alg alg;
  std::vector<std::pair<Rational, Elem>> terms;
  bool full = false;
};

// The cells of a: the finest decomposition, including the cell where the
// function vanishes, so the cells always partition 1.
template <class Alg>
std::vector<std::pair<Rational, typename Alg::Elem>> flat_cells(const FlatElem<Alg>& a) {
  const Alg& A = a.alg;
  std::vector<std::pair<Rational, typename Alg::Elem>> cells;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    typename Alg::Elem cell = a.steps[i].second;
    if (i + 1 < a.steps.size()) cell = A.meet(cell, A.complement(a.steps[i + 1].second));
    if (!A.eq(cell, A.bot())) cells.emplace_back(a.steps[i].first, cell);
  }
  return cells;
}

template <class Alg>
OrthDecomp<Alg> to_orthogonal(const FlatElem<Alg>& a) {
  const Alg& A = a.alg;
  OrthDecomp<Alg> d;
  d.alg = A;
  typename Alg::Elem stored = A.bot();
  for (auto& [v, cell] : flat_cells(a)) {
    if (v == 0) continue;
    d.terms.emplace_back(v, cell);
    stored = A.join(stored, cell);
  }
  // `full` means the stored terms themselves cover 1.
  d.full = A.eq(stored, A.top());
  return d;
}

// Reassemble a decreasing representation from an orthogonal one:
// with cells grouped by value v_0 < ... < v_k (missing mass has value 0),
// the chain element at v_i is the join of all cells with value >= v_i.
template <class Alg>
FlatElem<Alg> to_decreasing(const OrthDecomp<Alg>& d) {
  const Alg& A = d.alg;
  typename Alg::Elem covered = A.bot();
  for (auto& [v, cell] : d.terms) {
    if (!A.eq(A.meet(covered, cell), A.bot()))
      throw std::invalid_argument("orthogonal terms are not pairwise disjoint");
    covered = A.join(covered, cell);
  }
  std::map<Rational, typename Alg::Elem> by_value;
  if (!A.eq(covered, A.top())) by_value[Rational(0)] = A.complement(covered);
  for (auto& [v, cell] : d.terms) {
    auto it = by_value.find(v);
    if (it == by_value.end()) by_value[v] = cell;
    else it->second = A.join(it->second, cell);
  }
  std::vector<std::pair<Rational, typename Alg::Elem>> samples;
  typename Alg::Elem above = A.bot();
  for (auto it = by_value.rbegin(); it != by_value.rend(); ++it) {
    above = A.join(above, it->second);
    samples.emplace_back(it->first, above);
  }
  std::reverse(samples.begin(), samples.end());
  return FlatElem<Alg>::from_samples(A, std::move(samples));
}

// Value-by-value negation through the cells.
template <class Alg>
FlatElem<Alg> flat_neg(const FlatElem<Alg>& a) {
  OrthDecomp<Alg> d;
  d.alg = a.alg;
  for (auto& [v, cell] : flat_cells(a))
    if (v != 0) d.terms.emplace_back(-v, cell);
  return to_decreasing(d);
}

// (a + b)(r) = \/ { a(r1) /\ b(r2) : r1 + r2 >= r }. The join is attained
// on the finite sample set below, and the result's thresholds are sums of
// input thresholds.
template <class Alg>
FlatElem<Alg> flat_add(const FlatElem<Alg>& a, const FlatElem<Alg>& b) {
  const Alg& A = a.alg;
  auto ta = a.thresholds();
  auto tb = b.thresholds();
  std::vector<Rational> cands;
  for (const auto& x : ta)
    for (const auto& y : tb) cands.push_back(x + y);
  cands = detail::sorted_unique(std::move(cands));
  std::vector<std::pair<Rational, typename Alg::Elem>> samples;
  for (const auto& r : cands) {
    typename Alg::Elem v = A.bot();
    for (const auto& p : ta) v = A.join(v, A.meet(a.eval(p), b.eval(r - p)));
    for (const auto& q : tb) v = A.join(v, A.meet(a.eval(r - q), b.eval(q)));
    samples.emplace_back(r, v);
  }
  return FlatElem<Alg>::from_samples(A, std::move(samples));
}

template <class Alg>
FlatElem<Alg> flat_scalar(const Rational& s, const FlatElem<Alg>& a) {
  if (s == 0) return FlatElem<Alg>::zero(a.alg);
  if (s < 0) return flat_neg(flat_scalar(-s, a));
  FlatElem<Alg> out = a;
  for (auto& [t, e] : out.steps) t *= s;
  return out;
}

template <class Alg>
FlatElem<Alg> flat_sub(const FlatElem<Alg>& a, const FlatElem<Alg>& b) {
  return flat_add(a, flat_neg(b));
}

// Pointwise lattice operations; the join/meet of decreasing functions is
// computed threshold by threshold.
template <class Alg>
FlatElem<Alg> flat_join(const FlatElem<Alg>& a, const FlatElem<Alg>& b) {
  const Alg& A = a.alg;
  auto cands = detail::sorted_unique([&] {
    auto v = a.thresholds();
    auto w = b.thresholds();
    v.insert(v.end(), w.begin(), w.end());
    return v;
  }());
  std::vector<std::pair<Rational, typename Alg::Elem>> samples;
  for (const auto& r : cands) samples.emplace_back(r, A.join(a.eval(r), b.eval(r)));
  return FlatElem<Alg>::from_samples(A, std::move(samples));
}

template <class Alg>
FlatElem<Alg> flat_meet(const FlatElem<Alg>& a, const FlatElem<Alg>& b) {
  const Alg& A = a.alg;
  auto cands = detail::sorted_unique([&] {
    auto v = a.thresholds();
    auto w = b.thresholds();
    v.insert(v.end(), w.begin(), w.end());
    return v;
  }());
  std::vector<std::pair<Rational, typename Alg::Elem>> samples;
  for (const auto& r : cands) samples.emplace_back(r, A.meet(a.eval(r), b.eval(r)));
  return FlatElem<Alg>::from_samples(A, std::move(samples));
}

template <class Alg>
bool flat_leq(const FlatElem<Alg>& a, const FlatElem<Alg>& b) {
  const Alg& A = a.alg;
  for (const auto& [t, e] : a.steps)
    if (!A.leq(a.eval(t), b.eval(t))) return false;
  for (const auto& [t, e] : b.steps)
    if (!A.leq(a.eval(t), b.eval(t))) return false;
  return true;
}

template <class Alg>
FlatElem<Alg> flat_pos(const FlatElem<Alg>& a) {
  return flat_join(a, FlatElem<Alg>::zero(a.alg));
}

template <class Alg>
FlatElem<Alg> flat_negpart(const FlatElem<Alg>& a) {
  return flat_pos(flat_neg(a));
}

template <class Alg>
FlatElem<Alg> flat_abs(const FlatElem<Alg>& a) {
  return flat_join(a, flat_neg(a));
}

// The uniform norm: the largest |value| taken on any cell.
template <class Alg>
Rational flat_norm(const FlatElem<Alg>& a) {
  Rational n(0);
  for (auto& [v, cell] : flat_cells(a))
    if (rat_abs(v) > n) n = rat_abs(v);
  return n;
}

// Product of nonnegative elements:
// (ab)(r) = \/ { a(r1) /\ b(r2) : r1, r2 >= 0, r1 r2 >= r }.
template <class Alg>
FlatElem<Alg> flat_mul_nonneg(const FlatElem<Alg>& a, const FlatElem<Alg>& b) {
  const Alg& A = a.alg;
  auto zero = FlatElem<Alg>::zero(A);
  if (!flat_leq(zero, a) || !flat_leq(zero, b))
    throw std::invalid_argument("flat_mul_nonneg requires nonnegative inputs");
  std::vector<Rational> pa, pb;
  for (const auto& t : a.thresholds())
    if (t > 0) pa.push_back(t);
  for (const auto& t : b.thresholds())
    if (t > 0) pb.push_back(t);
  std::vector<Rational> cands{Rational(0)};
  for (const auto& x : pa)
    for (const auto& y : pb) cands.push_back(x * y);
  cands = detail::sorted_unique(std::move(cands));
  std::vector<std::pair<Rational, typename Alg::Elem>> samples;
  for (const auto& r : cands) {
    typename Alg::Elem v = A.bot();
    if (r == 0) v = A.top();
    else {
      for (const auto& p : pa) v = A.join(v, A.meet(a.eval(p), b.eval(r / p)));
      for (const auto& q : pb) v = A.join(v, A.meet(a.eval(r / q), b.eval(q)));
    }
    samples.emplace_back(r, v);
  }
  return FlatElem<Alg>::from_samples(A, std::move(samples));
}

// General product through the bilinear extension
// ab = a+ b+ - a+ b- - a- b+ + a- b-.
template <class Alg>
FlatElem<Alg> flat_mul(const FlatElem<Alg>& a, const FlatElem<Alg>& b) {
  auto ap = flat_pos(a), am = flat_negpart(a);
  auto bp = flat_pos(b), bm = flat_negpart(b);
  auto r = flat_mul_nonneg(ap, bp);
  r = flat_sub(r, flat_mul_nonneg(ap, bm));
  r = flat_sub(r, flat_mul_nonneg(am, bp));
  return flat_add(r, flat_mul_nonneg(am, bm));
}

// Join of the cells with nonzero value.
template <class Alg>
typename Alg::Elem flat_support(const FlatElem<Alg>& a) {
  const Alg& A = a.alg;
  typename Alg::Elem s = A.bot();
  for (auto& [v, cell] : flat_cells(a))
    if (v != 0) s = A.join(s, cell);
  return s;
}

// The idempotent e with e . g = 0 for every generator g; the annihilator
// of the set is the ideal generated by e. In these Baer algebras this is
// the complement of the joined supports.
template <class Alg>
typename Alg::Elem annihilator_elem(const std::vector<FlatElem<Alg>>& gens, const Alg& A) {
  typename Alg::Elem s = A.bot();
  for (const auto& g : gens) s = A.join(s, flat_support(g));
  return A.complement(s);
}

template <class Alg>
FlatElem<Alg> flat_annihilator(const std::vector<FlatElem<Alg>>& gens, const Alg& A) {
  return FlatElem<Alg>::chi(A, annihilator_elem(gens, A));
}

// Inverse through the cells: defined exactly when no cell value is zero
// and the cells cover 1; then the inverse carries the reciprocal values.
template <class Alg>
std::optional<FlatElem<Alg>> flat_invert(const FlatElem<Alg>& a) {
  const Alg& A = a.alg;
  OrthDecomp<Alg> inv;
  inv.alg = A;
  typename Alg::Elem covered = A.bot();
  for (auto& [v, cell] : flat_cells(a)) {
    if (v == 0) return std::nullopt;
    inv.terms.emplace_back(Rational(1) / v, cell);
    covered = A.join(covered, cell);
  }
  if (!A.eq(covered, A.top())) return std::nullopt;
  return to_decreasing(inv);
}

// The truncation identities of the decreasing representation: with
// thresholds p_0 < ... < p_n, chain elements e_i and gaps d_i = p_i -
// p_{i-1}, every i >= 1 satisfies ((a - p_{i-1}) /\ d_i) \/ 0 = d_i e_i.
template <class Alg>
Verdict truncation_identity(const FlatElem<Alg>& a) {
  const Alg& A = a.alg;
  for (std::size_t i = 1; i < a.steps.size(); ++i) {
    Rational prev = a.steps[i - 1].first;
    Rational gap = a.steps[i].first - prev;
    auto lhs = flat_pos(flat_meet(flat_sub(a, FlatElem<Alg>::constant(A, prev)),
                                  FlatElem<Alg>::constant(A, gap)));
    auto rhs = FlatElem<Alg>::chi(A, a.steps[i].second, gap);
    if (!(lhs == rhs)) return Verdict::fail("truncation", Json{{"index", i}});
  }
  return Verdict::pass(a.steps.size() > 0 ? a.steps.size() - 1 : 0);
}

// A proximity-style relation on flat elements, with optional constructive
// witnesses for the interpolation and shrinking axioms.
template <class Alg>
struct FlatRel {
  Alg alg;
  std::string name;
  std::function<bool(const FlatElem<Alg>&, const FlatElem<Alg>&)> decide;
  std::function<std::optional<FlatElem<Alg>>(const FlatElem<Alg>&, const FlatElem<Alg>&)>
      interpolant;
  std::function<std::optional<FlatElem<Alg>>(const FlatElem<Alg>&)> shrink;
};

// Threshold-wise lift of a relation on the base algebra:
// a < b iff a(r) < b(r) for every r.
template <class Alg>
FlatRel<Alg> lift_proximity(const ProximityRel<Alg>& base) {
  FlatRel<Alg> out;
  out.alg = base.alg;
  out.name = "lift(" + base.name + ")";
  auto shared = std::make_shared<ProximityRel<Alg>>(base);
  out.decide = [shared](const FlatElem<Alg>& a, const FlatElem<Alg>& b) {
    const Alg& A = a.alg;
    auto ts = detail::sorted_unique([&] {
      auto v = a.thresholds();
      auto w = b.thresholds();
      v.insert(v.end(), w.begin(), w.end());
      return v;
    }());
    for (const auto& t : ts)
      if (!shared->rel(a.eval(t), b.eval(t))) return false;
    // Beyond the last threshold both sides are 0.
    return shared->rel(A.bot(), A.bot());
  };
  if (base.interpolant) {
    out.interpolant = [shared](const FlatElem<Alg>& a, const FlatElem<Alg>& b)
        -> std::optional<FlatElem<Alg>> {
      const Alg& A = a.alg;
      auto ts = detail::sorted_unique([&] {
        auto v = a.thresholds();
        auto w = b.thresholds();
        v.insert(v.end(), w.begin(), w.end());
        return v;
      }());
      // Interpolate piece by piece, then force the chain to decrease by
      // joining from the largest threshold downward; the join rule for
      // the base relation keeps every piece strictly inside b's piece.
      std::vector<std::pair<Rational, typename Alg::Elem>> samples(ts.size());
      typename Alg::Elem acc = A.bot();
      for (std::size_t k = ts.size(); k-- > 0;) {
        auto mid = shared->interpolant(a.alg, a.eval(ts[k]), b.eval(ts[k]));
        if (!mid) return std::nullopt;
        acc = A.join(acc, *mid);
        samples[k] = {ts[k], acc};
      }
      return FlatElem<Alg>::from_samples(A, std::move(samples));
    };
  }
  if (base.shrink) {
    out.shrink = [shared](const FlatElem<Alg>& a) -> std::optional<FlatElem<Alg>> {
      const Alg& A = a.alg;
      if (a == FlatElem<Alg>::zero(A)) return std::nullopt;
      const auto& [rmax, etop] = a.steps.back();
      if (rmax <= 0) return std::nullopt;
      auto small = shared->shrink(A, etop);
      if (!small) return std::nullopt;
      return FlatElem<Alg>::chi(A, *small, rmax);
    };
  }
  return out;
}

}  // namespace proxalg
