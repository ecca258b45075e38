#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

#include "proxalg/flat.hpp"
#include "proxalg/rational.hpp"
#include "proxalg/regopen.hpp"

namespace proxalg {

// Finitely-valued step function on [0,1], kept exactly: breakpoints
// 0 = x_0 < ... < x_m = 1, the value c_i on the open interval
// (x_{i-1}, x_i) and the value v_i at the point x_i. Canonical form
// merges a breakpoint whose point value agrees with equal values on both
// sides.
struct StepFn {
  std::vector<Rational> x;
  std::vector<Rational> c;
  std::vector<Rational> v;

  std::size_t intervals() const { return c.size(); }

  void validate() const {
    if (x.size() < 2 || x.front() != 0 || x.back() != 1)
      throw std::invalid_argument("breakpoints must run from 0 to 1");
    for (std::size_t i = 1; i < x.size(); ++i)
      if (!(x[i - 1] < x[i])) throw std::invalid_argument("breakpoints must increase");
    if (c.size() + 1 != x.size() || v.size() != x.size())
      throw std::invalid_argument("value lists do not match the breakpoints");
  }

  void canonicalize() {
    validate();
    StepFn out;
    out.x.push_back(x[0]);
    out.v.push_back(v[0]);
    for (std::size_t i = 1; i < x.size(); ++i) {
      if (i + 1 < x.size() && c[i - 1] == c[i] && v[i] == c[i]) {
        // interior breakpoint carrying no information
        continue;
      }
      out.c.push_back(c[i - 1]);
      out.x.push_back(x[i]);
      out.v.push_back(v[i]);
    }
    // merging can leave equal consecutive intervals only via the loop
    // above, so out is canonical
    *this = out;
  }

  Rational eval(const Rational& p) const {
    if (p < 0 || p > 1) throw std::invalid_argument("point outside [0,1]");
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (p == x[i]) return v[i];
      if (p < x[i]) return c[i - 1];
    }
    throw std::logic_error("unreachable");
  }

  static StepFn constant(Rational r) {
    StepFn f;
    f.x = {Rational(0), Rational(1)};
    f.c = {r};
    f.v = {r, r};
    return f;
  }

  friend bool operator==(const StepFn&, const StepFn&) = default;
};

// Rewrite f on a refined breakpoint grid (a superset of f.x).
inline StepFn refine(const StepFn& f, const std::vector<Rational>& grid) {
  StepFn out;
  out.x = grid;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out.v.push_back(f.eval(grid[k]));
    if (k + 1 < grid.size()) out.c.push_back(f.eval((grid[k] + grid[k + 1]) / 2));
  }
  return out;
}

inline std::vector<Rational> common_grid(const StepFn& f, const StepFn& g) {
  std::vector<Rational> grid = f.x;
  grid.insert(grid.end(), g.x.begin(), g.x.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// Upper Baire operator f*: the interval values stay, each point value is
// raised to the local sup (one-sided at 0 and 1).
inline StepFn baire_upper(const StepFn& f) {
  StepFn out = f;
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    Rational m = out.v[i];
    if (i > 0) m = std::max(m, out.c[i - 1]);
    if (i < out.c.size()) m = std::max(m, out.c[i]);
    out.v[i] = m;
  }
  out.canonicalize();
  return out;
}

// Lower Baire operator f_*.
inline StepFn baire_lower(const StepFn& f) {
  StepFn out = f;
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    Rational m = out.v[i];
    if (i > 0) m = std::min(m, out.c[i - 1]);
    if (i < out.c.size()) m = std::min(m, out.c[i]);
    out.v[i] = m;
  }
  out.canonicalize();
  return out;
}

// (f*)_* , the normal function with the same interval values.
inline StepFn normalize(const StepFn& f) { return baire_lower(baire_upper(f)); }

inline bool is_normal(const StepFn& f) {
  StepFn g = f;
  g.canonicalize();
  return normalize(g) == g;
}

inline StepFn pointwise(const StepFn& f, const StepFn& g,
                        const std::function<Rational(const Rational&, const Rational&)>& op) {
  auto grid = common_grid(f, g);
  StepFn a = refine(f, grid), b = refine(g, grid);
  StepFn out;
  out.x = grid;
  for (std::size_t i = 0; i < a.c.size(); ++i) out.c.push_back(op(a.c[i], b.c[i]));
  for (std::size_t i = 0; i < a.v.size(); ++i) out.v.push_back(op(a.v[i], b.v[i]));
  out.canonicalize();
  return out;
}

// Operations of the normal-function algebra: the meet is pointwise (and
// stays normal); everything else is the pointwise operation followed by
// normalization.
inline StepFn fn_add(const StepFn& f, const StepFn& g) {
  return normalize(pointwise(f, g, [](const Rational& p, const Rational& q) { return p + q; }));
}
inline StepFn fn_mul(const StepFn& f, const StepFn& g) {
  return normalize(pointwise(f, g, [](const Rational& p, const Rational& q) { return p * q; }));
}
inline StepFn fn_join(const StepFn& f, const StepFn& g) {
  return normalize(pointwise(f, g, [](const Rational& p, const Rational& q) { return std::max(p, q); }));
}
inline StepFn fn_meet(const StepFn& f, const StepFn& g) {
  return pointwise(f, g, [](const Rational& p, const Rational& q) { return std::min(p, q); });
}
inline StepFn fn_neg(const StepFn& f) {
  StepFn out = f;
  for (auto& p : out.c) p = -p;
  for (auto& p : out.v) p = -p;
  return normalize(out);
}
inline StepFn fn_sub(const StepFn& f, const StepFn& g) { return fn_add(f, fn_neg(g)); }
inline StepFn fn_scalar(const Rational& r, const StepFn& f) {
  StepFn out = f;
  for (auto& p : out.c) p = r * p;
  for (auto& p : out.v) p = r * p;
  return normalize(out);
}

inline bool fn_leq(const StepFn& f, const StepFn& g) {
  auto grid = common_grid(f, g);
  StepFn a = refine(f, grid), b = refine(g, grid);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    if (a.c[i] > b.c[i]) return false;
  for (std::size_t i = 0; i < a.v.size(); ++i)
    if (a.v[i] > b.v[i]) return false;
  return true;
}

// f < g in the Katetov-Tong sense: f* <= g.
inline bool kt_proximity(const StepFn& f, const StepFn& g) {
  return fn_leq(baire_upper(f), g);
}

// f < g threshold by threshold: cl(f^{-1}[r, oo)) subseteq g^{-1}[r, oo)
// for every r. The level sets only change at values of f and g, so those
// thresholds decide the relation.
inline bool threshold_proximity(const StepFn& f, const StepFn& g) {
  auto grid = common_grid(f, g);
  StepFn a = refine(f, grid), b = refine(g, grid);
  std::vector<Rational> levels = a.c;
  levels.insert(levels.end(), a.v.begin(), a.v.end());
  levels.insert(levels.end(), b.c.begin(), b.c.end());
  levels.insert(levels.end(), b.v.begin(), b.v.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (const auto& r : levels) {
    for (std::size_t i = 0; i < a.c.size(); ++i)
      if (a.c[i] >= r && !(b.c[i] >= r)) return false;
    for (std::size_t i = 0; i < a.v.size(); ++i) {
      bool in_closure = a.v[i] >= r || (i > 0 && a.c[i - 1] >= r) ||
                        (i < a.c.size() && a.c[i] >= r);
      if (in_closure && !(b.v[i] >= r)) return false;
    }
  }
  return true;
}

// chi_U as a normal function.
inline StepFn chi_of(const RegOpen& u) {
  std::vector<Rational> grid{Rational(0), Rational(1)};
  for (const auto& p : u.parts) {
    grid.push_back(p.lo);
    grid.push_back(p.hi);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  StepFn f;
  f.x = grid;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    Rational mid = (grid[i - 1] + grid[i]) / 2;
    f.c.push_back(u.contains(mid) ? Rational(1) : Rational(0));
  }
  for (const auto& p : grid) f.v.push_back(u.contains(p) ? Rational(1) : Rational(0));
  StepFn out = normalize(f);
  return out;
}

// The regular open set with chi_of(U) = e, for idempotent normal e.
inline RegOpen regopen_of(const StepFn& e) {
  std::vector<Interval> parts;
  for (std::size_t i = 0; i < e.c.size(); ++i) {
    if (e.c[i] == 1) parts.push_back(Interval{e.x[i], e.x[i + 1], true, true});
    else if (e.c[i] != 0)
      throw std::invalid_argument("not an idempotent step function");
  }
  for (std::size_t i = 0; i < e.v.size(); ++i)
    if (e.v[i] != 0 && e.v[i] != 1)
      throw std::invalid_argument("not an idempotent step function");
  return regularize(parts);
}

// Interior of the level set {f >= r} for a normal f, as a regular open
// set of [0,1]. For normal functions the breakpoint between two
// qualifying intervals qualifies automatically, which is exactly the
// merging regularize performs.
inline RegOpen level_interior(const StepFn& f, const Rational& r) {
  std::vector<Interval> parts;
  for (std::size_t i = 0; i < f.c.size(); ++i)
    if (f.c[i] >= r) parts.push_back(Interval{f.x[i], f.x[i + 1], true, true});
  return regularize(parts);
}

// Isomorphism between decreasing flat functions over the regular opens
// and finitely-valued normal functions: thresholds become values, chain
// elements become level-set interiors.
inline StepFn flat_to_stepfn(const FlatRO& a) {
  std::vector<Rational> grid{Rational(0), Rational(1)};
  for (const auto& [t, u] : a.steps)
    for (const auto& p : u.parts) {
      grid.push_back(p.lo);
      grid.push_back(p.hi);
    }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  StepFn f;
  f.x = grid;
  auto value_at = [&](const Rational& p) {
    Rational val = a.steps.front().first;  // baseline r_0
    for (const auto& [t, u] : a.steps)
      if (u.contains(p)) val = t;
    return val;
  };
  for (std::size_t i = 1; i < grid.size(); ++i)
    f.c.push_back(value_at((grid[i - 1] + grid[i]) / 2));
  // normalization pins every point value to the min of its neighbours,
  // whatever values are seeded here
  f.v.assign(grid.size(), Rational(0));
  return normalize(f);
}

inline FlatRO stepfn_to_flat(const StepFn& f) {
  if (!is_normal(f)) throw std::invalid_argument("only normal functions correspond");
  std::vector<Rational> values = f.c;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<std::pair<Rational, RegOpen>> samples;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == 0) samples.emplace_back(values[i], regopen_full());
    else samples.emplace_back(values[i], level_interior(f, values[i]));
  }
  return FlatRO::from_samples(RegOpenAlg{}, std::move(samples));
}

// Constant separating witness in the reflexive sense: a constant c with
// f* <= c <= g. On the connected interval the continuous step functions
// are exactly the constants, so such a witness exists iff max f* <= min g.
inline std::optional<Rational> kt_constant_witness(const StepFn& f, const StepFn& g) {
  StepFn fu = baire_upper(f);
  Rational hi = fu.v[0];
  for (const auto& p : fu.c) hi = std::max(hi, p);
  for (const auto& p : fu.v) hi = std::max(hi, p);
  Rational lo = g.v[0];
  for (const auto& p : g.c) lo = std::min(lo, p);
  for (const auto& p : g.v) lo = std::min(lo, p);
  if (hi > lo) return std::nullopt;
  return (hi + lo) / 2;
}

// Interpolant for the non-reflexive interpolation axiom, built through
// the level-set correspondence with the flat model.
inline std::optional<StepFn> kt_interpolant(const StepFn& f, const StepFn& g) {
  auto lifted = lift_proximity(closure_rel());
  FlatRO a = stepfn_to_flat(f);
  FlatRO b = stepfn_to_flat(g);
  if (!lifted.decide(a, b)) return std::nullopt;
  auto mid = lifted.interpolant(a, b);
  if (!mid) return std::nullopt;
  return flat_to_stepfn(*mid);
}

// The three renderings of the proximity on normal step functions.
struct ClaimReport {
  bool kt = false;
  bool threshold = false;
  bool componentwise = false;
  bool agree() const { return kt == threshold && threshold == componentwise; }
};

inline ClaimReport claim_equivalence(const StepFn& f, const StepFn& g) {
  ClaimReport rep;
  rep.kt = kt_proximity(f, g);
  rep.threshold = threshold_proximity(f, g);
  FlatRO a = stepfn_to_flat(f);
  FlatRO b = stepfn_to_flat(g);
  auto lifted = lift_proximity(closure_rel());
  rep.componentwise = lifted.decide(a, b);
  return rep;
}

inline void to_json(nlohmann::ordered_json& j, const StepFn& f) {
  auto strs = [](const std::vector<Rational>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& r : v) out.push_back(rat_str(r));
    return out;
  };
  j = nlohmann::ordered_json{{"x", strs(f.x)}, {"c", strs(f.c)}, {"v", strs(f.v)}};
}

inline void from_json(const nlohmann::ordered_json& j, StepFn& f) {
  auto rats = [](const nlohmann::ordered_json& a) {
    std::vector<Rational> out;
    for (const auto& s : a) out.push_back(rat_parse(s.get<std::string>()));
    return out;
  };
  f.x = rats(j.at("x"));
  f.c = rats(j.at("c"));
  f.v = rats(j.at("v"));
  f.validate();
  f.canonicalize();
}

}  // namespace proxalg
