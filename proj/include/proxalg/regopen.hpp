#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "proxalg/rational.hpp"

namespace proxalg {

// Subinterval of [0,1] with rational endpoints. lo_open / hi_open say
// whether the endpoint is excluded. Used both as raw input and, with
// canonical flags, as a component of a RegOpen.
struct Interval {
  Rational lo, hi;
  bool lo_open = true;
  bool hi_open = true;

  // Empty as a point set.
  bool empty() const {
    if (lo > hi) return true;
    if (lo == hi) return lo_open || hi_open;
    return false;
  }

  bool contains(const Rational& x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && lo_open) return false;
    if (x == hi && hi_open) return false;
    return true;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline void validate_interval(const Interval& iv) {
  if (iv.lo > iv.hi) throw std::invalid_argument("interval with lo > hi");
  if (iv.lo < 0 || iv.hi > 1) throw std::invalid_argument("interval outside [0,1]");
}

// Regular open subset of [0,1]: a set U with int(cl(U)) = U. Canonical
// form: finitely many disjoint, non-adjacent open parts sorted by lo; an
// endpoint is closed exactly when it is 0 or 1 and belongs to the set.
struct RegOpen {
  std::vector<Interval> parts;

  bool empty() const { return parts.empty(); }
  bool full() const {
    return parts.size() == 1 && parts[0].lo == 0 && parts[0].hi == 1 &&
           !parts[0].lo_open && !parts[0].hi_open;
  }
  bool contains(const Rational& x) const {
    for (const auto& p : parts)
      if (p.contains(x)) return true;
    return false;
  }

  friend bool operator==(const RegOpen&, const RegOpen&) = default;
  friend bool operator<(const RegOpen& a, const RegOpen& b) {
    auto key = [](const Interval& iv) {
      return std::tuple(iv.lo, iv.hi, iv.lo_open, iv.hi_open);
    };
    return std::lexicographical_compare(
        a.parts.begin(), a.parts.end(), b.parts.begin(), b.parts.end(),
        [&](const Interval& x, const Interval& y) { return key(x) < key(y); });
  }
};

// int(cl(.)) of a finite union of intervals, relative to [0,1]. Closure
// first (merging overlapping or touching closed intervals, single points
// included), then interior, which reopens every endpoint except 0 and 1.
inline RegOpen regularize(const std::vector<Interval>& raw) {
  std::vector<std::pair<Rational, Rational>> closed;
  for (const auto& iv : raw) {
    validate_interval(iv);
    if (iv.empty()) continue;
    closed.emplace_back(iv.lo, iv.hi);
  }
  std::sort(closed.begin(), closed.end());
  std::vector<std::pair<Rational, Rational>> merged;
  for (const auto& c : closed) {
    if (!merged.empty() && c.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, c.second);
    else
      merged.push_back(c);
  }
  RegOpen out;
  for (const auto& m : merged) {
    Interval p{m.first, m.second, m.first != 0, m.second != 1};
    if (!p.empty()) out.parts.push_back(p);
  }
  return out;
}

inline const RegOpen& regopen_empty() {
  static const RegOpen e{};
  return e;
}

inline const RegOpen& regopen_full() {
  static const RegOpen f{{Interval{Rational(0), Rational(1), false, false}}};
  return f;
}

enum class BoolOp { Meet, Join, Complement };

inline RegOpen regopen_meet(const RegOpen& a, const RegOpen& b) {
  RegOpen out;
  for (const auto& p : a.parts)
    for (const auto& q : b.parts) {
      Interval r;
      if (p.lo > q.lo) { r.lo = p.lo; r.lo_open = p.lo_open; }
      else if (q.lo > p.lo) { r.lo = q.lo; r.lo_open = q.lo_open; }
      else { r.lo = p.lo; r.lo_open = p.lo_open || q.lo_open; }
      if (p.hi < q.hi) { r.hi = p.hi; r.hi_open = p.hi_open; }
      else if (q.hi < p.hi) { r.hi = q.hi; r.hi_open = q.hi_open; }
      else { r.hi = p.hi; r.hi_open = p.hi_open || q.hi_open; }
      if (!r.empty() && r.lo <= r.hi) out.parts.push_back(r);
    }
  std::sort(out.parts.begin(), out.parts.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  return out;
}

inline RegOpen regopen_join(const RegOpen& a, const RegOpen& b) {
  std::vector<Interval> all = a.parts;
  all.insert(all.end(), b.parts.begin(), b.parts.end());
  return regularize(all);
}

inline RegOpen regopen_complement(const RegOpen& a) {
  // Interior of [0,1] \ U, walking the gaps between canonical parts.
  RegOpen out;
  Rational cur(0);
  bool cur_in_u = !a.parts.empty() && a.parts.front().contains(Rational(0));
  for (const auto& p : a.parts) {
    if (!cur_in_u && cur < p.lo) {
      Interval g{cur, p.lo, cur != 0, true};
      if (!g.empty()) out.parts.push_back(g);
    }
    cur = p.hi;
    cur_in_u = false;
  }
  bool one_in_u = !a.parts.empty() && a.parts.back().contains(Rational(1));
  if (!one_in_u && cur < 1) {
    Interval g{cur, Rational(1), cur != 0, false};
    if (!g.empty()) out.parts.push_back(g);
  }
  if (a.parts.empty()) return regopen_full();
  return out;
}

inline RegOpen boolean_op(BoolOp op, const RegOpen& a, const RegOpen& b = RegOpen{}) {
  switch (op) {
    case BoolOp::Meet: return regopen_meet(a, b);
    case BoolOp::Join: return regopen_join(a, b);
    case BoolOp::Complement: return regopen_complement(a);
  }
  throw std::logic_error("unreachable");
}

inline bool regopen_leq(const RegOpen& a, const RegOpen& b) {
  return regopen_meet(a, b) == a;
}

// cl(U) subseteq V. This is the standard compingent relation on the
// regular opens of [0,1].
inline bool closure_contained(const RegOpen& u, const RegOpen& v) {
  for (const auto& p : u.parts) {
    // cl(part) = [lo, hi]; it is connected, so it lies in V iff both
    // endpoints lie in a single part of V.
    bool ok = false;
    for (const auto& q : v.parts)
      if (q.contains(p.lo) && q.contains(p.hi)) { ok = true; break; }
    if (!ok) return false;
  }
  return true;
}

// Given cl(U) subseteq V, produce W with cl(U) subseteq W and cl(W)
// subseteq V by pushing every boundary of U to the midpoint of the gap
// between it and the enclosing boundary of V.
inline RegOpen interpolate(const RegOpen& u, const RegOpen& v) {
  if (!closure_contained(u, v))
    throw std::invalid_argument("interpolate requires cl(U) inside V");
  std::vector<Interval> grown;
  for (const auto& p : u.parts) {
    const Interval* host = nullptr;
    for (const auto& q : v.parts)
      if (q.contains(p.lo) && q.contains(p.hi)) { host = &q; break; }
    Interval w;
    w.lo = (p.lo + host->lo) / 2;
    w.hi = (p.hi + host->hi) / 2;
    w.lo_open = !(w.lo == 0 && !host->lo_open);
    w.hi_open = !(w.hi == 1 && !host->hi_open);
    grown.push_back(w);
  }
  return regularize(grown);
}

// Nonzero W with cl(W) subseteq U, for nonzero U. Shrinks the first part
// towards its middle.
inline RegOpen shrink_witness(const RegOpen& u) {
  if (u.empty()) throw std::invalid_argument("shrink_witness of the empty set");
  const Interval& p = u.parts.front();
  Rational len = p.hi - p.lo;
  Interval w;
  if (!p.lo_open) { w.lo = p.lo; w.lo_open = false; }
  else { w.lo = p.lo + len / 4; w.lo_open = true; }
  if (!p.hi_open) { w.hi = p.hi; w.hi_open = false; }
  else { w.hi = p.hi - len / 4; w.hi_open = true; }
  return regularize({w});
}

}  // namespace proxalg
