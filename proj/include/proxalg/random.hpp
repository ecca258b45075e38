#pragma once

#include <random>

#include "proxalg/flat.hpp"
#include "proxalg/stepfn.hpp"

namespace proxalg {

// Deterministic sample streams. Every randomized check threads one of
// these, seeded from the command line, so verdicts replay byte for byte.
struct Sampler {
  std::mt19937_64 rng;

  explicit Sampler(std::uint64_t seed) : rng(seed) {}

  int pick(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  }

  Rational rational(int max_den = 16, int lo = -4, int hi = 4) {
    int den = pick(1, max_den);
    int num = pick(lo * den, hi * den);
    return Rational(num, den);
  }

  Rational unit_rational(int max_den = 16) {
    int den = pick(1, max_den);
    return Rational(pick(0, den), den);
  }

  std::uint32_t finba_elem(const FinBoolAlg& alg) {
    return static_cast<std::uint32_t>(
        std::uniform_int_distribution<std::uint64_t>(0, alg.top())(rng));
  }

  RegOpen regopen(int max_parts = 3, int grid_den = 16) {
    std::vector<Interval> parts;
    int n = pick(0, max_parts);
    for (int i = 0; i < n; ++i) {
      Rational a(pick(0, grid_den), grid_den);
      Rational b(pick(0, grid_den), grid_den);
      if (a > b) std::swap(a, b);
      parts.push_back(Interval{a, b, true, true});
    }
    return regularize(parts);
  }

  // Random flat element: a strictly decreasing chain obtained by meeting
  // random carrier elements, with increasing rational thresholds.
  template <class Alg>
  FlatElem<Alg> flat(const Alg& alg, int max_steps = 4, int max_den = 8) {
    std::vector<std::pair<Rational, typename Alg::Elem>> samples;
    typename Alg::Elem cur = alg.top();
    Rational t = rational(max_den, -3, 3);
    int n = pick(1, max_steps);
    for (int i = 0; i < n; ++i) {
      samples.emplace_back(t, cur);
      t += Rational(pick(1, 2 * max_den), max_den);
      typename Alg::Elem next = alg.meet(cur, random_elem(alg));
      if (alg.eq(next, cur) || alg.eq(next, alg.bot())) break;
      cur = next;
    }
    return FlatElem<Alg>::from_samples(alg, std::move(samples));
  }

  template <class Alg>
  FlatElem<Alg> flat_nonneg(const Alg& alg, int max_steps = 4, int max_den = 8) {
    auto a = flat(alg, max_steps, max_den);
    return flat_pos(a);
  }

  StepFn stepfn(int max_breaks = 6, int max_den = 16, int val_lo = -2, int val_hi = 2) {
    std::vector<Rational> grid{Rational(0), Rational(1)};
    int n = pick(0, max_breaks);
    for (int i = 0; i < n; ++i) grid.push_back(unit_rational(max_den));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    StepFn f;
    f.x = grid;
    for (std::size_t i = 1; i < grid.size(); ++i)
      f.c.push_back(rational(4, val_lo, val_hi));
    for (std::size_t i = 0; i < grid.size(); ++i)
      f.v.push_back(rational(4, val_lo, val_hi));
    f.canonicalize();
    return f;
  }

  StepFn normal_stepfn(int max_breaks = 6, int max_den = 16) {
    return normalize(stepfn(max_breaks, max_den));
  }

 private:
  std::uint32_t random_elem(const FinBoolAlg& alg) { return finba_elem(alg); }
  RegOpen random_elem(const RegOpenAlg&) { return regopen(); }
};

}  // namespace proxalg
