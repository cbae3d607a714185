#pragma once

// Shared helpers for the test binaries: deterministic random spaces and
// cross matrices, an independent shortest-path completion oracle, and the
// fixed set of small fixture spaces.

#include "mdbl/semigroup.hpp"

#include <random>
#include <vector>

namespace testutil {

using namespace mdbl;

// Random extended metric: points split into component blocks, integer
// distances inside a block made consistent by min-plus closure.
inline SpacePtr random_space(std::mt19937& rng, int n, bool connected = false) {
  std::uniform_int_distribution<int> w(1, 20);
  std::vector<int> comp(n, 0);
  if (!connected) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    int parts = 1 + pick(rng) % n;
    for (int i = 0; i < n; ++i) comp[i] = pick(rng) % parts;
  }
  ExtMatrix d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        d.at(i, j) = ExtValue(0);
      else if (comp[i] != comp[j])
        d.at(i, j) = ExtValue::inf();
      else
        d.at(i, j) = ExtValue(w(rng));
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d.at(j, i) = d.at(i, j);
  // shortest-path closure makes it a metric
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d.at(i, j) = min(d.at(i, j), d.at(i, k) + d.at(k, j));
  return make_space(std::move(d));
}

inline ExtValue max_finite(const ExtMatrix& m) {
  ExtValue best(0);
  for (const auto& v : m.a)
    if (!v.is_inf() && v > best) best = v;
  return best;
}

// Random valid double metric: pick a partial bijection of the components,
// seed the matched blocks with values above the diameter, then stabilize by
// d ⊕ cross ⊕ d so all four triangle families hold.
inline DoubleMetric random_double(std::mt19937& rng, SpacePtr sp) {
  const int n = sp->size();
  const int k = sp->component_count();
  std::vector<int> to(k, -1);
  std::vector<int> targets(k);
  for (int c = 0; c < k; ++c) targets[c] = c;
  std::shuffle(targets.begin(), targets.end(), rng);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int c = 0; c < k; ++c)
    if (coin(rng)) to[c] = targets[c];
  long long m = 1;
  ExtValue diam = max_finite(sp->dist());
  if (!diam.is_inf()) m = diam.finite().numerator() / diam.finite().denominator() + 1;
  std::uniform_int_distribution<long long> seed(m, 2 * m + 2);
  ExtMatrix cross(n, n);
  const auto& comp = sp->component_of();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cross.at(i, j) =
          to[comp[i]] == comp[j] ? ExtValue(seed(rng)) : ExtValue::inf();
  ExtMatrix stab = min_plus(sp->dist(), min_plus(cross, sp->dist()));
  return make_double(sp, std::move(stab));
}

// Random selfadjoint idempotent: subset metric with per-anchor weights >= 1.
inline DoubleMetric random_idempotent(std::mt19937& rng, SpacePtr sp) {
  const int n = sp->size();
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> wt(1, 5);
  std::vector<int> a;
  for (int i = 0; i < n; ++i)
    if (coin(rng)) a.push_back(i);
  if (a.empty()) a.push_back(pick(rng));
  std::vector<Rat> c;
  for (size_t t = 0; t < a.size(); ++t) c.emplace_back(wt(rng));
  return weighted_subset_metric(sp, a, c);
}

// Independent realizability oracle: assemble the 2n-point graph with the
// space metric on both copies and edges of weight `w` at the candidate ones,
// run Floyd-Warshall, and read the finiteness pattern back off the result.
// A pattern is realizable iff the completion reproduces it exactly and the
// completed matrix is a valid extended metric on the double.
inline bool pattern_realizable_oracle(const FiniteSpace& sp, const Pattern& p) {
  const int n = sp.size();
  ExtValue w = max_finite(sp.dist()) + ExtValue(1);
  const int m = 2 * n;
  ExtMatrix g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g.at(i, j) = i == j ? ExtValue(0) : ExtValue::inf();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g.at(i, j) = sp.d(i, j);
      g.at(n + i, n + j) = sp.d(i, j);
      if (p.bit(i, j)) {
        g.at(i, n + j) = w;
        g.at(n + j, i) = w;
      }
    }
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) g.at(i, j) = min(g.at(i, j), g.at(i, k) + g.at(k, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (g.at(i, n + j).is_inf() == p.bit(i, j)) return false;
      if (!(g.at(i, j) == sp.d(i, j))) return false;  // cross edges must not shortcut
      if (!(g.at(n + i, n + j) == sp.d(i, j))) return false;
    }
  ExtMatrix cross(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cross.at(i, j) = g.at(i, n + j);
  return validate_cross(sp, sp, cross).ok();
}

inline SpacePtr space_from(std::vector<std::vector<const char*>> rows) {
  const int n = static_cast<int>(rows.size());
  ExtMatrix d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::string s = rows[i][j];
      d.at(i, j) = s == "inf" ? ExtValue::inf() : ExtValue(rat_from_string(s));
    }
  return make_space(std::move(d));
}

// The fixed small-space fixture set (n <= 4, mixed component structure).
inline std::vector<SpacePtr> fixture_spaces() {
  std::vector<SpacePtr> out;
  out.push_back(space_from({{"0"}}));
  out.push_back(space_from({{"0", "1"}, {"1", "0"}}));
  out.push_back(space_from({{"0", "inf"}, {"inf", "0"}}));
  out.push_back(space_from({{"0", "1", "2"}, {"1", "0", "1"}, {"2", "1", "0"}}));
  out.push_back(space_from({{"0", "3", "inf"}, {"3", "0", "inf"}, {"inf", "inf", "0"}}));
  out.push_back(space_from(
      {{"0", "inf", "inf"}, {"inf", "0", "inf"}, {"inf", "inf", "0"}}));
  out.push_back(space_from({{"0", "1", "1", "2"},
                            {"1", "0", "1", "2"},
                            {"1", "1", "0", "1"},
                            {"2", "2", "1", "0"}}));
  out.push_back(space_from({{"0", "2", "inf", "inf"},
                            {"2", "0", "inf", "inf"},
                            {"inf", "inf", "0", "5"},
                            {"inf", "inf", "5", "0"}}));
  out.push_back(space_from({{"0", "1", "2", "inf"},
                            {"1", "0", "1", "inf"},
                            {"2", "1", "0", "inf"},
                            {"inf", "inf", "inf", "0"}}));
  out.push_back(space_from({{"0", "inf", "inf", "inf"},
                            {"inf", "0", "inf", "inf"},
                            {"inf", "inf", "0", "inf"},
                            {"inf", "inf", "inf", "0"}}));
  return out;
}

}  // namespace testutil
