#include "mdbl/semigroup.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mdbl {

Pattern Pattern::transposed() const {
  Pattern t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.set(j, i, bit(i, j));
  return t;
}

std::string Pattern::encode() const {
  std::string s(bits.size(), '0');
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s[i] = '1';
  return s;
}

Pattern canonical_class(const DoubleMetric& d) {
  const int n = d.size();
  Pattern p(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.set(i, j, !d.at(i, j).is_inf());
  return p;
}

PartialBijection PartialBijection::inverse() const {
  PartialBijection inv;
  inv.to.assign(to.size(), -1);
  for (size_t c = 0; c < to.size(); ++c)
    if (to[c] >= 0) inv.to[to[c]] = static_cast<int>(c);
  return inv;
}

PartialBijection PartialBijection::composed(const PartialBijection& outer,
                                            const PartialBijection& inner) {
  PartialBijection r;
  r.to.assign(inner.to.size(), -1);
  for (size_t c = 0; c < inner.to.size(); ++c)
    if (inner.to[c] >= 0) r.to[c] = outer.to[inner.to[c]];
  return r;
}

PatternCheck pattern_valid(const FiniteSpace& space, const Pattern& p) {
  PatternCheck res;
  const int n = space.size();
  if (p.n != n) {
    res.reason = "pattern size differs from the space";
    return res;
  }
  const auto& comp = space.component_of();
  const auto& reps = space.representatives();
  const int k = space.component_count();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.bit(i, j) != p.bit(reps[comp[i]], reps[comp[j]])) {
        std::ostringstream os;
        os << "pattern is not constant on the component block of (" << i << "," << j << ")";
        res.reason = os.str();
        return res;
      }
  PartialBijection pb;
  pb.to.assign(k, -1);
  std::vector<int> from(k, -1);
  for (int c = 0; c < k; ++c)
    for (int c2 = 0; c2 < k; ++c2) {
      if (!p.bit(reps[c], reps[c2])) continue;
      if (pb.to[c] != -1) {
        std::ostringstream os;
        os << "component " << c << " relates to two right components";
        res.reason = os.str();
        return res;
      }
      if (from[c2] != -1) {
        std::ostringstream os;
        os << "right component " << c2 << " relates to two left components";
        res.reason = os.str();
        return res;
      }
      pb.to[c] = c2;
      from[c2] = c;
    }
  res.ok = true;
  res.bijection = pb;
  return res;
}

DoubleMetric realize(SpacePtr space, const Pattern& p) {
  auto chk = pattern_valid(*space, p);
  if (!chk.ok) throw std::invalid_argument("realize: invalid pattern: " + chk.reason);
  const int n = space->size();
  const auto& comp = space->component_of();
  const auto& reps = space->representatives();
  ExtMatrix cross(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int c = comp[i], c2 = comp[j];
      if (chk.bijection->to[c] == c2)
        cross.at(i, j) = space->d(i, reps[c]) + ExtValue(1) + space->d(reps[c2], j);
      else
        cross.at(i, j) = ExtValue::inf();
    }
#ifndef NDEBUG
  auto rep = validate_cross(*space, *space, cross);
  if (!rep.ok())
    throw std::logic_error("realize: output failed validation:\n" + rep.describe());
#endif
  return {std::move(space), std::move(cross)};
}

Pattern pattern_of_bijection(const FiniteSpace& space, const PartialBijection& pb) {
  const int n = space.size();
  const auto& comp = space.component_of();
  Pattern p(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.set(i, j, pb.to[comp[i]] == comp[j]);
  return p;
}

int SemigroupTable::find(const Pattern& p) const {
  std::string code = p.encode();
  int lo = 0, hi = size();
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (elements[mid].encode() < code)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && elements[lo] == p) return lo;
  return -1;
}

static void gen_partial_bijections(int k, int c, PartialBijection& cur,
                                   std::vector<bool>& used,
                                   std::vector<PartialBijection>& out) {
  if (c == k) {
    out.push_back(cur);
    return;
  }
  cur.to[c] = -1;
  gen_partial_bijections(k, c + 1, cur, used, out);
  for (int t = 0; t < k; ++t) {
    if (used[t]) continue;
    used[t] = true;
    cur.to[c] = t;
    gen_partial_bijections(k, c + 1, cur, used, out);
    cur.to[c] = -1;
    used[t] = false;
  }
}

SemigroupTable enumerate(SpacePtr space) {
  SemigroupTable t;
  t.space = space;
  const int k = space->component_count();
  std::vector<PartialBijection> pbs;
  PartialBijection cur;
  cur.to.assign(k, -1);
  std::vector<bool> used(k, false);
  gen_partial_bijections(k, 0, cur, used, pbs);

  std::vector<std::pair<std::string, Pattern>> keyed;
  keyed.reserve(pbs.size());
  for (const auto& pb : pbs) {
    Pattern p = pattern_of_bijection(*space, pb);
    keyed.emplace_back(p.encode(), std::move(p));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  const int m = static_cast<int>(keyed.size());
  t.elements.reserve(m);
  t.reps.reserve(m);
  for (auto& [code, p] : keyed) {
    t.reps.push_back(realize(space, p));
    t.elements.push_back(std::move(p));
  }

  t.mul.assign(m, std::vector<int>(m, -1));
#pragma omp parallel for schedule(dynamic)
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      DoubleMetric prod = compose(t.reps[a], t.reps[b]);
      t.mul[a][b] = t.find(canonical_class(prod));
    }

  t.star.resize(m);
  t.idempotent.resize(m);
  for (int a = 0; a < m; ++a) {
    t.star[a] = t.find(t.elements[a].transposed());
    t.idempotent[a] = (t.mul[a][a] == a);
  }
  t.unit = t.find(canonical_class(unit_metric(space)));
  t.zero = t.find(Pattern(space->size()));
  return t;
}

VerifyReport verify_inverse_semigroup(const SemigroupTable& t) {
  VerifyReport rep;
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    if (rep.failures.size() < 32) rep.failures.push_back(msg);
  };
  const int m = t.size();
  for (int a = 0; a < m && rep.ok; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (t.mul[t.mul[a][b]][c] != t.mul[a][t.mul[b][c]]) {
          std::ostringstream os;
          os << "associativity fails at (" << a << "," << b << "," << c << ")";
          fail(os.str());
          break;
        }
  for (int a = 0; a < m; ++a) {
    int count = 0;
    for (int b = 0; b < m; ++b)
      if (t.mul[t.mul[a][b]][a] == a && t.mul[t.mul[b][a]][b] == b) ++count;
    if (count != 1) {
      std::ostringstream os;
      os << "element " << a << " has " << count << " generalized inverses";
      fail(os.str());
    }
  }
  for (int a = 0; a < m; ++a) {
    if (t.star[t.star[a]] != a) fail("star is not an involution");
    for (int b = 0; b < m; ++b)
      if (t.star[t.mul[a][b]] != t.mul[t.star[b]][t.star[a]]) {
        std::ostringstream os;
        os << "star is not anti-multiplicative at (" << a << "," << b << ")";
        fail(os.str());
      }
  }
  for (int e = 0; e < m; ++e) {
    if (!t.idempotent[e]) continue;
    if (t.star[e] != e) {
      std::ostringstream os;
      os << "idempotent " << e << " is not selfadjoint";
      fail(os.str());
    }
    for (int f = 0; f < m; ++f)
      if (t.idempotent[f] && t.mul[e][f] != t.mul[f][e]) {
        std::ostringstream os;
        os << "idempotents " << e << " and " << f << " do not commute";
        fail(os.str());
      }
  }
  return rep;
}

bool natural_order(const SemigroupTable& t, int e, int f) {
  if (e < 0 || f < 0 || e >= t.size() || f >= t.size())
    throw std::invalid_argument("natural_order: id out of range");
  if (!t.idempotent[e] || !t.idempotent[f])
    throw std::invalid_argument("natural_order: both arguments must be idempotent");
  return t.mul[f][e] == e;
}

std::vector<int> units_group(const SemigroupTable& t) {
  std::vector<int> out;
  for (int a = 0; a < t.size(); ++a)
    if (t.mul[t.star[a]][a] == t.unit && t.mul[a][t.star[a]] == t.unit)
      out.push_back(a);
  return out;
}

IsometryExtraction extract_isometry(const DoubleMetric& d, const SemigroupTable& t) {
  int id = t.find(canonical_class(d));
  if (id < 0 || t.mul[t.star[id]][id] != t.unit || t.mul[id][t.star[id]] != t.unit)
    throw std::invalid_argument("extract_isometry: class is not invertible");
  const int n = d.size();
  IsometryExtraction res;
  res.f.resize(n);
  for (int x = 0; x < n; ++x) {
    int best = -1;
    for (int u = 0; u < n; ++u) {
      if (d.at(x, u).is_inf()) continue;
      if (best == -1 || d.at(x, u) < d.at(x, best)) best = u;
    }
    if (best == -1) throw std::logic_error("extract_isometry: empty row in invertible class");
    res.f[x] = best;
  }
  DoubleMetric df = almost_isometry_metric(d.space, res.f);
  const std::vector<Rat> grid = {Rat(1), Rat(3, 2), Rat(2), Rat(3), Rat(4), Rat(8)};
  auto alphas = qi_fit(df, d, grid);
  if (!alphas)
    throw std::logic_error("extract_isometry: d^f has a different pattern than d");
  size_t best = 0;
  for (size_t i = 1; i < grid.size(); ++i)
    if ((*alphas)[i] < (*alphas)[best]) best = i;
  res.witness = {(*alphas)[best], grid[best]};
  return res;
}

GHConjugation gh_conjugate(const BridgeMetric& rho, const SemigroupTable& t_x) {
  for (int i = 0; i < rho.cross.rows; ++i) {
    ExtValue m = ExtValue::inf();
    for (int j = 0; j < rho.cross.cols; ++j) m = min(m, rho.cross.at(i, j));
    if (m.is_inf())
      throw std::invalid_argument("gh_conjugate: unbounded gap (infinite row minimum)");
  }
  for (int j = 0; j < rho.cross.cols; ++j) {
    ExtValue m = ExtValue::inf();
    for (int i = 0; i < rho.cross.rows; ++i) m = min(m, rho.cross.at(i, j));
    if (m.is_inf())
      throw std::invalid_argument("gh_conjugate: unbounded gap (infinite column minimum)");
  }
  GHConjugation res;
  res.right_table = enumerate(rho.right);
  BridgeMetric rho_star = rho.transposed();
  res.map.resize(t_x.size());
  for (int a = 0; a < t_x.size(); ++a) {
    BridgeMetric conj = compose(rho, compose(t_x.reps[a].bridge(), rho_star));
    DoubleMetric on_y{rho.right, conj.cross};
    res.map[a] = res.right_table.find(canonical_class(on_y));
  }
  // verify *-isomorphism
  res.isomorphism = true;
  std::vector<int> seen(res.right_table.size(), 0);
  for (int v : res.map) {
    if (v < 0 || seen[v]++) res.isomorphism = false;
  }
  if (static_cast<int>(res.map.size()) != res.right_table.size()) res.isomorphism = false;
  if (res.isomorphism)
    for (int a = 0; a < t_x.size() && res.isomorphism; ++a) {
      if (res.right_table.star[res.map[a]] != res.map[t_x.star[a]]) res.isomorphism = false;
      for (int b = 0; b < t_x.size(); ++b)
        if (res.right_table.mul[res.map[a]][res.map[b]] != res.map[t_x.mul[a][b]]) {
          res.isomorphism = false;
          break;
        }
    }
  return res;
}

std::string semigroup_dot(const SemigroupTable& t) {
  std::ostringstream os;
  os << "digraph MX {\n  rankdir=BT;\n";
  std::vector<int> idems;
  for (int e = 0; e < t.size(); ++e)
    if (t.idempotent[e]) idems.push_back(e);
  for (int e : idems) {
    os << "  e" << e << " [shape=box,label=\"" << t.elements[e].encode();
    if (e == t.unit) os << " (unit)";
    if (e == t.zero) os << " (zero)";
    os << "\"];\n";
  }
  // Hasse edges of the natural order on idempotents
  for (int e : idems)
    for (int f : idems) {
      if (e == f || !natural_order(t, e, f)) continue;
      bool covered = true;
      for (int g : idems) {
        if (g == e || g == f) continue;
        if (natural_order(t, e, g) && natural_order(t, g, f)) {
          covered = false;
          break;
        }
      }
      if (covered) os << "  e" << e << " -> e" << f << ";\n";
    }
  // egg-box style: each non-idempotent hangs off its idempotents a a* and a* a
  for (int a = 0; a < t.size(); ++a) {
    if (t.idempotent[a]) continue;
    os << "  x" << a << " [shape=ellipse,label=\"" << t.elements[a].encode() << "\"];\n";
    os << "  x" << a << " -> e" << t.mul[a][t.star[a]] << " [style=dashed,label=\"aa*\"];\n";
    os << "  x" << a << " -> e" << t.mul[t.star[a]][a] << " [style=dashed,label=\"a*a\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace mdbl
