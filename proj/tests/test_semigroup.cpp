#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mdbl/semigroup.hpp"
#include "util.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace mdbl;

namespace {

SpacePtr two_components() {
  return testutil::space_from({{"0", "inf"}, {"inf", "0"}});
}

// All injective partial maps on {0..k-1}, written as vectors with -1 for
// "undefined"; generated by straightforward recursion, independent of the
// library's enumeration.
void all_partial_injections(int k, int pos, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
  if (pos == k) {
    out.push_back(cur);
    return;
  }
  cur[pos] = -1;
  all_partial_injections(k, pos + 1, cur, out);
  for (int v = 0; v < k; ++v) {
    if (std::find(cur.begin(), cur.begin() + pos, v) != cur.begin() + pos) continue;
    cur[pos] = v;
    all_partial_injections(k, pos + 1, cur, out);
    cur[pos] = -1;
  }
}

std::vector<std::vector<int>> rook_monoid(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k, -1);
  all_partial_injections(k, 0, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

// inner applied first, as in the multiplication table
std::vector<int> rook_mul(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> r(inner.size(), -1);
  for (size_t c = 0; c < inner.size(); ++c)
    if (inner[c] >= 0) r[c] = outer[inner[c]];
  return r;
}

std::vector<int> rook_inverse(const std::vector<int>& f) {
  std::vector<int> r(f.size(), -1);
  for (size_t c = 0; c < f.size(); ++c)
    if (f[c] >= 0) r[f[c]] = static_cast<int>(c);
  return r;
}

}  // namespace

TEST_CASE("canonical class is the finiteness pattern") {
  auto path3 = testutil::space_from({{"0", "1", "2"}, {"1", "0", "1"}, {"2", "1", "0"}});
  auto p = canonical_class(unit_metric(path3));
  CHECK(p.encode() == "111111111");

  auto sp2 = two_components();
  ExtMatrix c(2, 2);
  for (auto& v : c.a) v = ExtValue::inf();
  c.at(0, 1) = ExtValue(1);
  auto u = make_double(sp2, c);
  CHECK(canonical_class(u).encode() == "0100");

  // two all-finite metrics on a connected space are one class, beta = 1
  std::mt19937 rng(91);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = testutil::random_space(rng, 2 + trial % 4, /*connected=*/true);
    // random doubles may land in the zero class (empty component relation);
    // redraw until both are all-finite
    auto draw_finite = [&] {
      for (;;) {
        auto d = testutil::random_double(rng, s);
        if (std::none_of(d.cross.a.begin(), d.cross.a.end(),
                         [](const ExtValue& v) { return v.is_inf(); }))
          return d;
      }
    };
    auto d1 = draw_finite();
    auto d2 = draw_finite();
    CHECK(canonical_class(d1) == canonical_class(d2));
    auto fit = qi_fit(d1, d2, {Rat(1)});
    REQUIRE(fit.has_value());
    CHECK(qi_check(d1, d2, {(*fit)[0], Rat(1)}).ok);
  }
}

TEST_CASE("pattern validity") {
  auto sp2 = two_components();
  Pattern bad(2);
  bad.set(0, 0, true);
  bad.set(0, 1, true);  // one component, two targets
  CHECK_FALSE(pattern_valid(*sp2, bad).ok);
  CHECK_FALSE(pattern_valid(*sp2, bad).reason.empty());

  Pattern pp(2);
  pp.set(0, 0, true);
  auto ck = pattern_valid(*sp2, pp);
  CHECK(ck.ok);
  REQUIRE(ck.bijection.has_value());
  CHECK(ck.bijection->to == std::vector<int>{0, -1});

  CHECK(pattern_valid(*sp2, Pattern(2)).ok);  // all-infinite: the zero class

  // breaking block-constancy inside a two-point component
  auto sp3 = testutil::space_from({{"0", "1", "inf"}, {"1", "0", "inf"}, {"inf", "inf", "0"}});
  Pattern nb(3);
  nb.set(0, 2, true);  // but not (1,2)
  CHECK_FALSE(pattern_valid(*sp3, nb).ok);
  nb.set(1, 2, true);
  CHECK(pattern_valid(*sp3, nb).ok);
}

TEST_CASE("realize produces canonical representatives") {
  auto path3 = testutil::space_from({{"0", "1", "2"}, {"1", "0", "1"}, {"2", "1", "0"}});
  Pattern full(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) full.set(i, j, true);
  auto r = realize(path3, full);
  CHECK(validate_double(r).ok());
  CHECK(canonical_class(r) == full);
  CHECK(r.cross == point_metric(path3, 0).cross);
  // same class as the unit metric even though the entries differ
  CHECK(qi_fit(r, unit_metric(path3), {Rat(1)}).has_value());

  auto z = realize(path3, Pattern(3));
  for (const auto& v : z.cross.a) CHECK(v.is_inf());

  Pattern bad(3);
  bad.set(0, 0, true);  // not block-constant on the connected space
  CHECK_THROWS(realize(path3, bad));
}

TEST_CASE("pattern oracle: exhaustive check on all small fixture spaces") {
  for (const auto& s : testutil::fixture_spaces()) {
    const int n = s->size();
    const int cells = n * n;
    std::set<std::string> valid_set;
    for (long mask = 0; mask < (1L << cells); ++mask) {
      Pattern p(n);
      for (int c = 0; c < cells; ++c)
        if (mask & (1L << c)) p.set(c / n, c % n, true);
      bool lib = pattern_valid(*s, p).ok;
      bool oracle = testutil::pattern_realizable_oracle(*s, p);
      REQUIRE_MESSAGE(lib == oracle, "n=" << n << " pattern " << p.encode());
      if (lib) valid_set.insert(p.encode());
    }
    // enumerate finds exactly the valid patterns
    auto t = enumerate(s);
    std::set<std::string> listed;
    for (const auto& e : t.elements) listed.insert(e.encode());
    CHECK(listed == valid_set);
  }
}

TEST_CASE("semigroup sizes follow the partial-bijection count") {
  auto pt = testutil::space_from({{"0"}});
  CHECK(enumerate(pt).size() == 2);
  auto path3 = testutil::space_from({{"0", "1", "2"}, {"1", "0", "1"}, {"2", "1", "0"}});
  CHECK(enumerate(path3).size() == 2);  // connected: still one component
  CHECK(enumerate(two_components()).size() == 7);

  auto sing3 = testutil::space_from(
      {{"0", "inf", "inf"}, {"inf", "0", "inf"}, {"inf", "inf", "0"}});
  CHECK(enumerate(sing3).size() == 34);

  auto sing4 = testutil::space_from({{"0", "inf", "inf", "inf"},
                                     {"inf", "0", "inf", "inf"},
                                     {"inf", "inf", "0", "inf"},
                                     {"inf", "inf", "inf", "0"}});
  CHECK(enumerate(sing4).size() == 209);

  // components with several points change nothing
  auto mixed = testutil::space_from({{"0", "3", "inf"}, {"3", "0", "inf"}, {"inf", "inf", "0"}});
  CHECK(enumerate(mixed).size() == 7);
}

TEST_CASE("enumerate is isomorphic to the symmetric inverse monoid") {
  for (const auto& s : testutil::fixture_spaces()) {
    auto t = enumerate(s);
    const int k = s->component_count();
    auto rook = rook_monoid(k);
    REQUIRE(t.size() == static_cast<int>(rook.size()));

    // element -> partial injection, via the pattern's component relation
    std::vector<std::vector<int>> pb(t.size());
    std::set<std::vector<int>> seen;
    for (int a = 0; a < t.size(); ++a) {
      auto ck = pattern_valid(*s, t.elements[a]);
      REQUIRE(ck.ok);
      pb[a] = ck.bijection->to;
      seen.insert(pb[a]);
    }
    CHECK(seen.size() == rook.size());  // bijective onto the rook monoid

    for (int a = 0; a < t.size(); ++a) {
      CHECK(pb[t.star[a]] == rook_inverse(pb[a]));
      for (int b = 0; b < t.size(); ++b)
        CHECK(pb[t.mul[a][b]] == rook_mul(pb[a], pb[b]));
    }

    std::vector<int> id(k);
    for (int i = 0; i < k; ++i) id[i] = i;
    CHECK(pb[t.unit] == id);
    CHECK(pb[t.zero] == std::vector<int>(k, -1));
  }
}

TEST_CASE("the seven classes on two infinitely separated points") {
  auto t = enumerate(two_components());
  REQUIRE(t.size() == 7);
  int zero = t.find(Pattern(2));
  Pattern pi(2), pq(2), pu(2), pus(2), ps(2), punit(2);
  pi.set(0, 0, true);
  pq.set(1, 1, true);
  pu.set(0, 1, true);
  pus.set(1, 0, true);
  ps.set(0, 1, true);
  ps.set(1, 0, true);
  punit.set(0, 0, true);
  punit.set(1, 1, true);
  int p = t.find(pi), q = t.find(pq), u = t.find(pu), us = t.find(pus);
  int sid = t.find(ps), unit = t.find(punit);
  REQUIRE(((p >= 0 && q >= 0 && u >= 0 && us >= 0 && sid >= 0 && unit >= 0 && zero >= 0)));
  CHECK(t.unit == unit);
  CHECK(t.zero == zero);

  CHECK(t.star[u] == us);
  CHECK(t.mul[us][u] == p);   // u* u = p
  CHECK(t.mul[u][us] == q);   // u u* = q
  CHECK(t.mul[sid][sid] == unit);
  CHECK(t.mul[p][q] == zero);
  CHECK(t.mul[u][u] == zero);
  CHECK(t.idempotent[p]);
  CHECK(t.idempotent[q]);
  CHECK(t.idempotent[zero]);
  CHECK(t.idempotent[unit]);
  CHECK_FALSE(t.idempotent[u]);
  CHECK_FALSE(t.idempotent[sid]);

  // natural order: 0 <= p <= I, p and q incomparable
  CHECK(natural_order(t, zero, p));
  CHECK(natural_order(t, p, unit));
  CHECK(natural_order(t, q, unit));
  CHECK_FALSE(natural_order(t, p, q));
  CHECK_FALSE(natural_order(t, q, p));
  CHECK_THROWS(natural_order(t, u, p));

  auto units = units_group(t);
  std::set<int> ug(units.begin(), units.end());
  CHECK(ug == std::set<int>{unit, sid});
}

TEST_CASE("inverse semigroup axioms verify on every fixture space") {
  for (const auto& s : testutil::fixture_spaces()) {
    auto t = enumerate(s);
    auto rep = verify_inverse_semigroup(t);
    CHECK_MESSAGE(rep.ok, (rep.failures.empty() ? std::string() : rep.failures.front()));

    // a a* and a* a are selfadjoint idempotents
    for (int a = 0; a < t.size(); ++a) {
      int e = t.mul[a][t.star[a]];
      CHECK(t.idempotent[e]);
      CHECK(t.star[e] == e);
    }
    // only zero satisfies b b* <= zero
    for (int b = 0; b < t.size(); ++b) {
      int e = t.mul[b][t.star[b]];
      CHECK(natural_order(t, e, t.zero) == (b == t.zero));
    }
  }

  // fault injection: corrupting one entry breaks associativity
  auto t = enumerate(two_components());
  t.mul[t.unit][t.unit] = t.zero;
  auto rep = verify_inverse_semigroup(t);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.failures.empty());
}

TEST_CASE("units group sizes") {
  auto pt = testutil::space_from({{"0"}});
  CHECK(units_group(enumerate(pt)).size() == 1);
  auto sing3 = testutil::space_from(
      {{"0", "inf", "inf"}, {"inf", "0", "inf"}, {"inf", "inf", "0"}});
  CHECK(units_group(enumerate(sing3)).size() == 6);
}

TEST_CASE("isometry extraction from invertible classes") {
  auto path3 = testutil::space_from({{"0", "1", "2"}, {"1", "0", "1"}, {"2", "1", "0"}});
  auto t3 = enumerate(path3);
  auto ex = extract_isometry(unit_metric(path3), t3);
  CHECK(ex.f == std::vector<int>{0, 1, 2});
  CHECK(qi_check(almost_isometry_metric(path3, ex.f), unit_metric(path3), ex.witness).ok);

  auto sp2 = two_components();
  auto t2 = enumerate(sp2);
  Pattern ps(2);
  ps.set(0, 1, true);
  ps.set(1, 0, true);
  auto s = realize(sp2, ps);
  auto exs = extract_isometry(s, t2);
  CHECK(exs.f == std::vector<int>{1, 0});
  CHECK(qi_check(almost_isometry_metric(sp2, exs.f), s, exs.witness).ok);

  // swap pattern on two 2-point components: points go to the other block
  auto sp4 = testutil::space_from({{"0", "1", "inf", "inf"},
                                   {"1", "0", "inf", "inf"},
                                   {"inf", "inf", "0", "2"},
                                   {"inf", "inf", "2", "0"}});
  Pattern swap4(4);
  for (int i : {0, 1})
    for (int j : {2, 3}) {
      swap4.set(i, j, true);
      swap4.set(j, i, true);
    }
  auto t4 = enumerate(sp4);
  auto d4 = realize(sp4, swap4);
  auto ex4 = extract_isometry(d4, t4);
  CHECK(ex4.f == std::vector<int>{2, 2, 0, 0});
  CHECK(qi_check(almost_isometry_metric(sp4, ex4.f), d4, ex4.witness).ok);

  // non-invertible classes are rejected
  Pattern pp(2);
  pp.set(0, 0, true);
  CHECK_THROWS(extract_isometry(realize(sp2, pp), t2));
}

TEST_CASE("conjugation by a bridge with finite gap") {
  auto sp2 = two_components();
  auto t = enumerate(sp2);

  // rho = unit on the same space: the identity map of classes
  auto gi = gh_conjugate(unit_metric(sp2).bridge(), t);
  CHECK(gi.isomorphism);
  for (int a = 0; a < t.size(); ++a) CHECK(gi.map[a] == a);

  // dense subset: a 6-point path against its three even points
  auto path6 = testutil::space_from({{"0", "1", "2", "3", "4", "5"},
                                     {"1", "0", "1", "2", "3", "4"},
                                     {"2", "1", "0", "1", "2", "3"},
                                     {"3", "2", "1", "0", "1", "2"},
                                     {"4", "3", "2", "1", "0", "1"},
                                     {"5", "4", "3", "2", "1", "0"}});
  auto even3 = testutil::space_from({{"0", "2", "4"}, {"2", "0", "2"}, {"4", "2", "0"}});
  ExtMatrix rc(6, 3);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 3; ++j) rc.at(i, j) = path6->d(i, 2 * j) + ExtValue(1);
  auto rho = make_bridge(path6, even3, rc);
  auto t6 = enumerate(path6);
  auto g = gh_conjugate(rho, t6);
  CHECK(g.isomorphism);
  CHECK(g.right_table.size() == 2);
  CHECK(g.map[t6.unit] == g.right_table.unit);
  CHECK(g.map[t6.zero] == g.right_table.zero);

  // round trip through the adjoint bridge is the identity
  auto g2 = gh_conjugate(rho.transposed(), g.right_table);
  CHECK(g2.isomorphism);
  for (int a = 0; a < t6.size(); ++a) CHECK(g2.map[g.map[a]] == a);

  // unbounded gap: a cross with an all-infinite column is rejected
  auto twocomp_bridge = [&] {
    ExtMatrix c(2, 2);
    c.at(0, 0) = ExtValue(1);
    c.at(0, 1) = ExtValue::inf();
    c.at(1, 0) = ExtValue::inf();
    c.at(1, 1) = ExtValue::inf();
    return make_bridge(sp2, sp2, c);
  }();
  CHECK_THROWS(gh_conjugate(twocomp_bridge, t));
}

TEST_CASE("dot rendering") {
  auto dot = semigroup_dot(enumerate(two_components()));
  CHECK(dot.rfind("digraph", 0) == 0);
  for (const char* pat : {"1001", "0110", "1000", "0001", "0000"})
    CHECK(dot.find(pat) != std::string::npos);
}
