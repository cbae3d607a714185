#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mdbl/rep.hpp"
#include "util.hpp"

#include <algorithm>
#include <set>

using namespace mdbl;

namespace {

SpacePtr two_components() {
  return testutil::space_from({{"0", "inf"}, {"inf", "0"}});
}

SpacePtr singletons(int k) {
  std::vector<std::vector<const char*>> rows(k, std::vector<const char*>(k, "inf"));
  for (int i = 0; i < k; ++i) rows[i][i] = "0";
  return testutil::space_from(rows);
}

struct Seven {
  SemigroupTable t;
  int zero, p, q, u, us, s, unit;
};

Seven seven() {
  Seven v{enumerate(two_components()), 0, 0, 0, 0, 0, 0, 0};
  auto at = [&](const char* enc) {
    Pattern pt(2);
    for (int c = 0; c < 4; ++c) pt.set(c / 2, c % 2, enc[c] == '1');
    int id = v.t.find(pt);
    REQUIRE(id >= 0);
    return id;
  };
  v.zero = at("0000");
  v.p = at("1000");
  v.q = at("0001");
  v.u = at("0100");
  v.us = at("0010");
  v.s = at("0110");
  v.unit = at("1001");
  return v;
}

// dense rational matrix of a partial map, for independent cross-checks
std::vector<std::vector<Rat>> dense(const PartialMap& m) {
  std::vector<std::vector<Rat>> a(m.dim(), std::vector<Rat>(m.dim(), Rat(0)));
  for (int b = 0; b < m.dim(); ++b)
    if (m.img[b] >= 0) a[m.img[b]][b] = Rat(1);
  return a;
}

}  // namespace

TEST_CASE("domain sets") {
  auto v = seven();
  auto set_of = [&](int a) {
    auto d = domain_set(v.t, a);
    return std::set<int>(d.begin(), d.end());
  };
  CHECK(set_of(v.zero) == std::set<int>{v.zero});
  CHECK(set_of(v.p) == std::set<int>{v.zero, v.p, v.us});
  CHECK(set_of(v.u) == std::set<int>{v.zero, v.p, v.us});
  CHECK(set_of(v.unit).size() == 7);

  // membership agrees with the defining order condition b b* <= a* a
  for (int a = 0; a < v.t.size(); ++a) {
    int asa = v.t.mul[v.t.star[a]][a];
    auto dom = set_of(a);
    for (int b = 0; b < v.t.size(); ++b) {
      int bbs = v.t.mul[b][v.t.star[b]];
      CHECK(dom.count(b) == (natural_order(v.t, bbs, asa) ? 1u : 0u));
    }
  }
}

TEST_CASE("regular representation matrices") {
  auto pt = testutil::space_from({{"0"}});
  auto t1 = enumerate(pt);
  auto r1 = build_rep(t1);
  REQUIRE(r1.dim == 2);
  CHECK(r1.lambda[t1.unit] == PartialMap::identity(2));
  // lambda(zero) fixes delta_zero and kills everything else
  for (int b = 0; b < 2; ++b)
    CHECK(r1.lambda[t1.zero].img[b] == (b == t1.zero ? t1.zero : -1));

  auto v = seven();
  auto r = build_rep(v.t);
  REQUIRE(r.dim == 7);

  // lambda(zero) is a rank-one projection commuting with every generator
  const auto& lz = r.lambda[v.zero];
  int rank = 0;
  for (int b = 0; b < 7; ++b) rank += lz.img[b] >= 0 ? 1 : 0;
  CHECK(rank == 1);
  CHECK(PartialMap::product(lz, lz) == lz);
  for (int a = 0; a < 7; ++a) {
    CHECK(PartialMap::product(lz, r.lambda[a]) == PartialMap::product(r.lambda[a], lz));
  }

  // lambda(u) carries span{delta_p, delta_u*} onto span{delta_q, delta_u}
  CHECK(r.lambda[v.u].img[v.p] == v.u);
  CHECK(r.lambda[v.u].img[v.us] == v.q);
  CHECK(r.lambda[v.u].img[v.zero] == v.zero);
  for (int b : {v.q, v.u, v.s, v.unit}) CHECK(r.lambda[v.u].img[b] == -1);

  // the symmetry swaps delta_unit and delta_s: the group part is not scalar
  CHECK(r.lambda[v.s].img[v.unit] == v.s);
  CHECK(r.lambda[v.s].img[v.s] == v.unit);
}

TEST_CASE("every lambda is a partial isometry acting by left translation") {
  for (const auto& s : testutil::fixture_spaces()) {
    if (s->component_count() > 3) continue;
    auto t = enumerate(s);
    auto r = build_rep(t);
    for (int a = 0; a < t.size(); ++a) {
      const auto& la = r.lambda[a];
      CHECK(la.injective());
      CHECK(PartialMap::product(PartialMap::product(la, la.transposed()), la) == la);
      // lambda(a) lambda(b) delta_c is delta_{abc} or 0
      for (int b = 0; b < t.size(); ++b) {
        auto ab = PartialMap::product(la, r.lambda[b]);
        for (int c = 0; c < t.size(); ++c) {
          int got = ab.img[c];
          if (got >= 0) CHECK(got == t.mul[t.mul[a][b]][c]);
        }
      }
    }
  }
}

TEST_CASE("algebra closure dimension equals the semigroup size") {
  // b -> ab is injective on V_a, so the lambdas are linearly independent and
  // their span is already closed under products: the closure has one basis
  // vector per element.
  auto pt = testutil::space_from({{"0"}});
  CHECK(algebra_closure(build_rep(enumerate(pt))).rank() == 2);

  auto v = seven();
  auto r = build_rep(v.t);
  auto cl = algebra_closure(r);
  CHECK(cl.rank() == 7);
  CHECK(cl.dim == 7);

  // identity coordinates really reproduce the identity matrix
  std::vector<std::vector<Rat>> sum(cl.dim, std::vector<Rat>(cl.dim, Rat(0)));
  for (int l = 0; l < cl.rank(); ++l) {
    auto m = dense(cl.basis[l]);
    for (int i = 0; i < cl.dim; ++i)
      for (int j = 0; j < cl.dim; ++j) sum[i][j] += cl.identity[l] * m[i][j];
  }
  for (int i = 0; i < cl.dim; ++i)
    for (int j = 0; j < cl.dim; ++j) CHECK(sum[i][j] == (i == j ? Rat(1) : Rat(0)));

  // structure constants agree with actual matrix products
  for (int l = 0; l < cl.rank(); ++l)
    for (int j = 0; j < cl.rank(); ++j) {
      auto prod = dense(PartialMap::product(cl.basis[l], cl.basis[j]));
      std::vector<std::vector<Rat>> rec(cl.dim, std::vector<Rat>(cl.dim, Rat(0)));
      for (int m = 0; m < cl.rank(); ++m) {
        auto bm = dense(cl.basis[m]);
        for (int x = 0; x < cl.dim; ++x)
          for (int y = 0; y < cl.dim; ++y) rec[x][y] += cl.structure[l][j][m] * bm[x][y];
      }
      CHECK(prod == rec);
    }

  CHECK(algebra_closure(build_rep(enumerate(singletons(3)))).rank() == 34);
  CHECK(algebra_closure(build_rep(enumerate(singletons(4)))).rank() == 209);
}

TEST_CASE("block decomposition") {
  auto pt = testutil::space_from({{"0"}});
  auto s1 = decompose(build_rep(enumerate(pt)));
  CHECK(s1.algebra_dim == 2);
  CHECK(s1.center_dim == 2);
  CHECK(s1.block_dims == std::vector<int>{1, 1});
  CHECK(s1.verified);

  // On two infinitely separated points the invertible classes form a
  // two-element group, and delta_unit, delta_s span a free copy of its group
  // algebra inside the representation space. The group algebra contributes
  // two one-dimensional blocks (trivial and sign), which together with the
  // zero block and the M_2 on span{delta_p, delta_u*} -> span{delta_q,
  // delta_u} gives four blocks of a 7-dimensional algebra.
  auto v = seven();
  auto s2 = decompose(build_rep(v.t));
  CHECK(s2.algebra_dim == 7);
  CHECK(s2.center_dim == 4);
  CHECK(s2.block_dims == std::vector<int>{1, 1, 1, 2});
  CHECK(s2.verified);

  // a two-point component behaves exactly like a singleton component
  auto mixed = testutil::space_from({{"0", "3", "inf"}, {"3", "0", "inf"}, {"inf", "inf", "0"}});
  auto sm = decompose(build_rep(enumerate(mixed)));
  CHECK(sm.algebra_dim == 7);
  CHECK(sm.block_dims == std::vector<int>{1, 1, 1, 2});

  auto s3 = decompose(build_rep(enumerate(singletons(3))));
  CHECK(s3.algebra_dim == 34);
  CHECK(s3.center_dim == 7);
  CHECK(s3.block_dims == std::vector<int>{1, 1, 1, 2, 3, 3, 3});
  CHECK(s3.verified);

  // invariants hold across all small fixture spaces
  for (const auto& s : testutil::fixture_spaces()) {
    if (s->component_count() > 3) continue;
    auto sum = decompose(build_rep(enumerate(s)));
    int sq = 0;
    for (int n : sum.block_dims) sq += n * n;
    CHECK(sq == sum.algebra_dim);
    CHECK(static_cast<int>(sum.block_dims.size()) == sum.center_dim);
    CHECK(sum.verified);
  }
}

TEST_CASE("orthogonality of shifted idempotents") {
  auto v = seven();
  auto r = build_rep(v.t);
  CHECK(orthogonality_check(r, v.t, v.zero, v.zero));
  CHECK(orthogonality_check(r, v.t, v.p, v.q));
  CHECK(orthogonality_check(r, v.t, v.q, v.p));
  CHECK_FALSE(orthogonality_check(r, v.t, v.p, v.p));
  CHECK_FALSE(orthogonality_check(r, v.t, v.unit, v.p));
}

TEST_CASE("a non-semisimple generator set is rejected") {
  // single nilpotent generator: no identity, no block decomposition
  RegularRep fake;
  fake.dim = 2;
  fake.lambda.push_back(PartialMap{{1, -1}});
  bool flagged = false;
  try {
    flagged = !decompose(fake).verified;
  } catch (const std::exception&) {
    flagged = true;
  }
  CHECK(flagged);
}
