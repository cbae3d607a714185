#include "mdbl/rep.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace mdbl {

PartialMap PartialMap::identity(int n) {
  PartialMap m;
  m.img.resize(n);
  for (int i = 0; i < n; ++i) m.img[i] = i;
  return m;
}

PartialMap PartialMap::product(const PartialMap& a, const PartialMap& b) {
  PartialMap m;
  m.img.assign(b.img.size(), -1);
  for (size_t c = 0; c < b.img.size(); ++c)
    if (b.img[c] >= 0) m.img[c] = a.img[b.img[c]];
  return m;
}

PartialMap PartialMap::transposed() const {
  PartialMap m;
  m.img.assign(img.size(), -1);
  for (size_t c = 0; c < img.size(); ++c)
    if (img[c] >= 0) m.img[img[c]] = static_cast<int>(c);
  return m;
}

bool PartialMap::injective() const {
  std::vector<bool> hit(img.size(), false);
  for (int v : img) {
    if (v < 0) continue;
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

std::vector<int> domain_set(const SemigroupTable& t, int a) {
  if (a < 0 || a >= t.size()) throw std::invalid_argument("domain_set: id out of range");
  int asa = t.mul[t.star[a]][a];
  std::vector<int> out;
  for (int b = 0; b < t.size(); ++b) {
    int bbs = t.mul[b][t.star[b]];
    if (t.mul[asa][bbs] == bbs) out.push_back(b);
  }
  std::set<int> images;
  for (int b : out)
    if (!images.insert(t.mul[a][b]).second)
      throw std::logic_error("domain_set: b -> ab is not injective on V_a");
  return out;
}

RegularRep build_rep(const SemigroupTable& t) {
  RegularRep rep;
  rep.dim = t.size();
  rep.lambda.resize(rep.dim);
  for (int a = 0; a < rep.dim; ++a) {
    rep.lambda[a].img.assign(rep.dim, -1);
    for (int b : domain_set(t, a)) rep.lambda[a].img[b] = t.mul[a][b];
    if (!rep.lambda[a].injective())
      throw std::logic_error("build_rep: lambda is not a partial permutation");
  }
  return rep;
}

// ---- sparse exact linear algebra over flattened matrices ----

namespace {

using SparseVec = std::vector<std::pair<long, Rat>>;  // sorted by index

SparseVec vec_of_map(const PartialMap& m) {
  SparseVec v;
  const long dim = m.dim();
  for (long c = 0; c < dim; ++c)
    if (m.img[c] >= 0) v.emplace_back(static_cast<long>(m.img[c]) * dim + c, Rat(1));
  std::sort(v.begin(), v.end());
  return v;
}

SparseVec axpy(const SparseVec& x, const Rat& s, const SparseVec& y) {
  // x + s * y
  SparseVec out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else if (i == x.size() || y[j].first < x[i].first) {
      Rat v = s * y[j].second;
      if (v.numerator() != 0) out.emplace_back(y[j].first, v);
      ++j;
    } else {
      Rat v = x[i].second + s * y[j].second;
      if (v.numerator() != 0) out.emplace_back(x[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

// Echelon basis over sparse vectors that can express any vector of its span
// in terms of the originally inserted (independent) vectors.
class SpanBasis {
 public:
  // Returns true when v was independent and is now part of the basis.
  bool add(const SparseVec& v) {
    auto [rem, combo] = reduce(v);
    if (rem.empty()) return false;
    Rat lead = rem.front().second;
    SparseVec row;
    row.reserve(rem.size());
    for (auto& [idx, val] : rem) row.emplace_back(idx, val / lead);
    // row = (v - sum combo_i v_i) / lead
    std::vector<Rat> expr(count_ + 1, Rat(0));
    for (int i = 0; i < count_; ++i) expr[i] = -combo[i] / lead;
    expr[count_] = Rat(1) / lead;
    for (auto& e : exprs_) e.resize(count_ + 1, Rat(0));
    rows_.push_back(std::move(row));
    exprs_.push_back(std::move(expr));
    ++count_;
    return true;
  }

  // Coordinates in the inserted basis, or empty optional if v is outside.
  std::optional<std::vector<Rat>> coords(const SparseVec& v) const {
    auto [rem, combo] = reduce(v);
    if (!rem.empty()) return std::nullopt;
    combo.resize(count_, Rat(0));
    return combo;
  }

  int size() const { return count_; }

 private:
  std::pair<SparseVec, std::vector<Rat>> reduce(const SparseVec& v) const {
    SparseVec rem = v;
    std::vector<Rat> combo(count_, Rat(0));
    while (!rem.empty()) {
      long pivot = rem.front().first;
      size_t r = 0;
      for (; r < rows_.size(); ++r)
        if (rows_[r].front().first == pivot) break;
      if (r == rows_.size()) break;
      Rat c = rem.front().second;  // rows are pivot-normalized
      rem = axpy(rem, -c, rows_[r]);
      for (int i = 0; i < count_; ++i) combo[i] += c * exprs_[r][i];
    }
    return {std::move(rem), std::move(combo)};
  }

  std::vector<SparseVec> rows_;          // echelon, pivot-normalized
  std::vector<std::vector<Rat>> exprs_;  // rows_[r] = sum exprs_[r][i] * inserted_i
  int count_ = 0;
};

// Raising a central element to the c-th power overflows rational<long long>
// already at moderate sizes, so everything downstream of the structure
// constants runs on arbitrary-precision rationals.
using BigRat = boost::multiprecision::cpp_rational;

bool is_zero(const Rat& v) { return v.numerator() == 0; }
bool is_zero(const BigRat& v) { return v == 0; }

using BigStructure = std::vector<std::vector<std::vector<BigRat>>>;

std::vector<BigRat> mul_coords(const BigStructure& structure, const std::vector<BigRat>& u,
                               const std::vector<BigRat>& v) {
  const int r = static_cast<int>(structure.size());
  std::vector<BigRat> out(r, BigRat(0));
  for (int l = 0; l < r; ++l) {
    if (is_zero(u[l])) continue;
    for (int j = 0; j < r; ++j) {
      if (is_zero(v[j])) continue;
      BigRat c = u[l] * v[j];
      const auto& s = structure[l][j];
      for (int m = 0; m < r; ++m)
        if (!is_zero(s[m])) out[m] += c * s[m];
    }
  }
  return out;
}

// Dense rational nullspace of an (rows x cols) matrix given by row vectors.
template <class Q>
std::vector<std::vector<Q>> nullspace(std::vector<std::vector<Q>> a, int cols) {
  int rank = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < cols && rank < static_cast<int>(a.size()); ++c) {
    int p = -1;
    for (int r = rank; r < static_cast<int>(a.size()); ++r)
      if (!is_zero(a[r][c])) {
        p = r;
        break;
      }
    if (p == -1) continue;
    std::swap(a[rank], a[p]);
    Q inv = Q(1) / a[rank][c];
    for (int j = 0; j < cols; ++j) a[rank][j] *= inv;
    for (int r = 0; r < static_cast<int>(a.size()); ++r) {
      if (r == rank || is_zero(a[r][c])) continue;
      Q f = a[r][c];
      for (int j = 0; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Q>> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Q> v(cols, Q(0));
    v[c] = Q(1);
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -a[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class Q>
int dense_rank(std::vector<std::vector<Q>> a, int cols) {
  int rank = 0;
  for (int c = 0; c < cols && rank < static_cast<int>(a.size()); ++c) {
    int p = -1;
    for (int r = rank; r < static_cast<int>(a.size()); ++r)
      if (!is_zero(a[r][c])) {
        p = r;
        break;
      }
    if (p == -1) continue;
    std::swap(a[rank], a[p]);
    for (int r = rank + 1; r < static_cast<int>(a.size()); ++r) {
      if (is_zero(a[r][c])) continue;
      Q f = a[r][c] / a[rank][c];
      for (int j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Roots of a monic polynomial by Durand-Kerner, for rationalization probes.
std::vector<double> numeric_roots(const std::vector<double>& monic_coeffs) {
  // p(x) = x^k + c_{k-1} x^{k-1} + ... + c_0
  const int k = static_cast<int>(monic_coeffs.size());
  if (k == 0) return {};
  std::vector<std::complex<double>> z(k);
  std::complex<double> seed(0.4, 0.9);
  z[0] = 1.0;
  for (int i = 1; i < k; ++i) z[i] = z[i - 1] * seed;
  auto eval = [&](std::complex<double> x) {
    std::complex<double> p(1.0, 0.0);
    for (int i = k - 1; i >= 0; --i) p = p * x + monic_coeffs[i];
    return p;
  };
  for (int iter = 0; iter < 500; ++iter) {
    double moved = 0;
    for (int i = 0; i < k; ++i) {
      std::complex<double> den(1.0, 0.0);
      for (int j = 0; j < k; ++j)
        if (j != i) den *= z[i] - z[j];
      std::complex<double> step = eval(z[i]) / den;
      z[i] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-13) break;
  }
  std::vector<double> out;
  for (auto& zi : z) out.push_back(zi.real());
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Rat> rationalize(double x, long long max_den = 1000000) {
  // continued fraction expansion
  double v = x;
  long long p0 = 1, q0 = 0, p1 = static_cast<long long>(std::floor(v)), q1 = 1;
  v -= std::floor(v);
  for (int i = 0; i < 40 && q1 <= max_den; ++i) {
    if (std::abs(x - static_cast<double>(p1) / q1) < 1e-9 * std::max(1.0, std::abs(x))) return Rat(p1, q1);
    if (v < 1e-12) break;
    v = 1.0 / v;
    long long a = static_cast<long long>(std::floor(v));
    v -= std::floor(v);
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  if (q1 <= max_den && std::abs(x - static_cast<double>(p1) / q1) < 1e-9 * std::max(1.0, std::abs(x)))
    return Rat(p1, q1);
  return std::nullopt;
}

double to_double(const BigRat& v) { return v.convert_to<double>(); }

}  // namespace

AlgebraClosure algebra_closure(const RegularRep& rep) {
  AlgebraClosure alg;
  alg.dim = rep.dim;
  SpanBasis span;
  std::set<std::vector<int>> seen;
  std::vector<PartialMap> worklist;

  auto offer = [&](const PartialMap& m) {
    if (!seen.insert(m.img).second) return;
    if (span.add(vec_of_map(m))) {
      alg.basis.push_back(m);
      worklist.push_back(m);
    }
  };
  for (const auto& lam : rep.lambda) offer(lam);
  for (size_t w = 0; w < worklist.size(); ++w) {
    PartialMap x = worklist[w];  // copy: worklist grows
    for (const auto& g : rep.lambda) offer(PartialMap::product(x, g));
  }

  // span must be closed under transposition (generators are star-closed)
  for (const auto& b : alg.basis)
    if (!span.coords(vec_of_map(b.transposed())))
      throw std::logic_error("algebra_closure: span not closed under transpose");

  const int r = span.size();
  alg.structure.assign(r, std::vector<std::vector<Rat>>(r));
  for (int l = 0; l < r; ++l)
    for (int j = 0; j < r; ++j) {
      auto c = span.coords(vec_of_map(PartialMap::product(alg.basis[l], alg.basis[j])));
      if (!c) throw std::logic_error("algebra_closure: span not closed under products");
      alg.structure[l][j] = std::move(*c);
    }
  auto id = span.coords(vec_of_map(PartialMap::identity(rep.dim)));
  if (!id) throw std::logic_error("algebra_closure: identity not in span");
  alg.identity = std::move(*id);
  return alg;
}

AlgebraSummary decompose(const RegularRep& rep) {
  AlgebraClosure alg = algebra_closure(rep);
  const int r = alg.rank();

  BigStructure structure(r, std::vector<std::vector<BigRat>>(r, std::vector<BigRat>(r)));
  for (int l = 0; l < r; ++l)
    for (int j = 0; j < r; ++j)
      for (int m = 0; m < r; ++m)
        structure[l][j][m] =
            BigRat(alg.structure[l][j][m].numerator(), alg.structure[l][j][m].denominator());
  std::vector<BigRat> identity(r);
  for (int m = 0; m < r; ++m)
    identity[m] = BigRat(alg.identity[m].numerator(), alg.identity[m].denominator());

  // center: coefficient vectors commuting with every basis element
  std::vector<std::vector<BigRat>> constraints;
  for (int l = 0; l < r; ++l)
    for (int m = 0; m < r; ++m) {
      std::vector<BigRat> row(r);
      bool nonzero = false;
      for (int j = 0; j < r; ++j) {
        row[j] = structure[j][l][m] - structure[l][j][m];
        if (!is_zero(row[j])) nonzero = true;
      }
      if (nonzero) constraints.push_back(std::move(row));
    }
  std::vector<std::vector<BigRat>> center = nullspace(std::move(constraints), r);
  const int c = static_cast<int>(center.size());

  AlgebraSummary sum;
  sum.algebra_dim = r;
  sum.center_dim = c;

  for (int attempt = 0; attempt < 16; ++attempt) {
    std::mt19937 rng(12345 + attempt);
    std::uniform_int_distribution<int> pick(1, 97);
    std::vector<BigRat> z(r, BigRat(0));
    for (const auto& zc : center) {
      BigRat coeff(pick(rng));
      for (int j = 0; j < r; ++j) z[j] += coeff * zc[j];
    }
    // powers of z until linear dependence -> monic minimal polynomial
    std::vector<std::vector<BigRat>> powers = {identity};
    std::vector<std::vector<BigRat>> rows;
    std::vector<BigRat> minpoly;  // p(x) = x^k - sum_i minpoly[i] x^i
    for (int k = 1; k <= c + 1; ++k) {
      powers.push_back(mul_coords(structure, z, powers.back()));
      rows = powers;
      rows.pop_back();
      // solve powers.back() = sum a_i powers[i] by elimination
      // augmented transpose solve via nullspace
      std::vector<std::vector<BigRat>> aug;
      for (int col = 0; col < r; ++col) {
        std::vector<BigRat> row(rows.size() + 1);
        for (size_t i = 0; i < rows.size(); ++i) row[i] = rows[i][col];
        row[rows.size()] = powers.back()[col];
        aug.push_back(std::move(row));
      }
      auto ns = nullspace(std::move(aug), static_cast<int>(rows.size()) + 1);
      // a solution exists iff some nullspace vector has last coordinate != 0
      for (auto& v : ns)
        if (!is_zero(v.back())) {
          BigRat s = -BigRat(1) / v.back();
          minpoly.assign(rows.size(), BigRat(0));
          for (size_t i = 0; i < rows.size(); ++i) minpoly[i] = v[i] * s;
          break;
        }
      if (!minpoly.empty()) break;
    }
    if (minpoly.empty()) continue;
    const int deg = static_cast<int>(minpoly.size());
    if (deg != c) continue;  // degenerate probe: eigenvalues collide

    std::vector<double> monic(deg);
    for (int i = 0; i < deg; ++i) monic[i] = -to_double(minpoly[i]);
    std::vector<double> approx = numeric_roots(monic);
    std::vector<BigRat> roots;
    bool ok = true;
    for (double x : approx) {
      auto lam = rationalize(x);
      if (!lam) {
        ok = false;
        break;
      }
      BigRat lambda(lam->numerator(), lam->denominator());
      // verify exactly: mu(lambda) = lambda^deg - sum minpoly[i] lambda^i = 0
      BigRat acc(0), p(1);
      for (int i = 0; i < deg; ++i) {
        acc += minpoly[i] * p;
        p *= lambda;
      }
      if (!is_zero(p - acc)) {
        ok = false;
        break;
      }
      roots.push_back(lambda);
    }
    if (!ok) continue;
    std::sort(roots.begin(), roots.end());
    if (std::adjacent_find(roots.begin(), roots.end()) != roots.end()) continue;

    // Lagrange eigenprojections e_i = prod_{j != i} (z - l_j) / (l_i - l_j)
    std::vector<std::vector<BigRat>> projections;
    for (int i = 0; i < deg; ++i) {
      // numerator polynomial coefficients of prod_{j != i} (x - l_j)
      std::vector<BigRat> poly = {BigRat(1)};
      BigRat denom(1);
      for (int j = 0; j < deg; ++j) {
        if (j == i) continue;
        denom *= roots[i] - roots[j];
        std::vector<BigRat> next(poly.size() + 1, BigRat(0));
        for (size_t tdeg = 0; tdeg < poly.size(); ++tdeg) {
          next[tdeg + 1] += poly[tdeg];
          next[tdeg] -= roots[j] * poly[tdeg];
        }
        poly = std::move(next);
      }
      std::vector<BigRat> e(r, BigRat(0));
      for (size_t tdeg = 0; tdeg < poly.size(); ++tdeg) {
        BigRat f = poly[tdeg] / denom;
        if (is_zero(f)) continue;
        for (int m = 0; m < r; ++m) e[m] += f * powers[tdeg][m];
      }
      projections.push_back(std::move(e));
    }
    // exact sanity: idempotent, orthogonal, summing to the identity
    std::vector<BigRat> total(r, BigRat(0));
    bool proj_ok = true;
    for (int i = 0; i < deg && proj_ok; ++i) {
      if (mul_coords(structure, projections[i], projections[i]) != projections[i])
        proj_ok = false;
      for (int j = i + 1; j < deg && proj_ok; ++j) {
        auto prod = mul_coords(structure, projections[i], projections[j]);
        for (const BigRat& v : prod)
          if (!is_zero(v)) {
            proj_ok = false;
            break;
          }
      }
      for (int m = 0; m < r; ++m) total[m] += projections[i][m];
    }
    if (proj_ok && total != identity) proj_ok = false;
    if (!proj_ok) continue;

    // block dimension: n_i^2 = dim(e_i * algebra)  (e_i is central)
    sum.block_dims.clear();
    bool blocks_ok = true;
    for (int i = 0; i < deg; ++i) {
      std::vector<std::vector<BigRat>> rows_i;
      for (int j = 0; j < r; ++j) {
        std::vector<BigRat> row(r, BigRat(0));
        for (int l = 0; l < r; ++l) {
          if (is_zero(projections[i][l])) continue;
          for (int m = 0; m < r; ++m) row[m] += projections[i][l] * structure[l][j][m];
        }
        rows_i.push_back(std::move(row));
      }
      int sq = dense_rank(std::move(rows_i), r);
      int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(sq))));
      if (n * n != sq) {
        blocks_ok = false;
        break;
      }
      sum.block_dims.push_back(n);
    }
    if (!blocks_ok) continue;
    std::sort(sum.block_dims.begin(), sum.block_dims.end());
    long long sq_total = 0;
    for (int n : sum.block_dims) sq_total += static_cast<long long>(n) * n;
    sum.verified = (sq_total == sum.algebra_dim) &&
                   (static_cast<int>(sum.block_dims.size()) == sum.center_dim);
    return sum;
  }
  throw std::runtime_error("decompose: generic central element probe failed repeatedly");
}

bool orthogonality_check(const RegularRep& rep, const SemigroupTable& t, int e, int f) {
  if (!t.idempotent[e] || !t.idempotent[f])
    throw std::invalid_argument("orthogonality_check: arguments must be idempotent");
  const PartialMap& le = rep.lambda[e];
  const PartialMap& lf = rep.lambda[f];
  const PartialMap& lz = rep.lambda[t.zero];
  // (le - lz)(lf - lz) = le lf - le lz - lz lf + lz lz
  std::map<long, Rat> acc;
  auto add = [&](const PartialMap& m, int sign) {
    const long dim = m.dim();
    for (long col = 0; col < dim; ++col) {
      if (m.img[col] < 0) continue;
      long idx = static_cast<long>(m.img[col]) * dim + col;
      acc[idx] += Rat(sign);
    }
  };
  add(PartialMap::product(le, lf), 1);
  add(PartialMap::product(le, lz), -1);
  add(PartialMap::product(lz, lf), -1);
  add(PartialMap::product(lz, lz), 1);
  for (const auto& [idx, v] : acc)
    if (v.numerator() != 0) return false;
  return true;
}

}  // namespace mdbl
