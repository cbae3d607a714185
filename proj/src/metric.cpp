#include "mdbl/metric.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mdbl {

FiniteSpace::FiniteSpace(ExtMatrix dist, const ExtValue& slack)
    : n_(dist.rows), dist_(std::move(dist)) {
  if (dist_.rows != dist_.cols || n_ <= 0)
    throw std::invalid_argument("FiniteSpace: square nonempty matrix required");
  for (int i = 0; i < n_; ++i) {
    if (!dist_.at(i, i).is_zero())
      throw std::invalid_argument("FiniteSpace: nonzero diagonal");
    for (int j = 0; j < n_; ++j) {
      if (!(dist_.at(i, j) == dist_.at(j, i)))
        throw std::invalid_argument("FiniteSpace: not symmetric");
      if (i != j && dist_.at(i, j).is_zero())
        throw std::invalid_argument("FiniteSpace: distinct points at distance 0");
    }
  }
  auto bad = triangle_violations(dist_, slack);
  if (!bad.empty()) {
    std::ostringstream os;
    os << "FiniteSpace: triangle inequality fails at (" << bad[0].i << ","
       << bad[0].j << "," << bad[0].k << ")";
    throw std::invalid_argument(os.str());
  }
  comp_.assign(n_, -1);
  ncomp_ = 0;
  for (int i = 0; i < n_; ++i) {
    if (comp_[i] != -1) continue;
    int c = ncomp_++;
    reps_.push_back(i);
    members_.emplace_back();
    for (int j = i; j < n_; ++j)
      if (!dist_.at(i, j).is_inf()) {
        comp_[j] = c;
        members_[c].push_back(j);
      }
  }
}

SpacePtr make_space(ExtMatrix dist, const ExtValue& slack) {
  return std::make_shared<const FiniteSpace>(std::move(dist), slack);
}

std::string CrossViolation::describe() const {
  std::ostringstream os;
  switch (family) {
    case 'p':
      os << "cross[" << i << "][" << j << "] = " << lhs.str()
         << " is not strictly positive";
      break;
    case 's':
      os << "cross matrix has wrong shape";
      break;
    default:
      os << "triangle family '" << family << "' fails at (i=" << i << ",j=" << j
         << ",k=" << k << "): " << lhs.str() << " > " << rhs.str();
  }
  return os.str();
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v.describe() << "\n";
  return os.str();
}

ValidationReport validate_cross(const FiniteSpace& left, const FiniteSpace& right,
                                const ExtMatrix& cross, const ExtValue& slack) {
  ValidationReport rep;
  const int nl = left.size(), nr = right.size();
  if (cross.rows != nl || cross.cols != nr) {
    rep.violations.push_back({'s', cross.rows, cross.cols, 0, ExtValue(0), ExtValue(0)});
    return rep;
  }
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nr; ++j)
      if (cross.at(i, j).is_zero())
        rep.violations.push_back({'p', i, j, -1, cross.at(i, j), ExtValue(0)});
  if (!rep.violations.empty()) return rep;

  std::vector<std::vector<CrossViolation>> rows(nl);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nl; ++i) {
    auto& out = rows[i];
    // cross[i][j] <= dist_L[i][k] + cross[k][j]
    for (int j = 0; j < nr; ++j)
      for (int k = 0; k < nl; ++k) {
        ExtValue rhs = left.d(i, k) + cross.at(k, j);
        if (cross.at(i, j) > rhs + slack) out.push_back({'a', i, j, k, cross.at(i, j), rhs});
      }
    // cross[i][j] <= cross[i][k] + dist_R[k][j]
    for (int j = 0; j < nr; ++j)
      for (int k = 0; k < nr; ++k) {
        ExtValue rhs = cross.at(i, k) + right.d(k, j);
        if (cross.at(i, j) > rhs + slack) out.push_back({'b', i, j, k, cross.at(i, j), rhs});
      }
    // dist_L[i][j] <= cross[i][k] + cross[j][k]
    for (int j = 0; j < nl; ++j)
      for (int k = 0; k < nr; ++k) {
        ExtValue rhs = cross.at(i, k) + cross.at(j, k);
        if (left.d(i, j) > rhs + slack) out.push_back({'c', i, j, k, left.d(i, j), rhs});
      }
  }
  // dist_R[i][j] <= cross[k][i] + cross[k][j]
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nr; ++j)
      for (int k = 0; k < nl; ++k) {
        ExtValue rhs = cross.at(k, i) + cross.at(k, j);
        if (right.d(i, j) > rhs + slack)
          rep.violations.push_back({'d', i, j, k, right.d(i, j), rhs});
      }
  for (auto& r : rows)
    rep.violations.insert(rep.violations.end(), r.begin(), r.end());
  return rep;
}

ValidationReport validate_double(const DoubleMetric& d, const ExtValue& slack) {
  return validate_cross(*d.space, *d.space, d.cross, slack);
}

DoubleMetric make_double(SpacePtr space, ExtMatrix cross) {
  auto rep = validate_cross(*space, *space, cross);
  if (!rep.ok())
    throw std::invalid_argument("make_double: invalid cross matrix:\n" + rep.describe());
  return {std::move(space), std::move(cross)};
}

DoubleMetric make_double_unchecked(SpacePtr space, ExtMatrix cross) {
  return {std::move(space), std::move(cross)};
}

BridgeMetric make_bridge(SpacePtr left, SpacePtr right, ExtMatrix cross) {
  auto rep = validate_cross(*left, *right, cross);
  if (!rep.ok())
    throw std::invalid_argument("make_bridge: invalid cross matrix:\n" + rep.describe());
  return {std::move(left), std::move(right), std::move(cross)};
}

ExtValue DoubleMetric::row_min(int i) const {
  ExtValue best = ExtValue::inf();
  for (int j = 0; j < cross.cols; ++j) best = min(best, cross.at(i, j));
  return best;
}

BridgeMetric compose(const BridgeMetric& outer, const BridgeMetric& inner) {
  if (!(*inner.right == *outer.left))
    throw std::invalid_argument("compose: middle spaces differ");
  BridgeMetric out{inner.left, outer.right, min_plus(inner.cross, outer.cross)};
#ifndef NDEBUG
  auto rep = validate_cross(*out.left, *out.right, out.cross);
  if (!rep.ok())
    throw std::logic_error("compose: output failed validation:\n" + rep.describe());
#endif
  return out;
}

DoubleMetric compose(const DoubleMetric& outer, const DoubleMetric& inner) {
  auto b = compose(outer.bridge(), inner.bridge());
  return {inner.space, std::move(b.cross)};
}

DoubleMetric adjoint(const DoubleMetric& d) {
  return {d.space, d.cross.transposed()};
}

bool is_selfadjoint(const DoubleMetric& d) { return d.cross == d.cross.transposed(); }

DoubleMetric unit_metric(SpacePtr space) {
  const int n = space->size();
  ExtMatrix cross(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cross.at(i, j) = space->d(i, j) + ExtValue(1);
  return {std::move(space), std::move(cross)};
}

DoubleMetric point_metric(SpacePtr space, int x0) {
  const int n = space->size();
  if (x0 < 0 || x0 >= n) throw std::invalid_argument("point_metric: index out of range");
  ExtMatrix cross(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cross.at(i, j) = space->d(i, x0) + ExtValue(1) + space->d(x0, j);
  return {std::move(space), std::move(cross)};
}

DoubleMetric weighted_subset_metric(SpacePtr space, const std::vector<int>& A,
                                    const std::vector<Rat>& c) {
  if (A.empty()) throw std::invalid_argument("subset_metric: empty subset");
  if (c.size() != A.size())
    throw std::invalid_argument("subset_metric: one weight per anchor required");
  const int n = space->size();
  ExtMatrix cross(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ExtValue best = ExtValue::inf();
      for (size_t t = 0; t < A.size(); ++t) {
        int z = A[t];
        if (z < 0 || z >= n) throw std::invalid_argument("subset_metric: index out of range");
        if (c[t] < Rat(1)) throw std::invalid_argument("subset_metric: weight below 1");
        best = min(best, space->d(i, z) + ExtValue(c[t]) + space->d(z, j));
      }
      cross.at(i, j) = best;
    }
  return {std::move(space), std::move(cross)};
}

DoubleMetric subset_metric(SpacePtr space, const std::vector<int>& A) {
  return weighted_subset_metric(std::move(space), A, std::vector<Rat>(A.size(), Rat(1)));
}

ExtValue distortion(const FiniteSpace& space, const std::vector<int>& f) {
  const int n = space.size();
  if (static_cast<int>(f.size()) != n)
    throw std::invalid_argument("distortion: map size mismatch");
  for (int x : f)
    if (x < 0 || x >= n) throw std::invalid_argument("distortion: map out of range");
  ExtValue worst(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const ExtValue& a = space.d(i, j);
      const ExtValue& b = space.d(f[i], f[j]);
      if (a.is_inf() != b.is_inf()) return ExtValue::inf();
      if (a.is_inf()) continue;
      Rat diff = a.finite() - b.finite();
      if (diff < Rat(0)) diff = -diff;
      worst = worst < ExtValue(diff) ? ExtValue(diff) : worst;
    }
  return worst;
}

DoubleMetric almost_isometry_metric(SpacePtr space, const std::vector<int>& f,
                                    const Rat& C) {
  const int n = space->size();
  if (C < Rat(1)) throw std::invalid_argument("almost_isometry_metric: C must be >= 1");
  ExtValue dist = distortion(*space, f);
  if (dist.is_inf() || dist.finite() > C)
    throw std::invalid_argument("almost_isometry_metric: C below the distortion of f");
  ExtMatrix cross(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ExtValue best = ExtValue::inf();
      for (int z = 0; z < n; ++z)
        best = min(best, space->d(i, z) + ExtValue(C) + space->d(f[z], j));
      cross.at(i, j) = best;
    }
  auto rep = validate_cross(*space, *space, cross);
  if (!rep.ok())
    throw std::logic_error("almost_isometry_metric: output failed validation:\n" +
                           rep.describe());
  return {std::move(space), std::move(cross)};
}

DoubleMetric almost_isometry_metric(SpacePtr space, const std::vector<int>& f) {
  ExtValue dist = distortion(*space, f);
  if (dist.is_inf())
    throw std::invalid_argument("almost_isometry_metric: f changes the finiteness pattern");
  Rat C = dist.finite() < Rat(1) ? Rat(1) : dist.finite();
  return almost_isometry_metric(std::move(space), f, C);
}

}  // namespace mdbl
