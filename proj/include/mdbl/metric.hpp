#pragma once

#include "mdbl/kernels.hpp"

#include <memory>
#include <string>
#include <vector>

namespace mdbl {

// Finite extended metric space: symmetric extended-distance matrix with
// zero diagonal, positive off-diagonal entries, triangle inequality, and
// the partition into finite-distance components.
class FiniteSpace {
 public:
  // Throws std::invalid_argument when `dist` is not a valid extended metric.
  // `slack` loosens the triangle check for matrices of rounded distances.
  explicit FiniteSpace(ExtMatrix dist, const ExtValue& slack = ExtValue(0));

  int size() const { return n_; }
  const ExtMatrix& dist() const { return dist_; }
  const ExtValue& d(int i, int j) const { return dist_.at(i, j); }

  int component_count() const { return ncomp_; }
  // Component id of each point; components numbered by lowest member index.
  const std::vector<int>& component_of() const { return comp_; }
  // Lowest-index representative of each component.
  const std::vector<int>& representatives() const { return reps_; }
  // Members of each component.
  const std::vector<std::vector<int>>& components() const { return members_; }

  bool connected() const { return ncomp_ == 1; }

  friend bool operator==(const FiniteSpace& a, const FiniteSpace& b) {
    return a.dist_ == b.dist_;
  }

 private:
  int n_;
  ExtMatrix dist_;
  std::vector<int> comp_;
  std::vector<int> reps_;
  std::vector<std::vector<int>> members_;
  int ncomp_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

SpacePtr make_space(ExtMatrix dist, const ExtValue& slack = ExtValue(0));

// One violated constraint of a cross matrix, with the amount by which it
// fails (slack = lhs - rhs, or a textual reason for non-triangle errors).
struct CrossViolation {
  // Families: 'a' cross[i][j] <= dist_L[i][k] + cross[k][j]
  //           'b' cross[i][j] <= cross[i][k] + dist_R[k][j]
  //           'c' dist_L[i][j] <= cross[i][k] + cross[j][k]
  //           'd' dist_R[i][j] <= cross[k][i] + cross[k][j]
  //           'p' positivity, 's' shape
  char family;
  int i, j, k;
  ExtValue lhs, rhs;
  std::string describe() const;
};

struct ValidationReport {
  std::vector<CrossViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string describe() const;
};

// Metric on X ⊔ Y extending the two given spaces; cross[i][j] = d(x_i, y_j).
// Bridges compose like morphisms from `left` to `right`.
struct BridgeMetric {
  SpacePtr left;
  SpacePtr right;
  ExtMatrix cross;

  BridgeMetric transposed() const { return {right, left, cross.transposed()}; }
};

// Metric on the double X ⊔ X'; only the cross matrix is free data.
struct DoubleMetric {
  SpacePtr space;
  ExtMatrix cross;

  BridgeMetric bridge() const { return {space, space, cross}; }
  const ExtValue& at(int i, int j) const { return cross.at(i, j); }
  int size() const { return space->size(); }

  // d(x_i, X'): row minimum of the cross matrix.
  ExtValue row_min(int i) const;
};

// Checks positivity and all four triangle families of a candidate cross
// matrix; reports every violated triple. `slack` loosens triangle checks.
ValidationReport validate_cross(const FiniteSpace& left, const FiniteSpace& right,
                                const ExtMatrix& cross,
                                const ExtValue& slack = ExtValue(0));

// Validating constructors; throw std::invalid_argument with the report text.
DoubleMetric make_double(SpacePtr space, ExtMatrix cross);
BridgeMetric make_bridge(SpacePtr left, SpacePtr right, ExtMatrix cross);
// Skips validation (for outputs of compose and for family generators that
// validate with slack separately).
DoubleMetric make_double_unchecked(SpacePtr space, ExtMatrix cross);

ValidationReport validate_double(const DoubleMetric& d,
                                 const ExtValue& slack = ExtValue(0));

// Min-plus composition: out[x][z] = min_y inner.cross[x][y] + outer.cross[y][z].
// Requires inner.right == outer.left (structurally).
BridgeMetric compose(const BridgeMetric& outer, const BridgeMetric& inner);
// outer ∘ inner on the double of X (apply inner first).
DoubleMetric compose(const DoubleMetric& outer, const DoubleMetric& inner);

// Adjoint d*(x, y') = d(y, x'): transpose of the cross matrix.
DoubleMetric adjoint(const DoubleMetric& d);

bool is_selfadjoint(const DoubleMetric& d);

// --- constructors from the base space ---

// I(x, y') = d_X(x, y) + 1: the unit class.
DoubleMetric unit_metric(SpacePtr space);

// e0(x, y') = d_X(x, x0) + 1 + d_X(x0, y): the point metric d_{{x0}}.
DoubleMetric point_metric(SpacePtr space, int x0);

// d_A(x, y') = min_{z in A} d_X(x, z) + 1 + d_X(z, y).
DoubleMetric subset_metric(SpacePtr space, const std::vector<int>& A);

// Generalization with per-anchor weights c_z >= 1 (selfadjoint idempotent;
// used to generate random idempotents in tests).
DoubleMetric weighted_subset_metric(SpacePtr space, const std::vector<int>& A,
                                    const std::vector<Rat>& c);

// d^f(x, y') = min_z d_X(x, z) + C + d_X(f(z), y) for an almost isometry f.
// When C is not supplied it defaults to max(1, max distortion of f).
DoubleMetric almost_isometry_metric(SpacePtr space, const std::vector<int>& f);
DoubleMetric almost_isometry_metric(SpacePtr space, const std::vector<int>& f,
                                    const Rat& C);

// Max over pairs of |d(x, y) - d(f(x), f(y))|; infinite patterns must agree
// or the result is infinite.
ExtValue distortion(const FiniteSpace& space, const std::vector<int>& f);

}  // namespace mdbl
