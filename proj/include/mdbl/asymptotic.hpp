#pragma once

#include "mdbl/qi.hpp"

#include <functional>
#include <string>
#include <vector>

namespace mdbl {

// One truncation of an infinite family: the metric plus per-point flags for
// the trusted inner window and the truncation boundary, and a per-entry
// reliability mask (composition marks entries whose minimizer hit the
// boundary).
struct FamilyInstance {
  DoubleMetric metric;
  std::vector<uint8_t> inner;     // point is inside the trusted sub-window
  std::vector<uint8_t> boundary;  // point sits on the truncation boundary
  std::vector<uint8_t> trusted;   // entry mask, row-major (empty = all trusted)

  bool entry_trusted(int i, int j) const;
};

struct MetricFamily {
  std::string name;
  Rat inner_fraction{1, 2};
  std::function<FamilyInstance(int)> gen;
};

// Built-in registry: idem_z, unit_z, two_rays_r3, pisom_z, subset_z_even,
// subset_z_odd, subset_z_nonneg, subset_z_nonpos.
MetricFamily family_by_name(const std::string& name);
std::vector<std::string> family_names();

MetricFamily adjoint_family(const MetricFamily& f);
// rho ∘ d (d applied first); minimizers on the truncation boundary make the
// entry untrusted.
MetricFamily composed_family(const MetricFamily& rho, const MetricFamily& d);

FamilyInstance windowed_compose(const MetricFamily& rho, const MetricFamily& d, int n);

enum class Verdict { stable, diverging, pattern_mismatch };
std::string verdict_name(Verdict v);

struct FitSeries {
  std::vector<int> sizes;
  Rat beta;                 // grid beta with the smallest final alpha
  std::vector<Rat> alphas;  // minimal alpha per size at that beta
  Verdict verdict = Verdict::pattern_mismatch;
  bool monotone_tail = false;  // alphas nondecreasing over the last half
  Rat threshold;               // stability cutoff used for the verdict
};

// Minimal quasi-isometry alpha between two families on trusted entries,
// per size and beta. Stable = bounded by 10 * max(alpha at smallest size, 1).
FitSeries fit_series(const MetricFamily& f1, const MetricFamily& f2,
                     const std::vector<int>& sizes, const std::vector<Rat>& beta_grid);

// Idempotency criterion fit per size: minimal alpha with
// -alpha + diag/beta <= rowmin on inner points. Throws when the family is
// not selfadjoint (fit against the adjoint family must be stable).
FitSeries criterion_series(const MetricFamily& fam, const std::vector<int>& sizes,
                           const std::vector<Rat>& beta_grid);

// Subset family: window space plus a chosen subset per size.
struct SubsetFamily {
  std::string name;
  std::function<std::pair<SpacePtr, std::vector<int>>(int)> gen;
};

SubsetFamily subset_family_by_name(const std::string& name);

struct NeighborhoodReport {
  std::vector<int> sizes;
  std::vector<ExtValue> gaps;  // mutual Hausdorff gap per size
  Verdict verdict = Verdict::diverging;
  Verdict fit_verdict = Verdict::diverging;  // fit_series(d_A, d_B) cross-check
  bool consistent = false;                   // the two verdicts agree
};

NeighborhoodReport neighborhood_check(const SubsetFamily& fa, const SubsetFamily& fb,
                                      const std::vector<int>& sizes);

// Orthogonality of subset idempotents for two lattice rays in the plane:
// checks the separation condition d(A \ B_R, B \ B_R) > R/beta for all
// radii up to the window, then e0(x,x') <= 4 beta (d_A d_B)(x,x') + 1 on the
// inner window. Euclidean distances evaluated in doubles.
struct SeparationReport {
  std::vector<int> sizes;
  bool condition_ok = false;  // separation hypothesis held at every size
  bool holds = false;         // the inequality held wherever tested
  double worst_margin = 0;    // min of rhs - lhs over tested points
  std::string detail;
};

SeparationReport separation_check(double angle_a_deg, double angle_b_deg,
                                  const std::vector<int>& sizes, double beta);

struct PartialIsometryReport {
  FitSeries dstar_d_vs_da;  // d* d against d_A
  FitSeries d_dstar_vs_db;  // d d* against d_B
  bool closed_form_ok = false;
  bool ok() const {
    return closed_form_ok && dstar_d_vs_da.verdict == Verdict::stable &&
           d_dstar_vs_db.verdict == Verdict::stable;
  }
};

// The line metric d(x,y') = |x+y|+1 for x >= 0 >= y (|x|+|y|+1 otherwise):
// a partial isometry from [d_A] to [d_B], A = Z>=0, B = Z<=0.
PartialIsometryReport partial_isometry_demo(const std::vector<int>& sizes);

std::vector<Rat> default_beta_grid();
std::vector<int> default_sizes();

}  // namespace mdbl
