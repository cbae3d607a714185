#pragma once

#include "mdbl/metric.hpp"

#include <optional>

namespace mdbl {

// Witness for -alpha + (1/beta) d1 <= d2 <= alpha + beta d1.
struct QIWitness {
  Rat alpha;
  Rat beta;
};

struct QICheckResult {
  bool ok = false;
  // Worst violating entry when !ok (pattern mismatches report amount = inf).
  int i = -1, j = -1;
  ExtValue amount;  // by how much the bound fails
};

// Entrywise two-sided affine bound on the cross matrices. An infinite entry
// on one side with a finite entry on the other fails for every witness.
QICheckResult qi_check(const DoubleMetric& d1, const DoubleMetric& d2,
                       const QIWitness& w);

// Minimal alpha making qi_check pass, for each beta in the grid; nullopt
// when the finiteness patterns differ.
std::optional<std::vector<Rat>> qi_fit(const DoubleMetric& d1, const DoubleMetric& d2,
                                       const std::vector<Rat>& beta_grid);

// Idempotency criterion for a selfadjoint metric:
// -alpha + (1/beta) d(x,x') <= d(x,X') for every x.
// Requires d selfadjoint up to the witness.
bool idempotent_criterion(const DoubleMetric& d, const QIWitness& w);

// Minimal alpha for which the criterion holds at the given beta; nullopt when
// no alpha works (an infinite diagonal entry over a finite row minimum).
std::optional<Rat> idempotent_criterion_alpha(const DoubleMetric& d, const Rat& beta);

}  // namespace mdbl
