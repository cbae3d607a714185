#include "mdbl/qi.hpp"

#include <stdexcept>

namespace mdbl {

static void check_same_space(const DoubleMetric& d1, const DoubleMetric& d2) {
  if (!(*d1.space == *d2.space))
    throw std::invalid_argument("qi: metrics live on different spaces");
}

QICheckResult qi_check(const DoubleMetric& d1, const DoubleMetric& d2,
                       const QIWitness& w) {
  check_same_space(d1, d2);
  if (w.beta < Rat(1)) throw std::invalid_argument("qi_check: beta must be >= 1");
  if (w.alpha < Rat(0)) throw std::invalid_argument("qi_check: alpha must be >= 0");
  QICheckResult res;
  res.ok = true;
  const int n = d1.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const ExtValue& a = d1.at(i, j);
      const ExtValue& b = d2.at(i, j);
      if (a.is_inf() != b.is_inf()) {
        res = {false, i, j, ExtValue::inf()};
        return res;
      }
      if (a.is_inf()) continue;
      // b <= alpha + beta a  and  (1/beta) a - alpha <= b
      Rat upper_gap = b.finite() - (w.alpha + w.beta * a.finite());
      Rat lower_gap = a.finite() / w.beta - w.alpha - b.finite();
      Rat gap = upper_gap > lower_gap ? upper_gap : lower_gap;
      if (gap > Rat(0) && (res.ok || ExtValue(gap) > res.amount))
        res = {false, i, j, ExtValue(gap)};
    }
  return res;
}

std::optional<std::vector<Rat>> qi_fit(const DoubleMetric& d1, const DoubleMetric& d2,
                                       const std::vector<Rat>& beta_grid) {
  check_same_space(d1, d2);
  const int n = d1.size();
  std::vector<Rat> alphas;
  alphas.reserve(beta_grid.size());
  for (const Rat& beta : beta_grid) {
    if (beta < Rat(1)) throw std::invalid_argument("qi_fit: beta must be >= 1");
    Rat alpha(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const ExtValue& a = d1.at(i, j);
        const ExtValue& b = d2.at(i, j);
        if (a.is_inf() != b.is_inf()) return std::nullopt;
        if (a.is_inf()) continue;
        Rat need_up = b.finite() - beta * a.finite();
        Rat need_dn = a.finite() / beta - b.finite();
        if (need_up > alpha) alpha = need_up;
        if (need_dn > alpha) alpha = need_dn;
      }
    alphas.push_back(alpha);
  }
  return alphas;
}

std::optional<Rat> idempotent_criterion_alpha(const DoubleMetric& d, const Rat& beta) {
  if (beta < Rat(1)) throw std::invalid_argument("criterion: beta must be >= 1");
  const int n = d.size();
  Rat alpha(0);
  for (int i = 0; i < n; ++i) {
    const ExtValue& diag = d.at(i, i);
    ExtValue rmin = d.row_min(i);
    if (diag.is_inf()) {
      if (!rmin.is_inf()) return std::nullopt;
      continue;
    }
    // rmin <= diag, so rmin is finite here
    Rat need = diag.finite() / beta - rmin.finite();
    if (need > alpha) alpha = need;
  }
  return alpha;
}

bool idempotent_criterion(const DoubleMetric& d, const QIWitness& w) {
  if (!qi_check(d, adjoint(d), w).ok)
    throw std::invalid_argument("idempotent_criterion: d is not selfadjoint up to the witness");
  auto alpha = idempotent_criterion_alpha(d, w.beta);
  return alpha.has_value() && *alpha <= w.alpha;
}

}  // namespace mdbl
