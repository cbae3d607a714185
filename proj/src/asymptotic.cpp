#include "mdbl/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mdbl {

bool FamilyInstance::entry_trusted(int i, int j) const {
  if (!inner.empty() && (!inner[i] || !inner[j])) return false;
  if (trusted.empty()) return true;
  return trusted[static_cast<size_t>(i) * metric.size() + j] != 0;
}

std::vector<Rat> default_beta_grid() {
  return {Rat(1), Rat(3, 2), Rat(2), Rat(3), Rat(4), Rat(8)};
}

std::vector<int> default_sizes() { return {16, 32, 64, 128, 256}; }

namespace {

// integer window Z ∩ [-N, N]; index = value + N
SpacePtr z_window_space(int n) {
  const int pts = 2 * n + 1;
  ExtMatrix dist(pts, pts);
  for (int i = 0; i < pts; ++i)
    for (int j = 0; j < pts; ++j) dist.at(i, j) = ExtValue(std::abs(i - j));
  return make_space(std::move(dist));
}

void z_window_flags(FamilyInstance& inst, int n, const Rat& inner_fraction) {
  const int pts = 2 * n + 1;
  long long cut = (inner_fraction * Rat(n)).numerator() / (inner_fraction * Rat(n)).denominator();
  inst.inner.assign(pts, 0);
  inst.boundary.assign(pts, 0);
  for (int i = 0; i < pts; ++i) {
    int v = i - n;
    if (std::llabs(v) <= cut) inst.inner[i] = 1;
    if (std::abs(v) == n) inst.boundary[i] = 1;
  }
}

FamilyInstance idem_z_instance(int n, const Rat& frac) {
  SpacePtr sp = z_window_space(n);
  const int pts = 2 * n + 1;
  ExtMatrix cross(pts, pts);
  for (int i = 0; i < pts; ++i)
    for (int j = 0; j < pts; ++j) {
      int x = i - n, y = j - n;
      cross.at(i, j) = (x >= 0 && y >= 0) ? ExtValue(x + y + 1) : ExtValue(std::abs(x - y) + 1);
    }
  FamilyInstance inst{make_double_unchecked(sp, std::move(cross)), {}, {}, {}};
  z_window_flags(inst, n, frac);
  return inst;
}

FamilyInstance pisom_z_instance(int n, const Rat& frac) {
  SpacePtr sp = z_window_space(n);
  const int pts = 2 * n + 1;
  ExtMatrix cross(pts, pts);
  for (int i = 0; i < pts; ++i)
    for (int j = 0; j < pts; ++j) {
      int x = i - n, y = j - n;
      cross.at(i, j) = (x >= 0 && y <= 0) ? ExtValue(std::abs(x + y) + 1)
                                          : ExtValue(std::abs(x) + std::abs(y) + 1);
    }
  FamilyInstance inst{make_double_unchecked(sp, std::move(cross)), {}, {}, {}};
  z_window_flags(inst, n, frac);
  return inst;
}

FamilyInstance unit_z_instance(int n, const Rat& frac) {
  FamilyInstance inst{unit_metric(z_window_space(n)), {}, {}, {}};
  z_window_flags(inst, n, frac);
  return inst;
}

std::vector<int> z_subset(int n, const std::string& which) {
  std::vector<int> a;
  for (int i = 0; i < 2 * n + 1; ++i) {
    int v = i - n;
    if ((which == "even" && v % 2 == 0) || (which == "odd" && std::abs(v % 2) == 1) ||
        (which == "nonneg" && v >= 0) || (which == "nonpos" && v <= 0))
      a.push_back(i);
  }
  return a;
}

FamilyInstance subset_z_instance(int n, const Rat& frac, const std::string& which) {
  SpacePtr sp = z_window_space(n);
  FamilyInstance inst{subset_metric(sp, z_subset(n, which)), {}, {}, {}};
  z_window_flags(inst, n, frac);
  return inst;
}

// Two rays in R^3: a_t = (t,t,0), b_t = (t,-t,0), primed copies with the
// y-coordinate flipped and z = 1; Euclidean distances rounded to a fixed
// dyadic grid (validated with matching slack in the tests).
Rat round_dyadic(double x) {
  return Rat(static_cast<long long>(std::llround(x * 4096)), 4096);
}

FamilyInstance two_rays_instance(int n, const Rat& frac) {
  const int pts = 2 * n;  // a_1..a_n then b_1..b_n
  auto coord = [&](int idx, bool primed) {
    int t = idx < n ? idx + 1 : idx - n + 1;
    double ysign = idx < n ? 1.0 : -1.0;
    if (primed) ysign = -ysign;
    return std::array<double, 3>{static_cast<double>(t), ysign * t, primed ? 1.0 : 0.0};
  };
  auto dist3 = [](const std::array<double, 3>& p, const std::array<double, 3>& q) {
    double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
  };
  ExtMatrix dist(pts, pts), cross(pts, pts);
  for (int i = 0; i < pts; ++i)
    for (int j = 0; j < pts; ++j) {
      dist.at(i, j) = i == j ? ExtValue(0) : ExtValue(round_dyadic(dist3(coord(i, false), coord(j, false))));
      cross.at(i, j) = ExtValue(round_dyadic(dist3(coord(i, false), coord(j, true))));
    }
  SpacePtr sp = make_space(std::move(dist), ExtValue(Rat(1, 1024)));
  FamilyInstance inst{make_double_unchecked(sp, std::move(cross)), {}, {}, {}};
  inst.inner.assign(pts, 0);
  inst.boundary.assign(pts, 0);
  long long cut = (frac * Rat(n)).numerator() / (frac * Rat(n)).denominator();
  for (int i = 0; i < pts; ++i) {
    int t = i < n ? i + 1 : i - n + 1;
    if (t <= cut) inst.inner[i] = 1;
    if (t == n) inst.boundary[i] = 1;
  }
  return inst;
}

}  // namespace

MetricFamily family_by_name(const std::string& name) {
  MetricFamily f;
  f.name = name;
  Rat frac = f.inner_fraction;
  if (name == "idem_z")
    f.gen = [frac](int n) { return idem_z_instance(n, frac); };
  else if (name == "unit_z")
    f.gen = [frac](int n) { return unit_z_instance(n, frac); };
  else if (name == "pisom_z")
    f.gen = [frac](int n) { return pisom_z_instance(n, frac); };
  else if (name == "two_rays_r3")
    f.gen = [frac](int n) { return two_rays_instance(n, frac); };
  else if (name.rfind("subset_z_", 0) == 0) {
    std::string which = name.substr(9);
    if (which != "even" && which != "odd" && which != "nonneg" && which != "nonpos")
      throw std::invalid_argument("unknown subset family: " + name);
    f.gen = [frac, which](int n) { return subset_z_instance(n, frac, which); };
  } else {
    throw std::invalid_argument("unknown family: " + name);
  }
  return f;
}

std::vector<std::string> family_names() {
  return {"idem_z",        "unit_z",       "pisom_z",        "two_rays_r3",
          "subset_z_even", "subset_z_odd", "subset_z_nonneg", "subset_z_nonpos"};
}

MetricFamily adjoint_family(const MetricFamily& f) {
  MetricFamily g;
  g.name = f.name + "*";
  g.inner_fraction = f.inner_fraction;
  auto gen = f.gen;
  g.gen = [gen](int n) {
    FamilyInstance inst = gen(n);
    inst.metric = adjoint(inst.metric);
    if (!inst.trusted.empty()) {
      const int pts = inst.metric.size();
      std::vector<uint8_t> tr(inst.trusted.size());
      for (int i = 0; i < pts; ++i)
        for (int j = 0; j < pts; ++j)
          tr[static_cast<size_t>(i) * pts + j] = inst.trusted[static_cast<size_t>(j) * pts + i];
      inst.trusted = std::move(tr);
    }
    return inst;
  };
  return g;
}

FamilyInstance windowed_compose(const MetricFamily& rho, const MetricFamily& d, int n) {
  FamilyInstance ri = rho.gen(n);
  FamilyInstance di = d.gen(n);
  if (!(*ri.metric.space == *di.metric.space))
    throw std::invalid_argument("windowed_compose: incompatible generators");
  const int pts = di.metric.size();
  MinPlusArg prod = min_plus_argmin(di.metric.cross, ri.metric.cross);
  FamilyInstance out;
  out.metric = make_double_unchecked(di.metric.space, std::move(prod.value));
  out.inner = di.inner;
  out.boundary = di.boundary;
  out.trusted.assign(static_cast<size_t>(pts) * pts, 1);
  for (int i = 0; i < pts; ++i)
    for (int j = 0; j < pts; ++j) {
      size_t idx = static_cast<size_t>(i) * pts + j;
      int y = prod.arg[idx];
      if (y >= 0 && di.boundary[y]) out.trusted[idx] = 0;
    }
  return out;
}

MetricFamily composed_family(const MetricFamily& rho, const MetricFamily& d) {
  MetricFamily g;
  g.name = rho.name + "." + d.name;
  g.inner_fraction = d.inner_fraction;
  MetricFamily r = rho, dd = d;
  g.gen = [r, dd](int n) { return windowed_compose(r, dd, n); };
  return g;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::diverging: return "diverging";
    default: return "pattern-mismatch";
  }
}

namespace {

void finish_series(FitSeries& fs, const std::vector<Rat>& beta_grid,
                   const std::vector<std::vector<Rat>>& alphas_by_beta) {
  // choose the beta with the smallest alpha at the largest size
  size_t best = 0;
  for (size_t b = 1; b < beta_grid.size(); ++b)
    if (alphas_by_beta[b].back() < alphas_by_beta[best].back()) best = b;
  fs.beta = beta_grid[best];
  fs.alphas = alphas_by_beta[best];
  Rat base = fs.alphas.front() > Rat(1) ? fs.alphas.front() : Rat(1);
  fs.threshold = Rat(10) * base;
  bool bounded = true;
  for (const Rat& a : fs.alphas)
    if (a > fs.threshold) bounded = false;
  fs.verdict = bounded ? Verdict::stable : Verdict::diverging;
  fs.monotone_tail = true;
  for (size_t i = fs.alphas.size() / 2; i + 1 < fs.alphas.size(); ++i)
    if (fs.alphas[i + 1] < fs.alphas[i]) fs.monotone_tail = false;
}

}  // namespace

FitSeries fit_series(const MetricFamily& f1, const MetricFamily& f2,
                     const std::vector<int>& sizes, const std::vector<Rat>& beta_grid) {
  if (sizes.empty() || beta_grid.empty())
    throw std::invalid_argument("fit_series: empty size or beta grid");
  FitSeries fs;
  fs.sizes = sizes;
  std::vector<std::vector<Rat>> alphas_by_beta(beta_grid.size());
  for (int n : sizes) {
    FamilyInstance i1 = f1.gen(n);
    FamilyInstance i2 = f2.gen(n);
    if (!(*i1.metric.space == *i2.metric.space))
      throw std::invalid_argument("fit_series: incompatible generators");
    const int pts = i1.metric.size();
    for (size_t b = 0; b < beta_grid.size(); ++b) {
      const Rat& beta = beta_grid[b];
      if (beta < Rat(1)) throw std::invalid_argument("fit_series: beta must be >= 1");
      Rat alpha(0);
      for (int i = 0; i < pts; ++i)
        for (int j = 0; j < pts; ++j) {
          if (!i1.entry_trusted(i, j) || !i2.entry_trusted(i, j)) continue;
          const ExtValue& x = i1.metric.at(i, j);
          const ExtValue& y = i2.metric.at(i, j);
          if (x.is_inf() != y.is_inf()) {
            fs.verdict = Verdict::pattern_mismatch;
            return fs;
          }
          if (x.is_inf()) continue;
          Rat up = y.finite() - beta * x.finite();
          Rat dn = x.finite() / beta - y.finite();
          if (up > alpha) alpha = up;
          if (dn > alpha) alpha = dn;
        }
      alphas_by_beta[b].push_back(alpha);
    }
  }
  finish_series(fs, beta_grid, alphas_by_beta);
  return fs;
}

FitSeries criterion_series(const MetricFamily& fam, const std::vector<int>& sizes,
                           const std::vector<Rat>& beta_grid) {
  FitSeries sa = fit_series(fam, adjoint_family(fam), sizes, beta_grid);
  if (sa.verdict != Verdict::stable)
    throw std::invalid_argument("criterion_series: family is not selfadjoint (" +
                                verdict_name(sa.verdict) + ")");
  FitSeries fs;
  fs.sizes = sizes;
  std::vector<std::vector<Rat>> alphas_by_beta(beta_grid.size());
  for (int n : sizes) {
    FamilyInstance inst = fam.gen(n);
    const int pts = inst.metric.size();
    for (size_t b = 0; b < beta_grid.size(); ++b) {
      const Rat& beta = beta_grid[b];
      Rat alpha(0);
      for (int i = 0; i < pts; ++i) {
        if (!inst.inner.empty() && !inst.inner[i]) continue;
        const ExtValue& diag = inst.metric.at(i, i);
        ExtValue rmin = inst.metric.row_min(i);
        if (diag.is_inf()) {
          if (!rmin.is_inf()) {
            fs.verdict = Verdict::pattern_mismatch;
            return fs;
          }
          continue;
        }
        Rat need = diag.finite() / beta - rmin.finite();
        if (need > alpha) alpha = need;
      }
      alphas_by_beta[b].push_back(alpha);
    }
  }
  finish_series(fs, beta_grid, alphas_by_beta);
  return fs;
}

SubsetFamily subset_family_by_name(const std::string& name) {
  if (name != "even" && name != "odd" && name != "nonneg" && name != "nonpos")
    throw std::invalid_argument("unknown subset family: " + name);
  SubsetFamily f;
  f.name = name;
  f.gen = [name](int n) {
    return std::make_pair(z_window_space(n), z_subset(n, name));
  };
  return f;
}

NeighborhoodReport neighborhood_check(const SubsetFamily& fa, const SubsetFamily& fb,
                                      const std::vector<int>& sizes) {
  NeighborhoodReport rep;
  rep.sizes = sizes;
  for (int n : sizes) {
    auto [sa, A] = fa.gen(n);
    auto [sb, B] = fb.gen(n);
    if (!(*sa == *sb)) throw std::invalid_argument("neighborhood_check: different spaces");
    if (A.empty() || B.empty()) throw std::invalid_argument("neighborhood_check: empty subset");
    ExtValue gap(0);
    auto one_sided = [&](const std::vector<int>& from, const std::vector<int>& to) {
      for (int a : from) {
        ExtValue best = ExtValue::inf();
        for (int b : to) best = min(best, sa->d(a, b));
        if (best > gap) gap = best;
      }
    };
    one_sided(A, B);
    one_sided(B, A);
    rep.gaps.push_back(gap);
  }
  Rat base(1);
  if (!rep.gaps.front().is_inf() && rep.gaps.front().finite() > base)
    base = rep.gaps.front().finite();
  Rat threshold = Rat(10) * base;
  bool bounded = true;
  for (const ExtValue& g : rep.gaps)
    if (g.is_inf() || g.finite() > threshold) bounded = false;
  rep.verdict = bounded ? Verdict::stable : Verdict::diverging;

  auto to_metric_family = [](const SubsetFamily& sf) {
    MetricFamily f;
    f.name = "subset:" + sf.name;
    auto gen = sf.gen;
    Rat frac = f.inner_fraction;
    f.gen = [gen, frac](int n) {
      auto [sp, A] = gen(n);
      FamilyInstance inst{subset_metric(sp, A), {}, {}, {}};
      z_window_flags(inst, n, frac);
      return inst;
    };
    return f;
  };
  FitSeries fit = fit_series(to_metric_family(fa), to_metric_family(fb), sizes,
                             default_beta_grid());
  rep.fit_verdict = fit.verdict;
  rep.consistent = (rep.verdict == Verdict::stable) == (rep.fit_verdict == Verdict::stable);
  return rep;
}

SeparationReport separation_check(double angle_a_deg, double angle_b_deg,
                                  const std::vector<int>& sizes, double beta) {
  if (beta < 1) throw std::invalid_argument("separation_check: beta must be >= 1");
  SeparationReport rep;
  rep.sizes = sizes;
  rep.condition_ok = true;
  rep.holds = true;
  rep.worst_margin = 1e300;
  auto ray = [](double deg, int n) {
    std::vector<std::pair<int, int>> pts;
    double th = deg * M_PI / 180.0;
    for (int t = 0; t <= n; ++t) {
      int x = static_cast<int>(std::llround(t * std::cos(th)));
      int y = static_cast<int>(std::llround(t * std::sin(th)));
      if (std::abs(x) <= n && std::abs(y) <= n &&
          (pts.empty() || pts.back() != std::make_pair(x, y)))
        pts.emplace_back(x, y);
    }
    return pts;
  };
  auto eu = [](std::pair<int, int> p, std::pair<int, int> q) {
    double dx = p.first - q.first, dy = p.second - q.second;
    return std::sqrt(dx * dx + dy * dy);
  };
  for (int n : sizes) {
    auto A = ray(angle_a_deg, n);
    auto B = ray(angle_b_deg, n);
    // separation hypothesis: d(A \ B_R, B \ B_R) > R / beta for R = 1..n
    for (int big_r = 1; big_r <= n && rep.condition_ok; ++big_r) {
      double best = 1e300;
      for (const auto& a : A) {
        if (eu(a, {0, 0}) <= big_r) continue;
        for (const auto& b : B) {
          if (eu(b, {0, 0}) <= big_r) continue;
          best = std::min(best, eu(a, b));
        }
      }
      if (best <= big_r / beta) {
        rep.condition_ok = false;
        rep.detail = "separation condition fails at size " + std::to_string(n) +
                     ", R = " + std::to_string(big_r);
      }
    }
    if (!rep.condition_ok) break;
    // pairwise leg d(u,v) precomputed
    const int na = static_cast<int>(A.size()), nb = static_cast<int>(B.size());
    std::vector<double> leg(static_cast<size_t>(na) * nb);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j) leg[static_cast<size_t>(i) * nb + j] = eu(A[i], B[j]);
    const int half = n / 2;
    const int side = 2 * half + 1;
    double worst = 1e300;
#pragma omp parallel for reduction(min : worst) schedule(static)
    for (int xi = 0; xi < side * side; ++xi) {
      std::pair<int, int> x{xi % side - half, xi / side - half};
      double dadb = 1e300;
      for (int i = 0; i < na; ++i) {
        double da = eu(x, A[i]);
        for (int j = 0; j < nb; ++j)
          dadb = std::min(dadb, da + leg[static_cast<size_t>(i) * nb + j] + eu(x, B[j]));
      }
      dadb += 2.0;
      double lhs = 2.0 * eu(x, {0, 0}) + 1.0;
      double rhs = 4.0 * beta * dadb + 1.0;
      worst = std::min(worst, rhs - lhs);
    }
    rep.worst_margin = std::min(rep.worst_margin, worst);
    if (worst < 0) rep.holds = false;
  }
  if (!rep.condition_ok) rep.holds = false;
  return rep;
}

PartialIsometryReport partial_isometry_demo(const std::vector<int>& sizes) {
  PartialIsometryReport rep;
  MetricFamily d = family_by_name("pisom_z");
  MetricFamily ds = adjoint_family(d);
  MetricFamily dstar_d = composed_family(ds, d);  // apply d, then d*
  MetricFamily d_dstar = composed_family(d, ds);
  rep.dstar_d_vs_da = fit_series(dstar_d, family_by_name("subset_z_nonneg"), sizes,
                                 default_beta_grid());
  rep.d_dstar_vs_db = fit_series(d_dstar, family_by_name("subset_z_nonpos"), sizes,
                                 default_beta_grid());
  // closed forms on the trusted window at the largest size:
  // (d* d)(x,y') = |x-y| + 2 when x,y >= 0, |x| + |y| + 2 otherwise
  int n = sizes.back();
  FamilyInstance inst = windowed_compose(ds, d, n);
  rep.closed_form_ok = true;
  const int pts = inst.metric.size();
  for (int i = 0; i < pts && rep.closed_form_ok; ++i)
    for (int j = 0; j < pts; ++j) {
      if (!inst.entry_trusted(i, j)) continue;
      int x = i - n, y = j - n;
      long long expect = (x >= 0 && y >= 0) ? std::abs(x - y) + 2
                                            : std::abs(x) + std::abs(y) + 2;
      if (!(inst.metric.at(i, j) == ExtValue(expect))) {
        rep.closed_form_ok = false;
        break;
      }
    }
  return rep;
}

}  // namespace mdbl
