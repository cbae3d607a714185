#include "mdbl/kernels.hpp"

#include <stdexcept>

namespace mdbl {

static void check_dims(const ExtMatrix& a, const ExtMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("min_plus: dimension mismatch");
}

ExtMatrix min_plus_serial(const ExtMatrix& a, const ExtMatrix& b) {
  check_dims(a, b);
  ExtMatrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      ExtValue best = ExtValue::inf();
      for (int k = 0; k < a.cols; ++k) {
        const ExtValue& x = a.at(i, k);
        if (x.is_inf()) continue;
        ExtValue s = x + b.at(k, j);
        if (s < best) best = s;
      }
      out.at(i, j) = best;
    }
  }
  return out;
}

ExtMatrix min_plus(const ExtMatrix& a, const ExtMatrix& b) {
  check_dims(a, b);
  ExtMatrix out(a.rows, b.cols);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      ExtValue best = ExtValue::inf();
      for (int k = 0; k < a.cols; ++k) {
        const ExtValue& x = a.at(i, k);
        if (x.is_inf()) continue;
        ExtValue s = x + b.at(k, j);
        if (s < best) best = s;
      }
      out.at(i, j) = best;
    }
  }
  return out;
}

MinPlusArg min_plus_argmin(const ExtMatrix& a, const ExtMatrix& b) {
  check_dims(a, b);
  MinPlusArg r;
  r.value = ExtMatrix(a.rows, b.cols);
  r.arg.assign(static_cast<size_t>(a.rows) * b.cols, -1);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < b.cols; ++j) {
      ExtValue best = ExtValue::inf();
      int arg = -1;
      for (int k = 0; k < a.cols; ++k) {
        const ExtValue& x = a.at(i, k);
        if (x.is_inf()) continue;
        ExtValue s = x + b.at(k, j);
        if (s < best) {
          best = s;
          arg = k;
        }
      }
      r.value.at(i, j) = best;
      r.arg[static_cast<size_t>(i) * b.cols + j] = arg;
    }
  }
  return r;
}

std::vector<TriangleViolation> triangle_violations_serial(const ExtMatrix& m,
                                                          const ExtValue& slack) {
  if (m.rows != m.cols) throw std::invalid_argument("triangle scan: square matrix required");
  std::vector<TriangleViolation> out;
  const int n = m.rows;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        ExtValue rhs = m.at(i, k) + m.at(k, j);
        if (m.at(i, j) > rhs + slack)
          out.push_back({i, j, k, m.at(i, j), rhs});
      }
  return out;
}

std::vector<TriangleViolation> triangle_violations(const ExtMatrix& m,
                                                   const ExtValue& slack) {
  if (m.rows != m.cols) throw std::invalid_argument("triangle scan: square matrix required");
  const int n = m.rows;
  std::vector<std::vector<TriangleViolation>> per_row(n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        ExtValue rhs = m.at(i, k) + m.at(k, j);
        if (m.at(i, j) > rhs + slack)
          per_row[i].push_back({i, j, k, m.at(i, j), rhs});
      }
  }
  std::vector<TriangleViolation> out;
  for (auto& v : per_row) out.insert(out.end(), v.begin(), v.end());
  return out;
}

}  // namespace mdbl
