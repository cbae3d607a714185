#pragma once

#include "mdbl/extvalue.hpp"

namespace mdbl {

// Min-plus product: out[i][j] = min_k a[i][k] + b[k][j].
// The parallel kernel splits over output rows; with exact rational
// entries the result is identical to the serial reference.
ExtMatrix min_plus(const ExtMatrix& a, const ExtMatrix& b);
ExtMatrix min_plus_serial(const ExtMatrix& a, const ExtMatrix& b);

// Same product, also recording the smallest k attaining each minimum
// (-1 when the minimum is infinite).
struct MinPlusArg {
  ExtMatrix value;
  std::vector<int> arg;  // row-major, rows*cols
};
MinPlusArg min_plus_argmin(const ExtMatrix& a, const ExtMatrix& b);

// One violated triangle inequality m[i][j] > m[i][k] + m[k][j] in a full
// distance matrix.
struct TriangleViolation {
  int i, j, k;
  ExtValue lhs;  // m[i][j]
  ExtValue rhs;  // m[i][k] + m[k][j]
};

// Scans all triples of a square matrix. `slack` loosens the comparison to
// m[i][j] <= m[i][k] + m[k][j] + slack (used by families whose entries are
// rational approximations of irrational distances).
std::vector<TriangleViolation> triangle_violations(const ExtMatrix& m,
                                                   const ExtValue& slack = ExtValue(0));
std::vector<TriangleViolation> triangle_violations_serial(
    const ExtMatrix& m, const ExtValue& slack = ExtValue(0));

}  // namespace mdbl
