#pragma once

#include "mdbl/semigroup.hpp"

namespace mdbl {

// Injective partial map on {0..dim-1}; as a matrix, column b holds a single 1
// at row img[b] (or is zero when img[b] = -1). These are exactly the partial
// permutation matrices, hence partial isometries.
struct PartialMap {
  std::vector<int> img;

  int dim() const { return static_cast<int>(img.size()); }
  static PartialMap identity(int n);
  // Matrix product: (a b)(delta_c) = a(b(delta_c)).
  static PartialMap product(const PartialMap& a, const PartialMap& b);
  PartialMap transposed() const;  // inverse partial map
  bool injective() const;
  friend bool operator==(const PartialMap& a, const PartialMap& b) {
    return a.img == b.img;
  }
};

// Left regular representation of M(X) on functions over its elements:
// lambda[a](delta_b) = delta_{ab} when b lies in V_a, else 0.
struct RegularRep {
  int dim = 0;
  std::vector<PartialMap> lambda;
};

// V_a = {b : b b* <= a* a} in the natural order; also asserts that
// b -> a b is injective on V_a.
std::vector<int> domain_set(const SemigroupTable& t, int a);

RegularRep build_rep(const SemigroupTable& t);

// Basis of the algebra spanned by products of the generators, with exact
// rational structure constants over that basis.
struct AlgebraClosure {
  int dim = 0;                    // ambient matrix size
  std::vector<PartialMap> basis;  // linearly independent products
  // structure[l][j] = coordinates of basis[l] * basis[j] in the basis
  std::vector<std::vector<std::vector<Rat>>> structure;
  std::vector<Rat> identity;  // coordinates of the identity matrix

  int rank() const { return static_cast<int>(basis.size()); }
};

AlgebraClosure algebra_closure(const RegularRep& rep);

struct AlgebraSummary {
  int algebra_dim = 0;
  int center_dim = 0;
  std::vector<int> block_dims;  // sorted ascending
  bool verified = false;        // sum of squares and center count both match
};

// Identifies the algebra as a direct sum of matrix blocks: exact rational
// center computation, then eigenprojections of a generic central element.
// Throws std::runtime_error when every probe of a generic central element
// fails (bounded retries).
AlgebraSummary decompose(const RegularRep& rep);

// (lambda_e - lambda_zero)(lambda_f - lambda_zero) == 0 ?
bool orthogonality_check(const RegularRep& rep, const SemigroupTable& t, int e, int f);

}  // namespace mdbl
