#pragma once

#include "mdbl/qi.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mdbl {

// Finiteness pattern of a cross matrix: the canonical invariant of a
// quasi-isometry class on a finite extended space.
struct Pattern {
  int n = 0;
  std::vector<uint8_t> bits;  // row-major, bits[i*n+j] = (cross[i][j] finite)

  Pattern() = default;
  explicit Pattern(int n_) : n(n_), bits(static_cast<size_t>(n_) * n_, 0) {}

  bool bit(int i, int j) const { return bits[static_cast<size_t>(i) * n + j] != 0; }
  void set(int i, int j, bool v) { bits[static_cast<size_t>(i) * n + j] = v ? 1 : 0; }

  Pattern transposed() const;
  std::string encode() const;  // '0'/'1' string, row-major

  friend bool operator==(const Pattern& a, const Pattern& b) {
    return a.n == b.n && a.bits == b.bits;
  }
};

Pattern canonical_class(const DoubleMetric& d);

// Injective partial map on components; to[c] is the image component or -1.
struct PartialBijection {
  std::vector<int> to;

  int k() const { return static_cast<int>(to.size()); }
  PartialBijection inverse() const;
  // Relation composition, inner applied first: (outer ∘ inner)[c] =
  // outer.to[inner.to[c]].
  static PartialBijection composed(const PartialBijection& outer,
                                   const PartialBijection& inner);
  friend bool operator==(const PartialBijection& a, const PartialBijection& b) {
    return a.to == b.to;
  }
};

struct PatternCheck {
  bool ok = false;
  std::string reason;
  std::optional<PartialBijection> bijection;  // set when ok
};

// A pattern is realizable iff it is constant on component blocks and the
// induced component relation is a partial bijection.
PatternCheck pattern_valid(const FiniteSpace& space, const Pattern& p);

// Canonical representative of a valid pattern: for related components (c, c')
// with lowest-index representatives r, r', cross[i][j] = d(i,r) + 1 + d(r',j).
DoubleMetric realize(SpacePtr space, const Pattern& p);

Pattern pattern_of_bijection(const FiniteSpace& space, const PartialBijection& pb);

// The full structure of M(X) for a finite extended space: one element per
// valid pattern, multiplication by compose-then-canonicalize on canonical
// representatives, star by transposition.
struct SemigroupTable {
  SpacePtr space;
  std::vector<Pattern> elements;  // sorted by pattern encoding
  std::vector<DoubleMetric> reps;
  std::vector<std::vector<int>> mul;  // mul[a][b] = class of a ∘ b (b first)
  std::vector<int> star;
  std::vector<bool> idempotent;
  int unit = -1;
  int zero = -1;

  int size() const { return static_cast<int>(elements.size()); }
  int find(const Pattern& p) const;  // -1 when absent
};

SemigroupTable enumerate(SpacePtr space);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Associativity, unique generalized inverses, commuting selfadjoint
// idempotents, star anti-multiplicativity.
VerifyReport verify_inverse_semigroup(const SemigroupTable& t);

// Natural partial order on idempotents: e <= f iff f e = e.
bool natural_order(const SemigroupTable& t, int e, int f);

// Elements a with a* a = a a* = unit (the total bijections of components).
std::vector<int> units_group(const SemigroupTable& t);

struct IsometryExtraction {
  std::vector<int> f;  // f(x) = argmin_u cross[x][u], lowest index on ties
  QIWitness witness;   // makes qi_check(d^f, d) pass
};

// Requires the class of d to be invertible in t.
IsometryExtraction extract_isometry(const DoubleMetric& d, const SemigroupTable& t);

struct GHConjugation {
  SemigroupTable right_table;  // M(Y)
  std::vector<int> map;        // element id of M(X) -> element id of M(Y)
  bool isomorphism = false;    // bijective *-homomorphism verified on tables
};

// d -> [rho d rho*] for a bridge with finite Hausdorff gap (every row and
// column of the cross matrix has a finite minimum).
GHConjugation gh_conjugate(const BridgeMetric& rho, const SemigroupTable& t_x);

// DOT rendering: Hasse diagram of the idempotent order plus an egg-box style
// grouping of the remaining elements by their idempotents a a* and a* a.
std::string semigroup_dot(const SemigroupTable& t);

}  // namespace mdbl
