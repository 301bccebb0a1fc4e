#ifndef SRN_LATTICE_HPP
#define SRN_LATTICE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "srn/numeric.hpp"

namespace srn {

class ReactionNetwork;

/// gcd of a set of collinear integer vectors: vector() is an integer
/// multiple of the primitive direction, sign-normalised so that its first
/// nonzero coordinate is positive; scalar() is the gcd of its coordinates.
struct PrimitiveDirection {
  IntVector vector;                  // omega*
  std::int64_t scalar = 1;           // omega**
  std::vector<std::size_t> support;  // j with vector[j] != 0

  /// omega* / omega**, the primitive integer step along the line.
  IntVector step() const;
  /// The integer n with w = n * vector; throws std::domain_error if w is not
  /// an integer multiple.
  std::int64_t multiple_of(const IntVector& w) const;
};

/// Empty optional iff dim span(A) != 1. Throws std::invalid_argument if A is
/// empty or contains the zero vector.
std::optional<PrimitiveDirection> gcd_vector_set(const std::vector<IntVector>& vectors);

/// Elements of B not dominating any other element of B (duplicates collapse).
std::vector<IntVector> minimal_set(const std::vector<IntVector>& points);

/// x >= y for some y in A.
bool upward_contains(const std::vector<IntVector>& antichain, const IntVector& x);

/// Rank over the rationals.
std::size_t span_dimension(const std::vector<IntVector>& vectors);

/// Integer span of a finite set of vectors kept in row echelon form.
class IntegerLattice {
 public:
  explicit IntegerLattice(std::size_t dimension) : dim_(dimension) {}
  explicit IntegerLattice(const std::vector<IntVector>& generators);

  void add(const IntVector& v);
  bool contains(const IntVector& v) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t dim_;
  std::vector<std::vector<Integer>> rows_;  // sorted by pivot column
  std::vector<std::size_t> pivots_;
};

/// Outcome of Fourier-Motzkin elimination on A x >= b: either a rational
/// solution, or multipliers y >= 0 with y^T A = 0 and y^T b > 0.
struct FarkasResult {
  std::optional<std::vector<Rational>> solution;
  std::vector<Rational> multipliers;
  bool feasible() const { return solution.has_value(); }
};

FarkasResult solve_inequalities(const std::vector<std::vector<Rational>>& lhs,
                                const std::vector<Rational>& rhs);

/// Gordan alternative for the reaction vectors.
struct PositiveIndependence {
  bool independent = false;
  std::vector<Integer> witness;    // c >= 0, not all zero, sum c_w w = 0 (when dependent)
  std::vector<Integer> separator;  // v with v . w > 0 for all w (when independent)
};

PositiveIndependence positively_linearly_independent(const std::vector<IntVector>& omegas);

/// A strictly positive integer vector orthogonal to every w, if one exists.
std::optional<std::vector<Integer>> conservation_law(const std::vector<IntVector>& omegas,
                                                     std::size_t dimension);

bool is_conservative(const ReactionNetwork& network);

/// Whether target is a nonnegative rational combination of the generators.
/// When it is not, `separator` receives v with v.g >= 0 for all g and v.target < 0.
bool in_rational_cone(const std::vector<IntVector>& generators, const IntVector& target,
                      std::vector<Rational>* separator = nullptr);

/// Clears denominators and divides out the common gcd; signs preserved.
std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v);

}  // namespace srn

#endif  // SRN_LATTICE_HPP
