#ifndef QFV_WPS_HPP
#define QFV_WPS_HPP

#include <map>
#include <vector>

#include "qfv/poly.hpp"

namespace qfv {

struct Ideal;

/// Ambient weighted projective space with optional weight-0 affine
/// parameters (excluded from projectivization, specialized to constants
/// during verification runs).
struct WeightedSpace {
  std::shared_ptr<const Ring> ring;
  WeightVector weights;

  void validate() const;
  std::vector<unsigned> projective_vars() const;
  /// Sorted weight multiset of the projective coordinates.
  std::vector<long long> weight_multiset() const;
  long long weight(unsigned var) const { return weights[var]; }
};

/// Affine chart at a distinguished coordinate x: the residual Z/alpha action
/// on the other coordinates, weights reduced mod alpha = w(x).
struct Chart {
  unsigned coord = 0;
  long long alpha = 1;
  /// Residual weight per ring variable; residual[coord] = 0.
  std::vector<long long> residual;
};

/// A set of coordinates constrained to zero.
struct CoordinateSubspace {
  std::vector<unsigned> zero_vars;  // sorted
  bool operator==(const CoordinateSubspace& o) const { return zero_vars == o.zero_vars; }
};

struct WellFormedReport {
  /// prime -> coordinates whose weight it divides (only primes dividing
  /// at least two weights or flagged below are listed)
  std::map<long long, std::vector<unsigned>> prime_to_vars;
  /// primes dividing every projective weight (degenerate grading)
  std::vector<long long> primes_dividing_all;
};

WellFormedReport well_formed_report(const WeightedSpace& W);

/// All monomials in the projective coordinates of weighted degree d,
/// deterministic order (first coordinate exponent descending, recursively).
std::vector<Monomial> monomials_of_weight(const WeightedSpace& W, long long d);

/// Ideal generated by all weight-d monomials; its vanishing locus is
/// Bs|O(d)| on the affine cone.
Ideal base_locus_ideal(const WeightedSpace& W, long long d);

Chart chart_of(const WeightedSpace& W, unsigned coord);

/// For each divisor d>1 of alpha: the coordinate subspace fixed by the
/// order-d subgroup, i.e. { x_i = 0 : residual w_i != 0 mod d }.
std::vector<std::pair<long long, CoordinateSubspace>> fixed_loci(const Chart& c);

/// Exact stabilizer order of a chart point under the residual action:
/// the largest divisor d of alpha with x_i = 0 wherever residual_i != 0 mod d.
long long stabilizer_order(const Chart& c, std::span<const Coeff> point);

} // namespace qfv

#endif
