#ifndef QFV_SOLVE_HPP
#define QFV_SOLVE_HPP

#include <vector>

#include "qfv/ideals.hpp"

namespace qfv {

struct SolveOptions {
  GBOptions gb{};
  long long max_count = 4096;     // staircase cap
  unsigned max_field_degree = 4;  // extension budget over F_p
  std::uint64_t seed = 1;
};

struct SolvedPoint {
  /// Coordinates in declared ring order, all in point_field().
  std::vector<Coeff> coords;
  const Field* point_field() const { return coords.at(0).field(); }
};

struct SolveResult {
  Tri zero_dimensional = Tri::unknown;
  /// Solutions with multiplicity over the closure (staircase size).
  long long closure_count = -1;
  /// true when `points` lists every closure point (ideal radical and all
  /// residue fields within the extension budget).
  bool complete = false;
  std::vector<SolvedPoint> points;
};

/// Enumerate the solutions of a zero-dimensional system over a prime field,
/// descending into canonical extensions F_{p^k}, k <= max_field_degree, when
/// coordinates require them. Every closure point is listed individually
/// (conjugates included). Deterministic for fixed seed.
SolveResult solve_zero_dim(const Ideal& I, const SolveOptions& opt = {});

} // namespace qfv

#endif
