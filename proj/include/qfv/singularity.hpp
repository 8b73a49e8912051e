#ifndef QFV_SINGULARITY_HPP
#define QFV_SINGULARITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "qfv/solve.hpp"
#include "qfv/wps.hpp"

namespace qfv {

/// Cyclic quotient type 1/alpha(b_1,...,b_k). Canonical form sorts the
/// weights; surface types satisfy b_2 = alpha - b_1, 3-fold (terminal)
/// types are 1/alpha(1, b, alpha-b).
struct QuotientSingularity {
  long long alpha = 1;
  std::vector<long long> beta;

  static QuotientSingularity make(long long alpha, std::vector<long long> beta);
  unsigned dimension() const { return static_cast<unsigned>(beta.size()); }
  bool is_surface_type() const;
  bool is_terminal_threefold_type() const;
  /// 1/a(b, a-b) -> 1/a(1, b, a-b).
  QuotientSingularity promoted() const;
  /// 1/a(1, b, a-b) -> 1/a(b, a-b).
  QuotientSingularity surface_part() const;

  std::string str() const;
  bool operator==(const QuotientSingularity& o) const {
    return alpha == o.alpha && beta == o.beta;
  }
  bool operator<(const QuotientSingularity& o) const {
    return alpha != o.alpha ? alpha < o.alpha : beta < o.beta;
  }
};

/// Multiset of quotient singularities.
struct Basket {
  std::vector<QuotientSingularity> entries;  // kept sorted

  void add(const QuotientSingularity& s, unsigned count = 1);
  bool operator==(const Basket& o) const { return entries == o.entries; }
  /// Elements of this not in o, and of o not in this.
  std::pair<std::vector<QuotientSingularity>, std::vector<QuotientSingularity>> diff(
      const Basket& o) const;
  std::string str() const;
  static Basket parse(const std::string& text);
};

/// A chart-local system translated so the analyzed point is the origin:
/// equations vanish there; residual weights grade the coordinates under the
/// stabilizer subgroup.
struct LocalizedSystem {
  std::shared_ptr<const Ring> ring;  // chart coordinates only
  std::vector<Poly> equations;       // all vanish at the origin
  long long alpha = 1;               // stabilizer order at the point
  std::vector<long long> residual;   // residual weight mod alpha per ring var
};

struct LinearPartRank {
  unsigned rank = 0;
  std::vector<unsigned> span_vars;        // pivot coordinates covering the image
  std::vector<unsigned> complement_vars;  // pure coordinates completing the basis
  bool pure_complement_found = true;
};

/// Rank of the equations' linear parts at the origin and a pure-coordinate
/// complement, chosen greedily by ascending residual weight then declared
/// order.
LinearPartRank linear_part_rank(const LocalizedSystem& L);

enum class LpcKind { smooth, quotient, not_quasi_smooth, failed };

struct LpcResult {
  LpcKind kind = LpcKind::failed;
  QuotientSingularity type;   // meaningful when kind == quotient
  unsigned rank = 0;
  unsigned corank = 0;        // deficiency when not quasi-smooth
  std::vector<unsigned> complement_vars;
};

/// Quasi-smoothness and quotient type at the origin of a localized system:
/// quasi-smooth iff rank == nvars - expected_local_dim; the type is
/// 1/alpha(residual weights of the complement coordinates).
LpcResult lpc_classify(const LocalizedSystem& L, unsigned expected_local_dim);

/// Affine representatives of a projective point on the chart of `coord`:
/// solve lambda^alpha = 1/x0 and rescale, extending the field if the root
/// requires degree <= 4; any representative is valid for classification.
struct LiftResult {
  bool ok = false;
  std::string error;
  std::vector<Coeff> representative;  // one representative, coordinates in its field
};
LiftResult lift_point(const WeightedSpace& W, const Chart& c, std::span<const Coeff> point,
                      std::uint64_t seed);

/// Number of isolated points of the order-2 fixed subspace on the chart
/// restriction of the system, counted as points of the quotient (each is a
/// 1/2(1,1) point of a quasi-smooth surface). -1 on failure.
struct HalfPointCount {
  Tri status = Tri::unknown;
  long long count = -1;
};
HalfPointCount half_point_count(const WeightedSpace& W, const Chart& c,
                                const std::vector<Poly>& chart_system,
                                const SolveOptions& opt = {});

/// Claim-B residue condition: some ambient projective weight is congruent to
/// a distinguished beta (or alpha-beta) mod alpha.
bool residue_check(const QuotientSingularity& s, const WeightedSpace& ambient);

struct Finding {
  std::string point_id;
  QuotientSingularity type;
};

/// Canonical multiset from deduplicated findings; promotes surface types to
/// 1/a(1,b,a-b) when building an X-basket from T-findings.
Basket assemble_basket(const std::vector<Finding>& findings, bool promote);

} // namespace qfv

#endif
