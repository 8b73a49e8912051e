#ifndef QFV_IDEALS_HPP
#define QFV_IDEALS_HPP

#include <cstdint>
#include <vector>

#include "qfv/poly.hpp"

namespace qfv {

/// Three-valued answer used wherever a budgeted computation backs a
/// decision; `unknown` must degrade a verdict, never pass silently.
enum class Tri { yes, no, unknown };

struct Ideal {
  std::vector<Poly> gens;
  MonomialOrder order{};

  std::shared_ptr<const Ring> ring() const;
};

struct GBOptions {
  std::uint64_t max_pairs = 100000;   // processed S-pairs before giving up
  std::uint64_t max_basis = 2000;
  unsigned max_spoly_degree = 200;    // total-degree cap on reductions
};

enum class GBStatus { ok, inconclusive };

struct GroebnerBasis {
  std::vector<Poly> basis;  // reduced, monic, ascending leading terms
  MonomialOrder order{};
  GBStatus status = GBStatus::ok;

  bool contains_unit() const;
  std::vector<Monomial> leading_terms() const;
};

/// Buchberger with the product and chain criteria, normal pair selection,
/// full reductions, and a final auto-reduction; deterministic for a fixed
/// input. Budget overrun yields status inconclusive (a partial basis that
/// still generates a subideal usable for membership "yes" answers only).
GroebnerBasis groebner(const Ideal& I, const GBOptions& opt = {});

/// Remainder of f under multivariate division by the basis.
Poly normal_form(const Poly& f, const GroebnerBasis& gb);

/// No common zeros over the algebraic closure (GB == {1}).
Tri is_empty(const Ideal& I, const GBOptions& opt = {});
Tri is_empty(const GroebnerBasis& gb);

/// Finite staircase: every ring variable has a pure power among leading
/// terms. The unit ideal counts as zero-dimensional.
Tri is_zero_dimensional(const Ideal& I, const GBOptions& opt = {});
Tri is_zero_dimensional(const GroebnerBasis& gb);

/// Number of standard monomials (= solutions with multiplicity over the
/// closure, for a zero-dimensional ideal); -1 if not zero-dimensional.
long long staircase_size(const GroebnerBasis& gb, long long cap = 1 << 20);
std::vector<Monomial> staircase(const GroebnerBasis& gb, long long cap = 1 << 20);

using PolyMatrix = std::vector<std::vector<Poly>>;

PolyMatrix jacobian_matrix(const std::vector<Poly>& F, std::span<const unsigned> coords);

/// Exact determinant by Laplace expansion along the first row.
Poly poly_det(const PolyMatrix& M);

/// Ideal of all r x r minors.
Ideal minors_ideal(const PolyMatrix& M, unsigned r);

/// Generators + c x c minors of the Jacobian, the singular-locus ideal of a
/// variety of codimension c in the coordinates `coords`.
Ideal singular_locus_ideal(const std::vector<Poly>& F, std::span<const unsigned> coords,
                           unsigned codim);

} // namespace qfv

#endif
