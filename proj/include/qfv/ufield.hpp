#ifndef QFV_UFIELD_HPP
#define QFV_UFIELD_HPP

#include <vector>

#include "qfv/field.hpp"

namespace qfv::uni {

/// Dense univariate polynomial over a finite field, little-endian
/// coefficients. Helpers tolerate (and trim) leading zeros.
using UPoly = std::vector<Coeff>;

int degree(const UPoly& f);
UPoly trim(UPoly f);
bool is_zero(const UPoly& f);
UPoly monic(const UPoly& f);
UPoly add(const UPoly& a, const UPoly& b);
UPoly sub(const UPoly& a, const UPoly& b);
UPoly mul(const UPoly& a, const UPoly& b);
void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly gcd_monic(UPoly a, UPoly b);
UPoly derivative(const UPoly& f);
Coeff eval(const UPoly& f, const Coeff& x);
/// base^e mod m (m monic of degree >= 1).
UPoly powmod(const UPoly& base, const BigInt& e, const UPoly& m);

struct Factorization {
  /// Distinct roots in the coefficient field, deterministic order.
  std::vector<Coeff> roots;
  /// Degrees (>1) of the non-linear irreducible factors of the squarefree
  /// part, one entry per factor, ascending.
  std::vector<unsigned> higher_degrees;
};

/// Roots and residual factor degrees of a nonzero univariate polynomial over
/// a finite field of odd characteristic.
Factorization analyze(const UPoly& f, Rng& rng);

/// One monic irreducible factor of f of the given degree (which must appear
/// in analyze(f).higher_degrees), found by equal-degree splitting.
UPoly irreducible_factor(const UPoly& f, unsigned deg, Rng& rng);

/// f must be squarefree for this check to be meaningful; true when
/// gcd(f, f') is constant.
bool is_squarefree(const UPoly& f);

} // namespace qfv::uni

#endif
