#ifndef QFV_HILBERT_HPP
#define QFV_HILBERT_HPP

#include <optional>
#include <vector>

#include "qfv/ideals.hpp"
#include "qfv/singularity.hpp"

namespace qfv {

/// Univariate integer polynomial, little-endian coefficients.
using ZPoly = std::vector<BigInt>;

ZPoly zp_mul(const ZPoly& a, const ZPoly& b);
ZPoly zp_sub(const ZPoly& a, const ZPoly& b);
/// 1 - t^d.
ZPoly zp_one_minus_power(long long d);
BigInt zp_eval_at_one(const ZPoly& f);
/// Exact division by (1 - t); throws if not divisible.
ZPoly zp_divide_by_one_minus_t(const ZPoly& f);
int zp_degree(const ZPoly& f);
std::string zp_str(const ZPoly& f);

/// Hilbert numerator over ambient weights: P(t) = N(t) / prod (1 - t^{a_i}).
struct HilbertData {
  ZPoly numerator;
  std::vector<long long> weights;
  void validate() const;  // N(0) = 1, weights positive
};

struct SeriesPrefix {
  std::vector<BigInt> c;  // c_0..c_n
};

/// Koszul numerator of a complete intersection: prod (1 - t^{d_j}).
ZPoly ci_numerator(std::span<const long long> degrees);

/// Numerator after cutting sections: N_key(t) * prod (1 - t^{a_i})^{m_i}.
/// When expected_sum is given, sum m_i must equal it (dim K - 3 for X).
ZPoly section_numerator(const ZPoly& n_key,
                        std::span<const std::pair<long long, unsigned>> profile,
                        std::optional<long long> expected_sum = std::nullopt);

SeriesPrefix expand(const HilbertData& h, unsigned n);

struct GenusResult {
  long long g = 0;
  bool degenerate = false;  // negative genus
};
GenusResult genus(const SeriesPrefix& s);

/// (-K)^3 = [N(t) (1-t)^4 / prod(1 - t^{a_i})]_{t=1} after exact
/// cancellation; throws if the pole order at t=1 is not 4.
Rational anticanonical_degree(const HilbertData& h);

/// Orbifold Riemann-Roch for index-1 Fano data: reproduce c_0..c_n from the
/// degree and the basket of terminal 1/r(1,b,r-b) points. The correction
/// convention is pinned by the complete-intersection fixtures (see
/// rr_fixtures); the hook answers unknown if the self-validation fails.
Tri orbifold_rr_check(const Rational& degree, const Basket& basket, const SeriesPrefix& s);

/// Exact plurigenus prediction for one m >= 0.
Rational rr_prediction(const Rational& degree, const Basket& basket, long long m);

/// Built-in complete-intersection fixtures: degrees, ambient weights,
/// expected (-K)^3, expected genus, basket.
struct CiFixture {
  std::string name;
  std::vector<long long> degrees;
  std::vector<long long> weights;
  Rational degree_value;
  long long genus_value;
  Basket basket;
};
const std::vector<CiFixture>& rr_fixtures();

} // namespace qfv

#endif
