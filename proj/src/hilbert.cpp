#include "qfv/hilbert.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qfv {

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly out(std::max(a.size(), b.size()), BigInt(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

ZPoly zp_one_minus_power(long long d) {
  if (d < 1) throw std::invalid_argument("power must be positive");
  ZPoly f(static_cast<size_t>(d) + 1, BigInt(0));
  f[0] = 1;
  f[static_cast<size_t>(d)] = -1;
  return f;
}

BigInt zp_eval_at_one(const ZPoly& f) {
  BigInt s = 0;
  for (const auto& c : f) s += c;
  return s;
}

ZPoly zp_divide_by_one_minus_t(const ZPoly& f) {
  // f = (1 - t) q  =>  q_0 = f_0, q_i = q_{i-1} + f_i
  if (zp_eval_at_one(f) != 0) throw std::domain_error("not divisible by (1 - t)");
  if (f.empty()) return {};
  ZPoly q(f.size() - 1, BigInt(0));
  BigInt acc = 0;
  for (size_t i = 0; i + 1 < f.size(); ++i) {
    acc += f[i];
    q[i] = acc;
  }
  while (!q.empty() && q.back() == 0) q.pop_back();
  return q;
}

int zp_degree(const ZPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[static_cast<size_t>(i)] != 0) return i;
  return -1;
}

std::string zp_str(const ZPoly& f) {
  if (zp_degree(f) < 0) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    BigInt c = f[i];
    if (first) {
      if (c < 0) { os << "-"; c = -c; }
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    if (i == 0) os << c;
    else {
      if (c != 1) os << c << "*";
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

void HilbertData::validate() const {
  if (numerator.empty() || numerator[0] != 1)
    throw std::invalid_argument("Hilbert numerator must have constant term 1");
  if (weights.empty()) throw std::invalid_argument("no ambient weights");
  for (long long w : weights)
    if (w < 1) throw std::invalid_argument("ambient weights must be positive");
}

ZPoly ci_numerator(std::span<const long long> degrees) {
  if (degrees.empty()) throw std::invalid_argument("empty degree list");
  ZPoly acc{BigInt(1)};
  for (long long d : degrees) acc = zp_mul(acc, zp_one_minus_power(d));
  return acc;
}

ZPoly section_numerator(const ZPoly& n_key,
                        std::span<const std::pair<long long, unsigned>> profile,
                        std::optional<long long> expected_sum) {
  long long total = 0;
  ZPoly acc = n_key.empty() ? ZPoly{BigInt(1)} : n_key;
  for (const auto& [a, m] : profile) {
    total += m;
    for (unsigned i = 0; i < m; ++i) acc = zp_mul(acc, zp_one_minus_power(a));
  }
  if (expected_sum && total != *expected_sum)
    throw std::invalid_argument("section profile sum mismatch");
  return acc;
}

SeriesPrefix expand(const HilbertData& h, unsigned n) {
  h.validate();
  SeriesPrefix s;
  s.c.assign(n + 1, BigInt(0));
  for (size_t i = 0; i < h.numerator.size() && i <= n; ++i) s.c[i] = h.numerator[i];
  for (long long a : h.weights) {
    // multiply by 1/(1 - t^a): prefix sums with stride a
    for (size_t i = static_cast<size_t>(a); i <= n; ++i) s.c[i] += s.c[i - static_cast<size_t>(a)];
  }
  return s;
}

GenusResult genus(const SeriesPrefix& s) {
  if (s.c.size() < 2) throw std::invalid_argument("series prefix too short");
  GenusResult g;
  g.g = (s.c[1] - 2).convert_to<long long>();
  g.degenerate = g.g < 0;
  return g;
}

Rational anticanonical_degree(const HilbertData& h) {
  h.validate();
  // cancel (1 - t) factors from the numerator
  ZPoly n = h.numerator;
  unsigned s = 0;
  while (zp_degree(n) >= 0 && zp_eval_at_one(n) == 0) {
    n = zp_divide_by_one_minus_t(n);
    ++s;
  }
  // denominator = prod (1 - t^{a}) = (1 - t)^k * prod sigma_a(t),
  // sigma_a(1) = a; pole order = k - s
  long long k = static_cast<long long>(h.weights.size());
  if (k - static_cast<long long>(s) != 4)
    throw std::domain_error("not a 3-fold Hilbert series: pole order at t=1 is " +
                            std::to_string(k - static_cast<long long>(s)));
  BigInt num = zp_eval_at_one(n);
  BigInt den = 1;
  for (long long a : h.weights) den *= a;
  Rational out(num, den);
  if (out <= 0) throw std::domain_error("non-positive anticanonical degree");
  return out;
}

namespace {

long long mod_ll(long long a, long long r) {
  long long m = a % r;
  return m < 0 ? m + r : m;
}

long long inverse_mod_ll(long long a, long long r) {
  long long t = 0, nt = 1, q = r, nq = mod_ll(a, r);
  while (nq) {
    long long d = q / nq;
    long long tmp = t - d * nt;
    t = nt; nt = tmp;
    tmp = q - d * nq;
    q = nq; nq = tmp;
  }
  if (q != 1) throw std::domain_error("not invertible");
  return mod_ll(t, r);
}

// correction at Q = 1/r(1,b,r-b) for -mK, with ibar = (-m) mod r and the
// running weight b^{-1} mod r; pinned by the fixtures in rr_fixtures()
Rational rr_correction(long long r, long long beta, long long m) {
  long long ibar = mod_ll(-m, r);
  if (ibar == 0) return Rational(0);
  long long b = inverse_mod_ll(beta, r);
  Rational c = Rational(-ibar * (r * r - 1), 12 * r);
  for (long long j = 1; j < ibar; ++j) {
    long long bj = mod_ll(b * j, r);
    c += Rational(bj * (r - bj), 2 * r);
  }
  return c;
}

} // namespace

Rational rr_prediction(const Rational& degree, const Basket& basket, long long m) {
  if (m == 0) return Rational(1);
  Rational acc(1);
  acc += Rational(m * (m + 1) * (2 * m + 1), 12) * degree;
  Rational kc2(24);
  for (const auto& q : basket.entries) kc2 -= Rational(q.alpha * q.alpha - 1, q.alpha);
  acc += Rational(m, 12) * kc2;
  for (const auto& q : basket.entries) {
    if (!q.is_terminal_threefold_type())
      throw std::domain_error("basket entry is not a terminal 1/r(1,b,r-b) type: " + q.str());
    long long beta = q.surface_part().beta[0];
    acc += rr_correction(q.alpha, beta, m);
  }
  return acc;
}

const std::vector<CiFixture>& rr_fixtures() {
  static const std::vector<CiFixture> fixtures = [] {
    std::vector<CiFixture> v;
    v.push_back({"X4 in P(1^5)", {4}, {1, 1, 1, 1, 1}, Rational(4), 3, Basket{}});
    v.push_back({"X6 in P(1^4,3)", {6}, {1, 1, 1, 1, 3}, Rational(2), 2, Basket{}});
    v.push_back({"X2,3 in P(1^6)", {2, 3}, {1, 1, 1, 1, 1, 1}, Rational(6), 4, Basket{}});
    v.push_back({"X2,2,2 in P(1^7)", {2, 2, 2}, {1, 1, 1, 1, 1, 1, 1}, Rational(8), 5, Basket{}});
    v.push_back({"X5 in P(1^4,2)", {5}, {1, 1, 1, 1, 2}, Rational(5, 2), 2,
                 Basket::parse("1/2(1,1,1)")});
    v.push_back({"X7 in P(1^3,2,3)", {7}, {1, 1, 1, 2, 3}, Rational(7, 6), 1,
                 Basket::parse("1/2(1,1,1), 1/3(1,1,2)")});
    v.push_back({"X15 in P(1^2,2,5,7)", {15}, {1, 1, 2, 5, 7}, Rational(3, 14), 0,
                 Basket::parse("1/2(1,1,1), 1/7(1,2,5)")});
    return v;
  }();
  return fixtures;
}

namespace {

bool rr_self_check() {
  for (const auto& fx : rr_fixtures()) {
    HilbertData h{ci_numerator(fx.degrees), fx.weights};
    SeriesPrefix s = expand(h, 10);
    if (anticanonical_degree(h) != fx.degree_value) return false;
    for (long long m = 0; m <= 10; ++m) {
      Rational pred = rr_prediction(fx.degree_value, fx.basket, m);
      if (boost::multiprecision::denominator(pred) != 1) return false;
      if (boost::multiprecision::numerator(pred) != s.c[static_cast<size_t>(m)]) return false;
    }
  }
  return true;
}

} // namespace

Tri orbifold_rr_check(const Rational& degree, const Basket& basket, const SeriesPrefix& s) {
  static const bool validated = rr_self_check();
  if (!validated) return Tri::unknown;
  for (const auto& q : basket.entries)
    if (!q.is_terminal_threefold_type()) return Tri::unknown;
  for (size_t m = 0; m < s.c.size(); ++m) {
    Rational pred = rr_prediction(degree, basket, static_cast<long long>(m));
    if (boost::multiprecision::denominator(pred) != 1) return Tri::no;
    if (boost::multiprecision::numerator(pred) != s.c[m]) return Tri::no;
  }
  return Tri::yes;
}

} // namespace qfv
