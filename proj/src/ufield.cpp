#include "qfv/ufield.hpp"

#include <algorithm>
#include <stdexcept>

namespace qfv::uni {

namespace {
const Field* field_of(const UPoly& f) {
  if (f.empty()) throw std::invalid_argument("empty univariate poly");
  return f[0].field();
}
} // namespace

int degree(const UPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (!f[static_cast<size_t>(i)].is_zero()) return i;
  return -1;
}

UPoly trim(UPoly f) {
  int d = degree(f);
  f.resize(static_cast<size_t>(d + 1), f.empty() ? Coeff() : Coeff::zero(field_of(f)));
  return f;
}

bool is_zero(const UPoly& f) { return degree(f) < 0; }

UPoly monic(const UPoly& f) {
  int d = degree(f);
  if (d < 0) throw std::domain_error("monic of zero");
  Coeff inv = f[static_cast<size_t>(d)].inverse();
  UPoly out = trim(f);
  for (auto& c : out) c = c * inv;
  return out;
}

UPoly add(const UPoly& a, const UPoly& b) {
  const Field* F = field_of(a.empty() ? b : a);
  UPoly out(std::max(a.size(), b.size()), Coeff::zero(F));
  for (size_t i = 0; i < a.size(); ++i) out[i] = out[i] + a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] = out[i] + b[i];
  return out;
}

UPoly sub(const UPoly& a, const UPoly& b) {
  const Field* F = field_of(a.empty() ? b : a);
  UPoly out(std::max(a.size(), b.size()), Coeff::zero(F));
  for (size_t i = 0; i < a.size(); ++i) out[i] = out[i] + a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] = out[i] - b[i];
  return out;
}

UPoly mul(const UPoly& a, const UPoly& b) {
  const Field* F = field_of(a.empty() ? b : a);
  int da = degree(a), db = degree(b);
  if (da < 0 || db < 0) return {Coeff::zero(F)};
  UPoly out(static_cast<size_t>(da + db + 1), Coeff::zero(F));
  for (int i = 0; i <= da; ++i) {
    if (a[static_cast<size_t>(i)].is_zero()) continue;
    for (int j = 0; j <= db; ++j)
      out[static_cast<size_t>(i + j)] =
          out[static_cast<size_t>(i + j)] + a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
  }
  return out;
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  const Field* F = field_of(a.empty() ? b : a);
  int db = degree(b);
  if (db < 0) throw std::domain_error("division by zero poly");
  r = trim(a);
  int dr = degree(r);
  q = UPoly(static_cast<size_t>(std::max(0, dr - db + 1)), Coeff::zero(F));
  Coeff lead_inv = b[static_cast<size_t>(db)].inverse();
  while (dr >= db) {
    Coeff c = r[static_cast<size_t>(dr)] * lead_inv;
    q[static_cast<size_t>(dr - db)] = c;
    for (int i = 0; i <= db; ++i)
      r[static_cast<size_t>(dr - db + i)] =
          r[static_cast<size_t>(dr - db + i)] - c * b[static_cast<size_t>(i)];
    r = trim(r);
    dr = degree(r);
  }
  if (q.empty()) q = {Coeff::zero(F)};
  if (r.empty()) r = {Coeff::zero(F)};
}

UPoly gcd_monic(UPoly a, UPoly b) {
  a = trim(a);
  b = trim(b);
  while (!is_zero(b)) {
    UPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (is_zero(a)) return a;
  return monic(a);
}

UPoly derivative(const UPoly& f) {
  const Field* F = field_of(f);
  if (f.size() <= 1) return {Coeff::zero(F)};
  UPoly out(f.size() - 1, Coeff::zero(F));
  for (size_t i = 1; i < f.size(); ++i)
    out[i - 1] = f[i] * Coeff::from_int(F, static_cast<long long>(i));
  return out;
}

Coeff eval(const UPoly& f, const Coeff& x) {
  const Field* F = field_of(f);
  Coeff acc = Coeff::zero(F);
  for (int i = degree(f); i >= 0; --i) acc = acc * x + f[static_cast<size_t>(i)];
  return acc;
}

UPoly powmod(const UPoly& base, const BigInt& e, const UPoly& m) {
  const Field* F = field_of(m);
  UPoly acc{Coeff::one(F)};
  UPoly b;
  {
    UPoly q, r;
    divmod(base, m, q, r);
    b = r;
  }
  BigInt k = e;
  while (k > 0) {
    if (boost::multiprecision::bit_test(k, 0)) {
      UPoly q, r;
      divmod(mul(acc, b), m, q, r);
      acc = r;
    }
    UPoly q, r;
    divmod(mul(b, b), m, q, r);
    b = r;
    k >>= 1;
  }
  return acc;
}

namespace {

// squarefree part; handles vanishing derivative (p-th power shapes)
UPoly squarefree_part(const UPoly& f0) {
  UPoly f = monic(trim(f0));
  const Field* F = field_of(f);
  if (degree(f) <= 1) return f;
  UPoly d = derivative(f);
  if (is_zero(d)) {
    // f = g(x^p); over F_{p^k} the p-th root has coefficients c^{p^{k-1}}
    std::uint64_t p = F->characteristic();
    BigInt e = 1;
    for (unsigned i = 0; i + 1 < F->degree(); ++i) e *= p;
    UPoly g;
    for (size_t i = 0; i < f.size(); i += static_cast<size_t>(p))
      g.push_back(F->degree() == 1 ? f[i] : f[i].pow(e));
    return squarefree_part(g);
  }
  UPoly g = gcd_monic(f, d);
  if (degree(g) == 0) return f;
  UPoly q, r;
  divmod(f, g, q, r);
  // q may still have repeated factors whose multiplicity is divisible by p
  return squarefree_part(q);
}

// linear factors of a squarefree product of linears; deterministic-seeded CZ
void split_linears(const UPoly& f, Rng& rng, std::vector<Coeff>& out) {
  const Field* F = field_of(f);
  int d = degree(f);
  if (d <= 0) return;
  if (d == 1) {
    out.push_back(-(f[0] / f[1]));
    return;
  }
  BigInt half = (F->order() - 1) / 2;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Coeff a = rng.coeff(F);
    UPoly shifted{a, Coeff::one(F)};
    UPoly h = powmod(shifted, half, f);
    h[0] = h[0] - Coeff::one(F);
    UPoly g = gcd_monic(h, f);
    int dg = degree(g);
    if (dg > 0 && dg < d) {
      UPoly q, r;
      divmod(f, g, q, r);
      split_linears(g, rng, out);
      split_linears(monic(q), rng, out);
      return;
    }
  }
  throw std::runtime_error("equal-degree splitting failed to converge");
}

} // namespace

bool is_squarefree(const UPoly& f) {
  UPoly d = derivative(f);
  if (is_zero(d)) return degree(f) == 0;
  return degree(gcd_monic(f, d)) == 0;
}

Factorization analyze(const UPoly& f0, Rng& rng) {
  Factorization out;
  const Field* F = field_of(f0);
  UPoly f = squarefree_part(f0);
  if (degree(f) == 0) return out;
  // distinct-degree: strip degree-d parts for d = 1,2,...
  BigInt q = F->order();
  UPoly rest = f;
  BigInt qd = 1;
  for (unsigned d = 1; degree(rest) > 0; ++d) {
    if (2 * static_cast<int>(d) > degree(rest)) {
      // rest itself is irreducible
      out.higher_degrees.push_back(static_cast<unsigned>(degree(rest)));
      break;
    }
    qd *= q;
    UPoly x{Coeff::zero(F), Coeff::one(F)};
    UPoly xq = powmod(x, qd, rest);
    UPoly diff = sub(xq, x);
    UPoly g = gcd_monic(diff, rest);
    int dg = degree(g);
    if (dg > 0) {
      if (d == 1) {
        split_linears(g, rng, out.roots);
      } else {
        for (int i = 0; i < dg / static_cast<int>(d); ++i)
          out.higher_degrees.push_back(d);
      }
      UPoly qq, rr;
      divmod(rest, g, qq, rr);
      rest = monic(qq);
    }
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [](const Coeff& a, const Coeff& b) { return a.residues() < b.residues(); });
  std::sort(out.higher_degrees.begin(), out.higher_degrees.end());
  return out;
}

UPoly irreducible_factor(const UPoly& f0, unsigned want, Rng& rng) {
  const Field* F = field_of(f0);
  BigInt q = F->order();
  // distinct-degree pass isolates the product of the degree-`want` factors
  UPoly rest = squarefree_part(f0);
  BigInt qd = 1;
  for (unsigned d = 1; d <= want && degree(rest) > 0; ++d) {
    qd *= q;
    UPoly x{Coeff::zero(F), Coeff::one(F)};
    UPoly g = gcd_monic(sub(powmod(x, qd, rest), x), rest);
    if (d == want) {
      rest = g;
      break;
    }
    if (degree(g) > 0) {
      UPoly qq, rr;
      divmod(rest, g, qq, rr);
      rest = monic(qq);
    }
  }
  if (degree(rest) < static_cast<int>(want) || degree(rest) % static_cast<int>(want) != 0)
    throw std::runtime_error("no factor of requested degree");
  // equal-degree splitting down to one factor
  BigInt half = (boost::multiprecision::pow(q, want) - 1) / 2;
  while (degree(rest) > static_cast<int>(want)) {
    bool split = false;
    for (int attempt = 0; attempt < 64 && !split; ++attempt) {
      UPoly a(static_cast<size_t>(degree(rest)), Coeff::zero(F));
      for (auto& c : a) c = rng.coeff(F);
      if (is_zero(a)) continue;
      UPoly h = powmod(a, half, rest);
      h[0] = h[0] - Coeff::one(F);
      UPoly g = gcd_monic(h, rest);
      int dg = degree(g);
      if (dg > 0 && dg < degree(rest)) {
        if (dg % static_cast<int>(want) == 0) {
          rest = g;
        } else {
          UPoly qq, rr;
          divmod(rest, g, qq, rr);
          rest = monic(qq);
        }
        split = true;
      }
    }
    if (!split) throw std::runtime_error("equal-degree splitting failed");
  }
  return monic(rest);
}

} // namespace qfv::uni
