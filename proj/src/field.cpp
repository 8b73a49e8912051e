#include "qfv/field.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace qfv {

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  if (s >= p || s < a) s -= p;
  return s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mod_mul(r, a, p);
    a = mod_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::domain_error("mod_inv: zero");
  // extended Euclid keeps values signed-small
  long long t = 0, nt = 1;
  long long r = static_cast<long long>(p), nr = static_cast<long long>(a % p);
  while (nr != 0) {
    long long q = r / nr;
    long long tmp = t - q * nt;
    t = nt; nt = tmp;
    tmp = r - q * nr;
    r = nr; nr = tmp;
  }
  if (r != 1) throw std::domain_error("mod_inv: not invertible");
  if (t < 0) t += static_cast<long long>(p);
  return static_cast<std::uint64_t>(t);
}

namespace {

// arithmetic on little-endian residue polys of degree < k, modulo `mod`
using Res = std::array<std::uint64_t, 4>;

Res poly_mul_mod(const Res& a, const Res& b, unsigned k,
                 const std::vector<std::uint64_t>& mod, std::uint64_t p) {
  std::array<std::uint64_t, 8> prod{};
  for (unsigned i = 0; i < k; ++i) {
    if (!a[i]) continue;
    for (unsigned j = 0; j < k; ++j) {
      if (!b[j]) continue;
      prod[i + j] = mod_add(prod[i + j], mod_mul(a[i], b[j], p), p);
    }
  }
  // reduce by the monic modulus
  for (int d = 2 * static_cast<int>(k) - 2; d >= static_cast<int>(k); --d) {
    std::uint64_t c = prod[d];
    if (!c) continue;
    prod[d] = 0;
    for (unsigned j = 0; j < k; ++j)
      prod[d - k + j] = mod_sub(prod[d - k + j], mod_mul(c, mod[j], p), p);
  }
  Res out{};
  for (unsigned i = 0; i < k; ++i) out[i] = prod[i];
  return out;
}

bool res_is_zero(const Res& a, unsigned k) {
  for (unsigned i = 0; i < k; ++i)
    if (a[i]) return false;
  return true;
}

// inverse via extended Euclid on coefficient vectors over F_p
Res poly_inv_mod(const Res& a, unsigned k, const std::vector<std::uint64_t>& mod,
                 std::uint64_t p) {
  using V = std::vector<std::uint64_t>;
  auto deg = [](const V& v) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
      if (v[static_cast<size_t>(i)]) return i;
    return -1;
  };
  V r(mod.begin(), mod.end());
  V nr(a.begin(), a.begin() + k);
  V t(k + 1, 0), nt(k + 1, 0);
  nt[0] = 1;
  while (deg(nr) >= 0) {
    int dr = deg(r), dnr = deg(nr);
    if (dr < dnr) {
      std::swap(r, nr);
      std::swap(t, nt);
      continue;
    }
    std::uint64_t c = mod_mul(r[static_cast<size_t>(dr)],
                              mod_inv(nr[static_cast<size_t>(dnr)], p), p);
    int shift = dr - dnr;
    for (int i = 0; i <= dnr; ++i)
      r[static_cast<size_t>(i + shift)] =
          mod_sub(r[static_cast<size_t>(i + shift)],
                  mod_mul(c, nr[static_cast<size_t>(i)], p), p);
    for (int i = 0; i + shift <= static_cast<int>(k); ++i)
      t[static_cast<size_t>(i + shift)] =
          mod_sub(t[static_cast<size_t>(i + shift)],
                  mod_mul(c, nt[static_cast<size_t>(i)], p), p);
  }
  int dr = deg(r);
  if (dr != 0) throw std::domain_error("extension inverse: not invertible");
  std::uint64_t c = mod_inv(r[0], p);
  Res out{};
  for (unsigned i = 0; i < k; ++i) out[i] = mod_mul(t[i], c, p);
  return out;
}

// x^e mod f over F_p, f monic of degree k, little-endian
std::vector<std::uint64_t> xpow_mod(const BigInt& e, const std::vector<std::uint64_t>& f,
                                    std::uint64_t p) {
  unsigned k = static_cast<unsigned>(f.size() - 1);
  auto mul = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    std::vector<std::uint64_t> prod(2 * k, 0);
    for (unsigned i = 0; i < k; ++i) {
      if (!a[i]) continue;
      for (unsigned j = 0; j < k; ++j)
        if (b[j]) prod[i + j] = mod_add(prod[i + j], mod_mul(a[i], b[j], p), p);
    }
    for (int d = 2 * static_cast<int>(k) - 1; d >= static_cast<int>(k); --d) {
      std::uint64_t c = prod[static_cast<size_t>(d)];
      if (!c) continue;
      prod[static_cast<size_t>(d)] = 0;
      for (unsigned j = 0; j < k; ++j)
        prod[d - k + j] = mod_sub(prod[d - k + j], mod_mul(c, f[j], p), p);
    }
    prod.resize(k);
    return prod;
  };
  std::vector<std::uint64_t> base(k, 0), acc(k, 0);
  if (k == 1) {
    // x = -f0 in F_p
    acc[0] = 1;
    base[0] = mod_sub(0, f[0], p);
  } else {
    base[1] = 1;
    acc[0] = 1;
  }
  BigInt m = e;
  while (m > 0) {
    if (boost::multiprecision::bit_test(m, 0)) acc = mul(acc, base);
    base = mul(base, base);
    m >>= 1;
  }
  return acc;
}

bool is_irreducible(const std::vector<std::uint64_t>& f, std::uint64_t p) {
  unsigned k = static_cast<unsigned>(f.size() - 1);
  // f (monic, deg k <= 4) is irreducible iff it has no factor of degree <= k/2,
  // i.e. gcd(f, x^{p^d} - x) = 1 for d = 1..k/2, and f is squarefree enough
  // for that test (a repeated factor also shows up in the gcd).
  auto gcd_with_frob = [&](unsigned d) {
    BigInt e = 1;
    for (unsigned i = 0; i < d; ++i) e *= p;
    std::vector<std::uint64_t> xp = xpow_mod(e, f, p);
    // xp - x
    std::vector<std::uint64_t> g = xp;
    if (g.size() < 2) g.resize(2, 0);
    g[1] = mod_sub(g[1], 1, p);
    // gcd(f, g) over F_p
    std::vector<std::uint64_t> a(f), b(g);
    auto deg = [](const std::vector<std::uint64_t>& v) {
      for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
        if (v[static_cast<size_t>(i)]) return i;
      return -1;
    };
    while (deg(b) >= 0) {
      int da = deg(a), db = deg(b);
      if (da < db) {
        std::swap(a, b);
        continue;
      }
      std::uint64_t c = mod_mul(a[static_cast<size_t>(da)],
                                mod_inv(b[static_cast<size_t>(db)], p), p);
      for (int i = 0; i <= db; ++i)
        a[static_cast<size_t>(i + da - db)] =
            mod_sub(a[static_cast<size_t>(i + da - db)],
                    mod_mul(c, b[static_cast<size_t>(i)], p), p);
    }
    return deg(a);
  };
  for (unsigned d = 1; d <= k / 2; ++d)
    if (gcd_with_frob(d) > 0) return false;
  return true;
}

struct FieldTable {
  std::mutex mu;
  std::map<std::uint64_t, std::unique_ptr<Field>> primes;
  std::map<std::pair<std::uint64_t, std::vector<std::uint64_t>>, std::unique_ptr<Field>> exts;
};

FieldTable& table() {
  static FieldTable t;
  return t;
}

} // namespace

BigInt Field::order() const {
  if (kind_ == Kind::rationals) throw std::domain_error("order of Q");
  BigInt q = 1;
  for (unsigned i = 0; i < deg_; ++i) q *= p_;
  return q;
}

std::string Field::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::rationals: os << "QQ"; break;
    case Kind::prime: os << "GF(" << p_ << ")"; break;
    case Kind::extension: os << "GF(" << p_ << "^" << deg_ << ")"; break;
  }
  return os.str();
}

namespace {
std::unique_ptr<Field> make_field(Field::Kind k, std::uint64_t p, unsigned deg,
                                  std::vector<std::uint64_t> mod) {
  struct Concrete : Field {
    Concrete(Kind k, std::uint64_t p, unsigned d, std::vector<std::uint64_t> m)
        : Field(k, p, d, std::move(m)) {}
  };
  return std::make_unique<Concrete>(k, p, deg, std::move(mod));
}
} // namespace

const Field* Field::rationals() {
  static const std::unique_ptr<Field> f =
      make_field(Kind::rationals, 0, 1, {});
  return f.get();
}

const Field* Field::prime(std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("prime field: p < 2");
  auto& t = table();
  std::lock_guard<std::mutex> lk(t.mu);
  auto it = t.primes.find(p);
  if (it == t.primes.end())
    it = t.primes.emplace(p, make_field(Kind::prime, p, 1, {})).first;
  return it->second.get();
}

const Field* Field::extension_with_modulus(std::uint64_t p,
                                           const std::vector<std::uint64_t>& monic) {
  if (monic.size() < 3 || monic.size() > 5 || monic.back() != 1)
    throw std::invalid_argument("extension modulus must be monic of degree 2..4");
  if (!is_irreducible(monic, p))
    throw std::invalid_argument("extension modulus is reducible");
  auto& t = table();
  std::lock_guard<std::mutex> lk(t.mu);
  auto key = std::make_pair(p, monic);
  auto it = t.exts.find(key);
  if (it == t.exts.end())
    it = t.exts
             .emplace(key, make_field(Kind::extension, p,
                                      static_cast<unsigned>(monic.size() - 1), monic))
             .first;
  return it->second.get();
}

const Field* Field::extension(std::uint64_t p, unsigned k) {
  if (k == 1) return prime(p);
  if (k < 2 || k > 4) throw std::invalid_argument("extension degree must be 2..4");
  // first monic irreducible x^k + c1 x + c0 in (c0, c1) order; sparse shapes
  // suffice for every odd p at these degrees
  for (std::uint64_t c1 = 0; c1 < p; ++c1) {
    for (std::uint64_t c0 = 1; c0 < p; ++c0) {
      std::vector<std::uint64_t> f(k + 1, 0);
      f[k] = 1;
      f[1] = c1;
      f[0] = c0;
      if (is_irreducible(f, p)) return extension_with_modulus(p, f);
    }
  }
  throw std::runtime_error("no irreducible modulus found");
}

// ---- Coeff ----

void Coeff::require_same(const Coeff& o) const {
  if (f_ != o.f_) throw std::domain_error("coefficient fields differ");
}

Coeff Coeff::from_int(const Field* f, long long v) {
  Coeff c(f);
  if (f->kind() == Field::Kind::rationals) {
    c.q_ = v;
  } else {
    std::uint64_t p = f->characteristic();
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    c.a_[0] = static_cast<std::uint64_t>(r);
  }
  return c;
}

Coeff Coeff::from_rational(const Field* f, const Rational& q) {
  if (f->kind() == Field::Kind::rationals) {
    Coeff c(f);
    c.q_ = q;
    return c;
  }
  std::uint64_t p = f->characteristic();
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  BigInt pn = p;
  BigInt rn = num % pn;
  if (rn < 0) rn += pn;
  BigInt rd = den % pn;
  if (rd == 0) throw std::domain_error("denominator vanishes in F_p");
  std::uint64_t n = rn.convert_to<std::uint64_t>();
  std::uint64_t d = rd.convert_to<std::uint64_t>();
  Coeff c(f);
  c.a_[0] = mod_mul(n, mod_inv(d, p), p);
  return c;
}

Coeff Coeff::from_residues(const Field* f, const std::array<std::uint64_t, 4>& a) {
  if (!f->is_finite()) throw std::domain_error("residues over Q");
  Coeff c(f);
  for (unsigned i = 0; i < f->degree(); ++i) c.a_[i] = a[i] % f->characteristic();
  return c;
}

Coeff Coeff::generator(const Field* f) {
  if (f->kind() != Field::Kind::extension)
    throw std::domain_error("generator of a non-extension field");
  Coeff c(f);
  c.a_[1] = 1;
  return c;
}

bool Coeff::is_zero() const {
  if (f_->kind() == Field::Kind::rationals) return q_ == 0;
  return res_is_zero(a_, f_->degree());
}

bool Coeff::is_one() const {
  if (f_->kind() == Field::Kind::rationals) return q_ == 1;
  if (a_[0] != 1) return false;
  for (unsigned i = 1; i < f_->degree(); ++i)
    if (a_[i]) return false;
  return true;
}

Coeff Coeff::operator+(const Coeff& o) const {
  require_same(o);
  Coeff c(f_);
  if (f_->kind() == Field::Kind::rationals) {
    c.q_ = q_ + o.q_;
  } else {
    std::uint64_t p = f_->characteristic();
    for (unsigned i = 0; i < f_->degree(); ++i) c.a_[i] = mod_add(a_[i], o.a_[i], p);
  }
  return c;
}

Coeff Coeff::operator-(const Coeff& o) const {
  require_same(o);
  Coeff c(f_);
  if (f_->kind() == Field::Kind::rationals) {
    c.q_ = q_ - o.q_;
  } else {
    std::uint64_t p = f_->characteristic();
    for (unsigned i = 0; i < f_->degree(); ++i) c.a_[i] = mod_sub(a_[i], o.a_[i], p);
  }
  return c;
}

Coeff Coeff::operator-() const {
  Coeff c(f_);
  if (f_->kind() == Field::Kind::rationals) {
    c.q_ = -q_;
  } else {
    std::uint64_t p = f_->characteristic();
    for (unsigned i = 0; i < f_->degree(); ++i) c.a_[i] = mod_sub(0, a_[i], p);
  }
  return c;
}

Coeff Coeff::operator*(const Coeff& o) const {
  require_same(o);
  Coeff c(f_);
  switch (f_->kind()) {
    case Field::Kind::rationals:
      c.q_ = q_ * o.q_;
      break;
    case Field::Kind::prime:
      c.a_[0] = mod_mul(a_[0], o.a_[0], f_->characteristic());
      break;
    case Field::Kind::extension:
      c.a_ = poly_mul_mod(a_, o.a_, f_->degree(), f_->modulus(), f_->characteristic());
      break;
  }
  return c;
}

Coeff Coeff::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Coeff c(f_);
  switch (f_->kind()) {
    case Field::Kind::rationals:
      c.q_ = 1 / q_;
      break;
    case Field::Kind::prime:
      c.a_[0] = mod_inv(a_[0], f_->characteristic());
      break;
    case Field::Kind::extension:
      c.a_ = poly_inv_mod(a_, f_->degree(), f_->modulus(), f_->characteristic());
      break;
  }
  return c;
}

Coeff Coeff::operator/(const Coeff& o) const { return *this * o.inverse(); }

bool Coeff::operator==(const Coeff& o) const {
  if (f_ != o.f_) return false;
  if (f_->kind() == Field::Kind::rationals) return q_ == o.q_;
  for (unsigned i = 0; i < f_->degree(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

Coeff Coeff::pow(std::uint64_t e) const { return pow(BigInt(e)); }

Coeff Coeff::pow(const BigInt& e) const {
  if (e < 0) return inverse().pow(-e);
  Coeff acc = Coeff::one(f_);
  Coeff base = *this;
  BigInt m = e;
  while (m > 0) {
    if (boost::multiprecision::bit_test(m, 0)) acc = acc * base;
    base = base * base;
    m >>= 1;
  }
  return acc;
}

Coeff Coeff::embed(const Field* target) const {
  if (target == f_) return *this;
  if (f_->kind() == Field::Kind::rationals)
    return from_rational(target, q_);
  if (f_->kind() == Field::Kind::prime && target->is_finite() &&
      target->characteristic() == f_->characteristic()) {
    Coeff c(target);
    c.a_[0] = a_[0];
    return c;
  }
  throw std::domain_error("unsupported field embedding");
}

std::string Coeff::str() const {
  if (f_->kind() == Field::Kind::rationals) {
    std::ostringstream os;
    os << q_;
    return os.str();
  }
  if (f_->kind() == Field::Kind::prime) return std::to_string(a_[0]);
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (unsigned i = 0; i < f_->degree(); ++i) {
    if (!a_[i]) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << a_[0];
    } else {
      if (a_[i] != 1) os << a_[i] << "*";
      os << "g";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  os << ")";
  return os.str();
}

// ---- Rng ----

std::uint64_t Rng::next() {
  std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) { return n ? next() % n : 0; }

Coeff Rng::coeff(const Field* f) {
  if (f->kind() == Field::Kind::rationals) {
    long long num = static_cast<long long>(below(41)) - 20;
    long long den = static_cast<long long>(below(9)) + 1;
    return Coeff::from_rational(f, Rational(num, den));
  }
  std::array<std::uint64_t, 4> a{};
  for (unsigned i = 0; i < f->degree(); ++i) a[i] = below(f->characteristic());
  return Coeff::from_residues(f, a);
}

Coeff Rng::nonzero_coeff(const Field* f) {
  for (;;) {
    Coeff c = coeff(f);
    if (!c.is_zero()) return c;
  }
}

} // namespace qfv
