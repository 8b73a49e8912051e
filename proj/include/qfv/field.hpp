#ifndef QFV_FIELD_HPP
#define QFV_FIELD_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qfv {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Coefficient domain: the rationals, a prime field F_p, or an extension
/// F_{p^k} with k <= 4 presented as F_p[g]/(modulus).
///
/// Fields are interned; two handles denote the same field iff the pointers
/// are equal. All Coeff operations require matching handles.
class Field {
public:
  enum class Kind { rationals, prime, extension };

  Kind kind() const { return kind_; }
  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return deg_; }
  bool is_finite() const { return kind_ != Kind::rationals; }

  /// Monic modulus of the extension, little-endian coefficients, size degree()+1.
  const std::vector<std::uint64_t>& modulus() const { return mod_; }

  /// p^degree for finite fields.
  BigInt order() const;

  std::string describe() const;

  static const Field* rationals();
  static const Field* prime(std::uint64_t p);
  /// Canonical extension of degree k: the modulus is the first monic
  /// irreducible of degree k in lexicographic constant-first enumeration.
  static const Field* extension(std::uint64_t p, unsigned k);
  /// Extension with a caller-supplied monic irreducible modulus.
  static const Field* extension_with_modulus(std::uint64_t p,
                                             const std::vector<std::uint64_t>& monic);

private:
  Field(Kind k, std::uint64_t p, unsigned deg, std::vector<std::uint64_t> mod)
      : kind_(k), p_(p), deg_(deg), mod_(std::move(mod)) {}

  Kind kind_;
  std::uint64_t p_;
  unsigned deg_;
  std::vector<std::uint64_t> mod_;
};

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);

/// Immutable field element. Rationals are kept in lowest terms with a
/// positive denominator (cpp_rational canonicalizes); finite-field elements
/// are residue vectors in the g-power basis.
class Coeff {
public:
  Coeff() : f_(Field::rationals()) {}

  static Coeff zero(const Field* f) { return Coeff(f); }
  static Coeff one(const Field* f) { return from_int(f, 1); }
  static Coeff from_int(const Field* f, long long v);
  static Coeff from_rational(const Field* f, const Rational& q);
  static Coeff from_residues(const Field* f, const std::array<std::uint64_t, 4>& a);

  /// Generator g of an extension field.
  static Coeff generator(const Field* f);

  const Field* field() const { return f_; }
  bool is_zero() const;
  bool is_one() const;

  Coeff operator+(const Coeff& o) const;
  Coeff operator-(const Coeff& o) const;
  Coeff operator*(const Coeff& o) const;
  Coeff operator/(const Coeff& o) const;
  Coeff operator-() const;
  bool operator==(const Coeff& o) const;
  bool operator!=(const Coeff& o) const { return !(*this == o); }

  Coeff inverse() const;
  Coeff pow(std::uint64_t e) const;
  Coeff pow(const BigInt& e) const;

  /// Map an element of F_p into an extension of F_p (or reinterpret over the
  /// same field). Rationals embed into any field through numerator/denominator.
  Coeff embed(const Field* target) const;

  const Rational& rational() const { return q_; }
  std::uint64_t residue() const { return a_[0]; }
  const std::array<std::uint64_t, 4>& residues() const { return a_; }

  std::string str() const;

private:
  explicit Coeff(const Field* f) : f_(f) {}
  void require_same(const Coeff& o) const;

  const Field* f_;
  Rational q_;
  std::array<std::uint64_t, 4> a_{};
};

/// Deterministic splitmix64 stream used everywhere a seeded choice is made.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : s_(seed + 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next();
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n);
  Coeff coeff(const Field* f);
  Coeff nonzero_coeff(const Field* f);

private:
  std::uint64_t s_;
};

} // namespace qfv

#endif
