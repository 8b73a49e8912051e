#ifndef QFV_POLY_HPP
#define QFV_POLY_HPP

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfv/field.hpp"

namespace qfv {

/// Sparse exponent vector. Entries are (variable index, exponent), sorted by
/// index, exponents positive; the empty vector is the monomial 1.
class Monomial {
public:
  using Entry = std::pair<unsigned, unsigned>;

  Monomial() = default;
  static Monomial one() { return {}; }
  static Monomial var(unsigned i, unsigned e = 1);
  static Monomial from_exponents(std::span<const unsigned> exps);

  bool is_one() const { return e_.empty(); }
  unsigned exponent(unsigned var) const;
  unsigned total_degree() const;
  long long weighted_degree(std::span<const long long> w) const;
  const std::vector<Entry>& entries() const { return e_; }
  unsigned max_var() const { return e_.empty() ? 0 : e_.back().first; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// this / o; o must divide this.
  Monomial operator/(const Monomial& o) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);
  static bool coprime(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return e_ != o.e_; }

private:
  std::vector<Entry> e_;
};

/// Term orders. Block orders compare the leading block (variables with index
/// < split) degrevlex first, used for elimination.
struct MonomialOrder {
  enum class Kind { degrevlex, lex, block };
  Kind kind = Kind::degrevlex;
  unsigned split = 0;

  static MonomialOrder degrevlex() { return {}; }
  static MonomialOrder lex() { return {Kind::lex, 0}; }
  static MonomialOrder elimination(unsigned first_block_vars) {
    return {Kind::block, first_block_vars};
  }

  /// <0, 0, >0 as a is smaller, equal, larger than b.
  int cmp(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
};

/// Coordinate names plus ground field. Shared immutable handle; polynomials
/// in a common computation must share the ring pointer.
class Ring {
public:
  static std::shared_ptr<const Ring> make(std::vector<std::string> names,
                                          const Field* field);
  unsigned nvars() const { return static_cast<unsigned>(names_.size()); }
  const std::string& name(unsigned i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<unsigned> index(const std::string& name) const;
  const Field* field() const { return field_; }

  /// Same names over another coefficient field.
  std::shared_ptr<const Ring> with_field(const Field* f) const;

private:
  Ring(std::vector<std::string> n, const Field* f) : names_(std::move(n)), field_(f) {}
  std::vector<std::string> names_;
  const Field* field_;
  std::map<std::string, unsigned> index_;
};

/// Weights of the ring coordinates; weight 0 marks an affine parameter that
/// stays out of the projective bookkeeping.
struct WeightVector {
  std::vector<long long> w;

  long long operator[](size_t i) const { return w[i]; }
  size_t size() const { return w.size(); }
  bool is_parameter(size_t i) const { return w[i] == 0; }
  void validate(const Ring& ring) const;
};

struct HomogeneityReport {
  bool homogeneous = true;
  long long degree = 0;  // meaningful when homogeneous (zero poly reports 0)
  std::vector<Monomial> offenders;
};

/// Sparse polynomial with exact coefficients, canonical ascending-degrevlex
/// term list; equal polynomials compare equal term-by-term.
class Poly {
public:
  using Term = std::pair<Monomial, Coeff>;

  Poly() = default;
  static Poly zero(std::shared_ptr<const Ring> ring);
  static Poly constant(std::shared_ptr<const Ring> ring, const Coeff& c);
  static Poly constant(std::shared_ptr<const Ring> ring, long long v);
  static Poly variable(std::shared_ptr<const Ring> ring, unsigned i);
  static Poly from_terms(std::shared_ptr<const Ring> ring, std::vector<Term> terms);

  const std::shared_ptr<const Ring>& ring() const { return ring_; }
  bool is_zero() const { return t_.empty(); }
  size_t term_count() const { return t_.size(); }
  const std::vector<Term>& terms() const { return t_; }
  const Coeff* coeff(const Monomial& m) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Coeff& c) const;
  Poly pow(unsigned e) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  unsigned total_degree() const;
  HomogeneityReport weighted_degree(const WeightVector& w) const;

  Poly derivative(unsigned var) const;
  /// Simultaneous substitution var -> poly (same ring).
  Poly substitute(const std::map<unsigned, Poly>& bindings) const;
  Coeff evaluate(std::span<const Coeff> point) const;
  /// Image of each term's monomial restricted to `var = 1` etc. via
  /// substitution; convenience for charts.
  Poly set_var(unsigned var, const Coeff& value) const;

  /// Leading term under an order (linear scan; canonical storage is
  /// ascending degrevlex, whose leading term is the last entry).
  const Term& leading(const MonomialOrder& ord) const;

  /// Move to a ring with the same field; `var_map[i]` gives the new index of
  /// old variable i, or -1 if the variable must not occur.
  Poly map_vars(std::shared_ptr<const Ring> to, std::span<const int> var_map) const;
  /// Coefficient embedding into a ring over an extension field.
  Poly embed(std::shared_ptr<const Ring> to) const;

  std::string str() const;

private:
  void normalize();
  std::shared_ptr<const Ring> ring_;
  std::vector<Term> t_;
};

} // namespace qfv

#endif
