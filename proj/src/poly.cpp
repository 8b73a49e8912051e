#include "qfv/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qfv {

// ---- Monomial ----

Monomial Monomial::var(unsigned i, unsigned e) {
  Monomial m;
  if (e) m.e_.push_back({i, e});
  return m;
}

Monomial Monomial::from_exponents(std::span<const unsigned> exps) {
  Monomial m;
  for (unsigned i = 0; i < exps.size(); ++i)
    if (exps[i]) m.e_.push_back({i, exps[i]});
  return m;
}

unsigned Monomial::exponent(unsigned var) const {
  for (const auto& [v, e] : e_)
    if (v == var) return e;
  return 0;
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [v, e] : e_) d += e;
  return d;
}

long long Monomial::weighted_degree(std::span<const long long> w) const {
  long long d = 0;
  for (const auto& [v, e] : e_) {
    if (v >= w.size()) throw std::out_of_range("weight vector too short");
    d += static_cast<long long>(e) * w[v];
  }
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  m.e_.reserve(e_.size() + o.e_.size());
  size_t i = 0, j = 0;
  while (i < e_.size() || j < o.e_.size()) {
    if (j == o.e_.size() || (i < e_.size() && e_[i].first < o.e_[j].first)) {
      m.e_.push_back(e_[i++]);
    } else if (i == e_.size() || o.e_[j].first < e_[i].first) {
      m.e_.push_back(o.e_[j++]);
    } else {
      m.e_.push_back({e_[i].first, e_[i].second + o.e_[j].second});
      ++i, ++j;
    }
  }
  return m;
}

bool Monomial::divides(const Monomial& o) const {
  size_t j = 0;
  for (const auto& [v, e] : e_) {
    while (j < o.e_.size() && o.e_[j].first < v) ++j;
    if (j == o.e_.size() || o.e_[j].first != v || o.e_[j].second < e) return false;
  }
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial m;
  size_t j = 0;
  for (const auto& [v, e] : e_) {
    unsigned sub = 0;
    while (j < o.e_.size() && o.e_[j].first < v) ++j;
    if (j < o.e_.size() && o.e_[j].first == v) sub = o.e_[j].second;
    if (sub > e) throw std::domain_error("monomial division fails");
    if (e - sub) m.e_.push_back({v, e - sub});
  }
  return m;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial m;
  size_t i = 0, j = 0;
  while (i < a.e_.size() || j < b.e_.size()) {
    if (j == b.e_.size() || (i < a.e_.size() && a.e_[i].first < b.e_[j].first)) {
      m.e_.push_back(a.e_[i++]);
    } else if (i == a.e_.size() || b.e_[j].first < a.e_[i].first) {
      m.e_.push_back(b.e_[j++]);
    } else {
      m.e_.push_back({a.e_[i].first, std::max(a.e_[i].second, b.e_[j].second)});
      ++i, ++j;
    }
  }
  return m;
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
  size_t i = 0, j = 0;
  while (i < a.e_.size() && j < b.e_.size()) {
    if (a.e_[i].first < b.e_[j].first) ++i;
    else if (b.e_[j].first < a.e_[i].first) ++j;
    else return false;
  }
  return true;
}

namespace {

int cmp_degrevlex(const Monomial& a, const Monomial& b) {
  unsigned da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  auto ia = ea.rbegin();
  auto ib = eb.rbegin();
  while (ia != ea.rend() || ib != eb.rend()) {
    if (ib == eb.rend()) return -1;                 // a has the higher variable
    if (ia == ea.rend()) return 1;
    if (ia->first != ib->first)
      return ia->first > ib->first ? -1 : 1;        // exponent at that var: a>0,b=0
    if (ia->second != ib->second)
      return ia->second > ib->second ? -1 : 1;      // revlex: larger exp is smaller
    ++ia, ++ib;
  }
  return 0;
}

int cmp_lex(const Monomial& a, const Monomial& b) {
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size()) return 1;
    if (i == ea.size()) return -1;
    if (ea[i].first != eb[j].first) return ea[i].first < eb[j].first ? 1 : -1;
    if (ea[i].second != eb[j].second) return ea[i].second > eb[j].second ? 1 : -1;
    ++i, ++j;
  }
  return 0;
}

void split_blocks(const Monomial& m, unsigned split, Monomial& lo, Monomial& hi) {
  std::vector<Monomial::Entry> a, b;
  for (const auto& en : m.entries())
    (en.first < split ? a : b).push_back(en);
  lo = Monomial::one();
  hi = Monomial::one();
  for (const auto& en : a) lo = lo * Monomial::var(en.first, en.second);
  for (const auto& en : b) hi = hi * Monomial::var(en.first, en.second);
}

} // namespace

int MonomialOrder::cmp(const Monomial& a, const Monomial& b) const {
  switch (kind) {
    case Kind::degrevlex: return cmp_degrevlex(a, b);
    case Kind::lex: return cmp_lex(a, b);
    case Kind::block: {
      Monomial alo, ahi, blo, bhi;
      split_blocks(a, split, alo, ahi);
      split_blocks(b, split, blo, bhi);
      int c = cmp_degrevlex(alo, blo);
      if (c) return c;
      return cmp_degrevlex(ahi, bhi);
    }
  }
  return 0;
}

// ---- Ring ----

std::shared_ptr<const Ring> Ring::make(std::vector<std::string> names, const Field* field) {
  auto r = std::shared_ptr<Ring>(new Ring(std::move(names), field));
  for (unsigned i = 0; i < r->names_.size(); ++i) {
    if (!r->index_.emplace(r->names_[i], i).second)
      throw std::invalid_argument("duplicate coordinate name: " + r->names_[i]);
  }
  return r;
}

std::optional<unsigned> Ring::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::shared_ptr<const Ring> Ring::with_field(const Field* f) const {
  return make(names_, f);
}

void WeightVector::validate(const Ring& ring) const {
  if (w.size() != ring.nvars())
    throw std::invalid_argument("weight vector length mismatch");
  for (long long x : w)
    if (x < 0) throw std::invalid_argument("negative weight");
}

// ---- Poly ----

namespace {
const MonomialOrder kCanonical{};  // degrevlex storage order
}

Poly Poly::zero(std::shared_ptr<const Ring> ring) {
  Poly p;
  p.ring_ = std::move(ring);
  return p;
}

Poly Poly::constant(std::shared_ptr<const Ring> ring, const Coeff& c) {
  Poly p = zero(std::move(ring));
  if (!c.is_zero()) p.t_.push_back({Monomial::one(), c});
  return p;
}

Poly Poly::constant(std::shared_ptr<const Ring> ring, long long v) {
  const Field* f = ring->field();
  return constant(std::move(ring), Coeff::from_int(f, v));
}

Poly Poly::variable(std::shared_ptr<const Ring> ring, unsigned i) {
  if (i >= ring->nvars()) throw std::out_of_range("variable index");
  Poly p = zero(ring);
  p.t_.push_back({Monomial::var(i), Coeff::one(ring->field())});
  return p;
}

Poly Poly::from_terms(std::shared_ptr<const Ring> ring, std::vector<Term> terms) {
  Poly p = zero(std::move(ring));
  p.t_ = std::move(terms);
  p.normalize();
  return p;
}

void Poly::normalize() {
  std::sort(t_.begin(), t_.end(), [](const Term& a, const Term& b) {
    return kCanonical.less(a.first, b.first);
  });
  std::vector<Term> out;
  out.reserve(t_.size());
  for (auto& t : t_) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second = out.back().second + t.second;
      if (out.back().second.is_zero()) out.pop_back();
    } else if (!t.second.is_zero()) {
      out.push_back(std::move(t));
    }
  }
  t_ = std::move(out);
}

const Coeff* Poly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& t, const Monomial& k) {
    return kCanonical.less(t.first, k);
  });
  if (it != t_.end() && it->first == m) return &it->second;
  return nullptr;
}

Poly Poly::operator+(const Poly& o) const {
  if (ring_ != o.ring_) throw std::domain_error("ring mismatch");
  Poly out = zero(ring_);
  out.t_.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    int c;
    if (i == t_.size()) c = 1;
    else if (j == o.t_.size()) c = -1;
    else c = kCanonical.cmp(t_[i].first, o.t_[j].first);
    if (c < 0) out.t_.push_back(t_[i++]);
    else if (c > 0) out.t_.push_back(o.t_[j++]);
    else {
      Coeff s = t_[i].second + o.t_[j].second;
      if (!s.is_zero()) out.t_.push_back({t_[i].first, s});
      ++i, ++j;
    }
  }
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& t : out.t_) t.second = -t.second;
  return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::scaled(const Coeff& c) const {
  if (c.is_zero()) return zero(ring_);
  Poly out = *this;
  for (auto& t : out.t_) t.second = t.second * c;
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  if (ring_ != o.ring_) throw std::domain_error("ring mismatch");
  if (is_zero() || o.is_zero()) return zero(ring_);
  std::vector<Term> acc;
  acc.reserve(t_.size() * o.t_.size());
  for (const auto& a : t_)
    for (const auto& b : o.t_)
      acc.push_back({a.first * b.first, a.second * b.second});
  return from_terms(ring_, std::move(acc));
}

Poly Poly::pow(unsigned e) const {
  Poly acc = constant(ring_, 1);
  Poly base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool Poly::operator==(const Poly& o) const {
  if (ring_ != o.ring_) return false;
  if (t_.size() != o.t_.size()) return false;
  for (size_t i = 0; i < t_.size(); ++i)
    if (t_[i].first != o.t_[i].first || t_[i].second != o.t_[i].second) return false;
  return true;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : t_) d = std::max(d, t.first.total_degree());
  return d;
}

HomogeneityReport Poly::weighted_degree(const WeightVector& w) const {
  HomogeneityReport rep;
  if (t_.empty()) return rep;
  rep.degree = t_[0].first.weighted_degree(w.w);
  for (const auto& t : t_) {
    if (t.first.weighted_degree(w.w) != rep.degree) {
      rep.homogeneous = false;
      break;
    }
  }
  if (!rep.homogeneous) {
    for (const auto& t : t_) rep.offenders.push_back(t.first);
    rep.degree = 0;
  }
  return rep;
}

Poly Poly::derivative(unsigned var) const {
  std::vector<Term> out;
  for (const auto& [m, c] : t_) {
    unsigned e = m.exponent(var);
    if (!e) continue;
    Monomial q = m / Monomial::var(var);
    out.push_back({q, c * Coeff::from_int(ring_->field(), static_cast<long long>(e))});
  }
  return from_terms(ring_, std::move(out));
}

Poly Poly::substitute(const std::map<unsigned, Poly>& bindings) const {
  for (const auto& [v, rhs] : bindings)
    if (rhs.ring() != ring_) throw std::domain_error("binding ring mismatch");
  Poly acc = zero(ring_);
  // power cache per bound variable
  std::map<unsigned, std::vector<Poly>> powers;
  auto power = [&](unsigned v, unsigned e) -> const Poly& {
    auto& vec = powers[v];
    if (vec.empty()) vec.push_back(constant(ring_, 1));
    while (vec.size() <= e) vec.push_back(vec.back() * bindings.at(v));
    return vec[e];
  };
  for (const auto& [m, c] : t_) {
    Monomial rest;
    Poly factor = constant(ring_, c);
    for (const auto& [v, e] : m.entries()) {
      if (bindings.count(v)) factor = factor * power(v, e);
      else rest = rest * Monomial::var(v, e);
    }
    acc = acc + factor * from_terms(ring_, {{rest, Coeff::one(ring_->field())}});
  }
  return acc;
}

Coeff Poly::evaluate(std::span<const Coeff> point) const {
  if (point.size() != ring_->nvars()) throw std::invalid_argument("point size mismatch");
  const Field* f = ring_->field();
  for (const auto& c : point)
    if (c.field() != f) throw std::domain_error("evaluation in mismatched field");
  Coeff acc = Coeff::zero(f);
  for (const auto& [m, c] : t_) {
    Coeff v = c;
    for (const auto& [var, e] : m.entries()) v = v * point[var].pow(static_cast<std::uint64_t>(e));
    acc = acc + v;
  }
  return acc;
}

Poly Poly::set_var(unsigned var, const Coeff& value) const {
  std::vector<Term> out;
  for (const auto& [m, c] : t_) {
    unsigned e = m.exponent(var);
    if (!e) {
      out.push_back({m, c});
      continue;
    }
    Coeff scaled = c * value.pow(static_cast<std::uint64_t>(e));
    if (scaled.is_zero()) continue;
    out.push_back({m / Monomial::var(var, e), scaled});
  }
  return from_terms(ring_, std::move(out));
}

const Poly::Term& Poly::leading(const MonomialOrder& ord) const {
  if (t_.empty()) throw std::domain_error("leading term of zero");
  if (ord.kind == MonomialOrder::Kind::degrevlex) return t_.back();
  size_t best = 0;
  for (size_t i = 1; i < t_.size(); ++i)
    if (ord.less(t_[best].first, t_[i].first)) best = i;
  return t_[best];
}

Poly Poly::map_vars(std::shared_ptr<const Ring> to, std::span<const int> var_map) const {
  if (var_map.size() != ring_->nvars()) throw std::invalid_argument("var_map size");
  std::vector<Term> out;
  for (const auto& [m, c] : t_) {
    Monomial nm;
    for (const auto& [v, e] : m.entries()) {
      int nv = var_map[v];
      if (nv < 0) throw std::domain_error("variable not present in target ring: " + ring_->name(v));
      nm = nm * Monomial::var(static_cast<unsigned>(nv), e);
    }
    out.push_back({nm, c});
  }
  return from_terms(std::move(to), std::move(out));
}

Poly Poly::embed(std::shared_ptr<const Ring> to) const {
  std::vector<Term> out;
  out.reserve(t_.size());
  for (const auto& [m, c] : t_) out.push_back({m, c.embed(to->field())});
  return from_terms(std::move(to), std::move(out));
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // print leading-first
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) { os << "-"; cs = cs.substr(1); }
      first = false;
    } else {
      os << (neg ? " - " : " + ");
      if (neg) cs = cs.substr(1);
    }
    bool coeff_is_unit = (cs == "1");
    if (m.is_one()) {
      os << cs;
      continue;
    }
    bool star = false;
    if (!coeff_is_unit) {
      os << cs;
      star = true;
    }
    for (const auto& [v, e] : m.entries()) {
      if (star) os << "*";
      os << ring_->name(v);
      if (e > 1) os << "^" << e;
      star = true;
    }
  }
  return os.str();
}

} // namespace qfv
