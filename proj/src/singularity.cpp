#include "qfv/singularity.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qfv/linalg.hpp"
#include "qfv/ufield.hpp"

namespace qfv {

QuotientSingularity QuotientSingularity::make(long long alpha, std::vector<long long> beta) {
  if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
  for (auto& b : beta) {
    b %= alpha;
    if (b < 0) b += alpha;
    if (b == 0 && alpha > 1) throw std::invalid_argument("zero weight in quotient type");
  }
  std::sort(beta.begin(), beta.end());
  QuotientSingularity s;
  s.alpha = alpha;
  s.beta = std::move(beta);
  return s;
}

bool QuotientSingularity::is_surface_type() const {
  if (beta.size() != 2) return false;
  if (std::gcd(beta[0], alpha) != 1) return false;
  return (beta[0] + beta[1]) % alpha == 0;
}

bool QuotientSingularity::is_terminal_threefold_type() const {
  if (beta.size() != 3) return false;
  for (long long b : beta)
    if (std::gcd(b, alpha) != 1) return false;
  // 1/a(1, b, a-b) up to sorting
  std::vector<long long> s = beta;
  if (std::find(s.begin(), s.end(), 1) == s.end()) return false;
  // remove one copy of 1, the other two must sum to alpha
  auto it = std::find(s.begin(), s.end(), 1);
  s.erase(it);
  return (s[0] + s[1]) % alpha == 0;
}

QuotientSingularity QuotientSingularity::promoted() const {
  if (!is_surface_type()) throw std::domain_error("promotion needs a surface type");
  std::vector<long long> b = beta;
  b.push_back(1);
  return make(alpha, std::move(b));
}

QuotientSingularity QuotientSingularity::surface_part() const {
  if (!is_terminal_threefold_type())
    throw std::domain_error("surface part needs a terminal 3-fold type");
  std::vector<long long> s = beta;
  s.erase(std::find(s.begin(), s.end(), 1));
  return make(alpha, std::move(s));
}

std::string QuotientSingularity::str() const {
  std::ostringstream os;
  os << "1/" << alpha << "(";
  for (size_t i = 0; i < beta.size(); ++i) {
    if (i) os << ",";
    os << beta[i];
  }
  os << ")";
  return os.str();
}

void Basket::add(const QuotientSingularity& s, unsigned count) {
  for (unsigned i = 0; i < count; ++i) entries.push_back(s);
  std::sort(entries.begin(), entries.end());
}

std::pair<std::vector<QuotientSingularity>, std::vector<QuotientSingularity>> Basket::diff(
    const Basket& o) const {
  std::vector<QuotientSingularity> mine, theirs;
  std::set_difference(entries.begin(), entries.end(), o.entries.begin(), o.entries.end(),
                      std::back_inserter(mine));
  std::set_difference(o.entries.begin(), o.entries.end(), entries.begin(), entries.end(),
                      std::back_inserter(theirs));
  return {mine, theirs};
}

std::string Basket::str() const {
  if (entries.empty()) return "{}";
  std::ostringstream os;
  os << "{";
  size_t i = 0;
  while (i < entries.size()) {
    size_t j = i;
    while (j < entries.size() && entries[j] == entries[i]) ++j;
    if (i) os << ", ";
    if (j - i > 1) os << (j - i) << "x";
    os << entries[i].str();
    i = j;
  }
  os << "}";
  return os.str();
}

Basket Basket::parse(const std::string& text) {
  // e.g. "{4x1/2(1,1,1), 1/3(1,1,2)}" or without braces; empty -> {}
  Basket b;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}') s += c;
  if (s.empty()) return b;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t end = s.find(',', pos);
    // commas inside parentheses do not split entries
    int depth = 0;
    end = pos;
    while (end < s.size() && !(s[end] == ',' && depth == 0)) {
      if (s[end] == '(') ++depth;
      if (s[end] == ')') --depth;
      ++end;
    }
    std::string item = s.substr(pos, end - pos);
    pos = end + (end < s.size() ? 1 : 0);
    unsigned count = 1;
    size_t x = item.find('x');
    if (x != std::string::npos && item.find("1/") > x) {
      count = static_cast<unsigned>(std::stoul(item.substr(0, x)));
      item = item.substr(x + 1);
    }
    if (item.rfind("1/", 0) != 0) throw std::invalid_argument("bad basket entry: " + item);
    size_t par = item.find('(');
    long long alpha = std::stoll(item.substr(2, par - 2));
    std::vector<long long> beta;
    size_t q = par + 1;
    while (q < item.size() && item[q] != ')') {
      size_t e = item.find_first_of(",)", q);
      beta.push_back(std::stoll(item.substr(q, e - q)));
      q = e + (item[e] == ',' ? 1 : 0);
    }
    b.add(QuotientSingularity::make(alpha, beta), count);
  }
  return b;
}

LinearPartRank linear_part_rank(const LocalizedSystem& L) {
  const Field* F = L.ring->field();
  unsigned n = L.ring->nvars();
  // linear parts = Jacobian at the origin
  CoeffMatrix J;
  for (const auto& eq : L.equations) {
    if (const Coeff* c0 = eq.coeff(Monomial::one()); c0 && !c0->is_zero())
      throw std::invalid_argument("localized equation does not vanish at the origin");
    std::vector<Coeff> row(n, Coeff::zero(F));
    for (unsigned v = 0; v < n; ++v)
      if (const Coeff* c = eq.coeff(Monomial::var(v))) row[v] = *c;
    J.push_back(std::move(row));
  }
  LinearPartRank out;
  CoeffMatrix R = J;
  auto piv = row_reduce(R);
  out.rank = static_cast<unsigned>(piv.size());

  // greedy pure-coordinate complement: lowest residual weight first, ties by
  // declared order; feasibility = the non-complement columns still have full
  // rank
  std::vector<unsigned> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](unsigned a, unsigned b) {
    return L.residual[a] < L.residual[b];
  });
  unsigned want = n - out.rank;
  std::vector<bool> in_comp(n, false);
  auto feasible = [&](const std::vector<bool>& comp) {
    std::vector<unsigned> cols;
    for (unsigned v = 0; v < n; ++v)
      if (!comp[v]) cols.push_back(v);
    CoeffMatrix M = J;
    auto pv = row_reduce(M, cols);
    return pv.size() == out.rank;
  };
  for (unsigned v : order) {
    if (out.complement_vars.size() == want) break;
    in_comp[v] = true;
    if (feasible(in_comp)) out.complement_vars.push_back(v);
    else in_comp[v] = false;
  }
  std::sort(out.complement_vars.begin(), out.complement_vars.end());
  out.pure_complement_found = out.complement_vars.size() == want;
  for (unsigned v : piv) out.span_vars.push_back(v);
  return out;
}

LpcResult lpc_classify(const LocalizedSystem& L, unsigned expected_local_dim) {
  LpcResult out;
  unsigned n = L.ring->nvars();
  if (expected_local_dim > n) throw std::invalid_argument("local dimension exceeds chart size");
  LinearPartRank lp = linear_part_rank(L);
  out.rank = lp.rank;
  unsigned needed = n - expected_local_dim;
  if (lp.rank < needed) {
    out.kind = LpcKind::not_quasi_smooth;
    out.corank = needed - lp.rank;
    return out;
  }
  if (lp.rank > needed) {
    // rank exceeding the codimension cannot happen on a point of the variety
    out.kind = LpcKind::failed;
    return out;
  }
  if (!lp.pure_complement_found) {
    out.kind = LpcKind::failed;
    return out;
  }
  out.complement_vars = lp.complement_vars;
  if (L.alpha <= 1) {
    out.kind = LpcKind::smooth;
    return out;
  }
  std::vector<long long> beta;
  for (unsigned v : lp.complement_vars) beta.push_back(L.residual[v]);
  bool trivial = std::all_of(beta.begin(), beta.end(),
                             [&](long long b) { return b % L.alpha == 0; });
  if (trivial) {
    out.kind = LpcKind::smooth;
    return out;
  }
  for (long long b : beta)
    if (b % L.alpha == 0 || std::gcd(b % L.alpha, L.alpha) != 1) {
      // not the isolated cyclic quotient shape the toolkit certifies
      out.kind = LpcKind::failed;
      return out;
    }
  out.kind = LpcKind::quotient;
  out.type = QuotientSingularity::make(L.alpha, std::move(beta));
  return out;
}

LiftResult lift_point(const WeightedSpace& W, const Chart& c, std::span<const Coeff> point,
                      std::uint64_t seed) {
  LiftResult out;
  if (point.size() != W.ring->nvars()) {
    out.error = "point size mismatch";
    return out;
  }
  const Coeff& x0 = point[c.coord];
  if (x0.is_zero()) {
    out.error = "point lies outside the chart";
    return out;
  }
  const Field* F = x0.field();
  if (F->kind() == Field::Kind::rationals) {
    out.error = "lift requires a finite field";
    return out;
  }
  // solve lambda^alpha = 1/x0
  Coeff target = x0.inverse();
  uni::UPoly f(static_cast<size_t>(c.alpha) + 1, Coeff::zero(F));
  f[0] = -target;
  f[static_cast<size_t>(c.alpha)] = Coeff::one(F);
  Rng rng(seed);
  uni::Factorization fac = uni::analyze(f, rng);
  Coeff lambda = Coeff::zero(F);
  const Field* Fl = F;
  if (!fac.roots.empty()) {
    lambda = fac.roots[0];
  } else {
    unsigned best = 0;
    for (unsigned d : fac.higher_degrees)
      if (F->degree() * d <= 4 && (best == 0 || d < best)) best = d;
    if (best == 0) {
      out.error = "no representative within extension degree 4; resample seed";
      return out;
    }
    if (F->kind() != Field::Kind::prime) {
      out.error = "nested extension needed; resample seed";
      return out;
    }
    uni::UPoly g = uni::irreducible_factor(f, best, rng);
    Fl = Field::extension_with_modulus(F->characteristic(), [&] {
      std::vector<std::uint64_t> m;
      for (const auto& cf : g) m.push_back(cf.residue());
      return m;
    }());
    lambda = Coeff::generator(Fl);
  }
  // rescale: x_i -> lambda^{w_i} x_i
  out.representative.reserve(point.size());
  for (unsigned i = 0; i < point.size(); ++i) {
    Coeff xi = point[i].field() == Fl ? point[i] : point[i].embed(Fl);
    out.representative.push_back(lambda.pow(static_cast<std::uint64_t>(W.weights[i])) * xi);
  }
  out.ok = true;
  if (!out.representative[c.coord].is_one()) {
    out.ok = false;
    out.error = "lift verification failed";
  }
  return out;
}

HalfPointCount half_point_count(const WeightedSpace& W, const Chart& c,
                                const std::vector<Poly>& chart_system,
                                const SolveOptions& opt) {
  HalfPointCount out;
  if (c.alpha % 2 != 0) {
    out.status = Tri::no;
    return out;
  }
  // counts N(d) of closure points on each even-order fixed subspace, then
  // Moebius over divisors: exact-stabilizer-2 count = sum mu(d/2) N(d)
  auto ring = chart_system.empty() ? nullptr : chart_system[0].ring();
  if (!ring) {
    out.status = Tri::unknown;
    return out;
  }
  auto count_fix = [&](long long d) -> long long {
    std::vector<Poly> gens = chart_system;
    for (unsigned v = 0; v < ring->nvars(); ++v) {
      if (v == c.coord) continue;
      if (c.residual[v] % d != 0) gens.push_back(Poly::variable(ring, v));
    }
    // drop the chart coordinate (it is set to 1 upstream) and compact
    std::vector<std::string> names;
    std::vector<int> vmap(ring->nvars(), -1);
    for (unsigned v = 0; v < ring->nvars(); ++v) {
      if (v == c.coord) continue;
      vmap[v] = static_cast<int>(names.size());
      names.push_back(ring->name(v));
    }
    auto sub = Ring::make(names, ring->field());
    Ideal I;
    for (const auto& g : gens) {
      Poly gg = g.map_vars(sub, vmap);
      if (!gg.is_zero()) I.gens.push_back(gg);
    }
    if (I.gens.empty()) return -1;
    GroebnerBasis gb = groebner(I, opt.gb);
    if (gb.status != GBStatus::ok) return -1;
    if (gb.contains_unit()) return 0;
    if (is_zero_dimensional(gb) != Tri::yes) return -1;
    return staircase_size(gb, opt.max_count);
  };

  long long total = 0;
  for (long long d = 2; d <= c.alpha; ++d) {
    if (c.alpha % d || d % 2) continue;
    long long m = d / 2;
    // squarefree Moebius
    int mu = 1;
    long long mm = m;
    for (long long q = 2; q * q <= mm; ++q) {
      if (mm % q == 0) {
        mm /= q;
        if (mm % q == 0) { mu = 0; break; }
        mu = -mu;
      }
    }
    if (mu != 0 && mm > 1) mu = -mu;
    if (mu == 0) continue;
    long long n = count_fix(d);
    if (n < 0) {
      out.status = Tri::unknown;
      return out;
    }
    total += mu * n;
  }
  long long orbit = c.alpha / 2;
  if (total % orbit != 0) {
    out.status = Tri::unknown;
    return out;
  }
  out.status = Tri::yes;
  out.count = total / orbit;
  return out;
}

bool residue_check(const QuotientSingularity& s, const WeightedSpace& ambient) {
  if (s.alpha <= 1) return true;
  // distinguished beta: for surface types either entry, for 3-fold types
  // beta or alpha-beta from 1/a(1, beta, alpha-beta)
  std::vector<long long> targets;
  if (s.is_terminal_threefold_type()) targets = s.surface_part().beta;
  else
    for (long long b : s.beta)
      if (b % s.alpha != 0) targets.push_back(b % s.alpha);
  for (unsigned v : ambient.projective_vars()) {
    long long r = ambient.weights[v] % s.alpha;
    for (long long t : targets)
      if (r == t) return true;
  }
  return false;
}

Basket assemble_basket(const std::vector<Finding>& findings, bool promote) {
  std::map<std::string, QuotientSingularity> byid;
  for (const auto& f : findings) {
    auto [it, fresh] = byid.emplace(f.point_id, f.type);
    if (!fresh && !(it->second == f.type))
      throw std::invalid_argument("conflicting types for point " + f.point_id);
  }
  Basket b;
  for (const auto& [id, type] : byid) {
    (void)id;
    b.add(promote && type.is_surface_type() ? type.promoted() : type);
  }
  return b;
}

} // namespace qfv
