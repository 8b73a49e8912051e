#include "qfv/wps.hpp"

#include <algorithm>
#include <stdexcept>

#include "qfv/ideals.hpp"

namespace qfv {

void WeightedSpace::validate() const {
  weights.validate(*ring);
  if (projective_vars().size() < 2)
    throw std::invalid_argument("weighted space needs >= 2 projective coordinates");
}

std::vector<unsigned> WeightedSpace::projective_vars() const {
  std::vector<unsigned> out;
  for (unsigned i = 0; i < ring->nvars(); ++i)
    if (weights[i] > 0) out.push_back(i);
  return out;
}

std::vector<long long> WeightedSpace::weight_multiset() const {
  std::vector<long long> out;
  for (unsigned i : projective_vars()) out.push_back(weights[i]);
  std::sort(out.begin(), out.end());
  return out;
}

WellFormedReport well_formed_report(const WeightedSpace& W) {
  WellFormedReport rep;
  auto vars = W.projective_vars();
  auto add_prime = [&](long long q) {
    if (rep.prime_to_vars.count(q)) return;
    std::vector<unsigned> vs;
    for (unsigned i : vars)
      if (W.weights[i] % q == 0) vs.push_back(i);
    if (vs.size() >= 2) rep.prime_to_vars[q] = vs;
    if (vs.size() == vars.size()) rep.primes_dividing_all.push_back(q);
  };
  for (unsigned i : vars) {
    long long w = W.weights[i];
    for (long long q = 2; q * q <= w; ++q)
      while (w % q == 0) {
        add_prime(q);
        w /= q;
      }
    if (w > 1) add_prime(w);
  }
  std::sort(rep.primes_dividing_all.begin(), rep.primes_dividing_all.end());
  return rep;
}

namespace {
void knapsack(const WeightedSpace& W, const std::vector<unsigned>& vars, size_t k,
              long long remaining, std::vector<unsigned>& exps, std::vector<Monomial>& out) {
  if (remaining == 0) {
    Monomial m;
    for (size_t i = 0; i < vars.size(); ++i)
      if (exps[i]) m = m * Monomial::var(vars[i], exps[i]);
    out.push_back(m);
    return;
  }
  if (k == vars.size()) return;
  long long w = W.weights[vars[k]];
  // highest exponent first for a deterministic, example-matching order
  for (long long e = remaining / w; e >= 0; --e) {
    exps[k] = static_cast<unsigned>(e);
    knapsack(W, vars, k + 1, remaining - e * w, exps, out);
  }
  exps[k] = 0;
}
} // namespace

std::vector<Monomial> monomials_of_weight(const WeightedSpace& W, long long d) {
  if (d < 1) throw std::invalid_argument("weight must be >= 1");
  auto vars = W.projective_vars();
  std::vector<Monomial> out;
  std::vector<unsigned> exps(vars.size(), 0);
  knapsack(W, vars, 0, d, exps, out);
  return out;
}

Ideal base_locus_ideal(const WeightedSpace& W, long long d) {
  Ideal I;
  const Field* F = W.ring->field();
  for (const auto& m : monomials_of_weight(W, d))
    I.gens.push_back(Poly::from_terms(W.ring, {{m, Coeff::one(F)}}));
  if (I.gens.empty()) I.gens.push_back(Poly::zero(W.ring));
  return I;
}

Chart chart_of(const WeightedSpace& W, unsigned coord) {
  if (coord >= W.ring->nvars() || W.weights[coord] <= 0)
    throw std::invalid_argument("chart coordinate must be projective");
  Chart c;
  c.coord = coord;
  c.alpha = W.weights[coord];
  c.residual.resize(W.ring->nvars(), 0);
  for (unsigned i = 0; i < W.ring->nvars(); ++i) {
    if (i == coord) continue;
    long long r = W.weights[i] % c.alpha;
    c.residual[i] = r;
  }
  return c;
}

std::vector<std::pair<long long, CoordinateSubspace>> fixed_loci(const Chart& c) {
  std::vector<std::pair<long long, CoordinateSubspace>> out;
  for (long long d = 2; d <= c.alpha; ++d) {
    if (c.alpha % d) continue;
    CoordinateSubspace s;
    for (unsigned i = 0; i < c.residual.size(); ++i) {
      if (i == c.coord) continue;
      if (c.residual[i] % d != 0) s.zero_vars.push_back(i);
    }
    out.push_back({d, std::move(s)});
  }
  return out;
}

long long stabilizer_order(const Chart& c, std::span<const Coeff> point) {
  if (point.size() != c.residual.size()) throw std::invalid_argument("point size mismatch");
  long long best = 1;
  for (long long d = 2; d <= c.alpha; ++d) {
    if (c.alpha % d) continue;
    bool fixed = true;
    for (unsigned i = 0; i < c.residual.size() && fixed; ++i) {
      if (i == c.coord) continue;
      if (c.residual[i] % d != 0 && !point[i].is_zero()) fixed = false;
    }
    if (fixed) best = d;
  }
  return best;
}

} // namespace qfv
