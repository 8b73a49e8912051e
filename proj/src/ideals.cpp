#include "qfv/ideals.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace qfv {

std::shared_ptr<const Ring> Ideal::ring() const {
  if (gens.empty()) throw std::domain_error("ideal without generators has no ring");
  return gens[0].ring();
}

bool GroebnerBasis::contains_unit() const {
  for (const auto& g : basis)
    if (!g.is_zero() && g.terms().size() == 1 && g.terms()[0].first.is_one()) return true;
  return false;
}

std::vector<Monomial> GroebnerBasis::leading_terms() const {
  std::vector<Monomial> lt;
  lt.reserve(basis.size());
  for (const auto& g : basis) lt.push_back(g.leading(order).first);
  return lt;
}

namespace {

struct Reducer {
  const std::vector<Poly>* basis;
  const MonomialOrder* ord;
  unsigned degree_cap;
  bool overflow = false;

  // full reduction: eliminate every reducible term, top first
  Poly reduce(Poly f) {
    if (f.is_zero()) return f;
    auto ring = f.ring();
    Poly out = Poly::zero(ring);
    while (!f.is_zero()) {
      const auto& [lm, lc] = f.leading(*ord);
      if (lm.total_degree() > degree_cap) {
        overflow = true;
        return Poly::zero(ring);
      }
      bool reduced = false;
      for (const auto& g : *basis) {
        if (g.is_zero()) continue;
        const auto& [gm, gc] = g.leading(*ord);
        if (gm.divides(lm)) {
          Monomial q = lm / gm;
          Coeff c = lc / gc;
          f = f - g * Poly::from_terms(ring, {{q, c}});
          reduced = true;
          break;
        }
      }
      if (!reduced) {
        out = out + Poly::from_terms(ring, {{lm, lc}});
        f = f - Poly::from_terms(ring, {{lm, lc}});
      }
    }
    return out;
  }
};

Poly make_monic(const Poly& f, const MonomialOrder& ord) {
  if (f.is_zero()) return f;
  return f.scaled(f.leading(ord).second.inverse());
}

} // namespace

GroebnerBasis groebner(const Ideal& I, const GBOptions& opt) {
  GroebnerBasis out;
  out.order = I.order;
  if (I.gens.empty()) return out;
  auto ring = I.ring();
  const MonomialOrder& ord = I.order;

  std::vector<Poly> basis;
  for (const auto& g : I.gens) {
    if (g.ring() != ring) throw std::domain_error("ideal generators in different rings");
    if (!g.is_zero()) basis.push_back(make_monic(g, ord));
  }
  // deterministic start: sort by leading term, then term count
  std::sort(basis.begin(), basis.end(), [&](const Poly& a, const Poly& b) {
    int c = ord.cmp(a.leading(ord).first, b.leading(ord).first);
    if (c) return c < 0;
    return a.terms().size() < b.terms().size();
  });
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());

  struct Pair {
    Monomial lcm;
    size_t i, j;
  };
  auto pair_less = [&](const Pair& a, const Pair& b) {
    int c = ord.cmp(a.lcm, b.lcm);
    if (c) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::set<Pair, decltype(pair_less)> queue(pair_less);
  std::set<std::pair<size_t, size_t>> done;

  auto push_pairs_for = [&](size_t k) {
    for (size_t i = 0; i < k; ++i) {
      if (basis[i].is_zero()) continue;
      queue.insert({Monomial::lcm(basis[i].leading(ord).first, basis[k].leading(ord).first), i, k});
    }
  };
  for (size_t k = 1; k < basis.size(); ++k) push_pairs_for(k);

  Reducer red{&basis, &ord, opt.max_spoly_degree};
  std::uint64_t processed = 0;
  bool inconclusive = false;

  while (!queue.empty()) {
    if (++processed > opt.max_pairs || basis.size() > opt.max_basis) {
      inconclusive = true;
      break;
    }
    Pair pr = *queue.begin();
    queue.erase(queue.begin());
    done.insert({pr.i, pr.j});

    const Poly& fi = basis[pr.i];
    const Poly& fj = basis[pr.j];
    if (fi.is_zero() || fj.is_zero()) continue;
    const Monomial& mi = fi.leading(ord).first;
    const Monomial& mj = fj.leading(ord).first;

    // product criterion
    if (Monomial::coprime(mi, mj)) continue;
    // chain criterion
    {
      bool skip = false;
      for (size_t k = 0; k < basis.size() && !skip; ++k) {
        if (k == pr.i || k == pr.j || basis[k].is_zero()) continue;
        if (!basis[k].leading(ord).first.divides(pr.lcm)) continue;
        auto key_ik = std::minmax(pr.i, k);
        auto key_jk = std::minmax(pr.j, k);
        if (done.count({key_ik.first, key_ik.second}) &&
            done.count({key_jk.first, key_jk.second}))
          skip = true;
      }
      if (skip) continue;
    }

    // S-polynomial
    Monomial qi = pr.lcm / mi;
    Monomial qj = pr.lcm / mj;
    const Field* F = ring->field();
    Poly s = fi * Poly::from_terms(ring, {{qi, Coeff::one(F)}}) -
             fj * Poly::from_terms(ring, {{qj, Coeff::one(F)}});
    Poly r = red.reduce(std::move(s));
    if (red.overflow) {
      inconclusive = true;
      break;
    }
    if (r.is_zero()) continue;
    basis.push_back(make_monic(r, ord));
    push_pairs_for(basis.size() - 1);
  }

  // prune generators whose leading terms are divisible by another's
  std::vector<Poly> pruned;
  for (size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].is_zero()) continue;
    const Monomial& mi = basis[i].leading(ord).first;
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j || basis[j].is_zero()) continue;
      const Monomial& mj = basis[j].leading(ord).first;
      if (mj.divides(mi) && (mj != mi || j < i)) redundant = true;
    }
    if (!redundant) pruned.push_back(basis[i]);
  }
  // tail-reduce each element against the others
  std::vector<Poly> reduced = pruned;
  for (size_t i = 0; i < reduced.size(); ++i) {
    std::vector<Poly> others;
    for (size_t j = 0; j < pruned.size(); ++j)
      if (j != i) others.push_back(pruned[j]);
    Reducer rr{&others, &ord, opt.max_spoly_degree};
    Poly r = rr.reduce(reduced[i]);
    if (rr.overflow) {
      inconclusive = true;
      r = reduced[i];
    }
    reduced[i] = r.is_zero() ? reduced[i] : make_monic(r, ord);
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
    return ord.cmp(a.leading(ord).first, b.leading(ord).first) < 0;
  });
  out.basis = std::move(reduced);
  out.status = inconclusive ? GBStatus::inconclusive : GBStatus::ok;
  return out;
}

Poly normal_form(const Poly& f, const GroebnerBasis& gb) {
  Reducer red{&gb.basis, &gb.order, 1u << 20};
  return red.reduce(f);
}

Tri is_empty(const GroebnerBasis& gb) {
  if (gb.contains_unit()) return Tri::yes;
  if (gb.status == GBStatus::inconclusive) return Tri::unknown;
  return Tri::no;
}

Tri is_empty(const Ideal& I, const GBOptions& opt) { return is_empty(groebner(I, opt)); }

Tri is_zero_dimensional(const GroebnerBasis& gb) {
  if (gb.contains_unit()) return Tri::yes;
  if (gb.status == GBStatus::inconclusive) return Tri::unknown;
  if (gb.basis.empty()) return Tri::no;
  auto ring = gb.basis[0].ring();
  std::vector<bool> covered(ring->nvars(), false);
  for (const auto& g : gb.basis) {
    const Monomial& m = g.leading(gb.order).first;
    if (m.entries().size() == 1) covered[m.entries()[0].first] = true;
  }
  for (unsigned v = 0; v < ring->nvars(); ++v)
    if (!covered[v]) return Tri::no;
  return Tri::yes;
}

Tri is_zero_dimensional(const Ideal& I, const GBOptions& opt) {
  return is_zero_dimensional(groebner(I, opt));
}

std::vector<Monomial> staircase(const GroebnerBasis& gb, long long cap) {
  std::vector<Monomial> out;
  if (gb.basis.empty()) return out;
  auto lts = gb.leading_terms();
  auto divisible = [&](const Monomial& m) {
    for (const auto& lt : lts)
      if (lt.divides(m)) return true;
    return false;
  };
  auto ring = gb.basis[0].ring();
  // BFS over the staircase
  std::set<std::vector<unsigned>> seen;
  std::vector<Monomial> frontier;
  if (!divisible(Monomial::one())) {
    out.push_back(Monomial::one());
    frontier.push_back(Monomial::one());
    seen.insert(std::vector<unsigned>(ring->nvars(), 0));
  }
  while (!frontier.empty()) {
    std::vector<Monomial> next;
    for (const auto& m : frontier) {
      for (unsigned v = 0; v < ring->nvars(); ++v) {
        Monomial m2 = m * Monomial::var(v);
        std::vector<unsigned> key(ring->nvars(), 0);
        for (const auto& [var, e] : m2.entries()) key[var] = e;
        if (seen.count(key) || divisible(m2)) continue;
        seen.insert(key);
        out.push_back(m2);
        next.push_back(m2);
        if (static_cast<long long>(out.size()) > cap)
          throw std::runtime_error("staircase larger than cap");
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    return gb.order.less(a, b);
  });
  return out;
}

long long staircase_size(const GroebnerBasis& gb, long long cap) {
  if (is_zero_dimensional(gb) != Tri::yes) return -1;
  if (gb.contains_unit()) return 0;
  return static_cast<long long>(staircase(gb, cap).size());
}

PolyMatrix jacobian_matrix(const std::vector<Poly>& F, std::span<const unsigned> coords) {
  PolyMatrix M;
  M.reserve(F.size());
  for (const auto& f : F) {
    std::vector<Poly> row;
    row.reserve(coords.size());
    for (unsigned v : coords) row.push_back(f.derivative(v));
    M.push_back(std::move(row));
  }
  return M;
}

namespace {

Poly det_rec(const PolyMatrix& M, const std::vector<unsigned>& rows,
             const std::vector<unsigned>& cols, std::shared_ptr<const Ring> ring) {
  size_t n = rows.size();
  if (n == 1) return M[rows[0]][cols[0]];
  Poly acc = Poly::zero(ring);
  std::vector<unsigned> subrows(rows.begin() + 1, rows.end());
  for (size_t j = 0; j < n; ++j) {
    const Poly& a = M[rows[0]][cols[j]];
    if (a.is_zero()) continue;
    std::vector<unsigned> subcols;
    subcols.reserve(n - 1);
    for (size_t k = 0; k < n; ++k)
      if (k != j) subcols.push_back(cols[k]);
    Poly minor = det_rec(M, subrows, subcols, ring);
    Poly term = a * minor;
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

} // namespace

Poly poly_det(const PolyMatrix& M) {
  if (M.empty() || M.size() != M[0].size()) throw std::invalid_argument("det of non-square");
  auto ring = M[0][0].ring();
  std::vector<unsigned> rows(M.size()), cols(M.size());
  for (unsigned i = 0; i < M.size(); ++i) rows[i] = cols[i] = i;
  return det_rec(M, rows, cols, ring);
}

namespace {
void combinations(unsigned n, unsigned r, const std::function<void(const std::vector<unsigned>&)>& f) {
  std::vector<unsigned> idx(r);
  for (unsigned i = 0; i < r; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    int i = static_cast<int>(r) - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - r + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}
} // namespace

Ideal minors_ideal(const PolyMatrix& M, unsigned r) {
  if (M.empty()) throw std::invalid_argument("empty matrix");
  unsigned nrows = static_cast<unsigned>(M.size());
  unsigned ncols = static_cast<unsigned>(M[0].size());
  if (r == 0 || r > std::min(nrows, ncols)) throw std::invalid_argument("minor size out of range");
  auto ring = M[0][0].ring();
  Ideal out;
  combinations(nrows, r, [&](const std::vector<unsigned>& rows) {
    combinations(ncols, r, [&](const std::vector<unsigned>& cols) {
      Poly d = det_rec(M, rows, cols, ring);
      if (!d.is_zero()) out.gens.push_back(d);
    });
  });
  if (out.gens.empty()) out.gens.push_back(Poly::zero(ring));
  return out;
}

Ideal singular_locus_ideal(const std::vector<Poly>& F, std::span<const unsigned> coords,
                           unsigned codim) {
  if (F.empty()) throw std::invalid_argument("no equations");
  Ideal out;
  out.gens = F;
  if (codim == 0) return out;
  PolyMatrix J = jacobian_matrix(F, coords);
  if (codim > std::min(J.size(), J[0].size())) {
    // rank can never reach codim: everything is singular; keep just F
    return out;
  }
  Ideal minors = minors_ideal(J, codim);
  for (auto& g : minors.gens)
    if (!g.is_zero()) out.gens.push_back(std::move(g));
  return out;
}

} // namespace qfv
