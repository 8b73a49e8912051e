#include "qfv/solve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qfv/linalg.hpp"
#include "qfv/ufield.hpp"

namespace qfv {

std::vector<unsigned> row_reduce(CoeffMatrix& M) {
  std::vector<unsigned> order;
  if (!M.empty()) {
    order.resize(M[0].size());
    std::iota(order.begin(), order.end(), 0u);
  }
  return row_reduce(M, order);
}

std::vector<unsigned> row_reduce(CoeffMatrix& M, const std::vector<unsigned>& column_order) {
  std::vector<unsigned> pivots;
  if (M.empty()) return pivots;
  size_t rows = M.size();
  size_t lead = 0;
  for (unsigned col : column_order) {
    if (lead >= rows) break;
    size_t sel = lead;
    while (sel < rows && M[sel][col].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(M[sel], M[lead]);
    Coeff inv = M[lead][col].inverse();
    for (auto& x : M[lead]) x = x * inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == lead || M[r][col].is_zero()) continue;
      Coeff f = M[r][col];
      for (size_t c = 0; c < M[r].size(); ++c) M[r][c] = M[r][c] - f * M[lead][c];
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

unsigned matrix_rank(CoeffMatrix M) { return static_cast<unsigned>(row_reduce(M).size()); }

namespace {

struct NotZeroDim {};
struct Inconclusive {};

struct Solver {
  const SolveOptions& opt;
  Rng rng;
  std::set<unsigned> needed_degrees;  // absolute degrees over F_p we could not reach
  bool complete = true;

  explicit Solver(const SolveOptions& o) : opt(o), rng(o.seed) {}

  // minimal polynomial of x_var in R/I, computed from Krylov iterates of the
  // normal form against the staircase basis
  uni::UPoly minimal_poly(const GroebnerBasis& gb, const std::vector<Monomial>& stairs,
                          unsigned var, std::shared_ptr<const Ring> ring) {
    const Field* F = ring->field();
    std::map<std::vector<unsigned>, size_t> index;
    auto key_of = [&](const Monomial& m) {
      std::vector<unsigned> key(ring->nvars(), 0);
      for (const auto& [v, e] : m.entries()) key[v] = e;
      return key;
    };
    for (size_t i = 0; i < stairs.size(); ++i) index[key_of(stairs[i])] = i;
    size_t n = stairs.size();

    auto to_vec = [&](const Poly& p) {
      std::vector<Coeff> v(n, Coeff::zero(F));
      for (const auto& [m, c] : p.terms()) {
        auto it = index.find(key_of(m));
        if (it == index.end()) throw std::runtime_error("normal form outside staircase");
        v[it->second] = c;
      }
      return v;
    };

    // rows: [coords of NF(x^j) | e_j]; eliminate only over the left block so
    // a row with vanishing left part records a dependence in the right part
    std::vector<unsigned> left_cols(n);
    std::iota(left_cols.begin(), left_cols.end(), 0u);
    CoeffMatrix aug;
    Poly cur = Poly::constant(ring, 1);
    Poly xv = Poly::variable(ring, var);
    for (size_t j = 0; j <= n; ++j) {
      std::vector<Coeff> row = to_vec(cur);
      for (size_t k = 0; k <= n; ++k)
        row.push_back(Coeff::from_int(F, k == j ? 1 : 0));
      aug.push_back(std::move(row));
      CoeffMatrix test = aug;
      auto piv = row_reduce(test, left_cols);
      if (piv.size() < aug.size()) {
        for (const auto& r : test) {
          bool lhs_zero = true;
          for (size_t k = 0; k < n && lhs_zero; ++k)
            if (!r[k].is_zero()) lhs_zero = false;
          if (!lhs_zero) continue;
          uni::UPoly m;
          for (size_t k = 0; k <= j; ++k) m.push_back(r[n + k]);
          if (uni::degree(m) >= 1) return uni::monic(m);
        }
        throw std::runtime_error("dependence extraction failed");
      }
      cur = normal_form(cur * xv, gb);
    }
    throw std::runtime_error("minimal polynomial not found");
  }

  // solve recursively; returns points as coordinate maps var -> value
  std::vector<std::map<unsigned, Coeff>> rec(std::vector<Poly> gens,
                                             std::shared_ptr<const Ring> ring,
                                             unsigned abs_degree) {
    const Field* F = ring->field();
    gens.erase(std::remove_if(gens.begin(), gens.end(),
                              [](const Poly& p) { return p.is_zero(); }),
               gens.end());
    if (ring->nvars() == 0) {
      if (gens.empty()) return {{}};
      for (const auto& g : gens)
        if (!g.is_zero()) return {};
      return {{}};
    }
    if (gens.empty()) throw NotZeroDim{};

    Ideal I;
    I.gens = gens;
    GroebnerBasis gb = groebner(I, opt.gb);
    if (gb.status == GBStatus::inconclusive) throw Inconclusive{};
    if (gb.contains_unit()) return {};
    if (is_zero_dimensional(gb) != Tri::yes) throw NotZeroDim{};
    auto stairs = staircase(gb, opt.max_count);

    unsigned var = ring->nvars() - 1;
    uni::UPoly mp = minimal_poly(gb, stairs, var, ring);
    uni::Factorization fac = uni::analyze(mp, rng);
    for (unsigned e : fac.higher_degrees) {
      unsigned need = abs_degree * e;
      if (need > opt.max_field_degree) complete = false;
      else needed_degrees.insert(need);
    }

    // ring without the last variable
    std::vector<std::string> names(ring->names().begin(), ring->names().end() - 1);
    auto sub = Ring::make(names, F);
    std::vector<int> var_map(ring->nvars());
    for (unsigned i = 0; i + 1 < ring->nvars(); ++i) var_map[i] = static_cast<int>(i);
    var_map[var] = -1;

    std::vector<std::map<unsigned, Coeff>> out;
    for (const Coeff& r : fac.roots) {
      std::vector<Poly> next;
      next.reserve(gens.size());
      for (const auto& g : gens) next.push_back(g.set_var(var, r).map_vars(sub, var_map));
      auto pts = rec(std::move(next), sub, abs_degree);
      for (auto& pt : pts) {
        pt[var] = r;
        out.push_back(std::move(pt));
      }
    }
    return out;
  }
};

} // namespace

SolveResult solve_zero_dim(const Ideal& I, const SolveOptions& opt) {
  SolveResult res;
  if (I.gens.empty()) throw std::invalid_argument("empty system");
  auto ring = I.ring();
  const Field* base = ring->field();
  if (base->kind() == Field::Kind::rationals)
    throw std::invalid_argument("solver requires a finite field");

  // closure count from the base-field staircase
  GroebnerBasis gb0 = groebner(I, opt.gb);
  if (gb0.status == GBStatus::inconclusive) {
    res.zero_dimensional = Tri::unknown;
    return res;
  }
  Tri zd = is_zero_dimensional(gb0);
  res.zero_dimensional = zd;
  if (zd != Tri::yes) return res;
  if (gb0.contains_unit()) {
    res.closure_count = 0;
    res.complete = true;
    return res;
  }
  res.closure_count = staircase_size(gb0, opt.max_count);

  // iterative deepening over canonical extension degrees
  unsigned k = 1;
  for (int rounds = 0; rounds < 4; ++rounds) {
    Solver s(opt);
    const Field* F = k == 1 ? base : Field::extension(base->characteristic(), k);
    auto ringK = ring->with_field(F);
    std::vector<Poly> gens;
    for (const auto& g : I.gens) gens.push_back(g.embed(ringK));
    std::vector<std::map<unsigned, Coeff>> pts;
    try {
      pts = s.rec(std::move(gens), ringK, k);
    } catch (NotZeroDim&) {
      res.zero_dimensional = Tri::no;
      return res;
    } catch (Inconclusive&) {
      res.zero_dimensional = Tri::unknown;
      return res;
    }
    unsigned next_k = k;
    for (unsigned need : s.needed_degrees) next_k = std::lcm(next_k, need);
    if (next_k == k || next_k > opt.max_field_degree) {
      res.complete = s.complete && s.needed_degrees.empty();
      res.points.clear();
      for (auto& m : pts) {
        SolvedPoint sp;
        sp.coords.reserve(ring->nvars());
        for (unsigned v = 0; v < ring->nvars(); ++v) sp.coords.push_back(m.at(v));
        res.points.push_back(std::move(sp));
      }
      // order points deterministically by residue vectors
      std::sort(res.points.begin(), res.points.end(),
                [](const SolvedPoint& a, const SolvedPoint& b) {
                  for (size_t i = 0; i < a.coords.size(); ++i) {
                    if (a.coords[i].residues() != b.coords[i].residues())
                      return a.coords[i].residues() < b.coords[i].residues();
                  }
                  return false;
                });
      return res;
    }
    k = next_k;
  }
  res.complete = false;
  return res;
}

} // namespace qfv
