#include "qfv/pipeline.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qfv/parse.hpp"

namespace qfv {

namespace {

std::shared_ptr<const Ring> extended_ring(const WeightedSpace& ambient,
                                          const std::vector<std::string>& extra1,
                                          const std::vector<std::string>& extra2,
                                          const Field* field) {
  std::vector<std::string> names = ambient.ring->names();
  for (const auto& n : extra1) names.push_back(n);
  for (const auto& n : extra2) names.push_back(n);
  return Ring::make(names, field);
}

std::string weights_str(std::span<const long long> w) {
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ",";
    os << w[i];
  }
  return os.str();
}

} // namespace

void KeyVarietyDescriptor::validate() const {
  ambient.validate();
  if (affine_dim < 3) throw std::invalid_argument("key affine dimension too small");
  const Field* Q = Field::rationals();
  auto ring = extended_ring(ambient, key_params, {}, Q);
  WeightVector w;
  w.w = ambient.weights.w;
  w.w.resize(ring->nvars(), 0);
  for (const auto& eq : equation_text) {
    Poly p = parse_poly(eq, ring);
    auto rep = p.weighted_degree(w);
    if (!rep.homogeneous)
      throw std::invalid_argument("key equation not quasi-homogeneous: " + eq);
  }
  if (!witness_text.empty()) {
    Poly b = parse_poly(witness_text, ring);
    auto rep = b.weighted_degree(w);
    if (!rep.homogeneous)
      throw std::invalid_argument("witness not quasi-homogeneous: " + witness_text);
  }
}

void SectionTable::validate() const {
  key.validate();
  if (table_kind != 'T' && table_kind != 'C')
    throw std::invalid_argument("table kind must be T or C");
  const Field* Q = Field::rationals();
  auto ring = extended_ring(key.ambient, params, {}, Q);
  WeightVector w;
  w.w = key.ambient.weights.w;
  w.w.resize(ring->nvars(), 0);

  std::set<std::string> eliminated;
  for (const auto& row : rows) {
    auto idx = key.ambient.ring->index(row.coord);
    if (!idx) throw std::invalid_argument("unknown eliminated coordinate " + row.coord);
    if (key.ambient.weights[*idx] != row.weight)
      throw std::invalid_argument("row weight disagrees with coordinate weight: " + row.coord);
    if (!eliminated.insert(row.coord).second)
      throw std::invalid_argument("coordinate eliminated twice: " + row.coord);
    Poly rhs = parse_poly(row.rhs_text, ring);
    if (!rhs.is_zero()) {
      auto rep = rhs.weighted_degree(w);
      if (!rep.homogeneous || rep.degree != row.weight)
        throw std::invalid_argument("row right-hand side has wrong weight: " + row.coord +
                                    " = " + row.rhs_text);
    }
    // the right-hand side may not involve any eliminated coordinate
    for (const auto& [m, c] : rhs.terms()) {
      (void)c;
      for (const auto& [var, e] : m.entries()) {
        (void)e;
        if (var < key.ambient.ring->nvars()) {
          const std::string& nm = key.ambient.ring->name(var);
          bool is_elim = false;
          for (const auto& r2 : rows)
            if (r2.coord == nm) is_elim = true;
          if (is_elim)
            throw std::invalid_argument("row for " + row.coord +
                                        " references an eliminated coordinate " + nm);
        }
      }
    }
  }
  unsigned w1 = 0;
  for (const auto& row : rows)
    if (row.weight == 1) ++w1;
  unsigned need = table_kind == 'T' ? 1 : 2;
  if (w1 < need)
    throw std::invalid_argument("table lacks the weight-1 rows its kind requires");
  if (change) {
    if (change->old_names.size() != change->new_names.size() || change->old_names.empty())
      throw std::invalid_argument("bad coordinate change");
    for (const auto& n : change->new_names)
      if (!key.ambient.ring->index(n))
        throw std::invalid_argument("coordinate change target missing: " + n);
    for (const auto& n : change->old_names)
      if (key.ambient.ring->index(n))
        throw std::invalid_argument("coordinate change source still present: " + n);
  }
  for (const auto& ch : plan.charts)
    if (!key.ambient.ring->index(ch))
      throw std::invalid_argument("chart coordinate not in the key ambient: " + ch);
}

std::vector<SectionRow> SectionTable::rows_for(char level) const {
  unsigned drop;
  if (level == table_kind) drop = 0;
  else if (table_kind == 'T' && level == 'X') drop = 1;
  else if (table_kind == 'C' && level == 'T') drop = 1;
  else if (table_kind == 'C' && level == 'X') drop = 2;
  else throw std::invalid_argument("level not derivable from this table");
  std::vector<SectionRow> out;
  unsigned kept1 = 0, seen1 = 0, total1 = 0;
  for (const auto& row : rows)
    if (row.weight == 1) ++total1;
  unsigned keep1 = total1 - drop;
  for (const auto& row : rows) {
    if (row.weight == 1) {
      ++seen1;
      if (kept1 < keep1) {
        out.push_back(row);
        ++kept1;
      }
    } else {
      out.push_back(row);
    }
  }
  return out;
}

std::vector<SectionRow> SectionTable::rows_up_to(char level, long long cutoff) const {
  std::vector<SectionRow> out;
  for (const auto& row : rows_for(level))
    if (row.weight <= cutoff) out.push_back(row);
  return out;
}

void CandidateRecord::validate(long long key_proj_dim) const {
  long long sum = 0;
  long long prev = 0;
  for (const auto& [a, m] : profile) {
    if (a <= prev) throw std::invalid_argument("profile degrees must increase strictly");
    if (m == 0) throw std::invalid_argument("zero multiplicity in profile");
    prev = a;
    sum += m;
  }
  if (sum != key_proj_dim - 3)
    throw std::invalid_argument("profile sum is not dim(key) - 3");
  for (const auto& q : basket.entries)
    if (!q.is_terminal_threefold_type())
      throw std::invalid_argument("record basket entry not terminal: " + q.str());
  if (!std::is_sorted(px_weights.begin(), px_weights.end()))
    throw std::invalid_argument("record weights must be sorted");
}

std::vector<std::pair<long long, unsigned>> derive_T_profile(
    std::span<const std::pair<long long, unsigned>> x_profile) {
  std::vector<std::pair<long long, unsigned>> out(x_profile.begin(), x_profile.end());
  if (out.empty() || out.front().first > 1) {
    out.insert(out.begin(), {1, 1});
  } else {
    out.front().second += 1;
  }
  return out;
}

std::vector<long long> eliminated_ambient(const SectionTable& table, char level) {
  std::set<std::string> gone;
  for (const auto& row : table.rows_for(level)) gone.insert(row.coord);
  std::vector<long long> out;
  const auto& W = table.key.ambient;
  for (unsigned v : W.projective_vars())
    if (!gone.count(W.ring->name(v))) out.push_back(W.weights[v]);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

BuiltSystem build_with_rows(const SectionTable& table, const std::vector<SectionRow>& rows,
                            std::uint64_t seed, const Field* field) {
  if (!table.key.has_equations())
    throw std::domain_error("key variety equations not available (depth tables-only)");
  const auto& W = table.key.ambient;
  std::vector<std::string> extra;
  if (table.change)
    for (const auto& n : table.change->old_names) extra.push_back(n);
  auto big = extended_ring(W, extra, [&] {
    std::vector<std::string> ps = table.key.key_params;
    for (const auto& p : table.params) ps.push_back(p);
    return ps;
  }(), field);

  Rng rng(seed);
  // parameters (and weight-0 coordinates) -> general nonzero constants
  std::map<unsigned, Poly> param_values;
  for (unsigned v = W.ring->nvars() + static_cast<unsigned>(extra.size()); v < big->nvars(); ++v)
    param_values[v] = Poly::constant(big, rng.nonzero_coeff(field));
  for (unsigned v = 0; v < W.ring->nvars(); ++v)
    if (W.weights[v] == 0) param_values[v] = Poly::constant(big, rng.nonzero_coeff(field));

  // key equations, with the preliminary linear coordinate change if present
  std::vector<Poly> eqs;
  for (const auto& text : table.key.equation_text) eqs.push_back(parse_poly(text, big));
  if (table.change) {
    size_t k = table.change->old_names.size();
    std::map<unsigned, Poly> change;
    for (size_t i = 0; i < k; ++i) {
      unsigned old_v = *big->index(table.change->old_names[i]);
      Poly lin = Poly::zero(big);
      for (size_t j = 0; j < k; ++j) {
        unsigned new_v = *big->index(table.change->new_names[j]);
        lin = lin + Poly::variable(big, new_v).scaled(rng.nonzero_coeff(field));
      }
      change[old_v] = lin;
    }
    for (auto& e : eqs) e = e.substitute(change);
  }

  // section rows
  std::map<unsigned, Poly> bindings = param_values;
  for (const auto& row : rows) {
    unsigned v = *big->index(row.coord);
    Poly rhs = parse_poly(row.rhs_text, big).substitute(param_values);
    bindings[v] = rhs;
  }
  for (auto& e : eqs) e = e.substitute(bindings);

  // compact ring on the remaining projective coordinates
  std::set<std::string> gone;
  for (const auto& row : rows) gone.insert(row.coord);
  std::vector<std::string> names;
  std::vector<long long> weights;
  std::vector<int> vmap(big->nvars(), -1);
  for (unsigned v : W.projective_vars()) {
    const std::string& nm = W.ring->name(v);
    if (gone.count(nm)) continue;
    vmap[v] = static_cast<int>(names.size());
    names.push_back(nm);
    weights.push_back(W.weights[v]);
  }
  auto final_ring = Ring::make(names, field);

  BuiltSystem out;
  out.ambient.ring = final_ring;
  out.ambient.weights.w = weights;
  for (auto& e : eqs) {
    Poly m = e.substitute(bindings).map_vars(final_ring, vmap);
    if (!m.is_zero()) {
      auto rep = m.weighted_degree(out.ambient.weights);
      if (!rep.homogeneous)
        throw std::runtime_error("substituted equation lost quasi-homogeneity");
      out.equations.push_back(std::move(m));
    }
  }
  out.cone_dim = table.key.affine_dim - static_cast<long long>(rows.size());
  return out;
}

} // namespace

BuiltSystem build_system(const SectionTable& table, char level, std::uint64_t seed,
                         const Field* field) {
  return build_with_rows(table, table.rows_for(level), seed, field);
}

BuiltSystem intermediate(const SectionTable& table, char level, unsigned i, std::uint64_t seed,
                         const Field* field) {
  auto rows = table.rows_for(level);
  std::vector<long long> distinct;
  for (const auto& r : rows)
    if (distinct.empty() || distinct.back() != r.weight) distinct.push_back(r.weight);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (i == 0) return build_with_rows(table, {}, seed, field);
  if (i > distinct.size()) throw std::invalid_argument("intermediate index out of range");
  return build_with_rows(table, table.rows_up_to(level, distinct[i - 1]), seed, field);
}

namespace {

// localized view of a system on the chart of `coord`, with the listed
// coordinates set to zero
struct ChartSystem {
  std::shared_ptr<const Ring> ring;   // chart coordinates (coord removed)
  std::vector<Poly> equations;        // variety equations restricted to the chart
  std::vector<unsigned> zeroed;       // stratum constraints, indices in chart ring
  std::vector<long long> residual;    // residual weights mod alpha
  std::vector<long long> full_weight; // true ambient weight per chart var
  long long alpha = 1;
  long long chart_dim = 0;            // expected local dimension of the variety
};

ChartSystem localize(const BuiltSystem& sys, unsigned coord,
                     const std::vector<unsigned>& zero_coords) {
  ChartSystem out;
  const auto& W = sys.ambient;
  Chart c = chart_of(W, coord);
  out.alpha = c.alpha;
  std::vector<std::string> names;
  std::vector<int> vmap(W.ring->nvars(), -1);
  for (unsigned v = 0; v < W.ring->nvars(); ++v) {
    if (v == coord) continue;
    vmap[v] = static_cast<int>(names.size());
    names.push_back(W.ring->name(v));
    out.residual.push_back(c.residual[v]);
    out.full_weight.push_back(W.weights[v]);
  }
  out.ring = Ring::make(names, W.ring->field());
  const Field* F = W.ring->field();
  for (const auto& e : sys.equations) {
    Poly p = e.set_var(coord, Coeff::one(F)).map_vars(out.ring, vmap);
    if (!p.is_zero()) out.equations.push_back(p);
  }
  for (unsigned z : zero_coords)
    if (z != coord) out.zeroed.push_back(static_cast<unsigned>(vmap[z]));
  out.chart_dim = sys.cone_dim - 1;
  return out;
}

// exact stabilizer of a chart point: gcd of the ambient weights of all
// nonvanishing coordinates (the chart coordinate itself counts, value 1)
long long point_stabilizer(const ChartSystem& cs, std::span<const Coeff> pt, long long alpha) {
  long long g = alpha;
  for (size_t i = 0; i < pt.size(); ++i)
    if (!pt[i].is_zero()) g = std::gcd(g, cs.full_weight[i]);
  return g;
}

LocalizedSystem localize_at_point(const ChartSystem& cs, std::span<const Coeff> pt,
                                  long long stab) {
  LocalizedSystem L;
  const Field* Fp = pt.empty() ? cs.ring->field() : pt[0].field();
  auto ring = Fp == cs.ring->field() ? cs.ring : cs.ring->with_field(Fp);
  L.ring = ring;
  L.alpha = stab;
  for (size_t i = 0; i < cs.residual.size(); ++i)
    L.residual.push_back(cs.full_weight[i] % stab);
  std::map<unsigned, Poly> shift;
  for (unsigned v = 0; v < ring->nvars(); ++v)
    if (!pt[v].is_zero())
      shift[v] = Poly::variable(ring, v) + Poly::constant(ring, pt[v]);
  for (const auto& e : cs.equations) {
    Poly p = (Fp == cs.ring->field()) ? e : e.embed(ring);
    L.equations.push_back(shift.empty() ? p : p.substitute(shift));
  }
  return L;
}

struct StratumContext {
  const AnalysisOptions* opt;
  std::uint64_t seed;
};

// quasi-smoothness of the variety on one chart stratum via the
// singular-locus ideal, then classification of the quotient points on the
// nonfree loci of the stratum
StratumReport analyze_chart_stratum(const BuiltSystem& sys, unsigned coord,
                                    const std::vector<unsigned>& zero_coords,
                                    const StratumContext& ctx) {
  StratumReport rep;
  rep.label = sys.ambient.ring->name(coord) + "-chart";
  ChartSystem cs = localize(sys, coord, zero_coords);
  unsigned n = cs.ring->nvars();
  if (cs.equations.empty()) {
    // ambient space: smooth, only the group quotient contributes
    rep.smooth = Tri::yes;
  }
  long long codim_ll = static_cast<long long>(n) - cs.chart_dim;
  if (codim_ll < 0) {
    rep.smooth = Tri::no;
    rep.note = "chart dimension exceeds coordinate count";
    return rep;
  }
  unsigned codim = static_cast<unsigned>(codim_ll);

  std::vector<unsigned> all_vars(n);
  std::iota(all_vars.begin(), all_vars.end(), 0u);

  if (!cs.equations.empty()) {
    Ideal sing = singular_locus_ideal(cs.equations, all_vars, codim);
    for (unsigned z : cs.zeroed) sing.gens.push_back(Poly::variable(cs.ring, z));
    GroebnerBasis gb = groebner(sing, ctx.opt->gb);
    Tri empty = is_empty(gb);
    if (empty == Tri::yes) {
      rep.smooth = Tri::yes;
    } else if (empty == Tri::unknown) {
      rep.smooth = Tri::unknown;
      rep.note = "singular-locus Groebner basis inconclusive";
      return rep;
    } else {
      Tri zd = is_zero_dimensional(gb);
      if (zd != Tri::yes) {
        rep.smooth = zd == Tri::no ? Tri::no : Tri::unknown;
        rep.note = "singular locus not zero-dimensional on chart";
        return rep;
      }
      Ideal restricted = sing;
      SolveResult sol = solve_zero_dim(restricted, ctx.opt->solve);
      if (sol.zero_dimensional != Tri::yes || !sol.complete) {
        rep.smooth = Tri::unknown;
        rep.note = "singular points could not be enumerated";
        return rep;
      }
      bool all_ok = true;
      for (const auto& p : sol.points) {
        long long stab = point_stabilizer(cs, p.coords, cs.alpha);
        LocalizedSystem L = localize_at_point(cs, p.coords, stab);
        LpcResult lr = lpc_classify(L, static_cast<unsigned>(cs.chart_dim));
        if (lr.kind != LpcKind::smooth && lr.kind != LpcKind::quotient) all_ok = false;
      }
      if (all_ok) {
        rep.smooth = Tri::yes;
        rep.note = "singular-locus candidates all pass the linear-part check";
      } else {
        rep.smooth = Tri::no;
        rep.note = "cone singular point on chart";
        return rep;
      }
    }
  }

  // quotient points on the nonfree loci
  if (cs.alpha <= 1) return rep;
  std::map<std::pair<long long, std::string>, unsigned> bucket;  // (stab, type) -> #solutions
  std::map<std::pair<long long, std::string>, QuotientSingularity> bucket_type;
  std::set<std::string> seen;  // dedup solutions across divisors
  for (long long d = 2; d <= cs.alpha; ++d) {
    if (cs.alpha % d) continue;
    std::vector<Poly> gens = cs.equations;
    for (unsigned v = 0; v < n; ++v)
      if (cs.residual[v] % d != 0) gens.push_back(Poly::variable(cs.ring, v));
    for (unsigned z : cs.zeroed) gens.push_back(Poly::variable(cs.ring, z));
    Ideal I;
    I.gens = gens;
    GroebnerBasis gb = groebner(I, ctx.opt->gb);
    if (is_empty(gb) == Tri::yes) continue;
    if (is_zero_dimensional(gb) != Tri::yes) {
      rep.smooth = rep.smooth == Tri::no ? Tri::no : Tri::unknown;
      rep.note = "nonfree locus meets the variety positively";
      return rep;
    }
    SolveResult sol = solve_zero_dim(I, ctx.opt->solve);
    if (!sol.complete) {
      rep.smooth = Tri::unknown;
      rep.note = "nonfree-locus points could not be enumerated";
      return rep;
    }
    for (const auto& p : sol.points) {
      std::ostringstream key;
      key << p.point_field()->describe();
      for (const auto& c : p.coords)
        key << ":" << c.residues()[0] << "." << c.residues()[1] << "." << c.residues()[2]
            << "." << c.residues()[3];
      if (!seen.insert(key.str()).second) continue;
      long long stab = point_stabilizer(cs, p.coords, cs.alpha);
      if (stab <= 1) continue;
      LocalizedSystem L = localize_at_point(cs, p.coords, stab);
      LpcResult lr = lpc_classify(L, static_cast<unsigned>(cs.chart_dim));
      if (lr.kind == LpcKind::smooth) continue;
      if (lr.kind != LpcKind::quotient) {
        rep.smooth = Tri::no;
        rep.note = "nonfree-locus point fails the linear-part check";
        return rep;
      }
      auto bk = std::make_pair(stab, lr.type.str());
      bucket[bk] += 1;
      bucket_type.emplace(bk, lr.type);
    }
  }
  unsigned idx = 0;
  for (const auto& [bk, cnt] : bucket) {
    long long orbit = cs.alpha / bk.first;
    if (cnt % orbit != 0) {
      rep.smooth = Tri::unknown;
      rep.note = "orbit counting mismatch on nonfree locus";
      return rep;
    }
    unsigned points = cnt / static_cast<unsigned>(orbit);
    for (unsigned i = 0; i < points; ++i) {
      Finding f;
      f.point_id = rep.label + "#" + std::to_string(idx++);
      f.type = bucket_type.at(bk);
      rep.findings.push_back(f);
    }
  }
  return rep;
}

// the residual stratum: every plan chart coordinate vanishes; stratify over
// the remaining projective coordinates and classify each point
std::vector<StratumReport> analyze_residual(const BuiltSystem& sys,
                                            const std::vector<unsigned>& plan_coords,
                                            const StratumContext& ctx) {
  std::vector<StratumReport> reps;
  const auto& W = sys.ambient;
  std::vector<unsigned> zero = plan_coords;
  for (unsigned v : W.projective_vars()) {
    if (std::find(plan_coords.begin(), plan_coords.end(), v) != plan_coords.end()) continue;
    StratumReport rep;
    rep.label = "residual:" + W.ring->name(v);
    ChartSystem cs = localize(sys, v, zero);
    std::vector<Poly> gens = cs.equations;
    for (unsigned z : cs.zeroed) gens.push_back(Poly::variable(cs.ring, z));
    if (gens.empty()) {
      rep.smooth = Tri::no;
      rep.note = "residual locus is the whole chart";
      reps.push_back(rep);
      zero.push_back(v);
      continue;
    }
    Ideal I;
    I.gens = gens;
    GroebnerBasis gb = groebner(I, ctx.opt->gb);
    if (is_empty(gb) == Tri::yes) {
      rep.smooth = Tri::yes;
      rep.note = "empty";
      reps.push_back(rep);
      zero.push_back(v);
      continue;
    }
    if (is_zero_dimensional(gb) != Tri::yes) {
      rep.smooth = Tri::unknown;
      rep.note = "residual locus not finite on this stratum";
      reps.push_back(rep);
      zero.push_back(v);
      continue;
    }
    SolveResult sol = solve_zero_dim(I, ctx.opt->solve);
    if (!sol.complete) {
      rep.smooth = Tri::unknown;
      rep.note = "residual points could not be enumerated";
      reps.push_back(rep);
      zero.push_back(v);
      continue;
    }
    rep.smooth = Tri::yes;
    std::map<std::pair<long long, std::string>, unsigned> bucket;
    std::map<std::pair<long long, std::string>, QuotientSingularity> bucket_type;
    for (const auto& p : sol.points) {
      long long stab = point_stabilizer(cs, p.coords, cs.alpha);
      LocalizedSystem L = localize_at_point(cs, p.coords, stab);
      LpcResult lr = lpc_classify(L, static_cast<unsigned>(cs.chart_dim));
      if (lr.kind == LpcKind::smooth) continue;
      if (lr.kind != LpcKind::quotient) {
        rep.smooth = Tri::no;
        rep.note = "residual point fails the linear-part check";
        break;
      }
      auto bk = std::make_pair(stab, lr.type.str());
      bucket[bk] += 1;
      bucket_type.emplace(bk, lr.type);
    }
    if (rep.smooth == Tri::yes) {
      unsigned idx = 0;
      for (const auto& [bk, cnt] : bucket) {
        long long orbit = cs.alpha / bk.first;
        if (cnt % orbit != 0) {
          rep.smooth = Tri::unknown;
          rep.note = "orbit counting mismatch on residual stratum";
          break;
        }
        for (unsigned i = 0; i < cnt / orbit; ++i) {
          Finding f;
          f.point_id = rep.label + "#" + std::to_string(idx++);
          f.type = bucket_type.at(bk);
          rep.findings.push_back(f);
        }
      }
    }
    reps.push_back(rep);
    zero.push_back(v);
  }
  return reps;
}

} // namespace

VarietyAnalysis analyze_variety(const BuiltSystem& sys, const ChartPlan& plan,
                                std::uint64_t seed, const AnalysisOptions& opt) {
  VarietyAnalysis out;
  StratumContext ctx{&opt, seed};
  std::vector<unsigned> plan_coords;
  for (const auto& name : plan.charts) {
    auto idx = sys.ambient.ring->index(name);
    if (!idx) throw std::invalid_argument("plan chart not in ambient: " + name);
    plan_coords.push_back(*idx);
  }
  std::vector<unsigned> zero;
  for (unsigned coord : plan_coords) {
    out.strata.push_back(analyze_chart_stratum(sys, coord, zero, ctx));
    zero.push_back(coord);
  }
  if (plan.analyze_residual) {
    for (auto& rep : analyze_residual(sys, plan_coords, ctx)) out.strata.push_back(rep);
  }
  out.quasi_smooth = Tri::yes;
  for (const auto& rep : out.strata) {
    if (rep.smooth == Tri::no) {
      out.quasi_smooth = Tri::no;
      out.failure = rep.label + ": " + rep.note;
      break;
    }
    if (rep.smooth == Tri::unknown && out.quasi_smooth == Tri::yes) {
      out.quasi_smooth = Tri::unknown;
      out.failure = rep.label + ": " + rep.note;
    }
  }
  for (const auto& rep : out.strata)
    for (const auto& f : rep.findings) out.findings.push_back(f);
  return out;
}

namespace {

Tri aggregate_seeds(std::span<const Tri> verdicts) {
  bool any_unknown = false;
  for (Tri t : verdicts) {
    if (t == Tri::no) return Tri::no;
    if (t == Tri::unknown) any_unknown = true;
  }
  return any_unknown ? Tri::unknown : Tri::yes;
}

} // namespace

ClaimVerdict claim_A(const SectionTable& table, std::span<const std::uint64_t> seeds,
                     const Field* field, const AnalysisOptions& opt) {
  ClaimVerdict out;
  std::vector<Tri> verdicts;
  for (std::uint64_t seed : seeds) {
    BuiltSystem T = build_system(table, 'T', seed, field);
    VarietyAnalysis an = analyze_variety(T, table.plan, seed, opt);
    verdicts.push_back(an.quasi_smooth);
    std::ostringstream ev;
    ev << "seed " << seed << ": ";
    for (const auto& s : an.strata)
      ev << s.label << "="
         << (s.smooth == Tri::yes ? "ok" : s.smooth == Tri::no ? "singular" : "inconclusive")
         << " ";
    out.evidence.push_back(ev.str());
    if (an.quasi_smooth == Tri::no && out.detail.empty()) out.detail = an.failure;
  }
  out.verdict = aggregate_seeds(verdicts);
  return out;
}

ClaimVerdict claim_B(const VarietyAnalysis& analysis, const CandidateRecord& record,
                     const WeightedSpace& x_ambient) {
  ClaimVerdict out;
  Basket computed = assemble_basket(analysis.findings, /*promote=*/true);
  bool residues_ok = true;
  for (const auto& q : computed.entries)
    if (!residue_check(q, x_ambient)) residues_ok = false;
  if (computed == record.basket && residues_ok) {
    out.verdict = Tri::yes;
    out.detail = "basket " + computed.str();
  } else {
    out.verdict = Tri::no;
    auto [extra, missing] = computed.diff(record.basket);
    std::ostringstream os;
    os << "computed " << computed.str() << " expected " << record.basket.str();
    if (!extra.empty() || !missing.empty()) {
      os << "; difference:";
      for (const auto& q : extra) os << " +" << q.str();
      for (const auto& q : missing) os << " -" << q.str();
    }
    if (!residues_ok) os << "; residue condition failed";
    out.detail = os.str();
  }
  return out;
}

ClaimVerdict claim_C(const SectionTable& table, std::span<const std::uint64_t> seeds,
                     const Field* field, const AnalysisOptions& opt) {
  ClaimVerdict out;
  std::vector<Tri> verdicts;
  for (std::uint64_t seed : seeds) {
    BuiltSystem X = build_system(table, 'X', seed, field);
    // witness restricted to X through the same substitutions
    auto rows = table.rows_for('X');
    const auto& W = table.key.ambient;
    std::vector<std::string> extra;
    if (table.change)
      for (const auto& n : table.change->old_names) extra.push_back(n);
    auto big = extended_ring(W, extra, [&] {
      std::vector<std::string> ps = table.key.key_params;
      for (const auto& p : table.params) ps.push_back(p);
      return ps;
    }(), field);
    Rng rng(seed);
    std::map<unsigned, Poly> param_values;
    for (unsigned v = W.ring->nvars() + static_cast<unsigned>(extra.size()); v < big->nvars(); ++v)
      param_values[v] = Poly::constant(big, rng.nonzero_coeff(field));
    for (unsigned v = 0; v < W.ring->nvars(); ++v)
      if (W.weights[v] == 0) param_values[v] = Poly::constant(big, rng.nonzero_coeff(field));
    std::map<unsigned, Poly> bindings = param_values;
    for (const auto& row : rows) {
      unsigned v = *big->index(row.coord);
      bindings[v] = parse_poly(row.rhs_text, big).substitute(param_values);
    }
    Poly witness = parse_poly(table.key.witness_text, big).substitute(bindings);
    std::vector<int> vmap(big->nvars(), -1);
    for (unsigned v = 0; v < X.ambient.ring->nvars(); ++v)
      vmap[*big->index(X.ambient.ring->name(v))] = static_cast<int>(v);
    Poly wX = witness.map_vars(X.ambient.ring, vmap);
    if (wX.is_zero()) {
      verdicts.push_back(Tri::no);
      out.detail = "witness vanishes identically on X";
      continue;
    }
    BuiltSystem D = X;
    D.equations.push_back(wX);
    D.cone_dim = X.cone_dim - 1;
    // full stratification over every coordinate of the X ambient
    ChartPlan full;
    for (unsigned v : D.ambient.projective_vars()) full.charts.push_back(D.ambient.ring->name(v));
    full.analyze_residual = false;
    VarietyAnalysis an = analyze_variety(D, full, seed, opt);
    // zero-dimensional singularities are allowed; positive-dimensional or
    // inconclusive strata decide the verdict
    Tri v = Tri::yes;
    for (const auto& s : an.strata) {
      if (s.smooth == Tri::no && s.note != "cone singular point on chart" &&
          s.note != "nonfree-locus point fails the linear-part check" &&
          s.note != "residual point fails the linear-part check") {
        v = Tri::no;
        out.detail = s.label + ": " + s.note;
        break;
      }
      if (s.smooth == Tri::unknown) {
        if (s.note == "singular locus not zero-dimensional on chart") {
          v = Tri::no;
          out.detail = s.label + ": " + s.note;
          break;
        }
        v = Tri::unknown;
        out.detail = s.label + ": " + s.note;
      }
    }
    std::ostringstream ev;
    ev << "seed " << seed << ": "
       << (v == Tri::yes ? "dim Sing <= 0" : v == Tri::no ? "failed" : "inconclusive");
    out.evidence.push_back(ev.str());
    verdicts.push_back(v);
  }
  out.verdict = aggregate_seeds(verdicts);
  return out;
}

Tri VerificationReport::overall() const {
  Tri acc = Tri::yes;
  auto fold = [&](Tri t) {
    if (t == Tri::no) acc = Tri::no;
    else if (t == Tri::unknown && acc == Tri::yes) acc = Tri::unknown;
  };
  for (const auto& c : checks) fold(c.verdict);
  if (a) fold(a->verdict);
  if (b) fold(b->verdict);
  if (c) fold(c->verdict);
  return acc;
}

VerificationReport verify_candidate(const CandidateRecord& record, const SectionTable& table,
                                    std::span<const std::uint64_t> seeds, Depth depth,
                                    std::uint64_t characteristic, const AnalysisOptions& opt) {
  VerificationReport rep;
  rep.class_no = record.class_no;
  rep.depth = depth;
  rep.seeds.assign(seeds.begin(), seeds.end());

  auto push = [&](const std::string& name, bool ok, const std::string& detail) {
    rep.checks.push_back({name, ok ? Tri::yes : Tri::no, detail});
  };

  // structural checks
  try {
    record.validate(table.key.proj_dim());
    push("profile-law", true, "sum m_i = dim - 3, degrees strictly increasing");
  } catch (const std::exception& e) {
    push("profile-law", false, e.what());
  }

  auto x_ambient = eliminated_ambient(table, 'X');
  push("ambient", x_ambient == record.px_weights,
       "P_X = (" + weights_str(x_ambient) + ")");

  auto printed = eliminated_ambient(table, table.table_kind);
  bool emb_ok = printed == table.expected_embedding;
  push(table.table_kind == 'T' ? "t-embedding" : "c-embedding", emb_ok,
       "computed (" + weights_str(printed) + ")");

  {
    // T profile via the printed rows must match derive_T_profile of the record
    auto t_rows = table.rows_for('T');
    std::map<long long, unsigned> got;
    for (const auto& r : t_rows) got[r.weight] += 1;
    auto want_vec = derive_T_profile(record.profile);
    std::map<long long, unsigned> want(want_vec.begin(), want_vec.end());
    push("t-profile", got == want, "row weights match the derived T profile");
  }

  {
    // X ambient minus one weight-1 coordinate = T ambient
    auto t_amb = eliminated_ambient(table, 'T');
    std::vector<long long> reduced = x_ambient;
    auto it = std::find(reduced.begin(), reduced.end(), 1);
    bool ok = it != reduced.end();
    if (ok) {
      reduced.erase(it);
      ok = reduced == t_amb;
    }
    push("t-embedding-consistency", ok, "T ambient is P_X minus one weight-1 coordinate");
  }

  {
    bool ok = true;
    std::string bad;
    WeightedSpace xs;
    std::vector<std::string> names;
    for (size_t i = 0; i < x_ambient.size(); ++i) names.push_back("c" + std::to_string(i));
    xs.ring = Ring::make(names, Field::rationals());
    xs.weights.w = x_ambient;
    for (const auto& q : record.basket.entries)
      if (!residue_check(q, xs)) {
        ok = false;
        bad = q.str();
      }
    push("basket-residues", ok,
         ok ? "every basket entry matches a coordinate residue" : "fails for " + bad);
  }

  if (!table.expected.empty()) {
    std::vector<Finding> fs;
    unsigned id = 0;
    for (const auto& e : table.expected)
      for (unsigned i = 0; i < e.count; ++i)
        fs.push_back({e.where + "#" + std::to_string(id++), e.type});
    Basket promoted = assemble_basket(fs, true);
    push("expected-findings", promoted == record.basket,
         "promoted expected findings " + promoted.str());
  }

  if (!table.key.n_key.empty()) {
    try {
      ZPoly num = section_numerator(table.key.n_key, record.profile, table.key.proj_dim() - 3);
      HilbertData h{num, record.px_weights};
      SeriesPrefix s = expand(h, 12);
      rep.series = s.c;
      rep.genus_value = genus(s);
      rep.degree_value = anticanonical_degree(h);
      Tri rr = orbifold_rr_check(*rep.degree_value, record.basket, s);
      rep.checks.push_back({"orbifold-rr", rr, "series vs degree and basket"});
    } catch (const std::exception& e) {
      push("numerics", false, e.what());
    }
  }

  if (depth == Depth::full) {
    const Field* F = Field::prime(characteristic);
    if (!table.key.has_equations()) {
      rep.checks.push_back({"key-equations", Tri::unknown,
                            "key equations not supplied; claims skipped"});
    } else {
      rep.a = claim_A(table, seeds, F, opt);
      // findings of the first seed drive the basket comparison; all seeds
      // must agree for claim A already
      BuiltSystem T = build_system(table, 'T', seeds.empty() ? 1 : seeds[0], F);
      VarietyAnalysis an = analyze_variety(T, table.plan, seeds.empty() ? 1 : seeds[0], opt);
      rep.computed_basket = assemble_basket(an.findings, true);
      if (rep.a->verdict == Tri::yes) {
        WeightedSpace xs;
        std::vector<std::string> names;
        for (size_t i = 0; i < x_ambient.size(); ++i) names.push_back("c" + std::to_string(i));
        xs.ring = Ring::make(names, Field::rationals());
        xs.weights.w = x_ambient;
        rep.b = claim_B(an, record, xs);
      } else {
        rep.b = ClaimVerdict{Tri::unknown, "claim A did not pass", {}};
      }
      if (rep.a->verdict == Tri::yes &&
          (!rep.b || rep.b->verdict == Tri::yes)) {
        rep.c = claim_C(table, seeds, F, opt);
      } else {
        rep.c = ClaimVerdict{Tri::unknown, "claims A/B did not pass", {}};
      }
    }
  }
  return rep;
}

} // namespace qfv
