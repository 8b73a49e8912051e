#ifndef QFV_PIPELINE_HPP
#define QFV_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "qfv/hilbert.hpp"
#include "qfv/singularity.hpp"

namespace qfv {

struct KeyVarietyDescriptor {
  std::string name;
  WeightedSpace ambient;                    // weight-0 coords are affine parameters
  std::vector<std::string> key_params;      // parameter names used by the equations
  std::vector<std::string> equation_text;   // empty when the user supplies none
  long long affine_dim = 0;                 // dimension of the affine key variety
  ZPoly n_key;                              // optional Hilbert numerator
  std::string witness_text;                 // Claim C witness polynomial
  long long sing_dim_bound = -1;            // declared dim Sing, trusted metadata

  bool has_equations() const { return !equation_text.empty(); }
  long long proj_dim() const { return affine_dim - 1; }
  void validate() const;
};

struct SectionRow {
  long long weight = 0;
  std::string coord;
  std::string rhs_text;
};

struct CoordChange {
  std::vector<std::string> old_names;
  std::vector<std::string> new_names;
};

struct ExpectedFinding {
  std::string where;
  unsigned count = 1;
  QuotientSingularity type;
};

struct ChartPlan {
  std::vector<std::string> charts;
  bool analyze_residual = true;
};

struct SectionTable {
  long long class_no = 0;
  std::string key_name;
  KeyVarietyDescriptor key;                  // per-class weights and metadata
  std::vector<std::string> params;
  std::vector<SectionRow> rows;
  std::optional<CoordChange> change;
  char table_kind = 'T';                     // 'T' or 'C' (printed level)
  std::vector<long long> expected_embedding; // sorted weights of the printed ambient
  ChartPlan plan;
  std::vector<ExpectedFinding> expected;

  void validate() const;
  /// Rows for a target level: the printed table minus its extra weight-1
  /// cuts (X keeps table minus 1 for kind T, minus 2 for kind C; T for a
  /// C-table drops 1).
  std::vector<SectionRow> rows_for(char level) const;
  /// Rows of weight <= cutoff (intermediate varieties).
  std::vector<SectionRow> rows_up_to(char level, long long cutoff) const;
};

struct CandidateRecord {
  long long class_no = 0;
  std::string key_name;
  std::vector<long long> px_weights;  // sorted
  Basket basket;
  std::vector<std::pair<long long, unsigned>> profile;  // strictly ascending degrees

  void validate(long long key_proj_dim) const;
};

std::vector<std::pair<long long, unsigned>> derive_T_profile(
    std::span<const std::pair<long long, unsigned>> x_profile);

/// Equations and ambient after substituting the section rows; the cone
/// dimension tracks the eliminations.
struct BuiltSystem {
  WeightedSpace ambient;        // remaining projective coordinates
  std::vector<Poly> equations;  // over the verification field, parameters specialized
  long long cone_dim = 0;
};

/// Ambient bookkeeping only (depth tables-only): remaining weight multiset.
std::vector<long long> eliminated_ambient(const SectionTable& table, char level);

/// Full substitution build; requires key equations.
BuiltSystem build_system(const SectionTable& table, char level, std::uint64_t seed,
                         const Field* field);
/// Intermediate variety K(b_i): rows of weight <= the i-th distinct row
/// weight applied (i = 0 gives the key itself).
BuiltSystem intermediate(const SectionTable& table, char level, unsigned i,
                         std::uint64_t seed, const Field* field);

struct StratumReport {
  std::string label;
  Tri smooth = Tri::unknown;
  std::string note;
  std::vector<Finding> findings;      // typed quotient points with orbit counts applied
};

struct AnalysisOptions {
  SolveOptions solve{};
  GBOptions gb{};
  bool check_base_locus_guidance = false;
};

struct VarietyAnalysis {
  Tri quasi_smooth = Tri::unknown;
  std::vector<StratumReport> strata;
  std::vector<Finding> findings;
  std::string failure;
};

/// Chart-by-chart quasi-smoothness plus quotient-point classification over
/// one seed. The plan's charts stratify the space (chart i adds the previous
/// chart coordinates' vanishing); the residual stratum sets all of them to 0.
VarietyAnalysis analyze_variety(const BuiltSystem& sys, const ChartPlan& plan,
                                std::uint64_t seed, const AnalysisOptions& opt = {});

struct ClaimVerdict {
  Tri verdict = Tri::unknown;
  std::string detail;
  std::vector<std::string> evidence;
};

ClaimVerdict claim_A(const SectionTable& table, std::span<const std::uint64_t> seeds,
                     const Field* field, const AnalysisOptions& opt = {});
ClaimVerdict claim_B(const VarietyAnalysis& analysis, const CandidateRecord& record,
                     const WeightedSpace& x_ambient);
ClaimVerdict claim_C(const SectionTable& table, std::span<const std::uint64_t> seeds,
                     const Field* field, const AnalysisOptions& opt = {});

enum class Depth { tables_only, full };

struct CheckResult {
  std::string name;
  Tri verdict = Tri::unknown;
  std::string detail;
};

struct VerificationReport {
  long long class_no = 0;
  Depth depth = Depth::tables_only;
  std::vector<std::uint64_t> seeds;
  std::vector<CheckResult> checks;
  std::optional<ClaimVerdict> a, b, c;
  std::optional<Basket> computed_basket;
  std::optional<GenusResult> genus_value;
  std::optional<Rational> degree_value;
  std::vector<BigInt> series;

  Tri overall() const;
};

VerificationReport verify_candidate(const CandidateRecord& record, const SectionTable& table,
                                    std::span<const std::uint64_t> seeds, Depth depth,
                                    std::uint64_t characteristic = (1ull << 31) - 1,
                                    const AnalysisOptions& opt = {});

} // namespace qfv

#endif
