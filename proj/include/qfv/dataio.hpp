#ifndef QFV_DATAIO_HPP
#define QFV_DATAIO_HPP

#include <map>
#include <string>

#include "qfv/pipeline.hpp"

namespace qfv {

/// Shipped data: candidate records (one per class) and their section tables,
/// plus optional key-variety equation files picked up from keys/<name>.eqs.
struct Dataset {
  std::string root;
  std::map<long long, CandidateRecord> records;
  std::map<long long, SectionTable> tables;
};

struct ValidationIssue {
  std::string where;
  std::string what;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  bool ok() const { return errors.empty(); }
  std::string str() const;
};

/// Load a dataset directory (records.txt + tables/ + optional keys/).
Dataset load_dataset(const std::string& path);

/// Cross-validation: quasi-homogeneous rows, distinct eliminations, ambient
/// reproduction, embedding reproduction, profile law, expected findings vs
/// record baskets, residue conditions.
ValidationReport validate_dataset(const Dataset& ds);

/// Canonical serializations (load -> save -> load is the identity).
std::string save_records(const Dataset& ds);
std::string save_table(const SectionTable& t);

SectionTable parse_table_text(const std::string& text, const std::string& label,
                              const std::string& dataset_root);
std::map<long long, CandidateRecord> parse_records_text(const std::string& text,
                                                        const std::string& label);

std::string emit_report_text(const VerificationReport& rep);
std::string emit_report_json(const VerificationReport& rep);
VerificationReport parse_report_json(const std::string& text);

std::string tri_str(Tri t);

} // namespace qfv

#endif
