#ifndef LIEFORM_REPORT_HPP
#define LIEFORM_REPORT_HPP

#include "lieform/io.hpp"
#include "lieform/torsion.hpp"

namespace lieform {

struct CheckResult {
  std::string id;        // stable slug
  std::string anchor;    // identity label, e.g. "Lemma 4.11"
  std::string status;    // pass | fail | skipped
  std::string measured;  // canonical value string
  std::string note;      // skip reason or commentary
};

/// Deterministic verification report: identical runs produce byte-identical
/// JSON (timings appear only in the text rendering).
struct VerificationReport {
  std::string algebra;
  std::string suite;
  std::vector<CheckResult> checks;
  double total_ms = 0;

  bool passed() const;
  json to_json() const;
  std::string to_text() const;
};

/// suite: one of differential | torsion | phi | cohomology | all.
/// data_dir locates golden tables; pass "" to skip golden comparisons.
VerificationReport run_suite(const Exterior& ex, const std::string& suite,
                             const std::string& data_dir);

std::vector<int> expected_primitive_degrees(const LieAlgebraData& g);

/// Locate a data file: explicit dir, then ./data, then the compiled-in
/// source-tree default.  Returns "" when absent.
std::string find_data_file(const std::string& data_dir, const std::string& name);

}  // namespace lieform

#endif
