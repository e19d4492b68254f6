#ifndef LIEFORM_IO_HPP
#define LIEFORM_IO_HPP

#include <json.hpp>

#include "lieform/multivector.hpp"
#include "lieform/sparse_matrix.hpp"

namespace lieform {

using nlohmann::json;

/// MultiVector JSON: {"algebra": <name or "R<d>">, "degree": k,
///   "terms": [{"idx": [i,...], "num": "p", "den": "q"}]} with 1-based,
/// strictly increasing indices.  Float coefficients use {"val": "<decimal>"}
/// instead of num/den.
struct ParsedForm {
  std::string algebra;  // name or "R<d>"
  long ambient_dim = 0;
  bool is_float = false;
  MV exact;   // valid when !is_float
  MVF flt;    // valid when is_float
};

ParsedForm form_from_json(const json& j);
json form_to_json(const MV& v, const std::string& algebra_label);

/// Symmetric matrix JSON: {"dim": n, "rows": [["p/q", ...], ...]}.
SparseMatrix metric_from_json(const json& j);

long ambient_dim_of(const std::string& algebra_label);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace lieform

#endif
