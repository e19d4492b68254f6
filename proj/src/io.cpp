#include "lieform/io.hpp"

#include <fstream>

#include "lieform/linalg_float.hpp"

#include "lieform/lie_algebra.hpp"

namespace lieform {

long ambient_dim_of(const std::string& label) {
  if (!label.empty() && (label[0] == 'R' || label[0] == 'r')) {
    try {
      long d = std::stol(label.substr(1));
      if (d < 1 || d > 62) throw UsageError("ambient dimension out of range: " + label);
      return d;
    } catch (const std::invalid_argument&) {
      throw UsageError("bad ambient space label: " + label);
    }
  }
  // built algebra names carry their dimension
  if (label.rfind("su", 0) == 0) {
    long n = std::stol(label.substr(2));
    return n * n - 1;
  }
  if (label.rfind("so", 0) == 0) {
    long n = std::stol(label.substr(2));
    return n * (n - 1) / 2;
  }
  if (label.rfind("sp", 0) == 0) {
    long n = std::stol(label.substr(2));
    return n * (2 * n + 1);
  }
  if (label == "g2") return 14;
  if (label == "f4") return 52;
  throw UsageError("unknown algebra label: " + label);
}

ParsedForm form_from_json(const json& j) {
  ParsedForm out;
  if (!j.contains("algebra") || !j.contains("degree"))
    throw UsageError("form JSON needs 'algebra' and 'degree'");
  out.algebra = j.at("algebra").get<std::string>();
  out.ambient_dim = ambient_dim_of(out.algebra);
  int deg = j.at("degree").get<int>();
  if (deg < 0 || deg > out.ambient_dim) throw UsageError("degree out of range");
  out.exact = MV(static_cast<int>(out.ambient_dim), deg);
  out.flt = MVF(static_cast<int>(out.ambient_dim), deg);
  if (!j.contains("terms")) return out;
  for (const auto& t : j.at("terms")) {
    const auto& idx = t.at("idx");
    if (static_cast<int>(idx.size()) != deg) throw UsageError("term arity != degree");
    Mask m = 0;
    int prev = 0;
    for (const auto& iv : idx) {
      int i = iv.get<int>();
      if (i <= prev || i > out.ambient_dim)
        throw UsageError("term indices must be strictly increasing, 1-based");
      m |= Mask(1) << (i - 1);
      prev = i;
    }
    if (t.contains("val")) {
      out.is_float = true;
      out.flt.terms[m] = flt_from_string(t.at("val").get<std::string>());
    } else {
      auto as_str = [&](const json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
      };
      Rat num = rat_from_string(as_str(t.at("num")));
      Rat den = t.contains("den") ? rat_from_string(as_str(t.at("den"))) : Rat(1);
      if (den == 0) throw UsageError("zero denominator in form JSON");
      Rat c = num / den;
      if (c != 0) out.exact.terms[m] = c;
    }
  }
  if (out.is_float)
    for (const auto& [m, c] : out.exact.terms) out.flt.terms[m] = Flt(c);
  return out;
}

json form_to_json(const MV& v, const std::string& algebra_label) {
  json terms = json::array();
  for (const auto& [m, c] : v.terms) {
    json t;
    json idx = json::array();
    for (int i : mask_indices(m)) idx.push_back(i + 1);
    t["idx"] = idx;
    t["num"] = c.get_num().get_str();
    t["den"] = c.get_den().get_str();
    terms.push_back(t);
  }
  return json{{"algebra", algebra_label}, {"degree", v.deg}, {"terms", terms}};
}

SparseMatrix metric_from_json(const json& j) {
  long n = j.at("dim").get<long>();
  SparseMatrix m(n, n);
  const auto& rows = j.at("rows");
  if (static_cast<long>(rows.size()) != n) throw UsageError("metric rows != dim");
  for (long r = 0; r < n; ++r) {
    const auto& row = rows[r];
    if (static_cast<long>(row.size()) != n) throw UsageError("metric row length != dim");
    for (long c = 0; c < n; ++c) {
      Rat v = rat_from_string(row[c].is_string() ? row[c].get<std::string>() : row[c].dump());
      if (v != 0) m.set(r, c, v);
    }
  }
  for (long r = 0; r < n; ++r)
    for (const auto& [c, v] : m.row(r))
      if (m.at(c, r) != v) throw UsageError("metric is not symmetric");
  return m;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace lieform
