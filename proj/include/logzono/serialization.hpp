#pragma once

// JSON records for the library types, and the CSV table for reach results.
//
//   zonotope         {"dim": n, "center": "0101", "generators": ["1000", ...]}
//   matrix zonotope  {"rows": r, "cols": c, "center": ["01", "10"], "generators": [["11", "00"], ...]}
//   point set        {"dim": n, "points": [...]}  (points sorted lexicographically)
//   LFSR             {"length": l, "feedback": [...], "output": [...]}
//   cipher instance  {"spec": LFSR, "message": "...", "ciphertext": "...", "key": "..." (optional)}

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "logzono/bitmatrix.hpp"
#include "logzono/bitvec.hpp"
#include "logzono/errors.hpp"
#include "logzono/explicit_set.hpp"
#include "logzono/lfsr.hpp"
#include "logzono/matrix_zonotope.hpp"
#include "logzono/reach.hpp"
#include "logzono/zonotope.hpp"

namespace logzono {

using Json = nlohmann::json;

namespace detail {

inline const Json& field(const Json& j, const char* key, const char* record) {
  if (!j.is_object()) throw FormatError(std::string(record) + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string(record) + ": missing field '" + key + "'");
  return *it;
}

inline BitVec bits_field(const Json& j, const char* record) {
  if (!j.is_string()) throw FormatError(std::string(record) + ": bitstrings must be JSON strings");
  return BitVec::from_string(j.get<std::string>());
}

inline std::size_t size_field(const Json& j, const char* key, const char* record) {
  const Json& v = field(j, key, record);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw FormatError(std::string(record) + ": '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

inline const Json& array_field(const Json& j, const char* key, const char* record) {
  const Json& v = field(j, key, record);
  if (!v.is_array()) throw FormatError(std::string(record) + ": '" + key + "' must be an array");
  return v;
}

inline Json matrix_rows(const BitMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r).to_string());
  return rows;
}

inline BitMatrix matrix_from_rows(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) {
    throw FormatError("matrix zonotope: expected " + std::to_string(rows) + " row strings");
  }
  std::vector<BitVec> out;
  for (const Json& r : j) {
    BitVec v = bits_field(r, "matrix zonotope");
    if (v.size() != cols) throw FormatError("matrix zonotope: row of length " + std::to_string(v.size()));
    out.push_back(std::move(v));
  }
  return BitMatrix::from_rows(std::move(out));
}

}  // namespace detail

inline Json to_json(const LogicalZonotope& z) {
  Json gens = Json::array();
  for (const BitVec& g : z.generators()) gens.push_back(g.to_string());
  return {{"dim", z.dim()}, {"center", z.center().to_string()}, {"generators", gens}};
}

inline LogicalZonotope zonotope_from_json(const Json& j) {
  const std::size_t dim = detail::size_field(j, "dim", "zonotope");
  BitVec center = detail::bits_field(detail::field(j, "center", "zonotope"), "zonotope");
  if (center.size() != dim) throw DimensionError("zonotope: center length differs from dim");
  std::vector<BitVec> gens;
  for (const Json& g : detail::array_field(j, "generators", "zonotope")) {
    gens.push_back(detail::bits_field(g, "zonotope"));
  }
  return LogicalZonotope(std::move(center), std::move(gens));
}

inline Json to_json(const LogicalMatrixZonotope& z) {
  Json gens = Json::array();
  for (const BitMatrix& g : z.generators()) gens.push_back(detail::matrix_rows(g));
  return {{"rows", z.rows()}, {"cols", z.cols()}, {"center", detail::matrix_rows(z.center())}, {"generators", gens}};
}

inline LogicalMatrixZonotope matrix_zonotope_from_json(const Json& j) {
  const std::size_t rows = detail::size_field(j, "rows", "matrix zonotope");
  const std::size_t cols = detail::size_field(j, "cols", "matrix zonotope");
  BitMatrix center = detail::matrix_from_rows(detail::field(j, "center", "matrix zonotope"), rows, cols);
  std::vector<BitMatrix> gens;
  for (const Json& g : detail::array_field(j, "generators", "matrix zonotope")) {
    gens.push_back(detail::matrix_from_rows(g, rows, cols));
  }
  return LogicalMatrixZonotope(std::move(center), std::move(gens));
}

inline Json to_json(const ExplicitSet& s) {
  Json pts = Json::array();
  for (const BitVec& p : s) pts.push_back(p.to_string());
  return {{"dim", s.dim()}, {"points", pts}};
}

inline ExplicitSet explicit_set_from_json(const Json& j) {
  const std::size_t dim = detail::size_field(j, "dim", "point set");
  std::vector<BitVec> pts;
  for (const Json& p : detail::array_field(j, "points", "point set")) pts.push_back(detail::bits_field(p, "point set"));
  return ExplicitSet(dim, std::move(pts));
}

inline Json to_json(const LfsrSpec& s) { return {{"length", s.length}, {"feedback", s.feedback}, {"output", s.output}}; }

inline LfsrSpec lfsr_spec_from_json(const Json& j) {
  LfsrSpec s;
  s.length = detail::size_field(j, "length", "LFSR");
  auto taps = [&](const char* key) {
    std::vector<std::size_t> out;
    for (const Json& t : detail::array_field(j, key, "LFSR")) {
      if (!t.is_number_integer() || t.get<long long>() < 0) throw FormatError("LFSR: taps must be integers");
      out.push_back(t.get<std::size_t>());
    }
    return out;
  };
  s.feedback = taps("feedback");
  s.output = taps("output");
  s.validate();
  return s;
}

struct InstanceFile {
  LfsrSpec spec;
  CipherInstance instance;
  std::optional<BitVec> key;
};

inline Json to_json(const InstanceFile& f) {
  Json j{{"spec", to_json(f.spec)},
         {"message", f.instance.message.to_string()},
         {"ciphertext", f.instance.ciphertext.to_string()}};
  if (f.key) j["key"] = f.key->to_string();
  return j;
}

inline InstanceFile instance_from_json(const Json& j) {
  InstanceFile f;
  f.spec = lfsr_spec_from_json(detail::field(j, "spec", "instance"));
  f.instance.message = detail::bits_field(detail::field(j, "message", "instance"), "instance");
  f.instance.ciphertext = detail::bits_field(detail::field(j, "ciphertext", "instance"), "instance");
  if (f.instance.message.size() != f.instance.ciphertext.size()) {
    throw DimensionError("instance: message and ciphertext lengths differ");
  }
  if (j.contains("key")) {
    f.key = detail::bits_field(j["key"], "instance");
    if (f.key->size() != f.spec.length) throw DimensionError("instance: key length differs from register length");
  }
  return f;
}

/// Per-step sizes, marginals and the sets themselves. With
/// `with_timings == false` the output depends only on the inputs.
inline Json to_json(const ReachResult& r, bool with_timings = true) {
  Json steps = Json::array();
  for (std::size_t k = 0; k < r.steps.size(); ++k) {
    const ReachStep& s = r.steps[k];
    Json marg = Json::array();
    for (dsl::Domain d : s.marginals) marg.push_back(dsl::to_string(d));
    Json step{{"k", k}, {"joint_size", s.joint_size}, {"size", s.table_size}, {"marginals", marg}};
    if (with_timings) step["seconds"] = s.seconds;
    if (r.backend == Backend::Zonotope) {
      Json zs = Json::array();
      for (const LogicalZonotope& z : s.zonotopes) zs.push_back(to_json(z));
      step["zonotopes"] = zs;
    } else if (s.states) {
      step["states"] = to_json(*s.states)["points"];
    }
    steps.push_back(std::move(step));
  }
  Json j{{"backend", to_string(r.backend)}, {"horizon", r.horizon}, {"state_vars", r.state_vars}, {"steps", steps}};
  if (with_timings) j["total_seconds"] = total_seconds(r);
  return j;
}

inline constexpr const char* kReachCsvHeader = "N,backend,time_s,size";

/// One row per requested horizon: cumulative time to reach step N and the
/// size of the step-N set.
inline std::string reach_csv_row(const ReachResult& r, std::size_t n) {
  if (n >= r.steps.size()) throw UsageError("reach_csv_row: step " + std::to_string(n) + " beyond horizon");
  double t = 0.0;
  for (std::size_t k = 0; k <= n; ++k) t += r.steps[k].seconds;
  std::ostringstream os;
  os << n << ',' << to_string(r.backend) << ',' << t << ',' << r.steps[n].table_size;
  return os.str();
}

/// Parses JSON text, turning parser failures into FormatError.
inline Json parse_json(const std::string& text, const std::string& origin = "input") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(origin + ": " + e.what());
  }
}

}  // namespace logzono
