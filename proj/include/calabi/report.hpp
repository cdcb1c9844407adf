#ifndef CALABI_REPORT_HPP
#define CALABI_REPORT_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "calabi/catalog.hpp"
#include "calabi/expr.hpp"
#include "calabi/linalg.hpp"

namespace calabi {

inline constexpr const char* kToolVersion = "calabi 0.1.0";

// Ordered JSON value. Keys serialize in insertion order and numbers with
// 17 significant digits, so byte-identical output follows from identical
// inputs. Non-finite numbers serialize as null.
class JsonValue {
 public:
  enum class Type { Null, Bool, Number, Int, String, Array, Object };

  JsonValue() : type_(Type::Null) {}
  JsonValue(bool b) : type_(Type::Bool), bool_(b) {}
  JsonValue(double v) : type_(Type::Number), num_(v) {}
  JsonValue(std::int64_t v) : type_(Type::Int), int_(v) {}
  JsonValue(int v) : type_(Type::Int), int_(v) {}
  JsonValue(const char* s) : type_(Type::String), str_(s) {}
  JsonValue(std::string s) : type_(Type::String), str_(std::move(s)) {}

  static JsonValue array();
  static JsonValue object();

  Type type() const { return type_; }

  JsonValue& push_back(JsonValue v);
  JsonValue& set(const std::string& key, JsonValue v);

  void dump(std::ostream& os, int indent = 0, int level = 0) const;
  std::string dump(int indent = 0) const;

 private:
  Type type_;
  bool bool_ = false;
  double num_ = 0.0;
  std::int64_t int_ = 0;
  std::string str_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> members_;
};

JsonValue json_vector(const Vec& v);
JsonValue json_matrix(const Mat& m);

// RFC-style CSV: header row, quoting only where needed, LF line endings.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
std::string csv_number(double v);

// Full per-point analysis of one convex function.
struct AnalysisPdeEntry {
  double a = 0.0;
  double residual_12 = 0.0;
  double residual_11 = 0.0;
  double normalized_residual_12 = 0.0;
  double implied_Lsharp = 0.0;
};

struct AnalysisReport {
  std::string function_name;  // catalog name or empty
  std::string source;         // expression text
  int n = 0;
  Vec point;
  double detD = 0.0;
  double g_eig_min = 0.0;
  double g_eig_max = 0.0;
  double Tnorm2 = 0.0;
  double pickJ = 0.0;
  double scalar_contracted = 0.0;
  double scalar_JT = 0.0;
  std::vector<double> sectional_samples;  // coordinate planes in order (i<j)
  std::vector<AnalysisPdeEntry> pde;
  std::optional<double> theta;            // absent for vanishing cubic form
  std::vector<double> spectrum;
  Vec maximizer;
  std::uint64_t seed = 0;
};

JsonValue to_json(const AnalysisReport& r);

// Minimal JSON-schema subset checker (type, properties, required, items,
// enum, additionalProperties). Returns an error description or empty.
// `instance_json` must be a serialized JSON document.
std::string schema_validate(const std::string& instance_json, const std::string& schema_json);

}  // namespace calabi

#endif
