#include "calabi/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace calabi {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_string(std::ostream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    switch (c) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      case '\r': os << "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          os << buf;
        } else {
          os << c;
        }
    }
  }
  os << '"';
}

}  // namespace

JsonValue JsonValue::array() {
  JsonValue v;
  v.type_ = Type::Array;
  return v;
}

JsonValue JsonValue::object() {
  JsonValue v;
  v.type_ = Type::Object;
  return v;
}

JsonValue& JsonValue::push_back(JsonValue v) {
  items_.push_back(std::move(v));
  return *this;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
  members_.emplace_back(key, std::move(v));
  return *this;
}

void JsonValue::dump(std::ostream& os, int indent, int level) const {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent) * (level + 1), ' ') : "";
  const std::string pad_close = indent > 0 ? std::string(static_cast<std::size_t>(indent) * level, ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (type_) {
    case Type::Null: os << "null"; break;
    case Type::Bool: os << (bool_ ? "true" : "false"); break;
    case Type::Int: os << int_; break;
    case Type::Number:
      if (std::isfinite(num_))
        os << format_double(num_);
      else
        os << "null";
      break;
    case Type::String: dump_string(os, str_); break;
    case Type::Array: {
      if (items_.empty()) {
        os << "[]";
        break;
      }
      os << '[' << nl;
      for (std::size_t i = 0; i < items_.size(); ++i) {
        os << pad;
        items_[i].dump(os, indent, level + 1);
        if (i + 1 < items_.size()) os << ',';
        os << nl;
      }
      os << pad_close << ']';
      break;
    }
    case Type::Object: {
      if (members_.empty()) {
        os << "{}";
        break;
      }
      os << '{' << nl;
      for (std::size_t i = 0; i < members_.size(); ++i) {
        os << pad;
        dump_string(os, members_[i].first);
        os << (indent > 0 ? ": " : ":");
        members_[i].second.dump(os, indent, level + 1);
        if (i + 1 < members_.size()) os << ',';
        os << nl;
      }
      os << pad_close << '}';
      break;
    }
  }
}

std::string JsonValue::dump(int indent) const {
  std::ostringstream os;
  dump(os, indent, 0);
  return os.str();
}

JsonValue json_vector(const Vec& v) {
  JsonValue a = JsonValue::array();
  for (double x : v) a.push_back(x);
  return a;
}

JsonValue json_matrix(const Mat& m) {
  JsonValue rows = JsonValue::array();
  for (int i = 0; i < m.rows(); ++i) {
    JsonValue row = JsonValue::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_number(double v) {
  return format_double(v);
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto field = [&os](const std::string& s) {
    const bool quote = s.find_first_of(",\"\n") != std::string::npos;
    if (!quote) {
      os << s;
      return;
    }
    os << '"';
    for (char c : s) {
      if (c == '"') os << '"';
      os << c;
    }
    os << '"';
  };
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) os << ',';
    field(header[i]);
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) os << ',';
      field(row[i]);
    }
    os << '\n';
  }
}

JsonValue to_json(const AnalysisReport& r) {
  JsonValue root = JsonValue::object();
  JsonValue fn = JsonValue::object();
  fn.set("name", r.function_name.empty() ? JsonValue() : JsonValue(r.function_name));
  fn.set("source", r.source);
  fn.set("dim", r.n);
  root.set("function", std::move(fn));
  root.set("point", json_vector(r.point));

  JsonValue metric = JsonValue::object();
  metric.set("detD", r.detD);
  metric.set("g_eig_min", r.g_eig_min);
  metric.set("g_eig_max", r.g_eig_max);
  root.set("metric", std::move(metric));

  JsonValue inv = JsonValue::object();
  inv.set("Tnorm2", r.Tnorm2);
  inv.set("pickJ", r.pickJ);
  inv.set("scalar_contracted", r.scalar_contracted);
  inv.set("scalar_JT", r.scalar_JT);
  inv.set("sectional_samples", json_vector(r.sectional_samples));
  root.set("invariants", std::move(inv));

  JsonValue pde = JsonValue::array();
  for (const AnalysisPdeEntry& e : r.pde) {
    JsonValue row = JsonValue::object();
    row.set("a", e.a);
    row.set("residual_12", e.residual_12);
    row.set("residual_11", e.residual_11);
    row.set("normalized_residual_12", e.normalized_residual_12);
    row.set("implied_Lsharp", e.implied_Lsharp);
    pde.push_back(std::move(row));
  }
  root.set("pde", std::move(pde));

  JsonValue frames = JsonValue::object();
  frames.set("theta", r.theta ? JsonValue(*r.theta) : JsonValue());
  frames.set("spectrum", json_vector(r.spectrum));
  frames.set("maximizer", json_vector(r.maximizer));
  root.set("frames", std::move(frames));

  JsonValue prov = JsonValue::object();
  prov.set("tool_version", kToolVersion);
  prov.set("seed", static_cast<std::int64_t>(r.seed));
  root.set("provenance", std::move(prov));
  return root;
}

namespace {

using nlohmann::json;

bool type_matches(const json& inst, const std::string& t) {
  if (t == "object") return inst.is_object();
  if (t == "array") return inst.is_array();
  if (t == "string") return inst.is_string();
  if (t == "number") return inst.is_number();
  if (t == "integer") return inst.is_number_integer();
  if (t == "boolean") return inst.is_boolean();
  if (t == "null") return inst.is_null();
  return false;
}

std::string check(const json& inst, const json& schema, const std::string& path) {
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(inst, t.get<std::string>());
    } else if (t.is_array()) {
      for (const json& alt : t)
        if (type_matches(inst, alt.get<std::string>())) ok = true;
    }
    if (!ok) return path + ": type mismatch";
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const json& v : schema["enum"])
      if (v == inst) ok = true;
    if (!ok) return path + ": value not in enum";
  }
  if (inst.is_object()) {
    if (schema.contains("required"))
      for (const json& key : schema["required"])
        if (!inst.contains(key.get<std::string>()))
          return path + ": missing required key '" + key.get<std::string>() + "'";
    const json props = schema.value("properties", json::object());
    for (auto it = inst.begin(); it != inst.end(); ++it) {
      if (props.contains(it.key())) {
        const std::string err = check(it.value(), props[it.key()], path + "/" + it.key());
        if (!err.empty()) return err;
      } else if (schema.contains("additionalProperties") &&
                 schema["additionalProperties"].is_boolean() &&
                 !schema["additionalProperties"].get<bool>()) {
        return path + ": unexpected key '" + it.key() + "'";
      }
    }
  }
  if (inst.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < inst.size(); ++i) {
      const std::string err = check(inst[i], schema["items"], path + "/" + std::to_string(i));
      if (!err.empty()) return err;
    }
  }
  return {};
}

}  // namespace

std::string schema_validate(const std::string& instance_json, const std::string& schema_json) {
  json inst, schema;
  try {
    inst = json::parse(instance_json);
  } catch (const std::exception& e) {
    return std::string("instance is not valid JSON: ") + e.what();
  }
  try {
    schema = json::parse(schema_json);
  } catch (const std::exception& e) {
    return std::string("schema is not valid JSON: ") + e.what();
  }
  return check(inst, schema, "$");
}

}  // namespace calabi
