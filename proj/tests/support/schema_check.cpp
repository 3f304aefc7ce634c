#include "schema_check.hpp"

namespace volform::testing {

namespace {

bool has_type(const nlohmann::json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

void check(const nlohmann::json& s, const nlohmann::json& v, const std::string& path, std::vector<std::string>& out) {
  if (s.contains("type") && !has_type(v, s["type"].get<std::string>())) {
    out.push_back(path + ": expected " + s["type"].get<std::string>());
    return;
  }
  if (s.contains("const") && v != s["const"]) out.push_back(path + ": const mismatch");
  if (s.contains("enum")) {
    bool found = false;
    for (const auto& e : s["enum"]) found = found || e == v;
    if (!found) out.push_back(path + ": not in enum");
  }
  if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>()) {
    out.push_back(path + ": below minimum");
  }
  if (s.contains("minLength") && v.is_string() && v.get<std::string>().size() < s["minLength"].get<std::size_t>()) {
    out.push_back(path + ": too short");
  }
  if (v.is_object()) {
    if (s.contains("required")) {
      for (const auto& r : s["required"]) {
        if (!v.contains(r.get<std::string>())) out.push_back(path + ": missing " + r.get<std::string>());
      }
    }
    const bool closed = s.contains("additionalProperties") && s["additionalProperties"] == false;
    for (const auto& [k, child] : v.items()) {
      if (s.contains("properties") && s["properties"].contains(k)) {
        check(s["properties"][k], child, path + "." + k, out);
      } else if (closed) {
        out.push_back(path + ": unexpected property " + k);
      }
    }
  }
  if (v.is_array() && s.contains("items")) {
    for (std::size_t i = 0; i < v.size(); ++i) check(s["items"], v[i], path + "[" + std::to_string(i) + "]", out);
  }
}

}  // namespace

std::vector<std::string> schema_violations(const nlohmann::json& schema, const nlohmann::json& doc) {
  std::vector<std::string> out;
  check(schema, doc, "$", out);
  return out;
}

}  // namespace volform::testing
