#pragma once

// Just enough of JSON Schema to validate the committed report schema:
// type, required, properties, additionalProperties, items, enum.

#include <json.hpp>
#include <string>

namespace testsupport {

inline bool schema_valid(const nlohmann::json& schema, const nlohmann::json& value,
                         std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };

  if (schema.contains("enum")) {
    for (const auto& candidate : schema["enum"])
      if (candidate == value) return true;
    return fail("value not in enum: " + value.dump());
  }

  const std::string type = schema.value("type", "");
  if (type == "object") {
    if (!value.is_object()) return fail("expected object, got " + value.dump());
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!value.contains(key.get<std::string>()))
          return fail("missing required key " + key.get<std::string>());
    const auto props = schema.value("properties", nlohmann::json::object());
    for (auto it = value.begin(); it != value.end(); ++it) {
      if (props.contains(it.key())) {
        if (!schema_valid(props[it.key()], it.value(), why)) return false;
      } else if (schema.contains("additionalProperties")) {
        const auto& ap = schema["additionalProperties"];
        if (ap.is_boolean()) {
          if (!ap.get<bool>()) return fail("unexpected key " + it.key());
        } else if (!schema_valid(ap, it.value(), why)) {
          return false;
        }
      }
    }
    return true;
  }
  if (type == "array") {
    if (!value.is_array()) return fail("expected array, got " + value.dump());
    if (schema.contains("items"))
      for (const auto& item : value)
        if (!schema_valid(schema["items"], item, why)) return false;
    return true;
  }
  if (type == "string") return value.is_string() || fail("expected string: " + value.dump());
  if (type == "integer")
    return value.is_number_integer() || value.is_number_unsigned() ||
           fail("expected integer: " + value.dump());
  if (type == "boolean") return value.is_boolean() || fail("expected boolean");
  return true;  // no constraint
}

}  // namespace testsupport
