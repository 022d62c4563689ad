#pragma once

#include "tsol/profile_ode.hpp"

#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace tsol {

// Shortest exact text for a double: printf %.17g round-trips every finite
// value. All file and report output goes through this for determinism.
std::string fmt17(double x);

// CSV with header s,r,V,alpha, one row per accepted step.
void write_profile_csv(std::ostream& os, const ProfileCurve& c);

// Minimal ordered JSON document builder. Insertion order is preserved and
// numbers are emitted via fmt17, so identical inputs give identical bytes.
class JsonValue {
public:
  static JsonValue number(double v);
  static JsonValue integer(long long v);
  static JsonValue boolean(bool v);
  static JsonValue string(std::string v);
  static JsonValue array();
  static JsonValue object();

  // Array/object builders; each returns *this for chaining.
  JsonValue& push(JsonValue v);
  JsonValue& set(const std::string& key, JsonValue v);

  void write(std::ostream& os, int indent = 0) const;
  std::string str() const;

private:
  enum class Kind { number, integer, boolean, string, array, object };
  Kind kind_ = Kind::object;
  double num_ = 0.0;
  long long int_ = 0;
  bool bool_ = false;
  std::string str_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> fields_;
};

std::string json_escape(const std::string& s);

} // namespace tsol
