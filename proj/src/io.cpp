#include "tsol/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace tsol {

std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_profile_csv(std::ostream& os, const ProfileCurve& c) {
  os << "s,r,V,alpha\n";
  for (size_t i = 0; i < c.size(); ++i) {
    os << fmt17(c.s[i]) << ',' << fmt17(c.r[i]) << ',' << fmt17(c.V[i]) << ','
       << fmt17(c.alpha[i]) << '\n';
  }
}

JsonValue JsonValue::number(double v) {
  JsonValue j;
  j.kind_ = Kind::number;
  j.num_ = v;
  return j;
}

JsonValue JsonValue::integer(long long v) {
  JsonValue j;
  j.kind_ = Kind::integer;
  j.int_ = v;
  return j;
}

JsonValue JsonValue::boolean(bool v) {
  JsonValue j;
  j.kind_ = Kind::boolean;
  j.bool_ = v;
  return j;
}

JsonValue JsonValue::string(std::string v) {
  JsonValue j;
  j.kind_ = Kind::string;
  j.str_ = std::move(v);
  return j;
}

JsonValue JsonValue::array() {
  JsonValue j;
  j.kind_ = Kind::array;
  return j;
}

JsonValue JsonValue::object() {
  JsonValue j;
  j.kind_ = Kind::object;
  return j;
}

JsonValue& JsonValue::push(JsonValue v) {
  items_.push_back(std::move(v));
  return *this;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
  for (auto& kv : fields_) {
    if (kv.first == key) {
      kv.second = std::move(v);
      return *this;
    }
  }
  fields_.emplace_back(key, std::move(v));
  return *this;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(ch));
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

namespace {

void write_indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

} // namespace

void JsonValue::write(std::ostream& os, int indent) const {
  switch (kind_) {
    case Kind::number:
      // JSON has no non-finite literals; emit them as strings.
      if (std::isfinite(num_))
        os << fmt17(num_);
      else
        os << '"' << fmt17(num_) << '"';
      break;
    case Kind::integer: os << int_; break;
    case Kind::boolean: os << (bool_ ? "true" : "false"); break;
    case Kind::string: os << '"' << json_escape(str_) << '"'; break;
    case Kind::array: {
      if (items_.empty()) {
        os << "[]";
        break;
      }
      os << "[\n";
      for (size_t i = 0; i < items_.size(); ++i) {
        write_indent(os, indent + 1);
        items_[i].write(os, indent + 1);
        if (i + 1 < items_.size()) os << ',';
        os << '\n';
      }
      write_indent(os, indent);
      os << ']';
      break;
    }
    case Kind::object: {
      if (fields_.empty()) {
        os << "{}";
        break;
      }
      os << "{\n";
      for (size_t i = 0; i < fields_.size(); ++i) {
        write_indent(os, indent + 1);
        os << '"' << json_escape(fields_[i].first) << "\": ";
        fields_[i].second.write(os, indent + 1);
        if (i + 1 < fields_.size()) os << ',';
        os << '\n';
      }
      write_indent(os, indent);
      os << '}';
      break;
    }
  }
}

std::string JsonValue::str() const {
  std::ostringstream os;
  write(os, 0);
  os << '\n';
  return os.str();
}

} // namespace tsol
