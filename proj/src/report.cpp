#include "geofreq/report.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace geofreq {

namespace {

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (const unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out + "\"";
}

std::string cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "null";
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? format_number(v) : "null";
        } else {
          return json_string(v);
        }
      },
      c);
}

std::string cell_csv(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "";
  if (const auto* s = std::get_if<std::string>(&c)) {
    if (s->find_first_of(",\"\n\r") == std::string::npos) return *s;
    std::string out = "\"";
    for (char ch : *s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
  }
  return cell_json(c);
}

std::string record_json(const Record& r) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : r) {
    if (!first) out += ",";
    first = false;
    out += json_string(k) + ":" + cell_json(v);
  }
  return out + "}";
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_json(const Report& report) {
  std::string out = "{\"rows\":[";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    if (i) out += ",";
    out += record_json(report.rows[i]);
  }
  out += "],\"metadata\":" + record_json(report.metadata) + "}\n";
  return out;
}

std::string to_csv(const Report& report) {
  std::set<std::string> keys;
  for (const auto& r : report.rows) {
    for (const auto& [k, v] : r) keys.insert(k);
  }
  std::ostringstream out;
  bool first = true;
  for (const auto& k : keys) {
    out << (first ? "" : ",") << cell_csv(Cell(k));
    first = false;
  }
  out << '\n';
  for (const auto& r : report.rows) {
    first = true;
    for (const auto& k : keys) {
      auto it = r.find(k);
      out << (first ? "" : ",") << (it == r.end() ? "" : cell_csv(it->second));
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace geofreq
