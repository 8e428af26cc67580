#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace geofreq {

using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;
/// Keys are kept sorted so serialization is deterministic.
using Record = std::map<std::string, Cell>;

struct Report {
  std::vector<Record> rows;
  Record metadata;
};

/// {"rows":[...],"metadata":{...}} with sorted keys, numbers as %.12g and a
/// trailing newline. Non-finite numbers become null.
std::string to_json(const Report& report);

/// Header line with the sorted union of row keys, one line per row, LF endings.
std::string to_csv(const Report& report);

std::string format_number(double v);

}  // namespace geofreq
