#include "sfree/set_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace sfree {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

IntegerSet parse_set_text(std::string_view text, std::optional<std::int64_t> domain_bound) {
  std::vector<std::int64_t> values;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '[') {
    const auto body = text.substr(first);
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("set JSON: ") + e.what());
    }
    if (!parsed.is_array()) throw ParseError("set JSON must be an array of integers");
    for (const auto& item : parsed) {
      if (!item.is_number_integer()) throw ParseError("set JSON contains a non-integer: " + item.dump());
      values.push_back(item.get<std::int64_t>());
    }
  } else {
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      const auto line = trim(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
      ++line_no;
      if (!line.empty() && line.front() != '#') {
        std::int64_t value = 0;
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
        if (ec != std::errc{} || ptr != line.data() + line.size()) {
          throw ParseError("set file line " + std::to_string(line_no) + ": '" + std::string(line) +
                           "' is not an integer");
        }
        values.push_back(value);
      }
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
  }
  std::int64_t bound = 1;
  if (domain_bound) {
    bound = *domain_bound;
  } else {
    for (const auto v : values) bound = std::max(bound, v);
  }
  return make_set(std::move(values), bound);
}

IntegerSet load_set_file(const std::string& path, std::optional<std::int64_t> domain_bound) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open set file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_set_text(buffer.str(), domain_bound);
}

std::string format_set_lines(const IntegerSet& set) {
  std::string out;
  for (const auto v : set) {
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

}  // namespace sfree
