#pragma once

// Set files: newline-separated decimal integers (blank lines and lines
// starting with '#' are skipped) or a single JSON array of integers.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "sfree/core.hpp"

namespace sfree {

/// Domain bound defaults to the largest element (1 for an empty set).
IntegerSet parse_set_text(std::string_view text, std::optional<std::int64_t> domain_bound = {});
IntegerSet load_set_file(const std::string& path, std::optional<std::int64_t> domain_bound = {});

/// One element per line.
std::string format_set_lines(const IntegerSet& set);

}  // namespace sfree
