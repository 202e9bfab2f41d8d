#pragma once

#include <iosfwd>
#include <string>

#include "freeplate/domain.hpp"

namespace freeplate {

/// Reads a key=value domain description (grammar in docs/domain_config.md).
/// Throws ParseError naming the line and key on malformed input.
Domain parse_domain_config(std::istream& in, const std::string& source = "<input>");
Domain parse_domain_config_string(const std::string& text);
Domain load_domain_config(const std::string& path);

}  // namespace freeplate
