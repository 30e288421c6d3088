#pragma once

#include <string>

#include "json_io.hpp"

namespace shimura::io {

// Aligned text rendering of a report object: scalars as `key  value`, arrays
// of objects as column tables, anything else as compact JSON rows.
std::string render_table(const Json& report);

}  // namespace shimura::io
