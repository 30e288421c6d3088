#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace shimura::cli {

// args excludes the program name. Returns 0 on success, 1 on usage or parse
// errors, 2 on domain errors (typed error name printed as JSON on stdout).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shimura::cli
