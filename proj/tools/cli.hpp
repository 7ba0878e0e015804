#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace localppr::cli {

// args excludes the program name. 0 ok, 1 runtime failure or failed
// validation, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace localppr::cli
