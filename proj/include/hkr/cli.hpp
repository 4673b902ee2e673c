#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hkr {

// Runs one subcommand. args excludes the program name. Returns 0 on
// success, 1 on precondition or input errors, 2 on consistency errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hkr
