#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cr3::cli {

// args excludes the program name. Exit codes: 0 ok, 1 domain error, 2 usage, 3 ledger mismatch.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace cr3::cli
