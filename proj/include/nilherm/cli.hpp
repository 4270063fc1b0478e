#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nilherm {

/// Command dispatcher behind the nilherm binary. Exit codes: 0 success or
/// consistent outcome, 1 validation failure, 2 theorem-inconsistency
/// detected, 3 I/O or parse errors.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilherm
