#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ineqcert::cli {

enum ExitCode : int { ok = 0, usage = 1, violation = 2, tolerance_unmet = 3 };

/// Runs one command line (without the program name). Output goes to `out` in a single write;
/// diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

} // namespace ineqcert::cli
