#ifndef CALABI_CLI_HPP
#define CALABI_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace calabi::cli {

// Runs one command line (without the program name). Exit codes:
//   0 success, 1 verification failure, 2 option/validation error,
//   3 numeric or domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace calabi::cli

#endif
