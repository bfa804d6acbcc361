#ifndef TURBOBEC_CLI_HPP
#define TURBOBEC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace turbobec {

/// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data or
/// file-format error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace turbobec

#endif
