#ifndef OMD_TOOLS_CLI_HPP
#define OMD_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace omd::cli {

// Runs the command line given by `args` (without the program name), writing
// regular output to `out` and diagnostics to `err`. Returns the process exit
// code: 0 success, 1 usage, 2 parse/validation error, 3 chase truncated,
// 4 chase failed, 5 inconsistent program (every answer trivially certain).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace omd::cli

#endif  // OMD_TOOLS_CLI_HPP
