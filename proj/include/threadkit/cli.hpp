#ifndef THREADKIT_CLI_HPP
#define THREADKIT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace threadkit {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotThreadable = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitInternal = 3;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli(int argc, char** argv);

}  // namespace threadkit

#endif
