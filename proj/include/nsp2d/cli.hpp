#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nsp2d {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;

/// Dispatches the nsp2d subcommands. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace nsp2d
