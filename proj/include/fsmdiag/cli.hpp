#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fsmdiag::cli
{

inline constexpr std::string_view version = "1.0.0";

enum ExitCode : int
{
    exit_ok = 0,
    exit_fails = 1,
    exit_usage = 2,
    exit_resource = 3,
};

// Runs one command. `args` excludes the program name.
int run( const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in );

} // namespace fsmdiag::cli
