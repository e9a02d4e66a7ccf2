#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "fsmdiag/fsm.hpp"

namespace fsmdiag
{

// Line oriented model format:
//
//   fsm v1
//   state <id> output=<symbol|_> [init] [critical]
//   trans <from> <to>
//
// '#' starts a comment. Output symbols are numbered in order of first use.
[[nodiscard]] Fsm parse_fsm( std::istream& in );
[[nodiscard]] Fsm parse_fsm( std::string_view text );
[[nodiscard]] Fsm load_fsm( const std::filesystem::path& path );

void write_fsm( std::ostream& out, const Fsm& m );
[[nodiscard]] std::string to_text( const Fsm& m );

// Parses a whitespace or comma separated list of state names into a mask.
[[nodiscard]] StateMask parse_state_list( const Fsm& m, std::string_view list );

} // namespace fsmdiag
