#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "explikit/dialogue.hpp"

namespace explikit {

/// Maps a REPL line to a request. Accepted forms:
///   <n>                 drill down into choice n
///   why | back | quit
///   image [constant]
///   what <predicate>
///   classify <atom>
/// Returns nullopt for blank lines. Throws BadRequest or SyntaxError.
std::optional<Request> parse_repl_command(std::string_view line);

/// Response text followed by one "  [n] text" line per choice.
std::string format_response(const Response& response);

/// Reads commands from `in` until quit or EOF. Errors are printed as
/// "error (<code>): <message>" and the loop continues.
void run_repl(DialogueSession& session, std::istream& in, std::ostream& out);

}  // namespace explikit
