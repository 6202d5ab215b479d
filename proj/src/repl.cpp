#include "explikit/repl.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "explikit/error.hpp"
#include "explikit/parser.hpp"

namespace explikit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::optional<Request> parse_repl_command(std::string_view line) {
  line = trim(line);
  if (line.empty()) return std::nullopt;

  const auto space = line.find_first_of(" \t");
  const std::string_view word = line.substr(0, space);
  const std::string_view rest =
      space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));

  std::size_t index = 0;
  const auto [end, ec] = std::from_chars(word.data(), word.data() + word.size(), index);
  if (ec == std::errc{} && end == word.data() + word.size() && rest.empty()) {
    if (index == 0) throw BadRequest("choices are numbered from 1");
    return Request::drill_down(index);
  }

  if (word == "why" && rest.empty()) return Request::why();
  if (word == "back" && rest.empty()) return Request::back();
  if ((word == "quit" || word == "exit") && rest.empty()) return Request::quit();
  if (word == "image") {
    if (rest.empty()) return Request::show_image();
    return Request::show_image(std::string(rest));
  }
  if (word == "what" && !rest.empty()) return Request::what_means(std::string(rest));
  if (word == "classify" && !rest.empty()) return Request::classify(parse_atom(rest));
  throw BadRequest("unknown command '" + std::string(line) +
                   "' (try a number, why, back, image, what <pred>, classify <atom>, quit)");
}

std::string format_response(const Response& response) {
  std::string out = response.text;
  for (const auto& c : response.choices) {
    out += "\n  [" + std::to_string(c.index) + "] " + c.text;
  }
  for (const auto& img : response.images) out += "\n  <image " + img.path + ">";
  return out;
}

void run_repl(DialogueSession& session, std::istream& in, std::ostream& out) {
  std::string line;
  while (session.state() != SessionState::Ended) {
    out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    try {
      const auto request = parse_repl_command(line);
      if (!request) continue;
      out << format_response(session.handle(*request)) << "\n";
    } catch (const Error& e) {
      out << "error (" << e.code() << "): " << e.what() << "\n";
    }
  }
}

}  // namespace explikit
