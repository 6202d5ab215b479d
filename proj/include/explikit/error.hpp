#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace explikit {

/// Base of every error raised by the library. `code()` is the stable
/// machine-readable identifier used by the CLI and the HTTP API.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& expected)
      : Error("syntax_error", "line " + std::to_string(line) + ", column " +
                                  std::to_string(column) + ": expected " + expected),
        line_(line),
        column_(column),
        expected_(expected) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

class NonGroundFact : public Error {
 public:
  explicit NonGroundFact(std::size_t line)
      : Error("non_ground_fact",
              "line " + std::to_string(line) + ": facts must not contain variables"),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ArityConflict : public Error {
 public:
  explicit ArityConflict(const std::string& predicate)
      : Error("arity_conflict", "predicate '" + predicate + "' is used with two arities") {}
};

class DisjointnessViolation : public Error {
 public:
  explicit DisjointnessViolation(const std::string& atom)
      : Error("disjointness_violation", atom + " is both a positive and a negative example") {}
};

class MixedTarget : public Error {
 public:
  explicit MixedTarget(const std::string& detail)
      : Error("mixed_target", "examples use more than one target predicate: " + detail) {}
};

class NotGround : public Error {
 public:
  explicit NotGround(const std::string& atom)
      : Error("not_ground", atom + " contains variables") {}
};

class NotEntailed : public Error {
 public:
  explicit NotEntailed(const std::string& message) : Error("not_entailed", message) {}
};

class NoSuchChild : public Error {
 public:
  NoSuchChild(std::size_t index, std::size_t available)
      : Error("no_such_child", "no child " + std::to_string(index) + " (node has " +
                                   std::to_string(available) + ")"),
        index_(index),
        available_(available) {}
  std::size_t index() const noexcept { return index_; }
  std::size_t available() const noexcept { return available_; }

 private:
  std::size_t index_;
  std::size_t available_;
};

class FactLeaf : public Error {
 public:
  FactLeaf() : Error("fact_leaf", "this is a fact; the drill-down ends here") {}
};

class AtRoot : public Error {
 public:
  AtRoot() : Error("at_root", "already at the first explanation") {}
};

class UnknownNode : public Error {
 public:
  explicit UnknownNode(std::size_t id)
      : Error("unknown_node", "no node with id " + std::to_string(id)) {}
};

class SessionEnded : public Error {
 public:
  SessionEnded() : Error("session_ended", "the session has ended") {}
};

class NoActiveExplanation : public Error {
 public:
  NoActiveExplanation()
      : Error("no_active_explanation", "classify an example before asking for details") {}
};

class MissingFile : public Error {
 public:
  MissingFile(const std::string& constant, const std::string& path)
      : Error("missing_file", "media for '" + constant + "' not found: " + path) {}
};

class ManifestSyntax : public Error {
 public:
  ManifestSyntax(std::size_t line, const std::string& detail)
      : Error("manifest_syntax", "line " + std::to_string(line) + ": " + detail), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class BadRequest : public Error {
 public:
  explicit BadRequest(const std::string& message) : Error("bad_request", message) {}
};

class UnknownSession : public Error {
 public:
  explicit UnknownSession(const std::string& id)
      : Error("unknown_session", "no session with id '" + id + "'") {}
};

class UnknownMedia : public Error {
 public:
  explicit UnknownMedia(const std::string& what) : Error("unknown_media", "no media " + what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config_error", message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io_error", message) {}
};

}  // namespace explikit
