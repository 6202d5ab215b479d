#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "explikit/engine.hpp"
#include "explikit/explanation.hpp"
#include "explikit/knowledge_base.hpp"
#include "explikit/learner.hpp"
#include "explikit/media.hpp"
#include "explikit/verbalizer.hpp"

namespace explikit {

/// Static dialogue text. `{statement}`, `{name}` and `{predicate}` are
/// substituted where they appear.
struct DialogueStrings {
  std::string introduction = "Hello! I can explain the decisions of the learned model.";
  std::string advice =
      "Ask me to classify an example, then ask why, pick a reason to drill down, ask for a "
      "picture, or go back.";
  std::string epilogue = "Goodbye!";
  std::string negative = "The model does not conclude that {statement}.";
  std::string image = "Here is a picture of {name}.";
  std::string no_image = "I have no picture of {name}.";
  std::string unknown_predicate = "I have not learned anything about {predicate}.";
};

/// Throws ConfigError on malformed JSON; missing keys keep their defaults.
DialogueStrings parse_dialogue_strings(std::string_view json_text);

/// Everything a session reads; shared read-only across sessions.
struct ExplanationContext {
  KnowledgeBase background;
  InducedModel model;
  MediaRegistry media;
  TemplateSet templates;
  DialogueStrings strings;
  std::size_t max_depth = 64;
};

struct Request {
  enum class Type { Classify, WhatMeans, Why, DrillDown, ShowImage, Back, Quit };

  Type type = Type::Why;
  std::optional<Atom> atom;             // Classify
  std::string predicate;                // WhatMeans
  std::size_t index = 0;                // DrillDown, 1-based
  std::optional<std::string> constant;  // ShowImage; current head when absent

  static Request classify(Atom a) { return {Type::Classify, std::move(a), {}, 0, {}}; }
  static Request what_means(std::string p) { return {Type::WhatMeans, {}, std::move(p), 0, {}}; }
  static Request why() { return {Type::Why, {}, {}, 0, {}}; }
  static Request drill_down(std::size_t i) { return {Type::DrillDown, {}, {}, i, {}}; }
  static Request show_image(std::optional<std::string> c = std::nullopt) {
    return {Type::ShowImage, {}, {}, 0, std::move(c)};
  }
  static Request back() { return {Type::Back, {}, {}, 0, {}}; }
  static Request quit() { return {Type::Quit, {}, {}, 0, {}}; }

  bool operator==(const Request&) const = default;
};

enum class SessionState { AwaitingQuery, Exploring, Ended };

struct Choice {
  std::size_t index;  // 1-based, as accepted by DrillDown
  std::string text;
  bool operator==(const Choice&) const = default;
};

struct Response {
  std::string text;
  std::vector<MediaRef> images;
  std::vector<Choice> choices;
  SessionState state_after = SessionState::AwaitingQuery;
  std::optional<std::size_t> cursor;

  bool operator==(const Response&) const = default;
};

struct TranscriptEntry {
  std::optional<Request> request;  // absent for the opening message
  std::optional<Response> response;
  std::optional<std::string> error_code;
  std::optional<std::string> error_message;

  bool operator==(const TranscriptEntry&) const = default;
};

/// One explanatory dialogue over a shared context. Not thread-safe; callers
/// serialize requests per session.
class DialogueSession {
 public:
  DialogueSession(std::string id, std::shared_ptr<const ExplanationContext> context);

  /// Applies a request. Errors (FactLeaf, NoSuchChild, AtRoot, NotEntailed,
  /// NotGround, NoActiveExplanation, SessionEnded) are thrown after being
  /// recorded in the transcript.
  Response handle(const Request& request);

  const std::string& id() const noexcept { return id_; }
  SessionState state() const noexcept { return state_; }
  const std::optional<ExplanatoryTree>& tree() const noexcept { return tree_; }
  std::size_t cursor() const noexcept { return cursor_; }
  const std::vector<std::size_t>& history() const noexcept { return history_; }
  const std::vector<TranscriptEntry>& transcript() const noexcept { return transcript_; }
  const ExplanationContext& context() const noexcept { return *context_; }

 private:
  Response dispatch(const Request& request);
  Response explain_cursor() const;
  Response respond(std::string text) const;
  const ExplanatoryTree& active_tree() const;

  std::string id_;
  std::shared_ptr<const ExplanationContext> context_;
  std::optional<ExplanatoryTree> tree_;
  std::size_t cursor_ = 0;
  std::vector<std::size_t> history_;
  std::vector<TranscriptEntry> transcript_;
  SessionState state_ = SessionState::AwaitingQuery;
};

/// New session with a fresh random id and the introduction in its transcript.
DialogueSession open_session(std::shared_ptr<const ExplanationContext> context);

std::string to_string(SessionState state);
std::string to_string(Request::Type type);

}  // namespace explikit
