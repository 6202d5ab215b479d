#include "explikit/dialogue.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include <json.hpp>

#include "explikit/error.hpp"

namespace explikit {

namespace {

std::string substitute(std::string pattern, const std::string& key, const std::string& value) {
  const std::string slot = "{" + key + "}";
  for (auto pos = pattern.find(slot); pos != std::string::npos;
       pos = pattern.find(slot, pos + value.size())) {
    pattern.replace(pos, slot.size(), value);
  }
  return pattern;
}

std::string new_session_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return buf;
}

}  // namespace

DialogueStrings parse_dialogue_strings(std::string_view json_text) {
  DialogueStrings s;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    s.introduction = doc.value("introduction", s.introduction);
    s.advice = doc.value("advice", s.advice);
    s.epilogue = doc.value("epilogue", s.epilogue);
    s.negative = doc.value("negative", s.negative);
    s.image = doc.value("image", s.image);
    s.no_image = doc.value("no_image", s.no_image);
    s.unknown_predicate = doc.value("unknown_predicate", s.unknown_predicate);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("strings file: ") + e.what());
  }
  return s;
}

std::string to_string(SessionState state) {
  switch (state) {
    case SessionState::AwaitingQuery: return "awaiting_query";
    case SessionState::Exploring: return "exploring";
    case SessionState::Ended: return "ended";
  }
  return "";
}

std::string to_string(Request::Type type) {
  switch (type) {
    case Request::Type::Classify: return "classify";
    case Request::Type::WhatMeans: return "what_means";
    case Request::Type::Why: return "why";
    case Request::Type::DrillDown: return "drill_down";
    case Request::Type::ShowImage: return "show_image";
    case Request::Type::Back: return "back";
    case Request::Type::Quit: return "quit";
  }
  return "";
}

DialogueSession::DialogueSession(std::string id, std::shared_ptr<const ExplanationContext> context)
    : id_(std::move(id)), context_(std::move(context)) {
  Response hello;
  hello.text = context_->strings.introduction + " " + context_->strings.advice;
  hello.state_after = state_;
  transcript_.push_back({std::nullopt, std::move(hello), std::nullopt, std::nullopt});
}

DialogueSession open_session(std::shared_ptr<const ExplanationContext> context) {
  return DialogueSession(new_session_id(), std::move(context));
}

Response DialogueSession::handle(const Request& request) {
  try {
    Response r = dispatch(request);
    transcript_.push_back({request, r, std::nullopt, std::nullopt});
    return r;
  } catch (const Error& e) {
    transcript_.push_back({request, std::nullopt, e.code(), e.what()});
    throw;
  }
}

const ExplanatoryTree& DialogueSession::active_tree() const {
  if (state_ != SessionState::Exploring || !tree_) throw NoActiveExplanation();
  return *tree_;
}

Response DialogueSession::respond(std::string text) const {
  Response r;
  r.text = std::move(text);
  r.state_after = state_;
  if (state_ == SessionState::Exploring) r.cursor = cursor_;
  return r;
}

Response DialogueSession::explain_cursor() const {
  const ExplanationNode& node = active_tree().node(cursor_);
  const auto& templates = context_->templates;
  Response r = respond(verbalize_clause(node.head, node.body, templates));
  for (std::size_t i = 0; i < node.body.size(); ++i) {
    r.choices.push_back({i + 1, verbalize_atom(node.body[i], templates)});
  }
  return r;
}

Response DialogueSession::dispatch(const Request& request) {
  if (state_ == SessionState::Ended) throw SessionEnded();
  const ExplanationContext& ctx = *context_;

  switch (request.type) {
    case Request::Type::Classify: {
      if (!request.atom) throw BadRequest("classify needs an atom");
      const Atom& atom = *request.atom;
      if (!atom.is_ground()) throw NotGround(render(atom));
      try {
        ExplanatoryTree tree = build_tree(atom, ctx.model, ctx.background, &ctx.media, ctx.max_depth);
        tree_ = std::move(tree);
      } catch (const NotEntailed&) {
        throw NotEntailed(
            substitute(ctx.strings.negative, "statement", verbalize_atom(atom, ctx.templates)));
      }
      cursor_ = tree_->root();
      history_.clear();
      state_ = SessionState::Exploring;
      return explain_cursor();
    }

    case Request::Type::WhatMeans: {
      std::vector<Clause> clauses;
      if (request.predicate == ctx.model.target.name) {
        clauses = ctx.model.clauses;
      } else {
        for (const auto& c : ctx.background.clauses()) {
          if (!c.is_fact() && c.head.predicate == request.predicate) clauses.push_back(c);
        }
      }
      if (clauses.empty()) {
        return respond(substitute(ctx.strings.unknown_predicate, "predicate", request.predicate));
      }
      std::string text;
      for (const auto& sentence : verbalize_global(clauses, ctx.templates)) {
        if (!text.empty()) text += "\n";
        text += sentence;
      }
      return respond(std::move(text));
    }

    case Request::Type::Why:
      return explain_cursor();

    case Request::Type::DrillDown: {
      const ExplanationNode& child = drill_down(active_tree(), cursor_, request.index);
      history_.push_back(cursor_);
      cursor_ = child.id;
      return explain_cursor();
    }

    case Request::Type::ShowImage: {
      std::vector<std::string> constants;
      if (request.constant) {
        constants.push_back(*request.constant);
      } else {
        for (const auto& arg : active_tree().node(cursor_).head.args) {
          if (arg.is_constant() &&
              std::find(constants.begin(), constants.end(), arg.name) == constants.end()) {
            constants.push_back(arg.name);
          }
        }
      }
      std::vector<MediaRef> images;
      std::string shown, missing;
      for (const auto& c : constants) {
        const auto& refs = ctx.media.lookup(c);
        const std::string name = ctx.templates.display(Term::constant(c));
        if (refs.empty()) {
          missing += (missing.empty() ? "" : " " + ctx.templates.conjunction + " ") + name;
          continue;
        }
        images.insert(images.end(), refs.begin(), refs.end());
        if (!shown.empty()) shown += " ";
        shown += substitute(ctx.strings.image, "name", name);
      }
      Response r = respond(images.empty() ? substitute(ctx.strings.no_image, "name", missing)
                                          : shown);
      r.images = std::move(images);
      return r;
    }

    case Request::Type::Back: {
      active_tree();
      if (history_.empty()) throw AtRoot();
      cursor_ = history_.back();
      history_.pop_back();
      return explain_cursor();
    }

    case Request::Type::Quit:
      state_ = SessionState::Ended;
      history_.clear();
      return respond(ctx.strings.epilogue);
  }
  throw BadRequest("unknown request type");
}

}  // namespace explikit
