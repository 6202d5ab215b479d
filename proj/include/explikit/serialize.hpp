#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "explikit/dialogue.hpp"
#include "explikit/engine.hpp"
#include "explikit/explanation.hpp"
#include "explikit/learner.hpp"
#include "explikit/media.hpp"
#include "explikit/verbalizer.hpp"

namespace explikit {

using Json = nlohmann::json;

/// `{"predicate": "is", "args": ["bobby", "herbivore"]}`; variables keep
/// their uppercase-initial names.
Json to_json(const Atom& atom);

/// `{"goal": "...", "clause": "...", "children": [...]}`, recursively.
Json to_json(const ProofNode& proof);
std::string to_dot(const ProofNode& proof);

/// Media refs carry the `/media/<constant>/<n>` URL the service answers on.
Json to_json(const MediaRef& ref, const MediaRegistry& registry);

Json to_json(const ExplanatoryTree& tree, const MediaRegistry& registry,
             const TemplateSet* templates = nullptr);
std::string to_dot(const ExplanatoryTree& tree, const TemplateSet* templates = nullptr);

Json to_json(const InducedModel& model);
Json to_json(const ModelReport& report);

Json to_json(const Request& request);
/// Throws BadRequest (or SyntaxError for an unparsable atom).
Request request_from_json(const Json& body);

Json to_json(const Response& response, const MediaRegistry& registry);

/// One JSON object per line: `{"request": ..., "response": ...}` or
/// `{"request": ..., "error": {"code", "message"}}`.
std::string transcript_to_jsonl(const std::vector<TranscriptEntry>& transcript,
                                const MediaRegistry& registry);

Json error_json(const std::string& code, const std::string& message,
                const Json& details = nullptr);

}  // namespace explikit
