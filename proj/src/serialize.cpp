#include "explikit/serialize.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "explikit/error.hpp"
#include "explikit/parser.hpp"

namespace explikit {

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string media_url(const MediaRef& ref, const MediaRegistry& registry) {
  const auto& refs = registry.lookup(ref.constant);
  const auto it = std::find(refs.begin(), refs.end(), ref);
  const auto n = it == refs.end() ? 1 : (it - refs.begin()) + 1;
  return "/media/" + ref.constant + "/" + std::to_string(n);
}

std::string entailment_name(Entailment e) {
  switch (e) {
    case Entailment::Entailed: return "entailed";
    case Entailment::NotEntailed: return "not_entailed";
    case Entailment::Indeterminate: return "indeterminate";
  }
  return "";
}

}  // namespace

Json to_json(const Atom& atom) {
  Json args = Json::array();
  for (const auto& a : atom.args) args.push_back(a.name);
  return {{"predicate", atom.predicate}, {"args", std::move(args)}};
}

Json to_json(const ProofNode& proof) {
  Json children = Json::array();
  for (const auto& c : proof.children) children.push_back(to_json(c));
  return {{"goal", render(proof.goal)},
          {"clause", render(proof.clause)},
          {"children", std::move(children)}};
}

std::string to_dot(const ProofNode& proof) {
  std::ostringstream out;
  out << "digraph proof {\n  node [shape=box];\n";
  std::size_t next = 0;
  std::function<std::size_t(const ProofNode&)> emit = [&](const ProofNode& n) {
    const std::size_t id = next++;
    out << "  n" << id << " [label=\"" << dot_escape(render(n.goal)) << "\"];\n";
    for (const auto& c : n.children) {
      const std::size_t child = emit(c);
      out << "  n" << id << " -> n" << child << ";\n";
    }
    return id;
  };
  emit(proof);
  out << "}\n";
  return out.str();
}

Json to_json(const MediaRef& ref, const MediaRegistry& registry) {
  Json j = {{"constant", ref.constant},
            {"path", ref.path},
            {"mime", ref.mime},
            {"url", media_url(ref, registry)}};
  j["caption"] = ref.caption ? Json(*ref.caption) : Json(nullptr);
  return j;
}

Json to_json(const ExplanatoryTree& tree, const MediaRegistry& registry,
             const TemplateSet* templates) {
  Json nodes = Json::array();
  for (const auto& n : tree.nodes()) {
    Json body = Json::array(), body_struct = Json::array(), images = Json::array();
    for (const auto& b : n.body) {
      body.push_back(render(b));
      body_struct.push_back(to_json(b));
    }
    for (const auto& img : n.images) images.push_back(to_json(img, registry));
    Json node = {{"id", n.id},
                 {"head", render(n.head)},
                 {"head_struct", to_json(n.head)},
                 {"body", std::move(body)},
                 {"body_struct", std::move(body_struct)},
                 {"children", n.children},
                 {"depth", n.depth},
                 {"clause", render(n.source)},
                 {"from_model", n.from_model},
                 {"images", std::move(images)}};
    node["parent"] = n.parent ? Json(*n.parent) : Json(nullptr);
    if (templates != nullptr) node["text"] = verbalize_clause(n.head, n.body, *templates);
    nodes.push_back(std::move(node));
  }
  Json j = {{"query", render(tree.query())}, {"root", tree.root()}, {"nodes", std::move(nodes)}};
  const auto mc = tree.model_clause();
  j["model_clause"] = mc ? Json(render(*mc)) : Json(nullptr);
  return j;
}

std::string to_dot(const ExplanatoryTree& tree, const TemplateSet* templates) {
  std::ostringstream out;
  out << "digraph explanation {\n  rankdir=TB;\n  node [shape=box];\n";
  for (const auto& n : tree.nodes()) {
    std::string label = dot_escape(render(n.head));
    if (templates != nullptr) label += "\\n" + dot_escape(verbalize_atom(n.head, *templates));
    out << "  n" << n.id << " [label=\"" << label << "\""
        << (n.is_fact_leaf() ? ", style=rounded" : "") << "];\n";
  }
  for (const auto& n : tree.nodes()) {
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      out << "  n" << n.id << " -> n" << n.children[i] << " [label=\"" << (i + 1) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

Json to_json(const InducedModel& model) {
  Json clauses = Json::array();
  for (const auto& c : model.clauses) {
    const Clause canonical = canonicalize_variables(c);
    Json body = Json::array();
    for (const auto& b : canonical.body) body.push_back(to_json(b));
    clauses.push_back(
        {{"text", render(canonical)}, {"head", to_json(canonical.head)}, {"body", std::move(body)}});
  }
  return {{"target", model.target.to_string()}, {"clauses", std::move(clauses)}};
}

Json to_json(const ModelReport& report) {
  auto entries = [](const std::vector<ModelReport::Entry>& list) {
    Json out = Json::array();
    for (const auto& e : list) {
      out.push_back({{"example", render(e.example)}, {"status", entailment_name(e.status)}});
    }
    return out;
  };
  return {{"positives", entries(report.positives)},
          {"negatives", entries(report.negatives)},
          {"positives_entailed", report.positives_entailed},
          {"negatives_entailed", report.negatives_entailed},
          {"complete", report.complete},
          {"consistent", report.consistent}};
}

Json to_json(const Request& request) {
  Json j = {{"type", to_string(request.type)}};
  switch (request.type) {
    case Request::Type::Classify: j["atom"] = request.atom ? render(*request.atom) : ""; break;
    case Request::Type::WhatMeans: j["predicate"] = request.predicate; break;
    case Request::Type::DrillDown: j["index"] = request.index; break;
    case Request::Type::ShowImage:
      if (request.constant) j["constant"] = *request.constant;
      break;
    default: break;
  }
  return j;
}

Request request_from_json(const Json& body) {
  if (!body.is_object() || !body.contains("type") || !body["type"].is_string()) {
    throw BadRequest("request must be an object with a string 'type'");
  }
  const std::string type = body["type"].get<std::string>();
  auto string_field = [&](const char* key) {
    if (!body.contains(key) || !body[key].is_string()) {
      throw BadRequest(type + " needs a string '" + key + "'");
    }
    return body[key].get<std::string>();
  };

  if (type == "classify") return Request::classify(parse_atom(string_field("atom")));
  if (type == "what_means") return Request::what_means(string_field("predicate"));
  if (type == "why") return Request::why();
  if (type == "drill_down") {
    if (!body.contains("index") || !body["index"].is_number_integer() ||
        body["index"].get<long long>() < 1) {
      throw BadRequest("drill_down needs an integer 'index' >= 1");
    }
    return Request::drill_down(body["index"].get<std::size_t>());
  }
  if (type == "show_image") {
    if (body.contains("constant") && !body["constant"].is_null()) {
      return Request::show_image(string_field("constant"));
    }
    return Request::show_image();
  }
  if (type == "back") return Request::back();
  if (type == "quit") return Request::quit();
  throw BadRequest("unknown request type '" + type + "'");
}

Json to_json(const Response& response, const MediaRegistry& registry) {
  Json images = Json::array(), choices = Json::array();
  for (const auto& img : response.images) images.push_back(to_json(img, registry));
  for (const auto& c : response.choices) choices.push_back({{"index", c.index}, {"text", c.text}});
  Json j = {{"text", response.text},
            {"images", std::move(images)},
            {"choices", std::move(choices)},
            {"state", to_string(response.state_after)}};
  j["cursor"] = response.cursor ? Json(*response.cursor) : Json(nullptr);
  return j;
}

std::string transcript_to_jsonl(const std::vector<TranscriptEntry>& transcript,
                                const MediaRegistry& registry) {
  std::string out;
  for (const auto& e : transcript) {
    Json line;
    line["request"] = e.request ? to_json(*e.request) : Json(nullptr);
    if (e.response) line["response"] = to_json(*e.response, registry);
    if (e.error_code) line["error"] = error_json(*e.error_code, e.error_message.value_or(""));
    out += line.dump() + "\n";
  }
  return out;
}

Json error_json(const std::string& code, const std::string& message, const Json& details) {
  Json j = {{"code", code}, {"message", message}};
  j["details"] = details;
  return j;
}

}  // namespace explikit
