#include "explikit/verbalizer.hpp"

#include <cctype>

#include <json.hpp>

#include "explikit/error.hpp"

namespace explikit {

namespace {

std::string spaced(std::string s) {
  for (char& c : s) {
    if (c == '_') c = ' ';
  }
  return s;
}

std::string capitalized(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string with_article(const std::string& word) {
  if (word.empty()) return word;
  const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(word[0])));
  const bool vowel = c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  return (vowel ? "an " : "a ") + word;
}

PredicateKey parse_key(const std::string& text) {
  const auto slash = text.rfind('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == text.size()) {
    throw ConfigError("template key must look like name/arity, got '" + text + "'");
  }
  try {
    return {text.substr(0, slash), std::stoul(text.substr(slash + 1))};
  } catch (const std::exception&) {
    throw ConfigError("template key must look like name/arity, got '" + text + "'");
  }
}

// Checks every `{N}` / `{a:N}` slot refers to an argument position.
void check_pattern(const PredicateKey& key, const std::string& pattern) {
  std::size_t pos = 0;
  while ((pos = pattern.find('{', pos)) != std::string::npos) {
    const auto close = pattern.find('}', pos);
    if (close == std::string::npos) throw ConfigError("unterminated slot in '" + pattern + "'");
    std::string slot = pattern.substr(pos + 1, close - pos - 1);
    if (slot.rfind("a:", 0) == 0) slot = slot.substr(2);
    std::size_t n = 0;
    try {
      n = std::stoul(slot);
    } catch (const std::exception&) {
      throw ConfigError("bad slot '{" + slot + "}' in '" + pattern + "'");
    }
    if (n == 0 || n > key.arity) {
      throw ConfigError("slot " + std::to_string(n) + " out of range for " + key.to_string());
    }
    pos = close + 1;
  }
}

std::string fill(const std::string& pattern, const std::vector<std::string>& args) {
  std::string out;
  std::size_t pos = 0;
  while (pos < pattern.size()) {
    const auto open = pattern.find('{', pos);
    if (open == std::string::npos) {
      out += pattern.substr(pos);
      break;
    }
    out += pattern.substr(pos, open - pos);
    const auto close = pattern.find('}', open);
    std::string slot = pattern.substr(open + 1, close - open - 1);
    const bool article = slot.rfind("a:", 0) == 0;
    if (article) slot = slot.substr(2);
    const std::string& value = args.at(std::stoul(slot) - 1);
    out += article ? with_article(value) : value;
    pos = close + 1;
  }
  return out;
}

}  // namespace

std::string TemplateSet::display(const Term& term) const {
  if (term.is_variable()) return term.name;
  if (auto it = constant_names.find(term.name); it != constant_names.end()) return it->second;
  std::string shown = spaced(term.name);
  return instance_constants.contains(term.name) ? capitalized(shown) : shown;
}

std::set<std::string> derive_instance_constants(const KnowledgeBase& kb,
                                                const PredicateKey& instance_predicate) {
  std::set<std::string> firsts, seconds, elsewhere;
  for (const auto& c : kb.clauses()) {
    if (!c.is_fact()) continue;
    if (c.head.key() == instance_predicate && c.head.arity() == 2) {
      firsts.insert(c.head.args[0].name);
      seconds.insert(c.head.args[1].name);
    } else {
      for (const auto& a : c.head.args) elsewhere.insert(a.name);
    }
  }
  std::set<std::string> out;
  for (const auto& f : firsts) {
    if (!seconds.contains(f) && !elsewhere.contains(f)) out.insert(f);
  }
  return out;
}

TemplateSet generic_templates(const KnowledgeBase& kb, const PredicateKey& instance_predicate) {
  TemplateSet t;
  t.instance_constants = derive_instance_constants(kb, instance_predicate);
  return t;
}

TemplateSet parse_templates(std::string_view json_text, const KnowledgeBase& kb) {
  using nlohmann::json;
  TemplateSet t;
  PredicateKey instance_predicate{"is_a", 2};
  try {
    const json doc = json::parse(json_text);
    if (!doc.is_object()) throw ConfigError("template file must be a JSON object");
    if (doc.contains("templates")) {
      for (const auto& [key, pattern] : doc.at("templates").items()) {
        const PredicateKey k = parse_key(key);
        const auto p = pattern.get<std::string>();
        check_pattern(k, p);
        t.predicate_templates[k] = p;
      }
    }
    t.because = doc.value("because", t.because);
    t.conjunction = doc.value("and", t.conjunction);
    if (doc.contains("instance_predicate")) {
      instance_predicate = parse_key(doc.at("instance_predicate").get<std::string>());
    }
    if (doc.contains("constant_names")) {
      t.constant_names = doc.at("constant_names").get<std::map<std::string, std::string>>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("template file: ") + e.what());
  }
  t.instance_constants = derive_instance_constants(kb, instance_predicate);
  return t;
}

std::string verbalize_atom(const Atom& atom, const TemplateSet& templates) {
  std::vector<std::string> args;
  args.reserve(atom.args.size());
  for (const auto& a : atom.args) args.push_back(templates.display(a));

  if (auto it = templates.predicate_templates.find(atom.key());
      it != templates.predicate_templates.end()) {
    return fill(it->second, args);
  }

  const std::string phrase = spaced(atom.predicate);
  if (args.empty()) return phrase;
  std::string out = args[0] + " " + phrase;
  for (std::size_t i = 1; i < args.size(); ++i) {
    out += (i == 1 ? " " : " " + templates.conjunction + " ") + args[i];
  }
  return out;
}

std::string verbalize_clause(const Atom& head, const std::vector<Atom>& body,
                             const TemplateSet& templates) {
  std::string out = capitalized(verbalize_atom(head, templates));
  for (std::size_t i = 0; i < body.size(); ++i) {
    out += i == 0 ? ", " + templates.because + " " : " " + templates.conjunction + " ";
    out += verbalize_atom(body[i], templates);
  }
  return out + ".";
}

std::string verbalize_clause(const Clause& clause, const TemplateSet& templates) {
  return verbalize_clause(clause.head, clause.body, templates);
}

std::vector<std::string> verbalize_global(const std::vector<Clause>& model,
                                          const TemplateSet& templates) {
  std::vector<std::string> out;
  out.reserve(model.size());
  for (const auto& c : model) out.push_back(verbalize_clause(c, templates));
  return out;
}

}  // namespace explikit
