#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "explikit/knowledge_base.hpp"
#include "explikit/term.hpp"

namespace explikit {

/// Transformation rules from logic to English.
///
/// Predicate patterns use numbered slots: `{1} tracks down {2}` or
/// `{1} is {a:2}`, where `{a:N}` prefixes slot N with "a" or "an".
/// Predicates without a pattern fall back to the domain-independent rule:
/// first argument, the predicate name with underscores as spaces, then the
/// remaining arguments joined by the conjunction.
struct TemplateSet {
  std::map<PredicateKey, std::string> predicate_templates;
  std::string because = "because";
  std::string conjunction = "and";
  /// Explicit display names; take precedence over capitalization.
  std::map<std::string, std::string> constant_names;
  /// Constants shown capitalized (individuals rather than concepts).
  std::set<std::string> instance_constants;

  std::string display(const Term& term) const;
};

/// Leaves of the `instance_predicate` hierarchy that occur in no other fact:
/// individuals such as `bobby` in `is_a(bobby,rabbit)`.
std::set<std::string> derive_instance_constants(const KnowledgeBase& kb,
                                                const PredicateKey& instance_predicate);

/// Reads a template file:
/// `{"templates": {"p/2": "..."}, "because": ..., "and": ...,
///   "instance_predicate": "is_a/2", "constant_names": {...}}`.
/// Instance constants are derived from `kb`. Throws ConfigError.
TemplateSet parse_templates(std::string_view json_text, const KnowledgeBase& kb);

/// Templates with only the domain-independent fallback.
TemplateSet generic_templates(const KnowledgeBase& kb,
                              const PredicateKey& instance_predicate = {"is_a", 2});

std::string verbalize_atom(const Atom& atom, const TemplateSet& templates);

/// `Head, because B1 and B2.`; facts render as `Head.`
std::string verbalize_clause(const Atom& head, const std::vector<Atom>& body,
                             const TemplateSet& templates);
std::string verbalize_clause(const Clause& clause, const TemplateSet& templates);

std::vector<std::string> verbalize_global(const std::vector<Clause>& model,
                                          const TemplateSet& templates);

}  // namespace explikit
