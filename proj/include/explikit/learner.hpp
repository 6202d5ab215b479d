#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "explikit/engine.hpp"
#include "explikit/knowledge_base.hpp"
#include "explikit/term.hpp"

namespace explikit {

/// One argument position of a body schema: either one of the head variables
/// (`+`) or a constant drawn from a named pool (`#role`).
struct ArgumentMode {
  enum class Kind { HeadVariable, Constant };
  Kind kind = Kind::HeadVariable;
  std::string role;  // pool name for Kind::Constant
};

struct BodySchema {
  std::string predicate;
  std::vector<ArgumentMode> args;
};

/// Language bias for clause generation. Clause heads use distinct variables
/// A, B, ... for the target's arguments; body literals only mention those
/// head variables or pool constants.
struct ModeDeclarations {
  PredicateKey head;
  std::vector<BodySchema> body;
  std::map<std::string, std::vector<std::string>> constant_pool;
};

struct ClauseScore {
  std::size_t pos_covered = 0;
  std::size_t neg_covered = 0;
  std::size_t literal_count = 0;
  /// Examples whose entailment hit the depth limit; counted as not covered.
  std::size_t indeterminate = 0;

  bool operator==(const ClauseScore&) const = default;
};

/// Quality criterion A(C). Larger is better.
using QualityCriterion = std::function<long long(const ClauseScore&)>;

inline long long positive_coverage(const ClauseScore& s) {
  return static_cast<long long>(s.pos_covered);
}

struct LearnerLimits {
  std::size_t max_body_literals = 2;
  std::size_t max_depth = 64;
  /// Worker threads for candidate scoring; 0 picks hardware concurrency.
  std::size_t threads = 0;
  QualityCriterion quality = positive_coverage;
};

struct LearnerConfig {
  ModeDeclarations modes;
  LearnerLimits limits;
};

/// Reads the JSON learner configuration (modes, constant pools, limits).
/// Throws ConfigError.
LearnerConfig parse_learner_config(std::string_view json_text);

struct InducedModel {
  PredicateKey target;
  std::vector<Clause> clauses;

  bool empty() const noexcept { return clauses.empty(); }
  /// One clause per line in KB syntax, variables renamed A, B, ...
  std::string to_program_text() const;
};

/// Builds a model from parsed clauses; every head must use `target`.
InducedModel model_from_program(const KnowledgeBase& program, const PredicateKey& target);

struct LearnResult {
  InducedModel model;
  /// Positives no admissible clause could cover; nonempty means incomplete.
  std::vector<Atom> uncoverable;
  /// Human-readable notes about indeterminate entailments.
  std::vector<std::string> log;

  bool complete() const noexcept { return uncoverable.empty(); }
};

/// Every candidate clause in enumeration order: bodies of 0..max_body_literals
/// literals, by size, then lexicographically by literal index.
std::vector<Clause> enumerate_candidates(const ModeDeclarations& modes,
                                         const LearnerLimits& limits);

ClauseScore score(const Clause& clause, const std::vector<Atom>& positives,
                  const std::vector<Atom>& negatives, const KnowledgeBase& background,
                  std::size_t max_depth = 64);

/// Best admissible clause (covers >= 1 of `positives`, no negative) under the
/// quality criterion, ties broken by fewer literals then enumeration order.
std::optional<Clause> generate_new_clause(const std::vector<Atom>& positives,
                                          const std::vector<Atom>& negatives,
                                          const KnowledgeBase& background,
                                          const ModeDeclarations& modes,
                                          const LearnerLimits& limits,
                                          std::vector<std::string>* log = nullptr);

/// Sequential covering: repeatedly add the best clause and drop every
/// positive it covers.
LearnResult learn(const KnowledgeBase& background, const ExampleSet& examples,
                  const ModeDeclarations& modes, const LearnerLimits& limits = {});

struct ModelReport {
  struct Entry {
    Atom example;
    Entailment status;
  };
  std::vector<Entry> positives;
  std::vector<Entry> negatives;
  std::size_t positives_entailed = 0;
  std::size_t negatives_entailed = 0;
  bool complete = false;
  bool consistent = false;

  std::string to_text() const;
};

ModelReport validate_model(const InducedModel& model, const KnowledgeBase& background,
                           const ExampleSet& examples, std::size_t max_depth = 64);

}  // namespace explikit
