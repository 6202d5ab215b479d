#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "explikit/knowledge_base.hpp"
#include "explikit/term.hpp"

namespace explikit {

/// Variable bindings. Values may mention other variables until
/// `normalized()` is taken; `apply` always resolves chains fully.
class Substitution {
 public:
  Substitution() = default;

  bool contains(const std::string& var) const { return bindings_.contains(var); }
  std::size_t size() const noexcept { return bindings_.size(); }
  bool empty() const noexcept { return bindings_.empty(); }
  const std::map<std::string, Term>& bindings() const noexcept { return bindings_; }

  /// Follows bindings until reaching a constant or an unbound variable.
  Term resolve(const Term& term) const;
  Atom apply(const Atom& atom) const;
  Clause apply(const Clause& clause) const;

  /// Binds an unbound variable. The caller guarantees `var` is unbound.
  void bind(const std::string& var, Term value) { bindings_[var] = std::move(value); }

  /// Same bindings with every value fully resolved; idempotent.
  Substitution normalized() const;

  bool operator==(const Substitution& other) const = default;

 private:
  std::map<std::string, Term> bindings_;
};

/// Most general unifier of `a` and `b` extending `in`, or nullopt.
std::optional<Substitution> unify(const Atom& a, const Atom& b, Substitution in = {});

/// One resolution step of a successful derivation: `goal` was resolved with
/// the ground clause instance `clause` (whose head equals `goal`), and each
/// body literal has its own child proof.
struct ProofNode {
  Atom goal;
  Clause clause;
  std::size_t clause_index = 0;  // position of the source clause in the program
  std::vector<ProofNode> children;

  bool is_leaf() const noexcept { return children.empty(); }
  bool operator==(const ProofNode&) const = default;
};

struct Solution {
  Substitution substitution;
  ProofNode proof;
  bool operator==(const Solution&) const = default;
};

struct SolveLimits {
  std::size_t max_depth = 64;
  std::size_t max_solutions = std::numeric_limits<std::size_t>::max();
};

struct SolveResult {
  std::vector<Solution> solutions;
  /// Some branch was cut at max_depth; the solution list may be incomplete.
  bool depth_limit_exceeded = false;
};

enum class Entailment { Entailed, NotEntailed, Indeterminate };

/// SLD resolver over a compiled copy of a knowledge base. Clauses are tried
/// in KB order, body literals left to right, with chronological
/// backtracking. Immutable after construction; `solve` may be called
/// concurrently.
class Prover {
 public:
  explicit Prover(KnowledgeBase kb);

  const KnowledgeBase& knowledge_base() const noexcept { return kb_; }

  SolveResult solve(const Atom& query, SolveLimits limits = {}) const;
  Entailment entails(const Atom& atom, std::size_t max_depth = 64) const;

  struct CompiledAtom {
    int predicate = -1;
    std::vector<std::int64_t> args;  // >= 0 symbol id, < 0 clause-local variable
  };
  struct CompiledClause {
    CompiledAtom head;
    std::vector<CompiledAtom> body;
    std::size_t variable_count = 0;
  };

 private:
  friend class SolveRun;

  KnowledgeBase kb_;
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, std::int64_t> symbol_ids_;
  std::map<PredicateKey, int> predicate_ids_;
  std::vector<std::vector<std::size_t>> clauses_by_predicate_;
  std::vector<CompiledClause> compiled_;
};

SolveResult solve(const Atom& query, const KnowledgeBase& kb, SolveLimits limits = {});
Entailment entails(const KnowledgeBase& kb, const Atom& atom, std::size_t max_depth = 64);

/// Least fixed point of bottom-up rule application. Variables that a rule
/// does not bind through its body range over the KB constants plus
/// `extra_constants`.
std::set<Atom> ground_saturate(const KnowledgeBase& kb,
                               const std::vector<std::string>& extra_constants = {});

}  // namespace explikit
