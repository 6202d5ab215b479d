#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "explikit/term.hpp"

namespace explikit {

/// Ordered clause store with a (name, arity) index. Clause order is file
/// order; resolution and explanations depend on it.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(std::vector<Clause> clauses);

  /// Appends a clause. Throws ArityConflict if the predicate name is already
  /// known with a different arity.
  void add(Clause clause);

  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  std::size_t size() const noexcept { return clauses_.size(); }
  bool empty() const noexcept { return clauses_.empty(); }
  const Clause& operator[](std::size_t i) const { return clauses_[i]; }

  /// Positions of clauses whose head matches `key`, in KB order.
  std::span<const std::size_t> positions(const PredicateKey& key) const;
  bool has_predicate(const PredicateKey& key) const { return index_.contains(key); }
  std::vector<PredicateKey> predicates() const;

  /// Constants in first-appearance order.
  const std::vector<std::string>& constants() const noexcept { return constants_; }
  bool has_constant(const std::string& name) const { return constant_set_.contains(name); }

  /// `front` clauses followed by this KB's clauses.
  KnowledgeBase prepended(const std::vector<Clause>& front) const;

  bool operator==(const KnowledgeBase& other) const { return clauses_ == other.clauses_; }

 private:
  std::vector<Clause> clauses_;
  std::map<PredicateKey, std::vector<std::size_t>> index_;
  std::map<std::string, std::size_t> arity_by_name_;
  std::vector<std::string> constants_;
  std::set<std::string> constant_set_;
};

/// Ground positive and negative examples of one target predicate.
struct ExampleSet {
  std::vector<Atom> positives;
  std::vector<Atom> negatives;
  std::optional<PredicateKey> target;

  bool empty() const noexcept { return positives.empty() && negatives.empty(); }
  /// Constants mentioned by any example, first-appearance order.
  std::vector<std::string> constants() const;
};

}  // namespace explikit
