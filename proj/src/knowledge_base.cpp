#include "explikit/knowledge_base.hpp"

#include <algorithm>

#include "explikit/error.hpp"

namespace explikit {

KnowledgeBase::KnowledgeBase(std::vector<Clause> clauses) {
  for (auto& c : clauses) add(std::move(c));
}

void KnowledgeBase::add(Clause clause) {
  auto check = [this](const Atom& atom) {
    auto [it, inserted] = arity_by_name_.emplace(atom.predicate, atom.arity());
    if (!inserted && it->second != atom.arity()) throw ArityConflict(atom.predicate);
  };
  check(clause.head);
  for (const auto& b : clause.body) check(b);

  auto note_constants = [this](const Atom& atom) {
    for (const auto& arg : atom.args) {
      if (arg.is_constant() && constant_set_.insert(arg.name).second) {
        constants_.push_back(arg.name);
      }
    }
  };
  note_constants(clause.head);
  for (const auto& b : clause.body) note_constants(b);

  index_[clause.head.key()].push_back(clauses_.size());
  clauses_.push_back(std::move(clause));
}

std::span<const std::size_t> KnowledgeBase::positions(const PredicateKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return {};
  return it->second;
}

std::vector<PredicateKey> KnowledgeBase::predicates() const {
  std::vector<PredicateKey> out;
  for (const auto& [key, _] : index_) out.push_back(key);
  return out;
}

KnowledgeBase KnowledgeBase::prepended(const std::vector<Clause>& front) const {
  KnowledgeBase out;
  for (const auto& c : front) out.add(c);
  for (const auto& c : clauses_) out.add(c);
  return out;
}

std::vector<std::string> ExampleSet::constants() const {
  std::vector<std::string> out;
  auto note = [&out](const Atom& atom) {
    for (const auto& arg : atom.args) {
      if (std::find(out.begin(), out.end(), arg.name) == out.end()) out.push_back(arg.name);
    }
  };
  for (const auto& p : positives) note(p);
  for (const auto& n : negatives) note(n);
  return out;
}

}  // namespace explikit
