#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace explikit {

/// A function-free term: either a constant (`bobby`) or a variable (`A`).
struct Term {
  enum class Kind { Constant, Variable };

  Kind kind = Kind::Constant;
  std::string name;

  static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }
  static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }

  bool is_constant() const noexcept { return kind == Kind::Constant; }
  bool is_variable() const noexcept { return kind == Kind::Variable; }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;
};

struct PredicateKey {
  std::string name;
  std::size_t arity = 0;

  std::string to_string() const { return name + "/" + std::to_string(arity); }

  auto operator<=>(const PredicateKey&) const = default;
  bool operator==(const PredicateKey&) const = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  std::size_t arity() const noexcept { return args.size(); }
  PredicateKey key() const { return {predicate, args.size()}; }
  bool is_ground() const noexcept;

  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};

/// A Horn clause `head :- body.`; an empty body makes it a fact.
struct Clause {
  Atom head;
  std::vector<Atom> body;

  bool is_fact() const noexcept { return body.empty(); }
  bool is_ground() const noexcept;

  auto operator<=>(const Clause&) const = default;
  bool operator==(const Clause&) const = default;
};

std::string render(const Term& term);
std::string render(const Atom& atom);
std::string render(const Clause& clause);

/// Variable names in first-occurrence order, head before body.
std::vector<std::string> variables_of(const Clause& clause);
std::vector<std::string> variables_of(const Atom& atom);

/// Renames variables to A, B, C, ... in first-occurrence order.
Clause canonicalize_variables(const Clause& clause);

}  // namespace explikit

template <>
struct std::hash<explikit::Atom> {
  std::size_t operator()(const explikit::Atom& atom) const noexcept {
    std::size_t h = std::hash<std::string>{}(atom.predicate);
    for (const auto& arg : atom.args) {
      h = h * 1099511628211ULL ^ std::hash<std::string>{}(arg.name) ^
          static_cast<std::size_t>(arg.kind);
    }
    return h;
  }
};
