#include "explikit/term.hpp"

#include <algorithm>
#include <map>

namespace explikit {

bool Atom::is_ground() const noexcept {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_constant(); });
}

bool Clause::is_ground() const noexcept {
  return head.is_ground() &&
         std::all_of(body.begin(), body.end(), [](const Atom& a) { return a.is_ground(); });
}

std::string render(const Term& term) { return term.name; }

std::string render(const Atom& atom) {
  std::string out = atom.predicate;
  if (atom.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    if (i > 0) out += ',';
    out += atom.args[i].name;
  }
  out += ')';
  return out;
}

std::string render(const Clause& clause) {
  std::string out = render(clause.head);
  if (!clause.body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < clause.body.size(); ++i) {
      if (i > 0) out += ", ";
      out += render(clause.body[i]);
    }
  }
  out += '.';
  return out;
}

namespace {

void collect(const Atom& atom, std::vector<std::string>& out) {
  for (const auto& arg : atom.args) {
    if (arg.is_variable() && std::find(out.begin(), out.end(), arg.name) == out.end()) {
      out.push_back(arg.name);
    }
  }
}

std::string nth_variable_name(std::size_t n) {
  std::string name(1, static_cast<char>('A' + n % 26));
  if (n >= 26) name += std::to_string(n / 26);
  return name;
}

}  // namespace

std::vector<std::string> variables_of(const Atom& atom) {
  std::vector<std::string> out;
  collect(atom, out);
  return out;
}

std::vector<std::string> variables_of(const Clause& clause) {
  std::vector<std::string> out;
  collect(clause.head, out);
  for (const auto& b : clause.body) collect(b, out);
  return out;
}

Clause canonicalize_variables(const Clause& clause) {
  std::map<std::string, std::string> renaming;
  std::size_t next = 0;
  for (const auto& v : variables_of(clause)) renaming[v] = nth_variable_name(next++);
  auto rename = [&](Atom atom) {
    for (auto& arg : atom.args) {
      if (arg.is_variable()) arg.name = renaming.at(arg.name);
    }
    return atom;
  };
  Clause out{rename(clause.head), {}};
  for (const auto& b : clause.body) out.body.push_back(rename(b));
  return out;
}

}  // namespace explikit
