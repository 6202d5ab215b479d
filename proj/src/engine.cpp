#include "explikit/engine.hpp"

#include <functional>
#include <type_traits>
#include <utility>

#include "explikit/error.hpp"

namespace explikit {

// ---------------------------------------------------------------------------
// Substitution / unify

Term Substitution::resolve(const Term& term) const {
  Term cur = term;
  while (cur.is_variable()) {
    auto it = bindings_.find(cur.name);
    if (it == bindings_.end() || it->second == cur) break;
    cur = it->second;
  }
  return cur;
}

Atom Substitution::apply(const Atom& atom) const {
  Atom out{atom.predicate, {}};
  out.args.reserve(atom.args.size());
  for (const auto& arg : atom.args) out.args.push_back(resolve(arg));
  return out;
}

Clause Substitution::apply(const Clause& clause) const {
  Clause out{apply(clause.head), {}};
  for (const auto& b : clause.body) out.body.push_back(apply(b));
  return out;
}

Substitution Substitution::normalized() const {
  Substitution out;
  for (const auto& [var, _] : bindings_) {
    Term value = resolve(Term::variable(var));
    if (!(value.is_variable() && value.name == var)) out.bindings_[var] = value;
  }
  return out;
}

std::optional<Substitution> unify(const Atom& a, const Atom& b, Substitution in) {
  if (a.predicate != b.predicate || a.arity() != b.arity()) return std::nullopt;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    const Term x = in.resolve(a.args[i]);
    const Term y = in.resolve(b.args[i]);
    if (x == y) continue;
    // Terms are flat, so the occurs check reduces to the x == y test above.
    if (x.is_variable()) {
      in.bind(x.name, y);
    } else if (y.is_variable()) {
      in.bind(y.name, x);
    } else {
      return std::nullopt;
    }
  }
  return in.normalized();
}

// ---------------------------------------------------------------------------
// Prover

namespace {

constexpr std::int64_t kUnbound = std::numeric_limits<std::int64_t>::min();

std::int64_t local_var(std::size_t i) { return -static_cast<std::int64_t>(i) - 1; }
std::size_t var_index(std::int64_t v) { return static_cast<std::size_t>(-(v + 1)); }

/// Non-owning callable reference; avoids std::function allocations in the
/// resolution hot path.
template <typename Sig>
class FunctionRef;

template <typename R, typename... Args>
class FunctionRef<R(Args...)> {
 public:
  template <typename F>
    requires(!std::is_same_v<std::remove_cvref_t<F>, FunctionRef>)
  FunctionRef(F&& f)  // NOLINT(google-explicit-constructor)
      : obj_(const_cast<void*>(static_cast<const void*>(&f))),
        call_([](void* o, Args... args) -> R {
          return (*static_cast<std::remove_reference_t<F>*>(o))(std::forward<Args>(args)...);
        }) {}

  R operator()(Args... args) const { return call_(obj_, std::forward<Args>(args)...); }

 private:
  void* obj_;
  R (*call_)(void*, Args...);
};

}  // namespace

Prover::Prover(KnowledgeBase kb) : kb_(std::move(kb)) {
  auto symbol = [this](const std::string& name) {
    auto [it, inserted] = symbol_ids_.emplace(name, static_cast<std::int64_t>(symbols_.size()));
    if (inserted) symbols_.push_back(name);
    return it->second;
  };
  auto predicate = [this](const PredicateKey& key) {
    auto [it, inserted] =
        predicate_ids_.emplace(key, static_cast<int>(clauses_by_predicate_.size()));
    if (inserted) clauses_by_predicate_.emplace_back();
    return it->second;
  };

  compiled_.reserve(kb_.size());
  for (std::size_t ci = 0; ci < kb_.size(); ++ci) {
    const Clause& clause = kb_[ci];
    const std::vector<std::string> vars = variables_of(clause);
    auto compile = [&](const Atom& atom) {
      CompiledAtom out{predicate(atom.key()), {}};
      for (const auto& arg : atom.args) {
        if (arg.is_constant()) {
          out.args.push_back(symbol(arg.name));
        } else {
          const auto pos = std::find(vars.begin(), vars.end(), arg.name) - vars.begin();
          out.args.push_back(local_var(static_cast<std::size_t>(pos)));
        }
      }
      return out;
    };
    CompiledClause cc{compile(clause.head), {}, vars.size()};
    for (const auto& b : clause.body) cc.body.push_back(compile(b));
    clauses_by_predicate_[static_cast<std::size_t>(cc.head.predicate)].push_back(ci);
    compiled_.push_back(std::move(cc));
  }
}

class SolveRun {
 public:
  SolveRun(const Prover& prover, SolveLimits limits) : p_(prover), limits_(limits) {}

  SolveResult run(const Atom& query) {
    SolveResult result;
    auto pred = p_.predicate_ids_.find(query.key());
    if (pred == p_.predicate_ids_.end()) return result;

    query_vars_ = variables_of(query);
    bindings_.assign(query_vars_.size(), kUnbound);
    std::vector<std::int64_t> goal;
    for (const auto& arg : query.args) {
      if (arg.is_constant()) {
        goal.push_back(symbol_id(arg.name));
      } else {
        auto pos = std::find(query_vars_.begin(), query_vars_.end(), arg.name) -
                   query_vars_.begin();
        goal.push_back(local_var(static_cast<std::size_t>(pos)));
      }
    }

    prove(pred->second, goal, 0, [&](std::size_t root) {
      result.solutions.push_back(make_solution(root));
      return result.solutions.size() >= limits_.max_solutions;
    });
    result.depth_limit_exceeded = depth_hit_;
    return result;
  }

 private:
  struct PendingNode {
    std::vector<std::int64_t> goal;
    std::size_t clause;
    std::size_t base;
    std::vector<std::size_t> children;
  };

  using Cont = FunctionRef<bool(std::size_t)>;
  using Done = FunctionRef<bool()>;

  std::int64_t symbol_id(const std::string& name) {
    if (auto it = p_.symbol_ids_.find(name); it != p_.symbol_ids_.end()) return it->second;
    auto [it, inserted] = extra_ids_.emplace(
        name, static_cast<std::int64_t>(p_.symbols_.size() + extra_symbols_.size()));
    if (inserted) extra_symbols_.push_back(name);
    return it->second;
  }

  const std::string& symbol_name(std::int64_t id) const {
    const auto i = static_cast<std::size_t>(id);
    return i < p_.symbols_.size() ? p_.symbols_[i] : extra_symbols_[i - p_.symbols_.size()];
  }

  std::int64_t walk(std::int64_t v) const {
    while (v < 0) {
      const std::int64_t b = bindings_[var_index(v)];
      if (b == kUnbound) return v;
      v = b;
    }
    return v;
  }

  bool unify(std::int64_t a, std::int64_t b) {
    a = walk(a);
    b = walk(b);
    if (a == b) return true;
    if (a < 0) {
      bind(var_index(a), b);
    } else if (b < 0) {
      bind(var_index(b), a);
    } else {
      return false;
    }
    return true;
  }

  void bind(std::size_t slot, std::int64_t value) {
    bindings_[slot] = value;
    trail_.push_back(slot);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      bindings_[trail_.back()] = kUnbound;
      trail_.pop_back();
    }
  }

  static std::int64_t instantiate(std::int64_t arg, std::size_t base) {
    return arg >= 0 ? arg : local_var(base + var_index(arg));
  }

  bool prove(int pred, const std::vector<std::int64_t>& goal, std::size_t depth, Cont k) {
    if (depth > limits_.max_depth) {
      depth_hit_ = true;
      return false;
    }
    for (std::size_t ci : p_.clauses_by_predicate_[static_cast<std::size_t>(pred)]) {
      const auto& clause = p_.compiled_[ci];
      const std::size_t trail_mark = trail_.size();
      const std::size_t base = bindings_.size();
      const std::size_t arena_mark = arena_.size();
      bindings_.resize(base + clause.variable_count, kUnbound);

      bool ok = true;
      for (std::size_t i = 0; i < goal.size() && ok; ++i) {
        ok = unify(goal[i], instantiate(clause.head.args[i], base));
      }
      if (ok) {
        std::vector<std::size_t> kids;
        const bool stop = prove_body(clause, base, 0, depth + 1, kids, [&]() {
          arena_.push_back({goal, ci, base, kids});
          return k(arena_.size() - 1);
        });
        if (stop) return true;
      }
      undo(trail_mark);
      bindings_.resize(base);
      arena_.resize(arena_mark);
    }
    return false;
  }

  bool prove_body(const Prover::CompiledClause& clause, std::size_t base, std::size_t i,
                  std::size_t depth, std::vector<std::size_t>& kids, Done done) {
    if (i == clause.body.size()) return done();
    const auto& lit = clause.body[i];
    std::vector<std::int64_t> goal;
    goal.reserve(lit.args.size());
    for (auto a : lit.args) goal.push_back(instantiate(a, base));
    return prove(lit.predicate, goal, depth, [&](std::size_t node) {
      kids.push_back(node);
      const bool stop = prove_body(clause, base, i + 1, depth, kids, done);
      kids.pop_back();
      return stop;
    });
  }

  Term to_term(std::int64_t v) const {
    v = walk(v);
    if (v >= 0) return Term::constant(symbol_name(v));
    const std::size_t slot = var_index(v);
    if (slot < query_vars_.size()) return Term::variable(query_vars_[slot]);
    return Term::variable("_G" + std::to_string(slot - query_vars_.size() + 1));
  }

  Atom to_atom(const std::string& predicate, const std::vector<std::int64_t>& args) const {
    Atom out{predicate, {}};
    for (auto a : args) out.args.push_back(to_term(a));
    return out;
  }

  ProofNode make_proof(std::size_t index) const {
    const PendingNode& node = arena_[index];
    const Clause& source = p_.kb_[node.clause];
    const auto& compiled = p_.compiled_[node.clause];

    ProofNode out;
    out.goal = to_atom(source.head.predicate, node.goal);
    out.clause_index = node.clause;
    std::vector<std::int64_t> args;
    auto instance = [&](const Prover::CompiledAtom& ca, const Atom& original) {
      args.clear();
      for (auto a : ca.args) args.push_back(instantiate(a, node.base));
      return to_atom(original.predicate, args);
    };
    out.clause.head = instance(compiled.head, source.head);
    for (std::size_t i = 0; i < compiled.body.size(); ++i) {
      out.clause.body.push_back(instance(compiled.body[i], source.body[i]));
    }
    for (std::size_t child : node.children) out.children.push_back(make_proof(child));
    return out;
  }

  Solution make_solution(std::size_t root) const {
    Solution s;
    for (std::size_t i = 0; i < query_vars_.size(); ++i) {
      Term value = to_term(local_var(i));
      if (!(value.is_variable() && value.name == query_vars_[i])) {
        s.substitution.bind(query_vars_[i], value);
      }
    }
    s.proof = make_proof(root);
    return s;
  }

  const Prover& p_;
  SolveLimits limits_;
  std::vector<std::string> query_vars_;
  std::vector<std::int64_t> bindings_;
  std::vector<std::size_t> trail_;
  std::vector<PendingNode> arena_;
  std::vector<std::string> extra_symbols_;
  std::unordered_map<std::string, std::int64_t> extra_ids_;
  bool depth_hit_ = false;
};

SolveResult Prover::solve(const Atom& query, SolveLimits limits) const {
  SolveRun run(*this, limits);
  return run.run(query);
}

Entailment Prover::entails(const Atom& atom, std::size_t max_depth) const {
  if (!atom.is_ground()) throw NotGround(render(atom));
  const SolveResult r = solve(atom, {max_depth, 1});
  if (!r.solutions.empty()) return Entailment::Entailed;
  return r.depth_limit_exceeded ? Entailment::Indeterminate : Entailment::NotEntailed;
}

SolveResult solve(const Atom& query, const KnowledgeBase& kb, SolveLimits limits) {
  return Prover(kb).solve(query, limits);
}

Entailment entails(const KnowledgeBase& kb, const Atom& atom, std::size_t max_depth) {
  return Prover(kb).entails(atom, max_depth);
}

// ---------------------------------------------------------------------------
// Bottom-up saturation. Deliberately shares no code with the SLD prover so
// it can serve as an independent oracle.

namespace {

using Bindings = std::map<std::string, std::string>;

bool match(const Atom& pattern, const Atom& fact, Bindings& b) {
  if (pattern.predicate != fact.predicate || pattern.arity() != fact.arity()) return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    const Term& t = pattern.args[i];
    const std::string& value = fact.args[i].name;
    if (t.is_constant()) {
      if (t.name != value) return false;
    } else if (auto it = b.find(t.name); it != b.end()) {
      if (it->second != value) return false;
    } else {
      b.emplace(t.name, value);
    }
  }
  return true;
}

}  // namespace

std::set<Atom> ground_saturate(const KnowledgeBase& kb,
                               const std::vector<std::string>& extra_constants) {
  std::vector<std::string> universe = kb.constants();
  for (const auto& c : extra_constants) {
    if (std::find(universe.begin(), universe.end(), c) == universe.end()) universe.push_back(c);
  }

  std::set<Atom> known;
  std::map<PredicateKey, std::vector<Atom>> by_key;

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Atom> derived;
    for (const Clause& clause : kb.clauses()) {
      // Join the body left to right against the facts known so far.
      std::function<void(std::size_t, Bindings&)> join = [&](std::size_t i, Bindings& b) {
        if (i == clause.body.size()) {
          // Enumerate head variables the body left unbound.
          std::vector<std::string> free;
          for (const auto& v : variables_of(clause.head)) {
            if (!b.contains(v)) free.push_back(v);
          }
          std::function<void(std::size_t)> ground_free = [&](std::size_t j) {
            if (j == free.size()) {
              Atom head{clause.head.predicate, {}};
              for (const auto& t : clause.head.args) {
                head.args.push_back(t.is_constant() ? t : Term::constant(b.at(t.name)));
              }
              if (!known.contains(head)) derived.push_back(std::move(head));
              return;
            }
            for (const auto& c : universe) {
              b[free[j]] = c;
              ground_free(j + 1);
            }
            b.erase(free[j]);
          };
          ground_free(0);
          return;
        }
        auto it = by_key.find(clause.body[i].key());
        if (it == by_key.end()) return;
        for (const Atom& fact : it->second) {
          Bindings next = b;
          if (match(clause.body[i], fact, next)) join(i + 1, next);
        }
      };
      Bindings empty;
      join(0, empty);
    }
    for (auto& atom : derived) {
      if (known.insert(atom).second) {
        by_key[atom.key()].push_back(atom);
        changed = true;
      }
    }
  }
  return known;
}

}  // namespace explikit
