#include "explikit/learner.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "explikit/error.hpp"

namespace explikit {

namespace {

std::string head_variable(std::size_t i) {
  std::string name(1, static_cast<char>('A' + i % 26));
  if (i >= 26) name += std::to_string(i / 26);
  return name;
}

Atom head_atom(const PredicateKey& key) {
  Atom head{key.name, {}};
  for (std::size_t i = 0; i < key.arity; ++i) head.args.push_back(Term::variable(head_variable(i)));
  return head;
}

std::vector<Atom> candidate_literals(const ModeDeclarations& modes) {
  std::vector<Term> head_vars = head_atom(modes.head).args;
  std::vector<Atom> out;
  for (const auto& schema : modes.body) {
    // Cartesian product, first argument varying slowest.
    std::vector<std::vector<Term>> choices;
    for (const auto& arg : schema.args) {
      std::vector<Term> options;
      if (arg.kind == ArgumentMode::Kind::HeadVariable) {
        options = head_vars;
      } else {
        for (const auto& c : modes.constant_pool.at(arg.role)) options.push_back(Term::constant(c));
      }
      choices.push_back(std::move(options));
    }
    std::vector<Term> current;
    std::function<void(std::size_t)> expand = [&](std::size_t i) {
      if (i == choices.size()) {
        out.push_back(Atom{schema.predicate, current});
        return;
      }
      for (const auto& t : choices[i]) {
        current.push_back(t);
        expand(i + 1);
        current.pop_back();
      }
    };
    expand(0);
  }
  return out;
}

struct Candidate {
  long long quality;
  std::size_t literal_count;
  std::size_t order;
};

// Total order: higher quality, then fewer literals, then earlier enumeration.
bool better(const Candidate& a, const Candidate& b) {
  if (a.quality != b.quality) return a.quality > b.quality;
  if (a.literal_count != b.literal_count) return a.literal_count < b.literal_count;
  return a.order < b.order;
}

}  // namespace

LearnerConfig parse_learner_config(std::string_view json_text) {
  using nlohmann::json;
  LearnerConfig cfg;
  try {
    const json doc = json::parse(json_text);
    const json& head = doc.at("head");
    cfg.modes.head = {head.at("predicate").get<std::string>(), head.at("arity").get<std::size_t>()};
    if (doc.contains("constants")) {
      for (const auto& [role, values] : doc.at("constants").items()) {
        cfg.modes.constant_pool[role] = values.get<std::vector<std::string>>();
      }
    }
    for (const json& schema : doc.at("body")) {
      BodySchema s{schema.at("predicate").get<std::string>(), {}};
      for (const json& arg : schema.at("args")) {
        const auto spec = arg.get<std::string>();
        if (spec == "+") {
          s.args.push_back({ArgumentMode::Kind::HeadVariable, ""});
        } else if (spec.size() > 1 && spec[0] == '#') {
          const std::string role = spec.substr(1);
          if (!cfg.modes.constant_pool.contains(role)) {
            throw ConfigError("body schema " + s.predicate + " uses unknown constant pool '" +
                              role + "'");
          }
          s.args.push_back({ArgumentMode::Kind::Constant, role});
        } else {
          throw ConfigError("argument mode must be '+' or '#<pool>', got '" + spec + "'");
        }
      }
      cfg.modes.body.push_back(std::move(s));
    }
    if (doc.contains("limits")) {
      const json& limits = doc.at("limits");
      cfg.limits.max_body_literals = limits.value("max_body_literals", cfg.limits.max_body_literals);
      cfg.limits.max_depth = limits.value("depth_limit", cfg.limits.max_depth);
      cfg.limits.threads = limits.value("threads", cfg.limits.threads);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("learner configuration: ") + e.what());
  }
  if (cfg.limits.max_depth == 0) throw ConfigError("depth_limit must be positive");
  return cfg;
}

std::string InducedModel::to_program_text() const {
  std::string out;
  for (const auto& c : clauses) out += render(canonicalize_variables(c)) + "\n";
  return out;
}

InducedModel model_from_program(const KnowledgeBase& program, const PredicateKey& target) {
  InducedModel model{target, {}};
  for (const auto& c : program.clauses()) {
    if (c.head.key() != target) {
      throw ConfigError("model clause " + render(c) + " does not define " + target.to_string());
    }
    model.clauses.push_back(c);
  }
  return model;
}

std::vector<Clause> enumerate_candidates(const ModeDeclarations& modes,
                                         const LearnerLimits& limits) {
  const Atom head = head_atom(modes.head);
  const std::vector<Atom> literals = candidate_literals(modes);
  std::vector<Clause> out;
  const std::size_t max_len = std::min(limits.max_body_literals, literals.size());
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<std::size_t> idx(len);
    for (std::size_t i = 0; i < len; ++i) idx[i] = i;
    while (true) {
      Clause c{head, {}};
      for (auto i : idx) c.body.push_back(literals[i]);
      out.push_back(std::move(c));
      // Next combination in lexicographic order.
      std::size_t i = len;
      while (i > 0 && idx[i - 1] == literals.size() - len + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < len; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

ClauseScore score(const Clause& clause, const std::vector<Atom>& positives,
                  const std::vector<Atom>& negatives, const KnowledgeBase& background,
                  std::size_t max_depth) {
  const Prover prover(background.prepended({clause}));
  ClauseScore s;
  s.literal_count = clause.body.size();
  for (const auto& p : positives) {
    const Entailment e = prover.entails(p, max_depth);
    if (e == Entailment::Entailed) ++s.pos_covered;
    if (e == Entailment::Indeterminate) ++s.indeterminate;
  }
  for (const auto& n : negatives) {
    const Entailment e = prover.entails(n, max_depth);
    if (e == Entailment::Entailed) ++s.neg_covered;
    if (e == Entailment::Indeterminate) ++s.indeterminate;
  }
  return s;
}

std::optional<Clause> generate_new_clause(const std::vector<Atom>& positives,
                                          const std::vector<Atom>& negatives,
                                          const KnowledgeBase& background,
                                          const ModeDeclarations& modes,
                                          const LearnerLimits& limits,
                                          std::vector<std::string>* log) {
  if (positives.empty()) return std::nullopt;
  const std::vector<Clause> candidates = enumerate_candidates(modes, limits);

  std::size_t workers = limits.threads != 0 ? limits.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, candidates.size()));

  struct Partial {
    std::optional<Candidate> best;
    std::vector<std::string> notes;
  };
  std::vector<Partial> partial(workers);

  auto evaluate = [&](std::size_t worker) {
    Partial& mine = partial[worker];
    for (std::size_t i = worker; i < candidates.size(); i += workers) {
      const Clause& c = candidates[i];
      const Prover prover(background.prepended({c}));
      bool admissible = true;
      for (const auto& n : negatives) {
        const Entailment e = prover.entails(n, limits.max_depth);
        if (e == Entailment::Indeterminate) {
          mine.notes.push_back("indeterminate: " + render(c) + " on " + render(n));
        }
        if (e == Entailment::Entailed) {
          admissible = false;
          break;
        }
      }
      if (!admissible) continue;
      ClauseScore s;
      s.literal_count = c.body.size();
      for (const auto& p : positives) {
        const Entailment e = prover.entails(p, limits.max_depth);
        if (e == Entailment::Entailed) ++s.pos_covered;
        if (e == Entailment::Indeterminate) {
          ++s.indeterminate;
          mine.notes.push_back("indeterminate: " + render(c) + " on " + render(p));
        }
      }
      if (s.pos_covered == 0) continue;
      const Candidate cand{limits.quality(s), s.literal_count, i};
      if (!mine.best || better(cand, *mine.best)) mine.best = cand;
    }
  };

  if (workers == 1) {
    evaluate(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(evaluate, w);
  }

  std::optional<Candidate> best;
  std::vector<std::string> notes;
  for (auto& part : partial) {
    if (part.best && (!best || better(*part.best, *best))) best = part.best;
    notes.insert(notes.end(), part.notes.begin(), part.notes.end());
  }
  if (log != nullptr) {
    std::sort(notes.begin(), notes.end());
    log->insert(log->end(), notes.begin(), notes.end());
  }
  if (!best) return std::nullopt;
  return candidates[best->order];
}

LearnResult learn(const KnowledgeBase& background, const ExampleSet& examples,
                  const ModeDeclarations& modes, const LearnerLimits& limits) {
  LearnResult result;
  result.model.target = examples.target.value_or(modes.head);
  if (examples.target && *examples.target != modes.head) {
    throw ConfigError("mode head " + modes.head.to_string() + " does not match example target " +
                      examples.target->to_string());
  }

  std::vector<Atom> remaining = examples.positives;
  while (!remaining.empty()) {
    std::optional<Clause> clause = generate_new_clause(remaining, examples.negatives, background,
                                                       modes, limits, &result.log);
    if (!clause) {
      result.uncoverable = remaining;
      break;
    }
    const Prover prover(background.prepended({*clause}));
    std::vector<Atom> still_open;
    for (auto& p : remaining) {
      if (prover.entails(p, limits.max_depth) != Entailment::Entailed) {
        still_open.push_back(std::move(p));
      }
    }
    remaining = std::move(still_open);
    if (std::find(result.model.clauses.begin(), result.model.clauses.end(), *clause) ==
        result.model.clauses.end()) {
      result.model.clauses.push_back(std::move(*clause));
    }
  }
  return result;
}

ModelReport validate_model(const InducedModel& model, const KnowledgeBase& background,
                           const ExampleSet& examples, std::size_t max_depth) {
  const Prover prover(background.prepended(model.clauses));
  ModelReport report;
  for (const auto& p : examples.positives) {
    const Entailment e = prover.entails(p, max_depth);
    if (e == Entailment::Entailed) ++report.positives_entailed;
    report.positives.push_back({p, e});
  }
  for (const auto& n : examples.negatives) {
    const Entailment e = prover.entails(n, max_depth);
    if (e == Entailment::Entailed) ++report.negatives_entailed;
    report.negatives.push_back({n, e});
  }
  report.complete = report.positives_entailed == examples.positives.size();
  report.consistent = report.negatives_entailed == 0;
  return report;
}

std::string ModelReport::to_text() const {
  auto status = [](Entailment e) {
    switch (e) {
      case Entailment::Entailed: return "entailed";
      case Entailment::NotEntailed: return "not entailed";
      case Entailment::Indeterminate: return "indeterminate";
    }
    return "";
  };
  std::ostringstream out;
  out << "positives: " << positives_entailed << "/" << positives.size() << " entailed\n";
  for (const auto& e : positives) out << "  + " << render(e.example) << "  " << status(e.status) << "\n";
  out << "negatives: " << negatives_entailed << "/" << negatives.size() << " entailed\n";
  for (const auto& e : negatives) out << "  - " << render(e.example) << "  " << status(e.status) << "\n";
  out << "complete: " << (complete ? "yes" : "no") << "\n";
  out << "consistent: " << (consistent ? "yes" : "no") << "\n";
  return out.str();
}

}  // namespace explikit
