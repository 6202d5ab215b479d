#pragma once

#include <filesystem>
#include <memory>
#include <random>
#include <string>

#include "explikit/explanation.hpp"
#include "explikit/learner.hpp"
#include "explikit/parser.hpp"
#include "explikit/service.hpp"

namespace explikit::testing {

inline std::filesystem::path data_dir() { return EXPLIKIT_DATA_DIR; }

inline const KnowledgeBase& bundled_kb() {
  static const KnowledgeBase kb = load_program_file(data_dir() / "kb.pl");
  return kb;
}

inline const ExampleSet& bundled_examples() {
  static const ExampleSet ex = load_examples_file(data_dir() / "examples.pl");
  return ex;
}

inline const LearnerConfig& bundled_learner() {
  static const LearnerConfig cfg = parse_learner_config(read_file(data_dir() / "modes.json"));
  return cfg;
}

/// The bundled config with the model learned in memory (no model file).
inline ServiceConfig bundled_config() {
  ServiceConfig c = ServiceConfig::load(data_dir() / "config.json");
  c.model_path.clear();
  return c;
}

inline std::shared_ptr<const ExplanationContext> bundled_context() {
  static const auto ctx = load_artifacts(bundled_config(), ModelSource::Learn).context;
  return ctx;
}

inline Atom atom(const std::string& text) { return parse_atom(text); }
inline Clause clause(const std::string& text) { return parse_clause(text); }

/// Scratch directory removed at scope exit.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::random_device rd;
    path = std::filesystem::temp_directory_path() /
           ("explikit-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

/// Random well-formed clauses over a small vocabulary, for round-trip and
/// unifier properties.
class ClauseGenerator {
 public:
  explicit ClauseGenerator(std::uint32_t seed) : rng_(seed) {}

  Term term(bool allow_variables = true) {
    static const char* kConstants[] = {"a", "bob", "c1", "x_y", "zed", "being", "q9"};
    static const char* kVariables[] = {"X", "Y", "Z", "_W", "Abc", "V_1"};
    if (allow_variables && pick(3) == 0) return Term::variable(kVariables[pick(6)]);
    return Term::constant(kConstants[pick(7)]);
  }

  Atom atom(bool allow_variables = true) {
    static const char* kPredicates[] = {"p", "q", "is_a", "tracks_down", "r2"};
    // Arity is a function of the predicate so generated programs never
    // conflict.
    const std::size_t which = pick(5);
    Atom a;
    a.predicate = kPredicates[which];
    for (std::size_t i = 0; i < which % 4; ++i) a.args.push_back(term(allow_variables));
    return a;
  }

  Clause clause() {
    Clause c;
    const std::size_t body = pick(4);
    c.head = atom(body > 0);
    for (std::size_t i = 0; i < body; ++i) c.body.push_back(atom());
    return c;
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace explikit::testing
