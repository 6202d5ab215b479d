#include <gtest/gtest.h>

#include <chrono>

#include "explikit/engine.hpp"
#include "explikit/error.hpp"
#include "explikit/learner.hpp"
#include "support.hpp"

using namespace explikit;
using namespace explikit::testing;

namespace {

const Clause kCarnivoreClause = parse_clause("tracks_down(A,B) :- is(A,carnivore), is(B,herbivore).");
const Clause kHerbivoreClause = parse_clause("tracks_down(A,B) :- is(A,herbivore), is(B,plant).");

std::set<std::string> canonical_set(const std::vector<Clause>& clauses) {
  std::set<std::string> out;
  for (const auto& c : clauses) out.insert(render(canonicalize_variables(c)));
  return out;
}

// Coverage of a non-recursive target clause computed from the bottom-up
// closure of T: the clause covers e iff every body literal, with the head
// bound to e, is in the closure.
std::pair<std::size_t, std::size_t> oracle_counts(const Clause& c, const std::set<Atom>& closure,
                                                  const ExampleSet& ex) {
  auto covers = [&](const Atom& e) {
    const auto s = unify(c.head, e);
    if (!s) return false;
    for (const auto& lit : c.body) {
      if (!closure.contains(s->apply(lit))) return false;
    }
    return true;
  };
  std::size_t pos = 0, neg = 0;
  for (const auto& p : ex.positives) pos += covers(p) ? 1 : 0;
  for (const auto& n : ex.negatives) neg += covers(n) ? 1 : 0;
  return {pos, neg};
}

}  // namespace

TEST(LearnerConfig, ParsesBundledModes) {
  const LearnerConfig& cfg = bundled_learner();
  EXPECT_EQ(cfg.modes.head, (PredicateKey{"tracks_down", 2}));
  ASSERT_EQ(cfg.modes.body.size(), 1u);
  EXPECT_EQ(cfg.modes.body[0].predicate, "is");
  EXPECT_EQ(cfg.modes.constant_pool.at("concept").size(), 24u);
  EXPECT_EQ(cfg.limits.max_body_literals, 2u);
}

TEST(LearnerConfig, RejectsMalformed) {
  EXPECT_THROW(parse_learner_config("{"), ConfigError);
  EXPECT_THROW(parse_learner_config(R"({"head": {"predicate": "t", "arity": 1},
      "body": [{"predicate": "is", "args": ["+", "#missing"]}], "constants": {}})"),
               ConfigError);
}

TEST(Enumerate, CountAndOrder) {
  const auto candidates = enumerate_candidates(bundled_learner().modes, bundled_learner().limits);
  // 48 literals: 1 empty body + 48 singletons + C(48,2) pairs.
  EXPECT_EQ(candidates.size(), 1u + 48u + 48u * 47u / 2u);
  EXPECT_EQ(render(candidates[0]), "tracks_down(A,B).");
  EXPECT_EQ(render(candidates[1]), "tracks_down(A,B) :- is(A,clover).");
  EXPECT_EQ(render(candidates[25]), "tracks_down(A,B) :- is(B,clover).");
  EXPECT_EQ(render(candidates[49]), "tracks_down(A,B) :- is(A,clover), is(A,dandelion).");
  for (const auto& c : candidates) EXPECT_LE(c.body.size(), 2u);
}

TEST(Score, FigureFiveClauses) {
  const ExampleSet& ex = bundled_examples();
  const ClauseScore carn = score(kCarnivoreClause, ex.positives, ex.negatives, bundled_kb());
  EXPECT_EQ(carn.pos_covered, 3u);
  EXPECT_EQ(carn.neg_covered, 0u);
  EXPECT_EQ(carn.literal_count, 2u);
  const ClauseScore herb = score(kHerbivoreClause, ex.positives, ex.negatives, bundled_kb());
  EXPECT_EQ(herb.pos_covered, 5u);
  EXPECT_EQ(herb.neg_covered, 0u);
}

TEST(Score, PlantSubjectCoversNoPositive) {
  const ExampleSet& ex = bundled_examples();
  const ClauseScore s =
      score(parse_clause("tracks_down(A,B) :- is(A,plant)."), ex.positives, ex.negatives, bundled_kb());
  EXPECT_EQ(s.pos_covered, 0u);
  EXPECT_EQ(s.neg_covered, 3u);  // dandelion-bobby, clover-clover, rosemary-tipsie
}

TEST(Score, AgreesWithSaturationOracleForEveryCandidate) {
  const ExampleSet& ex = bundled_examples();
  const std::set<Atom> closure = ground_saturate(bundled_kb(), ex.constants());
  const auto candidates = enumerate_candidates(bundled_learner().modes, bundled_learner().limits);
  for (const auto& c : candidates) {
    const ClauseScore s = score(c, ex.positives, ex.negatives, bundled_kb());
    const auto [pos, neg] = oracle_counts(c, closure, ex);
    ASSERT_EQ(s.pos_covered, pos) << render(c);
    ASSERT_EQ(s.neg_covered, neg) << render(c);
    EXPECT_EQ(s.indeterminate, 0u);
  }
}

// Full saturation of T plus the candidate, on a sample, cross-checks the
// shortcut oracle above.
TEST(Score, AgreesWithFullSaturationOnSample) {
  const ExampleSet& ex = bundled_examples();
  const auto candidates = enumerate_candidates(bundled_learner().modes, bundled_learner().limits);
  ClauseGenerator gen(99);
  std::vector<Clause> sample{kCarnivoreClause, kHerbivoreClause, candidates[0]};
  for (int i = 0; i < 12; ++i) sample.push_back(candidates[gen.pick(candidates.size())]);
  for (const auto& c : sample) {
    const std::set<Atom> closure = ground_saturate(bundled_kb().prepended({c}), ex.constants());
    std::size_t pos = 0, neg = 0;
    for (const auto& p : ex.positives) pos += closure.contains(p) ? 1 : 0;
    for (const auto& n : ex.negatives) neg += closure.contains(n) ? 1 : 0;
    const ClauseScore s = score(c, ex.positives, ex.negatives, bundled_kb());
    EXPECT_EQ(s.pos_covered, pos) << render(c);
    EXPECT_EQ(s.neg_covered, neg) << render(c);
  }
}

TEST(GenerateNewClause, PrefersFiveCoverageClause) {
  const ExampleSet& ex = bundled_examples();
  const auto c = generate_new_clause(ex.positives, ex.negatives, bundled_kb(),
                                     bundled_learner().modes, bundled_learner().limits);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(render(canonicalize_variables(*c)), render(kHerbivoreClause));
}

TEST(GenerateNewClause, BruteForceOptimum) {
  // Independent argmax over every candidate with the oracle counts.
  const ExampleSet& ex = bundled_examples();
  const std::set<Atom> closure = ground_saturate(bundled_kb(), ex.constants());
  const auto candidates = enumerate_candidates(bundled_learner().modes, bundled_learner().limits);
  std::size_t best_pos = 0;
  std::vector<std::string> best;
  for (const auto& c : candidates) {
    const auto [pos, neg] = oracle_counts(c, closure, ex);
    if (neg != 0 || pos == 0) continue;
    if (pos > best_pos) {
      best_pos = pos;
      best.clear();
    }
    if (pos == best_pos) best.push_back(render(c));
  }
  EXPECT_EQ(best_pos, 5u);
  ASSERT_FALSE(best.empty());
  // Several two-literal bodies cover five; enumeration order picks the
  // herbivore/plant one first because the concept pool lists specific
  // concepts before general ones.
  EXPECT_EQ(best.front(), render(kHerbivoreClause));
}

TEST(GenerateNewClause, SinglePositive) {
  const ExampleSet& ex = bundled_examples();
  const std::vector<Atom> pos{atom("tracks_down(bella,bobby)")};
  const auto c = generate_new_clause(pos, ex.negatives, bundled_kb(), bundled_learner().modes,
                                     bundled_learner().limits);
  ASSERT_TRUE(c.has_value());
  const ClauseScore s = score(*c, pos, ex.negatives, bundled_kb());
  EXPECT_EQ(s.pos_covered, 1u);
  EXPECT_EQ(s.neg_covered, 0u);
}

TEST(GenerateNewClause, NegativePosedAsPositiveHasNoClause) {
  const ExampleSet& ex = bundled_examples();
  const std::vector<Atom> pos{atom("tracks_down(argo,argo)")};
  EXPECT_FALSE(generate_new_clause(pos, ex.negatives, bundled_kb(), bundled_learner().modes,
                                   bundled_learner().limits)
                   .has_value());
}

TEST(GenerateNewClause, EmptyNegativesPicksMostGeneral) {
  const std::vector<Atom> pos{atom("tracks_down(bobby,dandelion)")};
  const auto c = generate_new_clause(pos, {}, bundled_kb(), bundled_learner().modes,
                                     bundled_learner().limits);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(render(*c), "tracks_down(A,B).");
}

TEST(GenerateNewClause, CustomQualityCriterion) {
  // Penalizing long bodies lets a one-literal clause win.
  LearnerLimits limits = bundled_learner().limits;
  limits.quality = [](const ClauseScore& s) {
    return static_cast<long long>(s.pos_covered) * 10 - static_cast<long long>(s.literal_count) * 100;
  };
  const ExampleSet& ex = bundled_examples();
  const auto c = generate_new_clause(ex.positives, ex.negatives, bundled_kb(),
                                     bundled_learner().modes, limits);
  ASSERT_TRUE(c.has_value());
  EXPECT_LE(c->body.size(), 1u);
}

TEST(Learn, ReproducesFigureFiveModel) {
  const auto start = std::chrono::steady_clock::now();
  const LearnResult r = learn(bundled_kb(), bundled_examples(), bundled_learner().modes,
                              bundled_learner().limits);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_LT(elapsed, std::chrono::seconds(10));
  EXPECT_TRUE(r.complete());
  EXPECT_EQ(r.model.target, (PredicateKey{"tracks_down", 2}));
  EXPECT_EQ(canonical_set(r.model.clauses),
            canonical_set({kCarnivoreClause, kHerbivoreClause}));
  ASSERT_EQ(r.model.clauses.size(), 2u);
  EXPECT_EQ(render(r.model.clauses[0]), render(kHerbivoreClause));
}

TEST(Learn, DeterministicAcrossThreadCounts) {
  LearnerLimits one = bundled_learner().limits, many = bundled_learner().limits;
  one.threads = 1;
  many.threads = 8;
  const LearnResult a = learn(bundled_kb(), bundled_examples(), bundled_learner().modes, one);
  const LearnResult b = learn(bundled_kb(), bundled_examples(), bundled_learner().modes, many);
  EXPECT_EQ(a.model.clauses, b.model.clauses);
}

TEST(Learn, EmptyPositivesGiveEmptyModel) {
  ExampleSet ex;
  ex.negatives = bundled_examples().negatives;
  const LearnResult r = learn(bundled_kb(), ex, bundled_learner().modes);
  EXPECT_TRUE(r.model.empty());
  EXPECT_TRUE(r.complete());
}

TEST(Learn, UncoverablePositivesReported) {
  ExampleSet ex = bundled_examples();
  ex.positives.push_back(atom("tracks_down(argo,tipsie)"));
  ex.negatives.push_back(atom("tracks_down(samson,tipsie)"));
  const LearnResult r = learn(bundled_kb(), ex, bundled_learner().modes);
  EXPECT_FALSE(r.complete());
  // samson and argo are both dogs, so nothing separates the two.
  ASSERT_EQ(r.uncoverable.size(), 1u);
  EXPECT_EQ(render(r.uncoverable[0]), "tracks_down(argo,tipsie)");
  const ModelReport report = validate_model(r.model, bundled_kb(), ex);
  EXPECT_FALSE(report.complete);
  EXPECT_TRUE(report.consistent);
}

TEST(Learn, EveryClauseReducesUncovered) {
  const LearnResult r = learn(bundled_kb(), bundled_examples(), bundled_learner().modes);
  std::vector<Atom> remaining = bundled_examples().positives;
  for (const auto& c : r.model.clauses) {
    const ClauseScore s = score(c, remaining, bundled_examples().negatives, bundled_kb());
    EXPECT_GE(s.pos_covered, 1u);
    EXPECT_EQ(s.neg_covered, 0u);
    std::vector<Atom> next;
    for (const auto& p : remaining) {
      if (score(c, {p}, {}, bundled_kb()).pos_covered == 0) next.push_back(p);
    }
    EXPECT_LT(next.size(), remaining.size());
    remaining = next;
  }
  EXPECT_TRUE(remaining.empty());
}

TEST(Validate, FigureFiveModel) {
  InducedModel m{{"tracks_down", 2}, {kCarnivoreClause, kHerbivoreClause}};
  const ModelReport r = validate_model(m, bundled_kb(), bundled_examples());
  EXPECT_EQ(r.positives_entailed, 8u);
  EXPECT_EQ(r.negatives_entailed, 0u);
  EXPECT_TRUE(r.complete);
  EXPECT_TRUE(r.consistent);
  EXPECT_NE(r.to_text().find("positives: 8/8 entailed"), std::string::npos);
}

TEST(Validate, EmptyModel) {
  const ModelReport r = validate_model(InducedModel{{"tracks_down", 2}, {}}, bundled_kb(),
                                       bundled_examples());
  EXPECT_FALSE(r.complete);
  EXPECT_TRUE(r.consistent);
  const ModelReport none = validate_model(InducedModel{}, bundled_kb(), ExampleSet{});
  EXPECT_TRUE(none.complete);
  EXPECT_TRUE(none.consistent);
}

TEST(InducedModel, ProgramTextRoundTrips) {
  InducedModel m{{"tracks_down", 2}, {kHerbivoreClause, kCarnivoreClause}};
  const std::string text = m.to_program_text();
  EXPECT_EQ(text,
            "tracks_down(A,B) :- is(A,herbivore), is(B,plant).\n"
            "tracks_down(A,B) :- is(A,carnivore), is(B,herbivore).\n");
  const InducedModel back = model_from_program(parse_program(text), m.target);
  EXPECT_EQ(back.clauses, m.clauses);
  EXPECT_THROW(model_from_program(bundled_kb(), m.target), Error);
}
