#include <gtest/gtest.h>

#include "../common/dialogue_properties.hpp"
#include "explikit/dialogue.hpp"
#include "explikit/error.hpp"
#include "support.hpp"

using namespace explikit;
using namespace explikit::testing;

namespace {

// The bundled context, but with the model in the order the clauses are
// usually quoted (carnivore clause first).
std::shared_ptr<const ExplanationContext> quoted_order_context() {
  auto ctx = std::make_shared<ExplanationContext>(*bundled_context());
  ctx->model.clauses = parse_program(
                           "tracks_down(A,B) :- is(A,carnivore), is(B,herbivore).\n"
                           "tracks_down(A,B) :- is(A,herbivore), is(B,plant).\n")
                           .clauses();
  return ctx;
}

DialogueSession classified(const std::string& text = "tracks_down(bobby,dandelion)") {
  DialogueSession s = open_session(bundled_context());
  s.handle(Request::classify(atom(text)));
  return s;
}

}  // namespace

TEST(Dialogue, OpenSession) {
  DialogueSession a = open_session(bundled_context());
  DialogueSession b = open_session(bundled_context());
  EXPECT_NE(a.id(), b.id());
  EXPECT_EQ(a.id().size(), 16u);
  EXPECT_EQ(a.state(), SessionState::AwaitingQuery);
  EXPECT_TRUE(a.history().empty());
  ASSERT_EQ(a.transcript().size(), 1u);
  EXPECT_FALSE(a.transcript()[0].request.has_value());
  EXPECT_EQ(a.transcript()[0].response->text,
            bundled_context()->strings.introduction + " " + bundled_context()->strings.advice);
}

TEST(Dialogue, ClassifyPositive) {
  DialogueSession s = open_session(bundled_context());
  const Response r = s.handle(Request::classify(atom("tracks_down(bobby,dandelion)")));
  EXPECT_EQ(r.text, "Bobby tracks down dandelion, because Bobby is a herbivore and dandelion is a plant.");
  ASSERT_EQ(r.choices.size(), 2u);
  EXPECT_EQ(r.choices[0].index, 1u);
  EXPECT_EQ(r.choices[0].text, "Bobby is a herbivore");
  EXPECT_EQ(r.choices[1].text, "dandelion is a plant");
  EXPECT_EQ(r.state_after, SessionState::Exploring);
  EXPECT_EQ(r.cursor, 0u);
  EXPECT_EQ(s.state(), SessionState::Exploring);
}

TEST(Dialogue, ClassifyBellaBobby) {
  const DialogueSession s = classified("tracks_down(bella,bobby)");
  EXPECT_EQ(s.transcript().back().response->text,
            "Bella tracks down Bobby, because Bella is a carnivore and Bobby is a herbivore.");
}

TEST(Dialogue, ClassifyNegativeLeavesStateUnchanged) {
  DialogueSession s = open_session(bundled_context());
  try {
    s.handle(Request::classify(atom("tracks_down(argo,argo)")));
    FAIL() << "expected NotEntailed";
  } catch (const NotEntailed& e) {
    EXPECT_STREQ(e.what(), "The model does not conclude that Argo tracks down Argo.");
  }
  EXPECT_EQ(s.state(), SessionState::AwaitingQuery);
  EXPECT_FALSE(s.tree().has_value());
  ASSERT_EQ(s.transcript().size(), 2u);
  EXPECT_EQ(s.transcript()[1].error_code, "not_entailed");

  // A negative while exploring keeps the previous tree and cursor.
  DialogueSession e = classified();
  e.handle(Request::drill_down(1));
  EXPECT_THROW(e.handle(Request::classify(atom("tracks_down(fluffy,argo)"))), NotEntailed);
  EXPECT_EQ(e.state(), SessionState::Exploring);
  EXPECT_EQ(e.cursor(), 1u);
}

TEST(Dialogue, ClassifyNonGround) {
  DialogueSession s = open_session(bundled_context());
  EXPECT_THROW(s.handle(Request::classify(atom("tracks_down(X,bobby)"))), NotGround);
}

TEST(Dialogue, DrillDownAndBack) {
  DialogueSession s = classified();
  const Response down = s.handle(Request::drill_down(1));
  EXPECT_EQ(down.text, "Bobby is a herbivore, because Bobby is a rabbit and rabbit is a herbivore.");
  EXPECT_EQ(down.cursor, 1u);
  EXPECT_EQ(s.history(), (std::vector<std::size_t>{0}));
  const Response up = s.handle(Request::back());
  EXPECT_EQ(up.cursor, 0u);
  EXPECT_EQ(up.text, s.transcript()[1].response->text);
  EXPECT_THROW(s.handle(Request::back()), AtRoot);
}

TEST(Dialogue, FactLeaf) {
  DialogueSession s = classified();
  s.handle(Request::drill_down(1));
  const Response leaf = s.handle(Request::drill_down(1));
  EXPECT_EQ(leaf.text, "Bobby is a rabbit.");
  EXPECT_TRUE(leaf.choices.empty());
  EXPECT_THROW(s.handle(Request::drill_down(1)), FactLeaf);
  EXPECT_THROW(s.handle(Request::drill_down(7)), FactLeaf);
}

TEST(Dialogue, NoSuchChild) {
  DialogueSession s = classified();
  try {
    s.handle(Request::drill_down(9));
    FAIL();
  } catch (const NoSuchChild& e) {
    EXPECT_EQ(e.index(), 9u);
    EXPECT_EQ(e.available(), 2u);
  }
  EXPECT_EQ(s.cursor(), 0u);
}

TEST(Dialogue, ShowImage) {
  DialogueSession s = classified();
  s.handle(Request::drill_down(1));
  s.handle(Request::drill_down(1));
  const Response r = s.handle(Request::show_image());
  ASSERT_EQ(r.images.size(), 1u);
  EXPECT_EQ(r.images[0].constant, "bobby");
  EXPECT_EQ(r.text, "Here is a picture of Bobby.");

  const Response named = s.handle(Request::show_image("dandelion"));
  ASSERT_EQ(named.images.size(), 1u);
  EXPECT_EQ(named.text, "Here is a picture of dandelion.");

  const Response none = s.handle(Request::show_image("stomach"));
  EXPECT_TRUE(none.images.empty());
  EXPECT_EQ(none.text, "I have no picture of stomach.");
  EXPECT_EQ(s.cursor(), 2u);
}

TEST(Dialogue, ShowImageNeedsTreeWithoutConstant) {
  DialogueSession s = open_session(bundled_context());
  EXPECT_THROW(s.handle(Request::show_image()), NoActiveExplanation);
  EXPECT_EQ(s.handle(Request::show_image("bobby")).images.size(), 1u);
}

TEST(Dialogue, WhatMeansTarget) {
  DialogueSession s = open_session(quoted_order_context());
  const Response r = s.handle(Request::what_means("tracks_down"));
  EXPECT_EQ(r.text,
            "A tracks down B, because A is a carnivore and B is a herbivore.\n"
            "A tracks down B, because A is a herbivore and B is a plant.");
  EXPECT_TRUE(r.choices.empty());
  EXPECT_EQ(s.state(), SessionState::AwaitingQuery);
  // No instance constant leaks into a global explanation.
  for (const char* name : {"Bobby", "Bella", "dandelion", "Argo"}) {
    EXPECT_EQ(r.text.find(name), std::string::npos) << name;
  }
}

TEST(Dialogue, WhatMeansBackgroundAndUnknown) {
  DialogueSession s = open_session(bundled_context());
  const Response is = s.handle(Request::what_means("is"));
  EXPECT_EQ(is.text, "A is a B, because A is a B.\nA is a B, because A is a C and C is a B.");
  const Response unknown = s.handle(Request::what_means("flies"));
  EXPECT_EQ(unknown.text, "I have not learned anything about flies.");
}

TEST(Dialogue, WhyRepeatsCursor) {
  DialogueSession s = classified();
  s.handle(Request::drill_down(2));
  const Response why = s.handle(Request::why());
  EXPECT_EQ(why.text, "Dandelion is a plant, because dandelion is a flower and flower is a plant.");
  EXPECT_EQ(why.cursor, 5u);
}

TEST(Dialogue, RequestsNeedingTreeBeforeClassify) {
  DialogueSession s = open_session(bundled_context());
  EXPECT_THROW(s.handle(Request::why()), NoActiveExplanation);
  EXPECT_THROW(s.handle(Request::drill_down(1)), NoActiveExplanation);
  EXPECT_THROW(s.handle(Request::back()), NoActiveExplanation);
}

TEST(Dialogue, QuitEndsSession) {
  DialogueSession s = classified();
  const Response bye = s.handle(Request::quit());
  EXPECT_EQ(bye.text, bundled_context()->strings.epilogue);
  EXPECT_EQ(bye.state_after, SessionState::Ended);
  EXPECT_FALSE(bye.cursor.has_value());
  EXPECT_THROW(s.handle(Request::why()), SessionEnded);
  EXPECT_THROW(s.handle(Request::classify(atom("tracks_down(bobby,dandelion)"))), SessionEnded);
}

TEST(Dialogue, NewClassifyResetsHistory) {
  DialogueSession s = classified();
  s.handle(Request::drill_down(1));
  s.handle(Request::classify(atom("tracks_down(bella,tipsie)")));
  EXPECT_TRUE(s.history().empty());
  EXPECT_EQ(s.cursor(), 0u);
}

TEST(Dialogue, DrillDownBackIdentityEverywhere) {
  const auto& children = bobby_dandelion_children();
  for (const auto& [node, kids] : children) {
    for (std::size_t i = 1; i <= kids.size(); ++i) {
      DialogueSession s = classified();
      for (auto id : s.tree()->path_to(node)) {
        if (id == 0) continue;
        const auto& parent_kids = children.at(*s.tree()->node(id).parent);
        const auto pos = std::find(parent_kids.begin(), parent_kids.end(), id) - parent_kids.begin();
        s.handle(Request::drill_down(static_cast<std::size_t>(pos) + 1));
      }
      ASSERT_EQ(s.cursor(), node);
      const std::string before = s.handle(Request::why()).text;
      s.handle(Request::drill_down(i));
      EXPECT_EQ(s.cursor(), kids[i - 1]);
      EXPECT_EQ(s.handle(Request::back()).text, before);
      EXPECT_EQ(s.cursor(), node);
    }
  }
}

TEST(Dialogue, RandomSequenceProperties) {
  const PropertyReport report = run_dialogue_properties(bundled_context(), 200, 1234);
  EXPECT_EQ(report.sequences, 200u);
  for (const auto& f : report.failures) ADD_FAILURE() << f;
}

TEST(Dialogue, DisplayStrings) {
  const DialogueStrings s = parse_dialogue_strings(R"({"epilogue": "Bye."})");
  EXPECT_EQ(s.epilogue, "Bye.");
  EXPECT_FALSE(s.introduction.empty());
  EXPECT_THROW(parse_dialogue_strings("{"), ConfigError);
}

TEST(Dialogue, ToString) {
  EXPECT_EQ(to_string(SessionState::AwaitingQuery), "awaiting_query");
  EXPECT_EQ(to_string(SessionState::Exploring), "exploring");
  EXPECT_EQ(to_string(SessionState::Ended), "ended");
  EXPECT_EQ(to_string(Request::Type::DrillDown), "drill_down");
}
