#include <doctest.h>

#include <set>

#include "reascan/command_gen.hpp"
#include "reascan/world.hpp"

using namespace reascan;

TEST_CASE("simple census is exactly the modifier product") {
  std::vector<Command> all = enumerate_simple();
  // Independent count: verbs x size options x color options x concrete
  // shapes x adverb options.
  const std::size_t expected = 3u * 3u * 5u * 3u * 5u;
  CHECK(expected == 675u);
  CHECK(all.size() == expected);

  std::set<std::string> keys;
  for (const Command& c : all) {
    CHECK(c.pattern == Pattern::Simple);
    CHECK(c.root.clauses.empty());
    CHECK_FALSE(rule_filter(c).has_value());
    keys.insert(structural_key(c));
  }
  CHECK(keys.size() == expected);
}

namespace {

Command from(const std::string& s) { return parse_string(s); }

}  // namespace

TEST_CASE("rule filter pinpoints each violation") {
  // 1A: a shape descriptor alongside "same shape as".
  auto v = rule_filter(from("walk to a square that is in the same shape as a circle"));
  CHECK(v == RuleId::Rule1A);
  v = rule_filter(from("walk to a object that is in the same shape as a circle"));
  CHECK(v == RuleId::Rule1A);

  // 1B: a color descriptor alongside "same color as".
  v = rule_filter(from("walk to a red object that is in the same color as a circle"));
  CHECK(v == RuleId::Rule1B);
  v = rule_filter(from("walk to a object that is in the same color as a blue circle"));
  CHECK(v == RuleId::Rule1B);

  // 1C: a size descriptor alongside "same size as".
  v = rule_filter(from("walk to a small object that is in the same size as a circle"));
  CHECK(v == RuleId::Rule1C);

  // 2: inside-of requires a box; boxes appear nowhere else.
  v = rule_filter(from("walk to a object that is inside of a circle"));
  CHECK(v == RuleId::Rule2);
  v = rule_filter(from("walk to a box"));
  CHECK(v == RuleId::Rule2);
  v = rule_filter(from("walk to a circle that is in the same row as a box"));
  CHECK(v == RuleId::Rule2);

  // 3: repeated relation within one conjunction.
  v = rule_filter(from(
      "walk to a circle that is in the same row as a square and in the same row as a cylinder"));
  CHECK(v == RuleId::Rule3);

  // A bare wildcard root refers to nothing in particular.
  v = rule_filter(from("walk to a object"));
  CHECK(v == RuleId::VacuousRoot);
  v = rule_filter(from("walk to a big red object"));
  CHECK(v == RuleId::VacuousRoot);

  // Valid commands pass.
  CHECK_FALSE(rule_filter(from("walk to a small red square")).has_value());
  CHECK_FALSE(rule_filter(from("walk to a object that is inside of a red box")).has_value());
  CHECK_FALSE(
      rule_filter(
          from("walk to a object that is in the same shape as a red object and in the same row "
               "as a small circle"))
          .has_value());
  // Repeating a relation in a *nested* position is fine; Rule 3 is per
  // conjunction.
  CHECK_FALSE(
      rule_filter(from("walk to a circle that is in the same row as a square that is in the "
                       "same row as a cylinder"))
          .has_value());
}

TEST_CASE("sampled commands are valid, distinct, deterministic") {
  GeneratorConfig cfg;
  cfg.n_commands = 150;
  cfg.seed = 99;
  for (Pattern p : {Pattern::Simple, Pattern::OneRel, Pattern::TwoRel, Pattern::ThreeRel,
                    Pattern::NestedRel}) {
    std::vector<Command> cs = sample_commands(cfg, p);
    REQUIRE(cs.size() == 150);
    std::set<std::string> keys;
    for (const Command& c : cs) {
      CHECK(c.pattern == p);
      CHECK_FALSE(rule_filter(c).has_value());
      keys.insert(structural_key(c));
      if (p == Pattern::NestedRel) {
        REQUIRE(c.root.clauses.size() == 1);
        REQUIRE(c.root.clauses[0].object.clauses.size() == 1);
        for (Relation r :
             {c.root.clauses[0].relation, c.root.clauses[0].object.clauses[0].relation}) {
          CHECK((r == Relation::SameRow || r == Relation::SameColumn));
        }
      }
    }
    CHECK(keys.size() == cs.size());

    std::vector<Command> again = sample_commands(cfg, p);
    CHECK(again == cs);
  }
}

TEST_CASE("oversampling the finite simple population fails loudly") {
  GeneratorConfig cfg;
  cfg.n_commands = 676;
  CHECK_THROWS_AS(sample_commands(cfg, Pattern::Simple), std::runtime_error);
}

TEST_CASE("determiner grounding counts matching objects") {
  World w;
  w.objects = {
      {0, Shape::Square, Color::Red, 2, {0, 0}},
      {1, Shape::Square, Color::Blue, 2, {1, 1}},
      {2, Shape::Circle, Color::Red, 2, {2, 2}},
  };
  w.target_id = 0;
  w.agent = {{5, 5}, Direction::East};

  Command c = from("walk to a red square that is in the same row as a square");
  Command g = ground_determiners(c, w);
  CHECK(g.root.spec.determiner == Determiner::The);       // one red square
  CHECK(g.root.clauses[0].object.spec.determiner == Determiner::A);  // two squares

  Command missing = from("walk to a yellow cylinder");
  CHECK_THROWS_AS(ground_determiners(missing, w), std::runtime_error);
}
