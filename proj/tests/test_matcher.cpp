#include <doctest.h>

#include <algorithm>
#include <set>

#include "reascan/command_gen.hpp"
#include "reascan/matcher.hpp"
#include "reascan/rng.hpp"

using namespace reascan;

namespace {

// Exhaustive oracle: try every injective assignment of command nodes to
// world objects and collect the roots of the satisfying ones.
std::set<int> brute_force_referents(const CommandGraph& gc, const World& w) {
  const std::size_t k = gc.nodes.size();
  std::vector<int> ids;
  for (const auto& o : w.objects) ids.push_back(o.id);
  std::set<int> referents;

  std::vector<int> assign(k, -1);
  std::vector<bool> used(ids.size(), false);
  auto ok_edges = [&](std::size_t upto) {
    for (const auto& e : gc.edges) {
      if (static_cast<std::size_t>(e.src) >= upto || static_cast<std::size_t>(e.dst) >= upto) {
        continue;
      }
      try {
        if (!holds(e.relation, w.at(assign[static_cast<std::size_t>(e.src)]),
                   w.at(assign[static_cast<std::size_t>(e.dst)]))) {
          return false;
        }
      } catch (const UnsupportedRelation&) {
        return false;
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == k) {
      referents.insert(assign[0]);
      return;
    }
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (used[j]) continue;
      if (!node_matches(gc.nodes[depth], w.at(ids[j]), w)) continue;
      assign[depth] = ids[j];
      used[j] = true;
      if (ok_edges(depth + 1)) self(self, depth + 1);
      used[j] = false;
      assign[depth] = -1;
    }
  };
  rec(rec, 0);
  return referents;
}

World random_world(Rng& rng, int n_objects, bool with_box) {
  World w;
  std::vector<Cell> cells;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) cells.push_back({r, c});
  }
  rng.shuffle(cells);
  for (int i = 0; i < n_objects; ++i) {
    WorldObject o;
    o.id = i;
    o.shape = kConcreteShapes[rng.below_int(3)];
    o.color = kAllColors[rng.below_int(4)];
    o.size = 1 + rng.below_int(4);
    o.anchor = cells[static_cast<std::size_t>(i)];
    w.objects.push_back(o);
  }
  if (with_box) {
    WorldObject box;
    box.id = n_objects;
    box.shape = Shape::Box;
    box.color = kAllColors[rng.below_int(4)];
    box.size = 2 + rng.below_int(3);
    box.anchor = {rng.below_int(6 - box.size + 1), rng.below_int(6 - box.size + 1)};
    w.objects.push_back(box);
  }
  return w;
}

}  // namespace

TEST_CASE("world graph is the exhaustive relation closure") {
  World w;
  w.objects = {
      {0, Shape::Circle, Color::Red, 2, {1, 1}},
      {1, Shape::Square, Color::Red, 2, {1, 4}},
      {2, Shape::Box, Color::Blue, 3, {0, 0}},
  };
  RelationGraph g = world_to_graph(w);
  auto rels01 = g.relations_between(0, 1);
  CHECK(std::count(rels01.begin(), rels01.end(), Relation::SameRow) == 1);
  CHECK(std::count(rels01.begin(), rels01.end(), Relation::SameColor) == 1);
  CHECK(std::count(rels01.begin(), rels01.end(), Relation::SameSize) == 1);
  CHECK(std::count(rels01.begin(), rels01.end(), Relation::SameShape) == 0);
  // Symmetric relations appear in both directions.
  auto rels10 = g.relations_between(1, 0);
  CHECK(rels01.size() == rels10.size());
  // Object 0 at (1,1) is inside the size-3 box anchored at (0,0).
  auto rels02 = g.relations_between(0, 2);
  CHECK(std::count(rels02.begin(), rels02.end(), Relation::InsideOf) == 1);
  CHECK(std::count(rels02.begin(), rels02.end(), Relation::SameRow) == 0);  // boxes: undefined
  auto rels20 = g.relations_between(2, 0);
  CHECK(std::count(rels20.begin(), rels20.end(), Relation::InsideOf) == 0);
}

TEST_CASE("contextual size semantics") {
  World w;
  w.objects = {
      {0, Shape::Circle, Color::Red, 1, {0, 0}},
      {1, Shape::Circle, Color::Red, 3, {1, 1}},
      {2, Shape::Square, Color::Red, 4, {2, 2}},
  };
  ObjectSpec small_circle{Determiner::Unset, SizeModifier::Small, std::nullopt,
                          ShapeTerm{Shape::Circle}};
  ObjectSpec big_circle{Determiner::Unset, SizeModifier::Big, std::nullopt,
                        ShapeTerm{Shape::Circle}};
  CHECK(node_matches(small_circle, w.objects[0], w));
  CHECK_FALSE(node_matches(small_circle, w.objects[1], w));
  CHECK(node_matches(big_circle, w.objects[1], w));
  // "small square": the only square is both the smallest and biggest square.
  ObjectSpec small_square{Determiner::Unset, SizeModifier::Small, std::nullopt,
                          ShapeTerm{Shape::Square}};
  CHECK(node_matches(small_square, w.objects[2], w));
  // Size comparison class follows the descriptors, not the whole world:
  // "small object" ranges over everything, so size 3 is not small.
  ObjectSpec small_any{Determiner::Unset, SizeModifier::Small, std::nullopt, ShapeTerm{}};
  CHECK_FALSE(node_matches(small_any, w.objects[1], w));
}

TEST_CASE("matchers agree with the brute-force oracle on random star pairs") {
  GeneratorConfig cfg;
  cfg.n_commands = 40;
  cfg.seed = 17;
  Rng rng(123);
  int checked = 0;
  for (Pattern p : {Pattern::OneRel, Pattern::TwoRel, Pattern::ThreeRel}) {
    for (const Command& c : sample_commands(cfg, p)) {
      CommandGraph gc = command_to_graph(c);
      REQUIRE(gc.is_star());
      for (int trial = 0; trial < 3; ++trial) {
        World w = random_world(rng, 4 + rng.below_int(4), true);
        RelationGraph gw = world_to_graph(w);
        std::set<int> oracle = brute_force_referents(gc, w);
        CHECK(match_complete(gw, gc, w).referents == oracle);
        CHECK(match_optimized(gw, gc, w).referents == oracle);
        ++checked;
      }
    }
  }
  CHECK(checked == 360);
}

TEST_CASE("complete matcher handles chains; optimized refuses them") {
  Command c = parse_string(
      "walk to a red circle that is in the same row as a blue square that is in the same "
      "column as a green cylinder");
  CommandGraph gc = command_to_graph(c);
  CHECK_FALSE(gc.is_star());
  Rng rng(55);
  World w = random_world(rng, 8, false);
  RelationGraph gw = world_to_graph(w);
  CHECK(match_complete(gw, gc, w).referents == brute_force_referents(gc, w));
  CHECK_THROWS_AS(match_optimized(gw, gc, w), UnsupportedCommandShape);
}

TEST_CASE("witnesses are injective satisfying embeddings") {
  GeneratorConfig cfg;
  cfg.n_commands = 20;
  cfg.seed = 31;
  Rng rng(9);
  for (const Command& c : sample_commands(cfg, Pattern::TwoRel)) {
    CommandGraph gc = command_to_graph(c);
    World w = random_world(rng, 7, true);
    MatchResult res = match_complete(world_to_graph(w), gc, w);
    for (const auto& [root, witness] : res.witnesses) {
      CHECK(witness[0] == root);
      std::set<int> distinct(witness.begin(), witness.end());
      CHECK(distinct.size() == witness.size());
      for (std::size_t i = 0; i < witness.size(); ++i) {
        CHECK(node_matches(gc.nodes[i], w.at(witness[i]), w));
      }
      for (const auto& e : gc.edges) {
        CHECK(holds(e.relation, w.at(witness[static_cast<std::size_t>(e.src)]),
                    w.at(witness[static_cast<std::size_t>(e.dst)])));
      }
    }
  }
}
