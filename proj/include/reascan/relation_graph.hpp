#pragma once

#include <string>
#include <vector>

#include "reascan/command.hpp"
#include "reascan/world.hpp"

namespace reascan {

struct LabeledEdge {
  int src = 0;
  int dst = 0;
  Relation relation = Relation::SameRow;
  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

// Exhaustive relation closure over a world: edge (a,b,r) present iff
// holds(r,a,b). Symmetric relations appear in both directions.
struct RelationGraph {
  std::vector<int> node_ids;          // world object ids
  std::vector<LabeledEdge> edges;     // src/dst are object ids

  std::vector<Relation> relations_between(int src, int dst) const;
  std::vector<int> out_neighbors(int src) const;
  std::vector<Relation> out_relations(int src) const;  // deduplicated labels
};

// Predicate attached to one command node.
struct NodePredicate {
  std::optional<SizeModifier> size_mod;
  std::optional<Color> color;
  ShapeTerm shape;
};

// Tree over the command's NPs: node 0 is the referred object.
struct CommandGraph {
  std::vector<NodePredicate> nodes;
  std::vector<LabeledEdge> edges;  // src/dst are node indices
  int root = 0;

  bool is_star() const;  // all edges originate at the root
  std::vector<Relation> out_relations(int src) const;
};

RelationGraph world_to_graph(const World& w);
CommandGraph command_to_graph(const Command& c);

// Whether obj satisfies the predicate. Size modifiers are contextual:
// among world objects matching the predicate's color/shape slots, `small`
// selects the minimal size present, `big` the maximal.
bool node_matches(const NodePredicate& np, const WorldObject& obj, const World& w);
bool node_matches(const ObjectSpec& spec, const WorldObject& obj, const World& w);

// Adjacency text format for debugging; one node or edge per line.
std::string debug_export(const RelationGraph& g);
std::string debug_export(const CommandGraph& g);

}  // namespace reascan
