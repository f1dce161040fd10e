#pragma once

#include <map>
#include <set>
#include <vector>

#include "reascan/relation_graph.hpp"

namespace reascan {

struct MatchResult {
  // World object ids that can serve as the referred object.
  std::set<int> referents;
  // One witness embedding per referent: command node index -> object id.
  // Witnesses are injective.
  std::map<int, std::vector<int>> witnesses;
};

// Backtracking labeled sub-isomorphism over the multigraphs: returns every
// world node that roots some injective embedding of gc into gw where each
// command edge maps onto a world edge with the same relation label and each
// node predicate holds of its image.
MatchResult match_complete(const RelationGraph& gw, const CommandGraph& gc, const World& w);

struct UnsupportedCommandShape : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The locally optimized matcher for star-shaped command graphs: coarse
// label-containment filter on each candidate root, per-clause candidate
// neighbor collection, then an exact distinct-representatives check via
// bipartite matching. Throws UnsupportedCommandShape for non-star graphs.
MatchResult match_optimized(const RelationGraph& gw, const CommandGraph& gc, const World& w);

inline bool is_unique(const MatchResult& r) { return r.referents.size() == 1; }

}  // namespace reascan
