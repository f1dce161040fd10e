#include "reascan/matcher.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

namespace reascan {

namespace {

using EdgeSet = std::set<std::tuple<int, int, int>>;

EdgeSet edge_set(const RelationGraph& g) {
  EdgeSet s;
  for (const auto& e : g.edges) s.insert({e.src, e.dst, static_cast<int>(e.relation)});
  return s;
}

bool has_edge(const EdgeSet& s, int src, int dst, Relation r) {
  return s.count({src, dst, static_cast<int>(r)}) > 0;
}

// Kuhn's augmenting-path bipartite matching; returns an assignment of every
// left vertex to a distinct right value, or nullopt.
std::optional<std::vector<int>> distinct_representatives(
    const std::vector<std::vector<int>>& candidates) {
  std::map<int, int> right_owner;  // right value -> left index
  std::vector<int> left_match(candidates.size(), -1);

  std::function<bool(int, std::set<int>&)> augment = [&](int left, std::set<int>& visited) {
    for (int v : candidates[left]) {
      if (visited.count(v)) continue;
      visited.insert(v);
      auto it = right_owner.find(v);
      if (it == right_owner.end() || augment(it->second, visited)) {
        right_owner[v] = left;
        left_match[left] = v;
        return true;
      }
    }
    return false;
  };

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::set<int> visited;
    if (!augment(static_cast<int>(i), visited)) return std::nullopt;
  }
  return left_match;
}

}  // namespace

MatchResult match_complete(const RelationGraph& gw, const CommandGraph& gc, const World& w) {
  MatchResult result;
  const int k = static_cast<int>(gc.nodes.size());
  EdgeSet wedges = edge_set(gw);

  // Command edges incident to each node, against already-assigned nodes.
  std::vector<int> mapping(k, -1);

  std::function<bool(int)> extend = [&](int t) -> bool {
    if (t == k) return true;
    for (int cand : gw.node_ids) {
      if (std::find(mapping.begin(), mapping.begin() + t, cand) != mapping.begin() + t) {
        continue;  // injectivity
      }
      if (!node_matches(gc.nodes[t], w.at(cand), w)) continue;
      bool consistent = true;
      for (const auto& e : gc.edges) {
        if (e.src == t && e.dst < t && !has_edge(wedges, cand, mapping[e.dst], e.relation)) {
          consistent = false;
          break;
        }
        if (e.dst == t && e.src < t && !has_edge(wedges, mapping[e.src], cand, e.relation)) {
          consistent = false;
          break;
        }
      }
      if (!consistent) continue;
      mapping[t] = cand;
      if (extend(t + 1)) return true;
      mapping[t] = -1;
    }
    return false;
  };

  for (int root_cand : gw.node_ids) {
    if (!node_matches(gc.nodes[gc.root], w.at(root_cand), w)) continue;
    mapping.assign(k, -1);
    mapping[gc.root] = root_cand;
    // Root is node 0 in preorder, so extension starts at 1.
    if (extend(1)) {
      result.referents.insert(root_cand);
      result.witnesses[root_cand] = mapping;
    }
  }
  return result;
}

MatchResult match_optimized(const RelationGraph& gw, const CommandGraph& gc, const World& w) {
  if (!gc.is_star()) {
    throw UnsupportedCommandShape("match_optimized requires a star-shaped command graph");
  }
  MatchResult result;
  EdgeSet wedges = edge_set(gw);
  std::vector<Relation> required = gc.out_relations(gc.root);

  for (int cand : gw.node_ids) {
    if (!node_matches(gc.nodes[gc.root], w.at(cand), w)) continue;

    // Coarse filter: the candidate's outgoing relation labels must cover the
    // root's required labels (as sets, multiplicity resolved below).
    std::vector<Relation> have = gw.out_relations(cand);
    bool covered = std::all_of(required.begin(), required.end(), [&](Relation r) {
      return std::find(have.begin(), have.end(), r) != have.end();
    });
    if (!covered) continue;

    // Candidate neighbors per command node.
    std::vector<std::vector<int>> candidates;
    std::vector<int> command_nodes;
    bool feasible = true;
    for (const auto& e : gc.edges) {
      std::vector<int> cs;
      for (int nbr : gw.node_ids) {
        if (nbr == cand) continue;
        if (!has_edge(wedges, cand, nbr, e.relation)) continue;
        if (!node_matches(gc.nodes[e.dst], w.at(nbr), w)) continue;
        cs.push_back(nbr);
      }
      if (cs.empty()) {
        feasible = false;
        break;
      }
      candidates.push_back(std::move(cs));
      command_nodes.push_back(e.dst);
    }
    if (!feasible) continue;

    auto sdr = distinct_representatives(candidates);
    if (!sdr) continue;

    result.referents.insert(cand);
    std::vector<int> witness(gc.nodes.size(), -1);
    witness[gc.root] = cand;
    for (std::size_t i = 0; i < command_nodes.size(); ++i) witness[command_nodes[i]] = (*sdr)[i];
    result.witnesses[cand] = std::move(witness);
  }
  return result;
}

}  // namespace reascan
