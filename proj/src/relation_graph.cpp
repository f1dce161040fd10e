#include "reascan/relation_graph.hpp"

#include <algorithm>
#include <sstream>

namespace reascan {

std::vector<Relation> RelationGraph::relations_between(int src, int dst) const {
  std::vector<Relation> out;
  for (const auto& e : edges) {
    if (e.src == src && e.dst == dst) out.push_back(e.relation);
  }
  return out;
}

std::vector<int> RelationGraph::out_neighbors(int src) const {
  std::vector<int> out;
  for (const auto& e : edges) {
    if (e.src == src && std::find(out.begin(), out.end(), e.dst) == out.end()) {
      out.push_back(e.dst);
    }
  }
  return out;
}

std::vector<Relation> RelationGraph::out_relations(int src) const {
  std::vector<Relation> out;
  for (const auto& e : edges) {
    if (e.src == src && std::find(out.begin(), out.end(), e.relation) == out.end()) {
      out.push_back(e.relation);
    }
  }
  return out;
}

bool CommandGraph::is_star() const {
  for (const auto& e : edges) {
    if (e.src != root) return false;
  }
  return true;
}

std::vector<Relation> CommandGraph::out_relations(int src) const {
  std::vector<Relation> out;
  for (const auto& e : edges) {
    if (e.src == src && std::find(out.begin(), out.end(), e.relation) == out.end()) {
      out.push_back(e.relation);
    }
  }
  return out;
}

RelationGraph world_to_graph(const World& w) {
  RelationGraph g;
  for (const auto& o : w.objects) g.node_ids.push_back(o.id);
  for (const auto& a : w.objects) {
    for (const auto& b : w.objects) {
      if (a.id == b.id) continue;
      for (Relation r : kAllRelations) {
        // Row/column relations are undefined on multi-cell boxes.
        if ((r == Relation::SameRow || r == Relation::SameColumn) &&
            (a.is_box() || b.is_box())) {
          continue;
        }
        if (holds(r, a, b)) g.edges.push_back({a.id, b.id, r});
      }
    }
  }
  return g;
}

namespace {

int add_command_node(const ObjectNode& node, CommandGraph& g) {
  int idx = static_cast<int>(g.nodes.size());
  g.nodes.push_back(NodePredicate{node.spec.size_mod, node.spec.color, node.spec.shape});
  for (const auto& cl : node.clauses) {
    int child = add_command_node(cl.object, g);
    g.edges.push_back({idx, child, cl.relation});
  }
  return idx;
}

}  // namespace

CommandGraph command_to_graph(const Command& c) {
  CommandGraph g;
  add_command_node(c.root, g);
  g.root = 0;
  return g;
}

bool node_matches(const NodePredicate& np, const WorldObject& obj, const World& w) {
  if (!np.shape.matches(obj.shape)) return false;
  if (np.color && *np.color != obj.color) return false;
  if (np.size_mod) {
    // Comparison class: world objects matching the color/shape slots.
    int lo = kMaxSize + 1, hi = kMinSize - 1;
    for (const auto& other : w.objects) {
      if (!np.shape.matches(other.shape)) continue;
      if (np.color && *np.color != other.color) continue;
      lo = std::min(lo, other.size);
      hi = std::max(hi, other.size);
    }
    int wanted = (*np.size_mod == SizeModifier::Small) ? lo : hi;
    if (obj.size != wanted) return false;
  }
  return true;
}

bool node_matches(const ObjectSpec& spec, const WorldObject& obj, const World& w) {
  return node_matches(NodePredicate{spec.size_mod, spec.color, spec.shape}, obj, w);
}

std::string debug_export(const RelationGraph& g) {
  std::ostringstream os;
  for (int id : g.node_ids) os << "node " << id << '\n';
  for (const auto& e : g.edges) {
    os << "edge " << e.src << " -> " << e.dst << " [" << to_string(e.relation) << "]\n";
  }
  return os.str();
}

std::string debug_export(const CommandGraph& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    os << "node " << i << (static_cast<int>(i) == g.root ? " (root)" : "") << ':';
    if (n.size_mod) os << ' ' << to_string(*n.size_mod);
    if (n.color) os << ' ' << to_string(*n.color);
    os << ' ' << (n.shape.is_wildcard() ? "object" : to_string(*n.shape.shape)) << '\n';
  }
  for (const auto& e : g.edges) {
    os << "edge " << e.src << " -> " << e.dst << " [" << to_string(e.relation) << "]\n";
  }
  return os.str();
}

}  // namespace reascan
