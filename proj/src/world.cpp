#include "reascan/world.hpp"

#include <algorithm>
#include <set>

#include "reascan/command_gen.hpp"

namespace reascan {

const WorldObject* World::find(int id) const {
  for (const auto& o : objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

const WorldObject& World::at(int id) const {
  const WorldObject* o = find(id);
  if (!o) throw std::out_of_range("no object with id " + std::to_string(id));
  return *o;
}

bool World::cell_free(Cell c) const {
  for (const auto& o : objects) {
    if (!o.is_box() && o.anchor == c) return false;
  }
  return true;
}

bool World::box_fits(Cell anchor, int size, int ignore_id) const {
  if (anchor.row < 0 || anchor.col < 0 || anchor.row + size > grid_size ||
      anchor.col + size > grid_size) {
    return false;
  }
  for (const auto& o : objects) {
    if (!o.is_box() || o.id == ignore_id) continue;
    bool row_overlap = anchor.row < o.anchor.row + o.size && o.anchor.row < anchor.row + size;
    bool col_overlap = anchor.col < o.anchor.col + o.size && o.anchor.col < anchor.col + size;
    if (row_overlap && col_overlap) return false;
  }
  return true;
}

int World::next_id() const {
  int id = 0;
  for (const auto& o : objects) id = std::max(id, o.id + 1);
  return id;
}

bool holds(Relation r, const WorldObject& a, const WorldObject& b) {
  switch (r) {
    case Relation::SameRow:
    case Relation::SameColumn:
      if (a.is_box() || b.is_box()) {
        throw UnsupportedRelation("row/column relations are undefined for boxes");
      }
      return r == Relation::SameRow ? a.anchor.row == b.anchor.row
                                    : a.anchor.col == b.anchor.col;
    case Relation::SameColor:
      return a.color == b.color;
    case Relation::SameShape:
      return a.shape == b.shape;
    case Relation::SameSize:
      return a.size == b.size;
    case Relation::InsideOf:
      return b.is_box() && !a.is_box() && b.covers(a.anchor);
  }
  throw std::logic_error("bad Relation");
}

std::optional<std::string> validate(const World& w) {
  if (w.objects.size() > 16) return "more than 16 objects";
  std::set<int> ids;
  for (const auto& o : w.objects) {
    if (!ids.insert(o.id).second) return "duplicate object id " + std::to_string(o.id);
    if (o.size < kMinSize || o.size > kMaxSize) return "object size out of range";
    if (!o.is_box() && !w.in_grid(o.anchor)) return "object outside the grid";
    if (o.is_box() && (o.anchor.row < 0 || o.anchor.col < 0 ||
                       o.anchor.row + o.size > w.grid_size ||
                       o.anchor.col + o.size > w.grid_size)) {
      return "box extent outside the grid";
    }
  }
  for (const auto& a : w.objects) {
    for (const auto& b : w.objects) {
      if (a.id >= b.id) continue;
      if (!a.is_box() && !b.is_box() && a.anchor == b.anchor) {
        return "two non-box objects share a cell";
      }
      if (a.is_box() && b.is_box()) {
        bool row_overlap = a.anchor.row < b.anchor.row + b.size && b.anchor.row < a.anchor.row + a.size;
        bool col_overlap = a.anchor.col < b.anchor.col + b.size && b.anchor.col < a.anchor.col + a.size;
        if (row_overlap && col_overlap) return "two boxes overlap";
      }
    }
  }
  if (w.allowed_sizes) {
    std::set<int> seen;
    for (const auto& o : w.objects) {
      if (o.size != w.allowed_sizes->first && o.size != w.allowed_sizes->second) {
        return "object size outside the permitted pair";
      }
      seen.insert(o.size);
    }
    if (seen.size() != 2) return "size-constrained world must contain both permitted sizes";
  }
  if (w.target_id >= 0) {
    const WorldObject* t = w.find(w.target_id);
    if (!t) return "target id not present";
    if (t->is_box()) return "target is a box";
    if (!w.in_grid(w.agent.cell)) return "agent outside the grid";
    if (!w.cell_free(w.agent.cell)) return "agent on a non-box object";
    if (w.agent.cell == t->anchor) return "agent starts on the target cell";
    if (w.agent.direction != Direction::East) return "agent does not start facing east";
  }
  return std::nullopt;
}

namespace {

struct NodeBinding {
  const ObjectNode* node;
  int parent = -1;                     // index into the preorder list
  Relation relation = Relation::SameRow;  // relation from parent, if any
};

void collect_bindings(const ObjectNode& n, int parent, Relation rel,
                      std::vector<NodeBinding>& out) {
  out.push_back({&n, parent, rel});
  int self = static_cast<int>(out.size()) - 1;
  for (const auto& cl : n.clauses) collect_bindings(cl.object, self, cl.relation, out);
}

Shape random_concrete_shape(Rng& rng) {
  return kConcreteShapes[rng.below_int(static_cast<int>(kConcreteShapes.size()))];
}

}  // namespace

World place_mentioned(const Command& c, const GeneratorConfig& cfg, Rng& rng) {
  std::vector<NodeBinding> bindings;
  collect_bindings(c.root, -1, Relation::SameRow, bindings);

  bool has_size_mod = false;
  for (const auto& b : bindings) {
    if (b.node->spec.size_mod) has_size_mod = true;
  }

  const int kAttempts = 100;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    World w;
    w.grid_size = cfg.grid_size;
    if (has_size_mod) {
      // Unordered pair of distinct sizes from {1,2,3,4}.
      int a = kMinSize + rng.below_int(kMaxSize - kMinSize + 1);
      int b;
      do {
        b = kMinSize + rng.below_int(kMaxSize - kMinSize + 1);
      } while (b == a);
      w.allowed_sizes = std::make_pair(std::min(a, b), std::max(a, b));
    }

    bool ok = true;
    for (std::size_t i = 0; i < bindings.size() && ok; ++i) {
      const auto& b = bindings[i];
      const ObjectSpec& spec = b.node->spec;
      bool linked = b.parent >= 0;
      const WorldObject* parent_obj = linked ? &w.objects[b.parent] : nullptr;

      WorldObject obj;
      obj.id = static_cast<int>(i);

      if (!spec.shape.is_wildcard()) {
        obj.shape = *spec.shape.shape;
      } else if (linked && b.relation == Relation::SameShape) {
        obj.shape = parent_obj->shape;
      } else {
        obj.shape = random_concrete_shape(rng);
      }

      if (spec.color) {
        obj.color = *spec.color;
      } else if (linked && b.relation == Relation::SameColor) {
        obj.color = parent_obj->color;
      } else {
        obj.color = kAllColors[rng.below_int(4)];
      }

      if (spec.size_mod) {
        obj.size = (*spec.size_mod == SizeModifier::Small) ? w.allowed_sizes->first
                                                           : w.allowed_sizes->second;
      } else if (linked && b.relation == Relation::SameSize) {
        obj.size = parent_obj->size;
      } else if (w.allowed_sizes) {
        obj.size = rng.chance(0.5) ? w.allowed_sizes->first : w.allowed_sizes->second;
      } else {
        obj.size = kMinSize + rng.below_int(kMaxSize - kMinSize + 1);
      }

      // Position, honoring the positional relation to the parent if any.
      bool placed = false;
      for (int tries = 0; tries < 50 && !placed; ++tries) {
        Cell cell{rng.below_int(w.grid_size), rng.below_int(w.grid_size)};
        if (obj.is_box()) {
          // Only produced by "inside of": extent must cover the parent cell.
          Cell pc = parent_obj->anchor;
          int lo_row = std::max(0, pc.row - obj.size + 1);
          int hi_row = std::min(w.grid_size - obj.size, pc.row);
          int lo_col = std::max(0, pc.col - obj.size + 1);
          int hi_col = std::min(w.grid_size - obj.size, pc.col);
          if (lo_row > hi_row || lo_col > hi_col) break;
          cell.row = lo_row + rng.below_int(hi_row - lo_row + 1);
          cell.col = lo_col + rng.below_int(hi_col - lo_col + 1);
          if (!w.box_fits(cell, obj.size)) continue;
        } else {
          if (linked && b.relation == Relation::SameRow) cell.row = parent_obj->anchor.row;
          if (linked && b.relation == Relation::SameColumn) cell.col = parent_obj->anchor.col;
          if (!w.cell_free(cell)) continue;
          if (linked && (b.relation == Relation::SameRow || b.relation == Relation::SameColumn) &&
              cell == parent_obj->anchor) {
            continue;
          }
        }
        obj.anchor = cell;
        placed = true;
      }
      if (!placed) {
        ok = false;
        break;
      }
      w.objects.push_back(obj);
    }
    if (!ok) continue;
    w.target_id = 0;
    return w;
  }
  throw PlacementExhausted("place_mentioned: no feasible placement for command");
}

void place_agent(World& w, Rng& rng) {
  const WorldObject& target = w.at(w.target_id);
  std::vector<Cell> free;
  for (int r = 0; r < w.grid_size; ++r) {
    for (int c = 0; c < w.grid_size; ++c) {
      Cell cell{r, c};
      if (cell == target.anchor) continue;
      if (!w.cell_free(cell)) continue;
      free.push_back(cell);
    }
  }
  if (free.empty()) throw PlacementExhausted("place_agent: no free cell");
  w.agent.cell = free[rng.below_int(static_cast<int>(free.size()))];
  w.agent.direction = Direction::East;
}

}  // namespace reascan
