#include "reascan/distractors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "reascan/matcher.hpp"
#include "reascan/relation_graph.hpp"

namespace reascan {

std::string_view to_string(DistractorKind k) {
  switch (k) {
    case DistractorKind::AttributeBased: return "attribute";
    case DistractorKind::IsomorphismBased: return "isomorphism";
    case DistractorKind::RelationBased: return "relation";
    case DistractorKind::Random: return "random";
  }
  throw std::logic_error("bad DistractorKind");
}

std::optional<DistractorKind> distractor_kind_from_string(std::string_view s) {
  for (DistractorKind k : {DistractorKind::AttributeBased, DistractorKind::IsomorphismBased,
                           DistractorKind::RelationBased, DistractorKind::Random}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

bool uniquely_refers(const Command& c, const World& w) {
  MatchResult r = match_complete(world_to_graph(w), command_to_graph(c), w);
  return r.referents.size() == 1 && *r.referents.begin() == w.target_id;
}

namespace {

struct Binding {
  const ObjectNode* node;
  int parent = -1;
  Relation relation = Relation::SameRow;
};

void collect_bindings(const ObjectNode& n, int parent, Relation rel, std::vector<Binding>& out) {
  out.push_back({&n, parent, rel});
  int self = static_cast<int>(out.size()) - 1;
  for (const auto& cl : n.clauses) collect_bindings(cl.object, self, cl.relation, out);
}

int sample_size(const World& w, Rng& rng) {
  if (w.allowed_sizes) {
    return rng.chance(0.5) ? w.allowed_sizes->first : w.allowed_sizes->second;
  }
  return kMinSize + rng.below_int(kMaxSize - kMinSize + 1);
}

int modified_size(const World& w, SizeModifier m) {
  // Only reachable in size-constrained worlds.
  return m == SizeModifier::Small ? w.allowed_sizes->first : w.allowed_sizes->second;
}

Shape random_concrete_shape(Rng& rng) { return kConcreteShapes[rng.below_int(3)]; }

int count_boxes(const World& w) {
  int n = 0;
  for (const auto& o : w.objects) n += o.is_box() ? 1 : 0;
  return n;
}

int count_boxes(const Command& c) {
  int n = 0;
  for (const ObjectNode* node : all_nodes(c)) {
    n += node->spec.shape == ShapeTerm{Shape::Box} ? 1 : 0;
  }
  return n;
}

void rollback(World& w, std::size_t keep) { w.objects.resize(keep); }

// Places one object per NP of c2 into the existing world, honoring the
// command's relations and the world's size discipline. Appends the new
// object ids to `added`. Rolls back and returns false on failure.
bool instantiate_into(World& w, const Command& c2, Rng& rng, std::vector<int>& added,
                      int max_objects) {
  std::vector<Binding> bindings;
  collect_bindings(c2.root, -1, Relation::SameRow, bindings);
  if (w.objects.size() + bindings.size() > static_cast<std::size_t>(max_objects)) return false;
  if (count_boxes(w) + count_boxes(c2) > 2) return false;

  const std::size_t keep = w.objects.size();
  std::vector<std::size_t> placed;  // object indices, parallel to bindings
  int id = w.next_id();

  for (const auto& b : bindings) {
    const ObjectSpec& spec = b.node->spec;
    bool linked = b.parent >= 0;
    // Indexed lookup each use: push_back may reallocate between nodes.
    const WorldObject* parent_obj =
        linked ? &w.objects[placed[static_cast<std::size_t>(b.parent)]] : nullptr;

    WorldObject obj;
    obj.id = id++;

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

    if (spec.size_mod && w.allowed_sizes) {
      obj.size = modified_size(w, *spec.size_mod);
    } else if (linked && b.relation == Relation::SameSize) {
      obj.size = parent_obj->size;
    } else {
      obj.size = sample_size(w, rng);
    }

    bool ok = false;
    for (int tries = 0; tries < 50 && !ok; ++tries) {
      Cell cell{rng.below_int(w.grid_size), rng.below_int(w.grid_size)};
      if (obj.is_box()) {
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
        if (linked && !parent_obj->is_box() && cell == parent_obj->anchor) continue;
      }
      obj.anchor = cell;
      ok = true;
    }
    if (!ok) {
      rollback(w, keep);
      return false;
    }
    w.objects.push_back(obj);
    placed.push_back(w.objects.size() - 1);
  }
  for (std::size_t i = keep; i < w.objects.size(); ++i) added.push_back(w.objects[i].id);
  return true;
}

// Direct children of the root (preorder indices of clause witnesses).
std::vector<int> root_child_indices(const Command& c) {
  std::vector<Binding> bindings;
  collect_bindings(c.root, -1, Relation::SameRow, bindings);
  std::vector<int> out;
  for (std::size_t i = 0; i < bindings.size(); ++i) {
    if (bindings[i].parent == 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::string subset_note(const std::vector<int>& subset) {
  std::string note = "clauses {";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i > 0) note += ',';
    note += std::to_string(subset[i]);
  }
  return note + "}";
}

// One object matching the root predicate, satisfying exactly the clause
// subset S (plus possibly incidental relations) and explicitly violating
// one clause outside S.
bool try_relation_distractor(World& w, const Command& c, const std::vector<int>& subset, Rng& rng,
                             int max_objects) {
  if (w.objects.size() + 1 > static_cast<std::size_t>(max_objects)) return false;
  const auto& clauses = c.root.clauses;
  std::vector<int> child_idx = root_child_indices(c);
  std::vector<bool> in_subset(clauses.size(), false);
  for (int i : subset) in_subset[i] = true;

  std::vector<int> violatable;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (!in_subset[i]) violatable.push_back(static_cast<int>(i));
  }
  const std::size_t keep = w.objects.size();

  for (int attempt = 0; attempt < 20; ++attempt) {
    int violated = violatable[rng.below_int(static_cast<int>(violatable.size()))];
    const ObjectSpec& spec = c.root.spec;

    WorldObject obj;
    obj.id = w.next_id();
    obj.shape = spec.shape.is_wildcard() ? random_concrete_shape(rng) : *spec.shape.shape;
    obj.color = spec.color ? *spec.color : kAllColors[rng.below_int(4)];
    obj.size = spec.size_mod ? modified_size(w, *spec.size_mod) : sample_size(w, rng);

    std::optional<int> row_fix, col_fix, row_avoid, col_avoid;
    const WorldObject* inside_box = nullptr;
    const WorldObject* outside_box = nullptr;
    bool feasible = true;
    for (std::size_t i = 0; i < clauses.size() && feasible; ++i) {
      const WorldObject& witness = w.at(child_idx[i]);  // mentioned ids follow preorder
      Relation rel = clauses[i].relation;
      if (in_subset[i]) {
        switch (rel) {
          case Relation::SameRow: row_fix = witness.anchor.row; break;
          case Relation::SameColumn: col_fix = witness.anchor.col; break;
          case Relation::SameColor: obj.color = witness.color; break;
          case Relation::SameShape: obj.shape = witness.shape; break;
          case Relation::SameSize: obj.size = witness.size; break;
          case Relation::InsideOf: inside_box = &witness; break;
        }
      } else if (static_cast<int>(i) == violated) {
        switch (rel) {
          case Relation::SameRow: row_avoid = witness.anchor.row; break;
          case Relation::SameColumn: col_avoid = witness.anchor.col; break;
          case Relation::SameColor: {
            Color alt;
            do {
              alt = kAllColors[rng.below_int(4)];
            } while (alt == witness.color);
            obj.color = alt;
            break;
          }
          case Relation::SameShape: {
            Shape alt;
            do {
              alt = random_concrete_shape(rng);
            } while (alt == witness.shape);
            obj.shape = alt;
            break;
          }
          case Relation::SameSize: {
            if (w.allowed_sizes) {
              obj.size = witness.size == w.allowed_sizes->first ? w.allowed_sizes->second
                                                                : w.allowed_sizes->first;
            } else {
              int alt;
              do {
                alt = kMinSize + rng.below_int(kMaxSize - kMinSize + 1);
              } while (alt == witness.size);
              obj.size = alt;
            }
            break;
          }
          case Relation::InsideOf: outside_box = &witness; break;
        }
      }
    }
    if (!feasible) continue;

    bool placed = false;
    for (int tries = 0; tries < 50 && !placed; ++tries) {
      Cell cell{row_fix.value_or(rng.below_int(w.grid_size)),
                col_fix.value_or(rng.below_int(w.grid_size))};
      if (row_avoid && cell.row == *row_avoid) continue;
      if (col_avoid && cell.col == *col_avoid) continue;
      if (inside_box && !inside_box->covers(cell)) continue;
      if (outside_box && outside_box->covers(cell)) continue;
      if (!w.cell_free(cell)) continue;
      obj.anchor = cell;
      placed = true;
    }
    if (!placed) continue;

    w.objects.push_back(obj);
    if (uniquely_refers(c, w)) return true;
    rollback(w, keep);
  }
  return false;
}

char dim_name(int d) { return d == 0 ? 's' : d == 1 ? 'c' : 'h'; }

// Perturbs one explicit descriptor of the node at preorder index `node_idx`.
// Returns false if the node has no perturbable descriptor in that dimension.
bool perturb_spec(ObjectSpec& spec, int dim, Rng& rng) {
  switch (dim) {
    case 0:  // size modifier
      if (!spec.size_mod) return false;
      spec.size_mod = *spec.size_mod == SizeModifier::Small ? SizeModifier::Big
                                                            : SizeModifier::Small;
      return true;
    case 1: {  // color
      if (!spec.color) return false;
      Color alt;
      do {
        alt = kAllColors[rng.below_int(4)];
      } while (alt == *spec.color);
      spec.color = alt;
      return true;
    }
    default: {  // shape; boxes are pinned by Rule 2
      if (spec.shape.is_wildcard() || *spec.shape.shape == Shape::Box) return false;
      Shape alt;
      do {
        alt = random_concrete_shape(rng);
      } while (alt == *spec.shape.shape);
      spec.shape = ShapeTerm{alt};
      return true;
    }
  }
}

// Instantiates the perturbed command into the world; every object of the
// perturbed reading is added so the distractor is a plausible target.
bool try_attribute_distractor(World& w, const Command& c, int node_idx, int dim, Rng& rng,
                              std::vector<DistractorAnnotation>& ann, int max_objects,
                              int attempts) {
  Command perturbed = c;
  std::vector<ObjectNode*> nodes = all_nodes(perturbed);
  ObjectSpec& spec = nodes[node_idx]->spec;
  if (!perturb_spec(spec, dim, rng)) return false;

  const std::size_t keep = w.objects.size();
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<int> added;
    if (!instantiate_into(w, perturbed, rng, added, max_objects)) return false;
    if (uniquely_refers(c, w)) {
      for (int id : added) {
        ann.push_back({id, DistractorKind::AttributeBased,
                       std::string("np ") + std::to_string(node_idx) + " dim " + dim_name(dim)});
      }
      return true;
    }
    rollback(w, keep);
  }
  return false;
}

}  // namespace

void add_relation_distractors(World& w, const Command& c, Rng& rng,
                              std::vector<DistractorAnnotation>& ann, int max_objects) {
  const int k = static_cast<int>(c.root.clauses.size());
  if (k == 0) return;

  // Proper subsets of the clause set, singletons first, empty set last.
  std::vector<std::vector<int>> subsets;
  for (int size = 1; size < k; ++size) {
    for (int mask = 1; mask < (1 << k); ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) != size) continue;
      std::vector<int> s;
      for (int i = 0; i < k; ++i) {
        if (mask & (1 << i)) s.push_back(i);
      }
      subsets.push_back(std::move(s));
    }
  }
  subsets.push_back({});

  for (const auto& subset : subsets) {
    std::size_t before = w.objects.size();
    if (try_relation_distractor(w, c, subset, rng, max_objects)) {
      for (std::size_t i = before; i < w.objects.size(); ++i) {
        ann.push_back({w.objects[i].id, DistractorKind::RelationBased, subset_note(subset)});
      }
    }
  }
}

void add_attribute_distractors(World& w, const Command& c, Rng& rng,
                               std::vector<DistractorAnnotation>& ann, int max_objects) {
  std::vector<const ObjectNode*> nodes = all_nodes(c);

  if (c.pattern == Pattern::Simple) {
    // One distractor per explicit descriptor dimension of the root NP.
    for (int dim = 0; dim < 3; ++dim) {
      try_attribute_distractor(w, c, 0, dim, rng, ann, max_objects, 10);
    }
    return;
  }

  // Relational patterns: one perturbed reading per example.
  std::vector<std::pair<int, int>> candidates;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ObjectSpec& s = nodes[i]->spec;
    if (s.size_mod) candidates.emplace_back(static_cast<int>(i), 0);
    if (s.color) candidates.emplace_back(static_cast<int>(i), 1);
    if (!s.shape.is_wildcard() && *s.shape.shape != Shape::Box) {
      candidates.emplace_back(static_cast<int>(i), 2);
    }
  }
  rng.shuffle(candidates);
  // Single-clause commands fall back across candidates and retry placement;
  // multi-clause worlds are already crowded with relation distractors, so
  // they get one candidate and two placement draws.
  const bool multi_clause = c.root.clauses.size() > 1;
  const int attempts = multi_clause ? 2 : 10;
  for (const auto& [node_idx, dim] : candidates) {
    if (try_attribute_distractor(w, c, node_idx, dim, rng, ann, max_objects, attempts)) return;
    if (multi_clause) return;
  }
}

void add_isomorphism_distractors(World& w, const Command& c, Rng& rng,
                                 std::vector<DistractorAnnotation>& ann, int max_objects) {
  Command base = c;
  std::vector<ObjectNode*> nodes = all_nodes(base);
  if (nodes.size() < 3) return;  // needs two non-target NPs

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const ObjectSpec& a = nodes[i]->spec;
      const ObjectSpec& b = nodes[j]->spec;
      bool swappable = a.size_mod != b.size_mod || a.color != b.color || a.shape != b.shape;
      if (swappable) pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  rng.shuffle(pairs);

  const std::size_t keep = w.objects.size();
  for (auto [i, j] : pairs) {
    Command swapped = c;
    std::vector<ObjectNode*> snodes = all_nodes(swapped);
    std::swap(snodes[i]->spec.size_mod, snodes[j]->spec.size_mod);
    std::swap(snodes[i]->spec.color, snodes[j]->spec.color);
    std::swap(snodes[i]->spec.shape, snodes[j]->spec.shape);
    if (rule_filter(swapped).has_value()) continue;

    std::vector<int> added;
    if (!instantiate_into(w, swapped, rng, added, max_objects)) continue;
    if (!uniquely_refers(c, w)) {
      rollback(w, keep);
      continue;
    }
    for (int id : added) {
      ann.push_back({id, DistractorKind::IsomorphismBased,
                     "swap np " + std::to_string(i) + "/" + std::to_string(j)});
    }
    return;
  }
}

void add_random_distractors(World& w, const Command& c, Rng& rng,
                            std::vector<DistractorAnnotation>& ann, int up_to) {
  int misses = 0;
  while (static_cast<int>(w.objects.size()) < up_to && misses < 20) {
    WorldObject obj;
    obj.id = w.next_id();
    obj.shape = random_concrete_shape(rng);
    obj.color = kAllColors[rng.below_int(4)];
    obj.size = sample_size(w, rng);
    Cell cell{rng.below_int(w.grid_size), rng.below_int(w.grid_size)};
    if (!w.cell_free(cell)) {
      ++misses;
      continue;
    }
    obj.anchor = cell;
    w.objects.push_back(obj);
    if (!uniquely_refers(c, w)) {
      w.objects.pop_back();
      ++misses;
      continue;
    }
    ann.push_back({obj.id, DistractorKind::Random, ""});
  }
}

std::optional<Example> generate_example(const Command& c, const GeneratorConfig& cfg, Rng& rng,
                                        std::string* failure) {
  std::string last_failure = "placement infeasible";
  for (int attempt = 0; attempt < 100; ++attempt) {
    World w;
    try {
      w = place_mentioned(c, cfg, rng);
    } catch (const PlacementExhausted&) {
      break;
    }
    if (!uniquely_refers(c, w)) {
      last_failure = "mentioned objects not uniquely resolvable";
      continue;
    }

    std::vector<DistractorAnnotation> ann;
    if (!cfg.random_distractors_only) {
      add_relation_distractors(w, c, rng, ann, cfg.max_objects);
      add_attribute_distractors(w, c, rng, ann, cfg.max_objects);
      add_isomorphism_distractors(w, c, rng, ann, cfg.max_objects);
    }
    add_random_distractors(w, c, rng, ann, std::min(cfg.target_objects, cfg.max_objects));

    // The two-size discipline requires both permitted sizes to be present.
    if (w.allowed_sizes) {
      bool has_first = false, has_second = false;
      for (const auto& o : w.objects) {
        has_first |= o.size == w.allowed_sizes->first;
        has_second |= o.size == w.allowed_sizes->second;
      }
      if (!has_first || !has_second) {
        int missing = has_first ? w.allowed_sizes->second : w.allowed_sizes->first;
        const WorldObject& target = w.at(w.target_id);
        WorldObject obj;
        obj.id = w.next_id();
        obj.shape = target.shape;
        obj.color = target.color;
        obj.size = missing;
        bool placed = false;
        for (int tries = 0; tries < 50 && !placed; ++tries) {
          Cell cell{rng.below_int(w.grid_size), rng.below_int(w.grid_size)};
          if (!w.cell_free(cell)) continue;
          obj.anchor = cell;
          placed = true;
        }
        if (!placed) {
          last_failure = "no room for the size-pair distractor";
          continue;
        }
        w.objects.push_back(obj);
        if (!uniquely_refers(c, w)) {
          last_failure = "size-pair distractor broke uniqueness";
          continue;
        }
        ann.push_back({obj.id,
                       cfg.random_distractors_only ? DistractorKind::Random
                                                   : DistractorKind::AttributeBased,
                       "size-pair fill"});
      }
    }

    try {
      place_agent(w, rng);
    } catch (const PlacementExhausted&) {
      last_failure = "no free cell for the agent";
      continue;
    }
    if (auto err = validate(w)) {
      last_failure = "world invariant: " + *err;
      continue;
    }
    if (!uniquely_refers(c, w)) {
      last_failure = "final uniqueness check failed";
      continue;
    }

    Example ex;
    ex.command = ground_determiners(c, w);
    ex.world = std::move(w);
    ex.actions = plan(ex.command, ex.world);
    ex.annotations = std::move(ann);
    return ex;
  }
  if (failure) *failure = last_failure;
  return std::nullopt;
}

DatasetResult generate_dataset(const GeneratorConfig& cfg) {
  struct Task {
    Pattern pattern;
    int pattern_idx;
    int command_idx;
    Command command;
  };
  std::vector<Task> tasks;
  for (std::size_t pi = 0; pi < cfg.patterns.size(); ++pi) {
    Pattern p = cfg.patterns[pi];
    std::vector<Command> commands = sample_commands(cfg, p);
    for (std::size_t ci = 0; ci < commands.size(); ++ci) {
      tasks.push_back({p, static_cast<int>(pi), static_cast<int>(ci), std::move(commands[ci])});
    }
  }

  int workers = 1;
  if (const char* env = std::getenv("REASCAN_WORKERS")) {
    workers = std::max(1, std::atoi(env));
  }
  workers = std::min<int>(workers, std::max<std::size_t>(tasks.size(), 1));

  std::vector<std::vector<Example>> per_task(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<long long> failures{0};

  auto run = [&] {
    for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1)) {
      const Task& task = tasks[t];
      std::uint64_t cmd_seed = Rng::derive(
          cfg.seed, (static_cast<std::uint64_t>(task.pattern) << 32) |
                        static_cast<std::uint64_t>(task.command_idx));
      Rng rng(cmd_seed);
      for (int j = 0; j < cfg.worlds_per_command; ++j) {
        auto ex = generate_example(task.command, cfg, rng);
        if (!ex) {
          failures.fetch_add(1);
          continue;
        }
        ex->id = std::string(to_string(task.pattern)) + "-" + std::to_string(task.command_idx) +
                 "-" + std::to_string(j);
        per_task[t].push_back(std::move(*ex));
      }
    }
  };

  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }

  DatasetResult result;
  result.failures = failures.load();
  for (auto& chunk : per_task) {
    for (auto& ex : chunk) result.examples.push_back(std::move(ex));
  }
  return result;
}

}  // namespace reascan
