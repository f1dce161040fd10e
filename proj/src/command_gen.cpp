#include "reascan/command_gen.hpp"

#include <algorithm>
#include <set>

#include "reascan/relation_graph.hpp"
#include "reascan/world.hpp"

namespace reascan {

std::string_view to_string(RuleId r) {
  switch (r) {
    case RuleId::Rule1A: return "1A";
    case RuleId::Rule1B: return "1B";
    case RuleId::Rule1C: return "1C";
    case RuleId::Rule2: return "2";
    case RuleId::Rule3: return "3";
    case RuleId::Rule4: return "4";
    case RuleId::VacuousRoot: return "vacuous-root";
  }
  throw std::logic_error("bad RuleId");
}

namespace {

std::optional<RuleId> check_node(const ObjectNode& n, bool is_root) {
  if (is_root) {
    if (n.spec.shape == ShapeTerm{Shape::Box}) return RuleId::Rule2;
    // A wildcard root without a relative clause cannot pick out a referent;
    // this also keeps Simple commands gSCAN-shaped.
    if (n.spec.shape.is_wildcard() && n.clauses.empty()) return RuleId::VacuousRoot;
  }
  std::set<Relation> seen;
  for (const auto& cl : n.clauses) {
    if (!seen.insert(cl.relation).second) return RuleId::Rule3;
    const ObjectSpec& child = cl.object.spec;
    switch (cl.relation) {
      case Relation::SameShape:
        if (!n.spec.shape.is_wildcard() || !child.shape.is_wildcard()) return RuleId::Rule1A;
        break;
      case Relation::SameColor:
        if (n.spec.color || child.color) return RuleId::Rule1B;
        break;
      case Relation::SameSize:
        if (n.spec.size_mod || child.size_mod) return RuleId::Rule1C;
        break;
      case Relation::InsideOf:
        if (child.shape != ShapeTerm{Shape::Box}) return RuleId::Rule2;
        break;
      default:
        break;
    }
    if (cl.relation != Relation::InsideOf && child.shape == ShapeTerm{Shape::Box}) {
      return RuleId::Rule2;
    }
    if (auto v = check_node(cl.object, false)) return v;
  }
  return std::nullopt;
}

}  // namespace

std::optional<RuleId> rule_filter(const Command& c) {
  // Rule 4 (modifier order) cannot be represented in the AST; the parser
  // rejects out-of-order surface forms.
  return check_node(c.root, true);
}

std::vector<Command> enumerate_simple() {
  std::vector<Command> out;
  const std::array<std::optional<SizeModifier>, 3> sizes = {std::nullopt, SizeModifier::Small,
                                                            SizeModifier::Big};
  const std::array<std::optional<Color>, 5> colors = {std::nullopt, Color::Red, Color::Green,
                                                      Color::Blue, Color::Yellow};
  const std::array<std::optional<Adverb>, 5> adverbs = {std::nullopt, Adverb::WhileZigzagging,
                                                        Adverb::WhileSpinning, Adverb::Cautiously,
                                                        Adverb::Hesitantly};
  for (Verb v : kAllVerbs) {
    for (const auto& sz : sizes) {
      for (const auto& col : colors) {
        for (Shape sh : kConcreteShapes) {
          for (const auto& adv : adverbs) {
            Command c;
            c.verb = v;
            c.root.spec = ObjectSpec{Determiner::Unset, sz, col, ShapeTerm{sh}};
            c.adverb = adv;
            c.pattern = Pattern::Simple;
            out.push_back(std::move(c));
          }
        }
      }
    }
  }
  return out;
}

namespace {

std::optional<SizeModifier> sample_size_mod(Rng& rng, bool allowed) {
  if (!allowed) return std::nullopt;
  switch (rng.below_int(3)) {
    case 0: return std::nullopt;
    case 1: return SizeModifier::Small;
    default: return SizeModifier::Big;
  }
}

std::optional<Color> sample_color(Rng& rng, bool allowed) {
  if (!allowed) return std::nullopt;
  int i = rng.below_int(5);
  if (i == 0) return std::nullopt;
  return kAllColors[i - 1];
}

// allow_wildcard covers both the plain wildcard option and the forced
// wildcard demanded by a "same shape as" clause on the node.
ShapeTerm sample_shape(Rng& rng, bool force_wildcard) {
  if (force_wildcard) return ShapeTerm{};
  int i = rng.below_int(4);
  if (i == 3) return ShapeTerm{};
  return ShapeTerm{kConcreteShapes[i]};
}

ObjectSpec sample_spec(Rng& rng, const std::vector<Relation>& incident) {
  auto has = [&](Relation r) {
    return std::find(incident.begin(), incident.end(), r) != incident.end();
  };
  ObjectSpec spec;
  spec.size_mod = sample_size_mod(rng, !has(Relation::SameSize));
  spec.color = sample_color(rng, !has(Relation::SameColor));
  spec.shape = sample_shape(rng, has(Relation::SameShape));
  return spec;
}

ObjectNode sample_clause_object(Rng& rng, Relation rel) {
  ObjectNode child;
  if (rel == Relation::InsideOf) {
    child.spec.size_mod = sample_size_mod(rng, true);
    child.spec.color = sample_color(rng, true);
    child.spec.shape = ShapeTerm{Shape::Box};
  } else {
    child.spec = sample_spec(rng, {rel});
  }
  return child;
}

std::optional<Adverb> sample_adverb(Rng& rng) {
  int i = rng.below_int(5);
  if (i == 0) return std::nullopt;
  return kAllAdverbs[i - 1];
}

Command sample_one(Rng& rng, Pattern pattern) {
  Command c;
  c.verb = kAllVerbs[rng.below_int(3)];
  c.adverb = sample_adverb(rng);
  c.pattern = pattern;

  if (pattern == Pattern::NestedRel) {
    // Chain root -> mid -> leaf, relations restricted to row/column.
    auto rowcol = [&] {
      return rng.chance(0.5) ? Relation::SameRow : Relation::SameColumn;
    };
    Relation r1 = rowcol(), r2 = rowcol();
    ObjectNode leaf;
    leaf.spec = sample_spec(rng, {});
    ObjectNode mid;
    mid.spec = sample_spec(rng, {});
    mid.clauses.push_back(RelClause{r2, std::move(leaf)});
    c.root.spec = sample_spec(rng, {});
    c.root.clauses.push_back(RelClause{r1, std::move(mid)});
    return c;
  }

  int n_clauses = 0;
  switch (pattern) {
    case Pattern::OneRel: n_clauses = 1; break;
    case Pattern::TwoRel: n_clauses = 2; break;
    case Pattern::ThreeRel: n_clauses = 3; break;
    default: throw std::logic_error("sample_one: unsupported pattern");
  }

  // Distinct relations per conjunction (Rule 3), in sampled order.
  std::vector<Relation> pool(kAllRelations.begin(), kAllRelations.end());
  rng.shuffle(pool);
  std::vector<Relation> rels(pool.begin(), pool.begin() + n_clauses);

  c.root.spec = sample_spec(rng, rels);
  for (Relation r : rels) {
    c.root.clauses.push_back(RelClause{r, sample_clause_object(rng, r)});
  }
  return c;
}

bool same_predicate(const ObjectSpec& a, const ObjectSpec& b) {
  return a.size_mod == b.size_mod && a.color == b.color && a.shape == b.shape;
}

// Commands for which no world can have a unique referent. With a single
// symmetric clause over equal predicates the witness always co-refers with
// the target; in a chain of one repeated transitive relation the middle
// object co-refers whenever it matches the root predicate.
bool intrinsically_coreferential(const Command& c) {
  if (c.pattern == Pattern::OneRel) {
    const RelClause& cl = c.root.clauses[0];
    return cl.relation != Relation::InsideOf && same_predicate(c.root.spec, cl.object.spec);
  }
  if (c.pattern == Pattern::NestedRel) {
    const RelClause& outer = c.root.clauses[0];
    const RelClause& inner = outer.object.clauses[0];
    if (outer.relation != inner.relation) return false;
    return same_predicate(c.root.spec, outer.object.spec) ||
           same_predicate(c.root.spec, inner.object.spec);
  }
  return false;
}

int default_count(Pattern p) {
  switch (p) {
    case Pattern::Simple: return 675;
    case Pattern::OneRel: return 2025;
    default: return 3375;
  }
}

}  // namespace

std::vector<Command> sample_commands(const GeneratorConfig& cfg, Pattern pattern) {
  const int n = cfg.n_commands > 0 ? cfg.n_commands : default_count(pattern);
  Rng rng(Rng::derive(cfg.seed, static_cast<std::uint64_t>(pattern) + 0x5eedULL));

  if (pattern == Pattern::Simple) {
    std::vector<Command> all = enumerate_simple();
    if (n > static_cast<int>(all.size())) {
      throw std::runtime_error("sample_commands: only " + std::to_string(all.size()) +
                               " simple commands exist, " + std::to_string(n) + " requested");
    }
    rng.shuffle(all);
    all.resize(n);
    return all;
  }

  std::vector<Command> out;
  std::set<std::string> seen;
  long long stale = 0;
  const long long kStaleLimit = 200000;  // consecutive rejects/duplicates
  while (static_cast<int>(out.size()) < n) {
    Command c = sample_one(rng, pattern);
    if (rule_filter(c).has_value() || intrinsically_coreferential(c) ||
        !seen.insert(structural_key(c)).second) {
      if (++stale > kStaleLimit) {
        throw std::runtime_error("sample_commands: population exhausted at " +
                                 std::to_string(out.size()) + " of " + std::to_string(n));
      }
      continue;
    }
    stale = 0;
    out.push_back(std::move(c));
  }
  return out;
}

Command ground_determiners(Command c, const World& w) {
  for (ObjectNode* node : all_nodes(c)) {
    int count = 0;
    for (const auto& obj : w.objects) {
      if (node_matches(node->spec, obj, w)) ++count;
    }
    if (count == 0) {
      throw std::runtime_error("ground_determiners: no world object matches NP");
    }
    node->spec.determiner = count == 1 ? Determiner::The : Determiner::A;
  }
  return c;
}

}  // namespace reascan
