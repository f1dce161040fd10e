#include "reascan/splits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "reascan/matcher.hpp"
#include "reascan/relation_graph.hpp"

namespace reascan {

std::string_view to_string(SplitKind k) {
  switch (k) {
    case SplitKind::Random: return "random";
    case SplitKind::A1: return "a1";
    case SplitKind::A2: return "a2";
    case SplitKind::A3: return "a3";
    case SplitKind::B1: return "b1";
    case SplitKind::B2: return "b2";
    case SplitKind::C1: return "c1";
    case SplitKind::C2: return "c2";
    case SplitKind::RDAblation: return "rd";
  }
  throw std::logic_error("bad SplitKind");
}

std::optional<SplitKind> split_kind_from_string(std::string_view s) {
  for (SplitKind k : {SplitKind::Random, SplitKind::A1, SplitKind::A2, SplitKind::A3, SplitKind::B1,
                      SplitKind::B2, SplitKind::C1, SplitKind::C2, SplitKind::RDAblation}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

SplitResult split_random(const std::vector<Example>& corpus, SplitRatios ratios,
                         std::uint64_t seed) {
  double sum = ratios.train + ratios.dev + ratios.test;
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("split_random: ratios must sum to 1");

  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(Rng::derive(seed, 0x5b117ULL));
  rng.shuffle(order);

  const auto n = static_cast<double>(corpus.size());
  std::size_t n_train = static_cast<std::size_t>(std::llround(ratios.train * n));
  std::size_t n_dev = static_cast<std::size_t>(std::llround(ratios.dev * n));
  n_train = std::min(n_train, corpus.size());
  n_dev = std::min(n_dev, corpus.size() - n_train);

  SplitResult out;
  out.train.assign(order.begin(), order.begin() + n_train);
  out.dev.assign(order.begin() + n_train, order.begin() + n_train + n_dev);
  out.test.assign(order.begin() + n_train + n_dev, order.end());
  return out;
}

bool modifier_necessity(const Example& ex, int node_idx, DescriptorDim dim) {
  Command dropped = ex.command;
  std::vector<ObjectNode*> nodes = all_nodes(dropped);
  if (node_idx < 0 || node_idx >= static_cast<int>(nodes.size())) {
    throw std::out_of_range("modifier_necessity: bad NP index");
  }
  ObjectSpec& spec = nodes[node_idx]->spec;
  switch (dim) {
    case DescriptorDim::Size:
      if (!spec.size_mod) return false;
      spec.size_mod.reset();
      break;
    case DescriptorDim::Color:
      if (!spec.color) return false;
      spec.color.reset();
      break;
    case DescriptorDim::Shape:
      if (spec.shape.is_wildcard()) return false;
      spec.shape = ShapeTerm{};
      break;
  }
  MatchResult r =
      match_complete(world_to_graph(ex.world), command_to_graph(dropped), ex.world);
  return !(r.referents.size() == 1 && *r.referents.begin() == ex.world.target_id);
}

namespace {

bool np_matches(const ObjectSpec& spec, std::optional<SizeModifier> size_mod,
                std::optional<Color> color, const std::optional<ShapeTerm>& shape) {
  if (size_mod && spec.size_mod != size_mod) return false;
  if (color && spec.color != color) return false;
  if (shape && spec.shape != *shape) return false;
  return true;
}

std::vector<int> np_indices(const Command& c, std::optional<SizeModifier> size_mod,
                            std::optional<Color> color, const std::optional<ShapeTerm>& shape) {
  std::vector<int> out;
  std::vector<const ObjectNode*> nodes = all_nodes(c);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (np_matches(nodes[i]->spec, size_mod, color, shape)) out.push_back(static_cast<int>(i));
  }
  return out;
}

bool necessity_on_all(const Example& ex, const std::vector<int>& nps, DescriptorDim d1,
                      DescriptorDim d2) {
  for (int i : nps) {
    if (!modifier_necessity(ex, i, d1) || !modifier_necessity(ex, i, d2)) return false;
  }
  return !nps.empty();
}

SplitResult heldout_np_split(const std::vector<Example>& corpus, std::optional<SizeModifier> sm,
                             std::optional<Color> col, std::optional<ShapeTerm> sh,
                             DescriptorDim d1, DescriptorDim d2, const char* name) {
  SplitResult out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::vector<int> nps = np_indices(corpus[i].command, sm, col, sh);
    if (nps.empty()) {
      out.train.push_back(i);
    } else if (necessity_on_all(corpus[i], nps, d1, d2)) {
      out.test.push_back(i);
    }  // held-out phrase present but not load-bearing: dropped
  }
  if (out.train.empty() || out.test.empty()) {
    throw std::runtime_error(std::string("split_") + name + ": corpus too small to populate");
  }
  return out;
}

}  // namespace

bool contains_np(const Command& c, std::optional<SizeModifier> size_mod,
                 std::optional<Color> color, std::optional<ShapeTerm> shape) {
  return !np_indices(c, size_mod, color, shape).empty();
}

bool a1_predicate(const Command& c) {
  return contains_np(c, std::nullopt, Color::Yellow, ShapeTerm{Shape::Square});
}

bool a3_predicate(const Command& c) {
  return contains_np(c, SizeModifier::Small, std::nullopt, ShapeTerm{Shape::Cylinder});
}

bool a1_necessity(const Example& ex) {
  return necessity_on_all(ex,
                          np_indices(ex.command, std::nullopt, Color::Yellow,
                                     ShapeTerm{Shape::Square}),
                          DescriptorDim::Color, DescriptorDim::Shape);
}

bool a3_necessity(const Example& ex) {
  return necessity_on_all(ex,
                          np_indices(ex.command, SizeModifier::Small, std::nullopt,
                                     ShapeTerm{Shape::Cylinder}),
                          DescriptorDim::Size, DescriptorDim::Shape);
}

SplitResult split_a1(const std::vector<Example>& corpus) {
  return heldout_np_split(corpus, std::nullopt, Color::Yellow, ShapeTerm{Shape::Square},
                          DescriptorDim::Color, DescriptorDim::Shape, "a1");
}

SplitResult split_a3(const std::vector<Example>& corpus) {
  return heldout_np_split(corpus, SizeModifier::Small, std::nullopt, ShapeTerm{Shape::Cylinder},
                          DescriptorDim::Size, DescriptorDim::Shape, "a3");
}

namespace {

bool is_red_square(const WorldObject& o) {
  return o.shape == Shape::Square && o.color == Color::Red;
}

bool has_red_square_np(const Command& c) {
  return contains_np(c, std::nullopt, Color::Red, ShapeTerm{Shape::Square});
}

}  // namespace

bool a2_target_predicate(const Example& ex) { return is_red_square(ex.world.at(ex.world.target_id)); }

bool a2_train_predicate(const Example& ex) {
  if (has_red_square_np(ex.command)) return false;
  for (const auto& o : ex.world.objects) {
    // Background red squares are allowed; the target is not.
    if (o.id == ex.world.target_id && is_red_square(o)) return false;
  }
  return true;
}

SplitResult split_a2(std::vector<Example>& corpus, const GeneratorConfig& cfg) {
  SplitResult out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    Example& ex = corpus[i];
    if (a2_target_predicate(ex)) {
      // Held-out reading: a red square is the referent. When the command
      // names the color, it must be load-bearing.
      std::vector<int> red_roots =
          np_indices(ex.command, std::nullopt, Color::Red, ShapeTerm{Shape::Square});
      bool color_needed = true;
      for (int idx : red_roots) {
        if (idx == 0) color_needed = modifier_necessity(ex, 0, DescriptorDim::Color);
      }
      if (color_needed) out.test.push_back(i);
      continue;
    }
    if (has_red_square_np(ex.command)) continue;  // all-positions restriction: drop

    // Resample worlds whose target happens to be a red square.
    bool ok = a2_train_predicate(ex);
    for (int attempt = 0; attempt < 20 && !ok; ++attempt) {
      Rng rng(Rng::derive(cfg.seed, 0xa2a2ULL + i * 1000 + attempt));
      auto fresh = generate_example(ex.command, cfg, rng);
      if (!fresh) break;
      fresh->id = ex.id;
      fresh->split_tag = ex.split_tag;
      if (a2_train_predicate(*fresh)) {
        ex = std::move(*fresh);
        ok = true;
      }
    }
    if (ok) out.train.push_back(i);
  }
  if (out.train.empty() || out.test.empty()) {
    throw std::runtime_error("split_a2: corpus too small to populate");
  }
  return out;
}

namespace {

std::string np_key(const ObjectSpec& s) {
  std::string k;
  k += s.size_mod ? std::string(to_string(*s.size_mod)) : "-";
  k += '|';
  k += s.color ? std::string(to_string(*s.color)) : "-";
  k += '|';
  k += s.shape.is_wildcard() ? "object" : std::string(to_string(*s.shape.shape));
  return k;
}

std::vector<std::string> command_np_keys(const Command& c) {
  std::vector<std::string> keys;
  for (const ObjectNode* n : all_nodes(c)) keys.push_back(np_key(n->spec));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

using NpPair = std::pair<std::string, std::string>;

std::set<NpPair> command_np_pairs(const Command& c) {
  std::vector<std::string> keys = command_np_keys(c);
  std::set<NpPair> pairs;
  for (std::size_t a = 0; a < keys.size(); ++a) {
    for (std::size_t b = a + 1; b < keys.size(); ++b) pairs.insert({keys[a], keys[b]});
  }
  return pairs;
}

}  // namespace

SplitResult split_b1(const std::vector<Example>& corpus, std::uint64_t seed,
                     std::vector<NpPair>* held_out) {
  // Pair and NP usage counts over the whole corpus.
  std::map<NpPair, long long> pair_count;
  std::map<std::string, long long> np_count;
  for (const auto& ex : corpus) {
    for (const auto& p : command_np_pairs(ex.command)) ++pair_count[p];
    for (const auto& k : command_np_keys(ex.command)) ++np_count[k];
  }

  // Candidates: pairs whose NPs each occur in plenty of other examples, so
  // holding the pair out cannot erase either NP from train.
  std::vector<NpPair> candidates;
  for (const auto& [p, cnt] : pair_count) {
    if (np_count[p.first] >= 3 * cnt && np_count[p.second] >= 3 * cnt) candidates.push_back(p);
  }
  Rng rng(Rng::derive(seed, 0xb1b1ULL));
  rng.shuffle(candidates);

  const std::size_t kTargetPairs = 20;
  std::set<NpPair> held(candidates.begin(),
                        candidates.begin() + std::min(kTargetPairs, candidates.size()));

  SplitResult out;
  std::set<std::string> train_nps;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::set<NpPair> pairs = command_np_pairs(corpus[i].command);
    bool heldout = std::any_of(pairs.begin(), pairs.end(),
                               [&](const NpPair& p) { return held.count(p) > 0; });
    if (heldout) {
      out.test.push_back(i);
    } else {
      out.train.push_back(i);
      for (const auto& k : command_np_keys(corpus[i].command)) train_nps.insert(k);
    }
  }

  // Keep only pairs whose NPs survived in train; reassign the rest.
  std::set<NpPair> verified;
  for (const auto& p : held) {
    if (train_nps.count(p.first) && train_nps.count(p.second)) verified.insert(p);
  }
  if (verified.size() != held.size()) {
    std::vector<std::size_t> test2;
    for (std::size_t i : out.test) {
      std::set<NpPair> pairs = command_np_pairs(corpus[i].command);
      bool keep = std::any_of(pairs.begin(), pairs.end(),
                              [&](const NpPair& p) { return verified.count(p) > 0; });
      bool touches_dropped = std::any_of(pairs.begin(), pairs.end(), [&](const NpPair& p) {
        return held.count(p) > 0 && !verified.count(p);
      });
      if (keep && !touches_dropped) {
        test2.push_back(i);
      } else {
        out.train.push_back(i);
      }
    }
    std::sort(out.train.begin(), out.train.end());
    out.test = std::move(test2);
    held = std::move(verified);
  }

  if (out.train.empty() || out.test.empty()) {
    throw std::runtime_error("split_b1: corpus too small to populate");
  }
  if (held_out) held_out->assign(held.begin(), held.end());
  return out;
}

bool b2_predicate(const Command& c) {
  bool same_size = false, inside = false;
  for (const ObjectNode* n : all_nodes(c)) {
    for (const auto& cl : n->clauses) {
      same_size |= cl.relation == Relation::SameSize;
      inside |= cl.relation == Relation::InsideOf;
    }
  }
  return same_size && inside;
}

SplitResult split_b2(const std::vector<Example>& corpus) {
  SplitResult out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    (b2_predicate(corpus[i].command) ? out.test : out.train).push_back(i);
  }
  if (out.train.empty() || out.test.empty()) {
    throw std::runtime_error("split_b2: corpus too small to populate");
  }
  return out;
}

DatasetResult split_c1(GeneratorConfig cfg) {
  cfg.patterns = {Pattern::ThreeRel};
  return generate_dataset(cfg);
}

DatasetResult split_c2(GeneratorConfig cfg) {
  cfg.patterns = {Pattern::NestedRel};
  return generate_dataset(cfg);
}

}  // namespace reascan
