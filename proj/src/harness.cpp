#include "reascan/harness.hpp"

#include <algorithm>
#include <sstream>

namespace reascan {

ActionSequence random_baseline(const ActionSequence& gold, Rng& rng) {
  if (gold.empty()) throw std::invalid_argument("random_baseline: empty gold sequence");
  ActionSequence out;
  out.tokens.reserve(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    out.tokens.push_back(kAllActionTokens[rng.below_int(6)]);
  }
  return out;
}

EvalReport evaluate(const std::vector<Example>& gold,
                    const std::map<std::string, ActionSequence>& preds) {
  EvalReport r;
  for (const auto& ex : gold) {
    auto it = preds.find(ex.id);
    bool hit = it != preds.end() && exact_match(it->second, ex.actions);
    auto& [pm, pc] = r.per_pattern[std::string(to_string(ex.command.pattern))];
    ++r.count;
    ++pc;
    if (hit) {
      ++r.matched;
      ++pm;
    }
  }
  r.exact_match_percent = r.count ? 100.0 * static_cast<double>(r.matched) / r.count : 0.0;
  return r;
}

int target_quadrant(const World& w) {
  const WorldObject& t = w.at(w.target_id);
  int dc = t.anchor.col - w.agent.cell.col;
  int dr = t.anchor.row - w.agent.cell.row;
  if (dc > 0 && dr <= 0) return 0;
  if (dc <= 0 && dr < 0) return 1;
  if (dc < 0 && dr >= 0) return 2;
  return 3;  // dc >= 0 && dr > 0; (0,0) cannot occur (agent != target cell)
}

CorpusStats compute_stats(const std::vector<Example>& corpus) {
  CorpusStats s;
  for (const auto& ex : corpus) {
    ++s.examples;
    ++s.length_hist[ex.actions.size()];
    ++s.verb_freq[std::string(to_string(ex.command.verb))];
    ++s.adverb_freq[ex.command.adverb ? std::string(to_string(*ex.command.adverb)) : "-"];
    for (const auto& o : ex.world.objects) {
      ++s.objects;
      ++s.color_freq[std::string(to_string(o.color))];
      ++s.shape_freq[std::string(to_string(o.shape))];
      ++s.size_freq[o.size];
    }
    for (const ObjectNode* n : all_nodes(ex.command)) {
      for (const auto& cl : n->clauses) ++s.relation_freq[std::string(to_string(cl.relation))];
    }
    bool seen[4] = {false, false, false, false};
    for (const auto& a : ex.annotations) seen[static_cast<int>(a.kind)] = true;
    for (DistractorKind k : {DistractorKind::AttributeBased, DistractorKind::IsomorphismBased,
                             DistractorKind::RelationBased, DistractorKind::Random}) {
      if (seen[static_cast<int>(k)]) ++s.distractor_presence[std::string(to_string(k))];
    }
    ++s.quadrant_hist[static_cast<std::size_t>(target_quadrant(ex.world))];
  }
  return s;
}

namespace {

template <typename K>
void emit_table(std::ostringstream& os, const char* title,
                const std::map<K, long long>& freq, long long denom) {
  os << title << "\n";
  for (const auto& [k, v] : freq) {
    os << "  " << k << ": " << v;
    if (denom > 0) {
      os << " (" << 100.0 * static_cast<double>(v) / static_cast<double>(denom) << "%)";
    }
    os << "\n";
  }
}

}  // namespace

std::string to_text(const CorpusStats& s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed;
  os << "examples: " << s.examples << "\nworld objects: " << s.objects << "\n";
  emit_table(os, "verbs", s.verb_freq, s.examples);
  emit_table(os, "adverbs", s.adverb_freq, s.examples);
  emit_table(os, "object colors", s.color_freq, s.objects);
  emit_table(os, "object shapes", s.shape_freq, s.objects);
  emit_table(os, "object sizes", s.size_freq, s.objects);
  emit_table(os, "relations", s.relation_freq, 0);
  emit_table(os, "distractor presence", s.distractor_presence, s.examples);
  os << "target quadrants";
  for (long long q : s.quadrant_hist) {
    os << " " << (s.examples ? 100.0 * static_cast<double>(q) / s.examples : 0.0) << "%";
  }
  os << "\naction length histogram\n";
  for (const auto& [len, cnt] : s.length_hist) os << "  " << len << ": " << cnt << "\n";
  return os.str();
}

double ks_statistic(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::vector<std::size_t> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < sa.size() && j < sb.size()) {
    std::size_t x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < sb.size() && sb[j] == x) ++j;
    double fa = static_cast<double>(i) / static_cast<double>(sa.size());
    double fb = static_cast<double>(j) / static_cast<double>(sb.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

}  // namespace reascan
