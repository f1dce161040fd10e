#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "reascan/distractors.hpp"
#include "reascan/rng.hpp"

namespace reascan {

// Sequence-level exact match, the sole metric (Tables of record).
inline bool exact_match(const ActionSequence& pred, const ActionSequence& gold) {
  return pred == gold;
}

// Uniform i.i.d. tokens over the 6-token vocabulary, length preserved.
ActionSequence random_baseline(const ActionSequence& gold, Rng& rng);

struct EvalReport {
  double exact_match_percent = 0.0;
  long long count = 0;
  long long matched = 0;
  // Pattern tag -> (matched, count).
  std::map<std::string, std::pair<long long, long long>> per_pattern;
};

// Predictions keyed by example id; ids missing from preds count as misses.
EvalReport evaluate(const std::vector<Example>& gold,
                    const std::map<std::string, ActionSequence>& preds);

// Quadrant of the target relative to the agent, rotationally symmetric so a
// uniform agent/target placement yields 25% per bin:
//   0 = east/north-east, 1 = north/north-west, 2 = west/south-west,
//   3 = south/south-east.
int target_quadrant(const World& w);

struct CorpusStats {
  long long examples = 0;
  long long objects = 0;
  std::map<std::size_t, long long> length_hist;           // gold action length
  std::map<std::string, long long> verb_freq;             // per example
  std::map<std::string, long long> adverb_freq;           // per example, "-" = none
  std::map<std::string, long long> color_freq;            // per world object
  std::map<std::string, long long> shape_freq;            // per world object
  std::map<int, long long> size_freq;                     // per world object
  std::map<std::string, long long> relation_freq;         // per command clause
  std::map<std::string, long long> distractor_presence;   // examples with >= 1 of kind
  std::array<long long, 4> quadrant_hist = {0, 0, 0, 0};
};

CorpusStats compute_stats(const std::vector<Example>& corpus);

// Plain-text table rendering of the stats report.
std::string to_text(const CorpusStats& s);

// Two-sample Kolmogorov-Smirnov statistic between gold-length samples.
double ks_statistic(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

}  // namespace reascan
