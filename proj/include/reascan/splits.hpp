#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "reascan/distractors.hpp"

namespace reascan {

enum class SplitKind : std::uint8_t { Random, A1, A2, A3, B1, B2, C1, C2, RDAblation };

std::string_view to_string(SplitKind k);
std::optional<SplitKind> split_kind_from_string(std::string_view s);

struct SplitRatios {
  double train = 0.938;
  double dev = 0.052;
  double test = 0.010;
};

// Index-based partition over a corpus vector. Compositional splits leave
// dev empty and may drop examples that belong to neither side.
struct SplitResult {
  std::vector<std::size_t> train;
  std::vector<std::size_t> dev;
  std::vector<std::size_t> test;
};

// Deterministic disjoint, exhaustive partition. Throws if the ratios do not
// sum to 1.
SplitResult split_random(const std::vector<Example>& corpus, SplitRatios ratios,
                         std::uint64_t seed);

enum class DescriptorDim : std::uint8_t { Size, Color, Shape };

// True iff deleting the descriptor from the command's NP at preorder index
// node_idx leaves the referent ambiguous or unmatched, i.e. the descriptor
// is necessary for unique reference.
bool modifier_necessity(const Example& ex, int node_idx, DescriptorDim dim);

// AST-level NP search: does any noun phrase carry exactly these descriptor
// values (unconstrained slots are ignored)?
bool contains_np(const Command& c, std::optional<SizeModifier> size_mod,
                 std::optional<Color> color, std::optional<ShapeTerm> shape);

// Split-defining predicates, exposed for audits.
bool a1_predicate(const Command& c);  // some NP is a yellow square
bool a3_predicate(const Command& c);  // some NP is a small cylinder
bool a2_target_predicate(const Example& ex);  // the target object is a red square
bool a2_train_predicate(const Example& ex);   // no red-square NP, no red-square target
bool b2_predicate(const Command& c);  // relations include both SameSize and InsideOf
// Both held-out descriptors are necessary on every held-out NP occurrence.
bool a1_necessity(const Example& ex);
bool a3_necessity(const Example& ex);

// Held-out NP splits. Test members additionally pass the necessity audit;
// held-out-phrase examples failing it are dropped. Throws if either side
// ends up empty.
SplitResult split_a1(const std::vector<Example>& corpus);
SplitResult split_a3(const std::vector<Example>& corpus);

// Red squares never appear in train, in any command position or as a
// target. Train candidates whose target is incidentally a red square get
// their world regenerated with resampled attributes (corpus is mutated).
SplitResult split_a2(std::vector<Example>& corpus, const GeneratorConfig& cfg);

// Held-out NP co-occurrence pairs. Each held-out pair's NPs still occur
// individually in train. The chosen pairs are returned through held_out
// as sorted structural-key pairs.
SplitResult split_b1(const std::vector<Example>& corpus, std::uint64_t seed,
                     std::vector<std::pair<std::string, std::string>>* held_out = nullptr);

SplitResult split_b2(const std::vector<Example>& corpus);

// Zero-shot pattern splits: fresh test-only corpora.
DatasetResult split_c1(GeneratorConfig cfg);
DatasetResult split_c2(GeneratorConfig cfg);

}  // namespace reascan
