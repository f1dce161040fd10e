#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reascan/command_gen.hpp"
#include "reascan/planner.hpp"
#include "reascan/world.hpp"

namespace reascan {

enum class DistractorKind : std::uint8_t { AttributeBased, IsomorphismBased, RelationBased, Random };

std::string_view to_string(DistractorKind k);
std::optional<DistractorKind> distractor_kind_from_string(std::string_view s);

struct DistractorAnnotation {
  int object_id = -1;
  DistractorKind kind = DistractorKind::Random;
  std::string note;  // which attribute was perturbed / which clauses targeted
};

struct Example {
  std::string id;
  Command command;  // determiners grounded
  World world;
  ActionSequence actions;
  std::vector<DistractorAnnotation> annotations;
  std::string split_tag;
};

// True iff the command's referent set is exactly the world target.
bool uniquely_refers(const Command& c, const World& w);

// The four distractor stages. Each adds objects, annotates them, and keeps
// the referent unique (additions that break uniqueness are rolled back).
// Infeasible additions are skipped, not fatal.
void add_relation_distractors(World& w, const Command& c, Rng& rng,
                              std::vector<DistractorAnnotation>& ann, int max_objects);
void add_attribute_distractors(World& w, const Command& c, Rng& rng,
                               std::vector<DistractorAnnotation>& ann, int max_objects);
void add_isomorphism_distractors(World& w, const Command& c, Rng& rng,
                                 std::vector<DistractorAnnotation>& ann, int max_objects);
void add_random_distractors(World& w, const Command& c, Rng& rng,
                            std::vector<DistractorAnnotation>& ann, int up_to);

// Full per-example pipeline: placement, distractor stages, agent pose,
// uniqueness validation, determiner grounding and gold actions.
// Deterministic for a fixed (command, seed). Returns nullopt (with the
// reason in *failure) when the retry budget is exhausted.
std::optional<Example> generate_example(const Command& c, const GeneratorConfig& cfg, Rng& rng,
                                        std::string* failure = nullptr);

struct DatasetResult {
  std::vector<Example> examples;
  long long failures = 0;
};

// Generates worlds_per_command examples for every sampled command of every
// configured pattern. Seeds derive per (pattern, command, world) index, so
// output is byte-identical across runs and worker counts. Worker count is
// taken from the REASCAN_WORKERS environment variable (default 1).
DatasetResult generate_dataset(const GeneratorConfig& cfg);

}  // namespace reascan
