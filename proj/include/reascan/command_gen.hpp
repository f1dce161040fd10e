#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reascan/command.hpp"
#include "reascan/rng.hpp"

namespace reascan {

struct World;

struct GeneratorConfig {
  int n_commands = 0;         // commands per pattern (N); 0 = pattern default
  int worlds_per_command = 180;  // M
  int grid_size = 6;
  int max_objects = 16;
  int target_objects = 8;     // random distractors fill toward this count
  std::uint64_t seed = 0;
  bool random_distractors_only = false;  // RD ablation
  std::vector<Pattern> patterns = {Pattern::Simple, Pattern::OneRel, Pattern::TwoRel};
};

// Why a command was rejected by the rule filter.
enum class RuleId : std::uint8_t {
  Rule1A,      // shape descriptor together with "same shape as"
  Rule1B,      // color descriptor together with "same color as"
  Rule1C,      // size descriptor together with "same size as"
  Rule2,       // box outside an "inside of" clause (or inside-of non-box)
  Rule3,       // duplicate relation in one conjunction
  Rule4,       // descriptor order (enforced structurally by the parser)
  VacuousRoot  // wildcard root shape with no relative clause
};

std::string_view to_string(RuleId r);

// nullopt = accept.
std::optional<RuleId> rule_filter(const Command& c);

// The exhaustive set of rule-valid Simple commands: verb x NP x optional
// adverb, with a concrete non-box shape at the root.
std::vector<Command> enumerate_simple();

// Samples n_commands distinct rule-valid commands of the given pattern.
// Deterministic for a fixed config seed. Throws std::runtime_error when the
// valid population is exhausted before reaching the requested count.
std::vector<Command> sample_commands(const GeneratorConfig& cfg, Pattern pattern);

// Sets each NP's determiner: The iff exactly one world object matches the
// NP's intrinsic descriptors, A otherwise. Throws if some NP has no match.
Command ground_determiners(Command c, const World& w);

}  // namespace reascan
