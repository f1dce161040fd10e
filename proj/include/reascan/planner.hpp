#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reascan/command.hpp"
#include "reascan/world.hpp"

namespace reascan {

struct ActionSequence {
  std::vector<ActionToken> tokens;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  friend bool operator==(const ActionSequence&, const ActionSequence&) = default;
};

// Comma-separated surface form, e.g. "R_turn,walk,walk,push".
std::string to_string(const ActionSequence& seq);
ActionSequence action_sequence_from_string(const std::string& s);

// Canonical walk to the target cell: minimal turns, then horizontal leg,
// then vertical leg (axis order flipped when that saves a turn from the
// east-facing start); adverb transformations applied per step. final_pose,
// if given, receives the agent pose after the walk.
ActionSequence plan_walk(AgentPose from, Cell target, const World& w,
                         std::optional<Adverb> adverb, AgentPose* final_pose = nullptr);

// Push moves the object along the arrival facing direction, pull in the
// opposite direction, until the next cell is a wall or a non-box object.
// Heavy objects (size 3-4) cost two tokens per cell.
ActionSequence plan_manipulate(Verb verb, AgentPose arrival, const WorldObject& target,
                               const World& w, std::optional<Adverb> adverb);

// Full oracle: walk phase plus manipulation suffix for push/pull commands.
ActionSequence plan(const Command& c, const World& w);

// Step simulator used to replay gold sequences.
struct SimResult {
  AgentPose agent;
  World world;  // object positions after replay
};
SimResult replay(const World& start, const ActionSequence& seq);

}  // namespace reascan
