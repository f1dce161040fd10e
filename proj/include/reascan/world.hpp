#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "reascan/command.hpp"
#include "reascan/domain.hpp"
#include "reascan/rng.hpp"

namespace reascan {

struct GeneratorConfig;

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct WorldObject {
  int id = -1;
  Shape shape = Shape::Circle;
  Color color = Color::Red;
  int size = 1;
  Cell anchor;  // boxes span the size x size region with top-left here

  bool is_box() const { return shape == Shape::Box; }
  bool covers(Cell c) const {
    if (!is_box()) return anchor == c;
    return c.row >= anchor.row && c.row < anchor.row + size && c.col >= anchor.col &&
           c.col < anchor.col + size;
  }
};

struct AgentPose {
  Cell cell;
  Direction direction = Direction::East;
};

struct World {
  int grid_size = 6;
  std::vector<WorldObject> objects;
  AgentPose agent;
  int target_id = -1;
  // Set when the command carries a size modifier: the two sizes the world
  // may contain (Rule 1C).
  std::optional<std::pair<int, int>> allowed_sizes;

  const WorldObject* find(int id) const;
  const WorldObject& at(int id) const;
  bool in_grid(Cell c) const {
    return c.row >= 0 && c.row < grid_size && c.col >= 0 && c.col < grid_size;
  }
  bool cell_free(Cell c) const;      // no non-box object on the cell
  bool box_fits(Cell anchor, int size, int ignore_id = -1) const;
  int next_id() const;
};

// Thrown by holds() for SameRow/SameColumn on a box operand.
struct UnsupportedRelation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Whether relation r holds between distinct world objects a and b.
bool holds(Relation r, const WorldObject& a, const WorldObject& b);

// Full invariant check; returns a diagnostic for the first violation found.
std::optional<std::string> validate(const World& w);

struct PlacementExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One concrete object per NP of c, attributes unified across attribute
// relations and positions satisfying every positional relation.
// Object ids follow the command's preorder NP order (root = 0).
World place_mentioned(const Command& c, const GeneratorConfig& cfg, Rng& rng);

// Uniform over cells not holding a non-box object and distinct from the
// target cell; the agent always starts facing east.
void place_agent(World& w, Rng& rng);

}  // namespace reascan
