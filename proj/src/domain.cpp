#include "reascan/domain.hpp"

namespace reascan {

Direction rotate(Direction d, ActionToken turn) {
  int i = static_cast<int>(d);
  switch (turn) {
    case ActionToken::RTurn:
      return static_cast<Direction>((i + 1) % 4);
    case ActionToken::LTurn:
      return static_cast<Direction>((i + 3) % 4);
    default:
      throw std::invalid_argument("rotate: token is not a turn");
  }
}

Direction opposite(Direction d) {
  return static_cast<Direction>((static_cast<int>(d) + 2) % 4);
}

int row_delta(Direction d) {
  switch (d) {
    case Direction::South: return 1;
    case Direction::North: return -1;
    default: return 0;
  }
}

int col_delta(Direction d) {
  switch (d) {
    case Direction::East: return 1;
    case Direction::West: return -1;
    default: return 0;
  }
}

std::string_view to_string(Color c) {
  switch (c) {
    case Color::Red: return "red";
    case Color::Green: return "green";
    case Color::Blue: return "blue";
    case Color::Yellow: return "yellow";
  }
  throw std::logic_error("bad Color");
}

std::string_view to_string(Shape s) {
  switch (s) {
    case Shape::Circle: return "circle";
    case Shape::Square: return "square";
    case Shape::Cylinder: return "cylinder";
    case Shape::Box: return "box";
  }
  throw std::logic_error("bad Shape");
}

std::string_view to_string(SizeModifier m) {
  return m == SizeModifier::Small ? "small" : "big";
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::SameRow: return "in the same row as";
    case Relation::SameColumn: return "in the same column as";
    case Relation::SameColor: return "in the same color as";
    case Relation::SameShape: return "in the same shape as";
    case Relation::SameSize: return "in the same size as";
    case Relation::InsideOf: return "inside of";
  }
  throw std::logic_error("bad Relation");
}

std::string_view to_string(Verb v) {
  switch (v) {
    case Verb::WalkTo: return "walk to";
    case Verb::Push: return "push";
    case Verb::Pull: return "pull";
  }
  throw std::logic_error("bad Verb");
}

std::string_view to_string(Adverb a) {
  switch (a) {
    case Adverb::WhileZigzagging: return "while zigzagging";
    case Adverb::WhileSpinning: return "while spinning";
    case Adverb::Cautiously: return "cautiously";
    case Adverb::Hesitantly: return "hesitantly";
  }
  throw std::logic_error("bad Adverb");
}

std::string_view to_string(ActionToken t) {
  switch (t) {
    case ActionToken::Walk: return "walk";
    case ActionToken::Push: return "push";
    case ActionToken::Pull: return "pull";
    case ActionToken::Stay: return "stay";
    case ActionToken::LTurn: return "L_turn";
    case ActionToken::RTurn: return "R_turn";
  }
  throw std::logic_error("bad ActionToken");
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::East: return "east";
    case Direction::South: return "south";
    case Direction::West: return "west";
    case Direction::North: return "north";
  }
  throw std::logic_error("bad Direction");
}

namespace {
template <typename T, std::size_t N>
std::optional<T> lookup(const std::array<T, N>& values, std::string_view s) {
  for (T v : values) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}
}  // namespace

std::optional<Color> color_from_string(std::string_view s) { return lookup(kAllColors, s); }
std::optional<Shape> shape_from_string(std::string_view s) { return lookup(kAllShapes, s); }
std::optional<SizeModifier> size_modifier_from_string(std::string_view s) {
  return lookup(kAllSizeModifiers, s);
}
std::optional<ActionToken> action_token_from_string(std::string_view s) {
  return lookup(kAllActionTokens, s);
}
std::optional<Direction> direction_from_string(std::string_view s) {
  return lookup(kAllDirections, s);
}

}  // namespace reascan
