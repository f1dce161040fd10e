#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace reascan {

enum class Color : std::uint8_t { Red, Green, Blue, Yellow };
inline constexpr std::array<Color, 4> kAllColors = {Color::Red, Color::Green, Color::Blue,
                                                    Color::Yellow};

enum class Shape : std::uint8_t { Circle, Square, Cylinder, Box };
inline constexpr std::array<Shape, 4> kAllShapes = {Shape::Circle, Shape::Square, Shape::Cylinder,
                                                    Shape::Box};
// Shapes an agent-facing object may take; "box" only ever appears as an
// inside-of container.
inline constexpr std::array<Shape, 3> kConcreteShapes = {Shape::Circle, Shape::Square,
                                                         Shape::Cylinder};

// A shape slot in a noun phrase: either a concrete shape or the wildcard
// "object", which matches any non-box shape.
struct ShapeTerm {
  std::optional<Shape> shape;  // nullopt = wildcard "object"

  bool is_wildcard() const { return !shape.has_value(); }
  bool matches(Shape s) const {
    if (is_wildcard()) return s != Shape::Box;
    return *shape == s;
  }
  friend bool operator==(const ShapeTerm&, const ShapeTerm&) = default;
};

// Object sizes run 1..4; 1-2 are light, 3-4 heavy.
inline constexpr int kMinSize = 1;
inline constexpr int kMaxSize = 4;
inline bool is_heavy(int size) { return size >= 3; }

enum class SizeModifier : std::uint8_t { Small, Big };
inline constexpr std::array<SizeModifier, 2> kAllSizeModifiers = {SizeModifier::Small,
                                                                  SizeModifier::Big};

enum class Relation : std::uint8_t {
  SameRow,
  SameColumn,
  SameColor,
  SameShape,
  SameSize,
  InsideOf
};
inline constexpr std::array<Relation, 6> kAllRelations = {
    Relation::SameRow,   Relation::SameColumn, Relation::SameColor,
    Relation::SameShape, Relation::SameSize,   Relation::InsideOf};

enum class Verb : std::uint8_t { WalkTo, Push, Pull };
inline constexpr std::array<Verb, 3> kAllVerbs = {Verb::WalkTo, Verb::Push, Verb::Pull};

enum class Adverb : std::uint8_t { WhileZigzagging, WhileSpinning, Cautiously, Hesitantly };
inline constexpr std::array<Adverb, 4> kAllAdverbs = {Adverb::WhileZigzagging,
                                                      Adverb::WhileSpinning, Adverb::Cautiously,
                                                      Adverb::Hesitantly};

enum class ActionToken : std::uint8_t { Walk, Push, Pull, Stay, LTurn, RTurn };
inline constexpr std::array<ActionToken, 6> kAllActionTokens = {
    ActionToken::Walk, ActionToken::Push,  ActionToken::Pull,
    ActionToken::Stay, ActionToken::LTurn, ActionToken::RTurn};

// Screen coordinates: row 0 is the top row, col 0 the left column.
// East = +col, South = +row. R_turn is clockwise.
enum class Direction : std::uint8_t { East, South, West, North };
inline constexpr std::array<Direction, 4> kAllDirections = {Direction::East, Direction::South,
                                                            Direction::West, Direction::North};

Direction rotate(Direction d, ActionToken turn);
Direction opposite(Direction d);
int row_delta(Direction d);
int col_delta(Direction d);

// Lowercase surface forms used in commands and serialized records.
std::string_view to_string(Color c);
std::string_view to_string(Shape s);
std::string_view to_string(SizeModifier m);
std::string_view to_string(Relation r);
std::string_view to_string(Verb v);
std::string_view to_string(Adverb a);
std::string_view to_string(ActionToken t);
std::string_view to_string(Direction d);

std::optional<Color> color_from_string(std::string_view s);
std::optional<Shape> shape_from_string(std::string_view s);
std::optional<SizeModifier> size_modifier_from_string(std::string_view s);
std::optional<ActionToken> action_token_from_string(std::string_view s);
std::optional<Direction> direction_from_string(std::string_view s);

}  // namespace reascan
