#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "reascan/domain.hpp"

namespace reascan {

enum class Determiner : std::uint8_t { Unset, A, The };

// Intrinsic descriptors of one noun phrase. Surface order is fixed:
// size before color before shape (Rule 4).
struct ObjectSpec {
  Determiner determiner = Determiner::Unset;
  std::optional<SizeModifier> size_mod;
  std::optional<Color> color;
  ShapeTerm shape;

  bool has_descriptor() const {
    return size_mod.has_value() || color.has_value() || !shape.is_wildcard();
  }
  friend bool operator==(const ObjectSpec&, const ObjectSpec&) = default;
};

struct RelClause;

struct ObjectNode {
  ObjectSpec spec;
  std::vector<RelClause> clauses;  // conjunction, surface-joined by "and"

  friend bool operator==(const ObjectNode&, const ObjectNode&) = default;
};

struct RelClause {
  Relation relation;
  ObjectNode object;

  friend bool operator==(const RelClause&, const RelClause&) = default;
};

enum class Pattern : std::uint8_t { Simple, OneRel, TwoRel, ThreeRel, NestedRel };

std::string_view to_string(Pattern p);
std::optional<Pattern> pattern_from_string(std::string_view s);

struct Command {
  Verb verb;
  ObjectNode root;
  std::optional<Adverb> adverb;
  Pattern pattern = Pattern::Simple;

  friend bool operator==(const Command&, const Command&) = default;
};

// Preorder list of all noun phrase nodes (root first).
std::vector<const ObjectNode*> all_nodes(const Command& c);
std::vector<ObjectNode*> all_nodes(Command& c);

// Determiner-independent structural key, used for deduplication.
std::string structural_key(const Command& c);

// Surface realization as space-separated tokens; multiword vocabulary items
// ("walk to", "in the same row as") expand to one token per word.
// Throws if any determiner is still Unset.
std::vector<std::string> render(const Command& c);
std::string render_string(const Command& c);

struct ParseError : std::runtime_error {
  ParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error("parse error at token " + std::to_string(pos) + ": " + msg),
        position(pos) {}
  std::size_t position;
};

// Inverse of render on its image. Throws ParseError on out-of-grammar input.
Command parse(const std::vector<std::string>& tokens);
Command parse_string(const std::string& text);

}  // namespace reascan
