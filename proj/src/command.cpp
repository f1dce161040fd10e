#include "reascan/command.hpp"

#include <sstream>

namespace reascan {

std::string_view to_string(Pattern p) {
  switch (p) {
    case Pattern::Simple: return "simple";
    case Pattern::OneRel: return "1-relative-clause";
    case Pattern::TwoRel: return "2-relative-clauses";
    case Pattern::ThreeRel: return "3-relative-clauses";
    case Pattern::NestedRel: return "nested-relative-clauses";
  }
  throw std::logic_error("bad Pattern");
}

std::optional<Pattern> pattern_from_string(std::string_view s) {
  for (Pattern p : {Pattern::Simple, Pattern::OneRel, Pattern::TwoRel, Pattern::ThreeRel,
                    Pattern::NestedRel}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

namespace {

template <typename Node, typename Out>
void collect_nodes(Node& n, Out& out) {
  out.push_back(&n);
  for (auto& cl : n.clauses) collect_nodes(cl.object, out);
}

void key_node(const ObjectNode& n, std::ostringstream& os) {
  os << '(';
  if (n.spec.size_mod) os << to_string(*n.spec.size_mod) << ' ';
  if (n.spec.color) os << to_string(*n.spec.color) << ' ';
  os << (n.spec.shape.is_wildcard() ? "object" : to_string(*n.spec.shape.shape));
  for (const auto& cl : n.clauses) {
    os << " [" << static_cast<int>(cl.relation) << ' ';
    key_node(cl.object, os);
    os << ']';
  }
  os << ')';
}

void append_words(std::vector<std::string>& out, std::string_view phrase) {
  std::size_t start = 0;
  while (start < phrase.size()) {
    std::size_t end = phrase.find(' ', start);
    if (end == std::string_view::npos) end = phrase.size();
    out.emplace_back(phrase.substr(start, end - start));
    start = end + 1;
  }
}

void render_node(const ObjectNode& n, std::vector<std::string>& out) {
  switch (n.spec.determiner) {
    case Determiner::A: out.emplace_back("a"); break;
    case Determiner::The: out.emplace_back("the"); break;
    case Determiner::Unset:
      throw std::logic_error("render: determiner not grounded");
  }
  if (n.spec.size_mod) out.emplace_back(to_string(*n.spec.size_mod));
  if (n.spec.color) out.emplace_back(to_string(*n.spec.color));
  out.emplace_back(n.spec.shape.is_wildcard() ? "object"
                                              : std::string(to_string(*n.spec.shape.shape)));
  if (!n.clauses.empty()) {
    out.emplace_back("that");
    out.emplace_back("is");
    for (std::size_t i = 0; i < n.clauses.size(); ++i) {
      if (i > 0) out.emplace_back("and");
      append_words(out, to_string(n.clauses[i].relation));
      render_node(n.clauses[i].object, out);
    }
  }
}

class Parser {
 public:
  explicit Parser(const std::vector<std::string>& tokens) : tokens_(tokens) {}

  Command run() {
    Command c;
    c.verb = parse_verb();
    c.root = parse_object();
    c.adverb = parse_adverb();
    if (pos_ != tokens_.size()) fail("trailing input");
    c.pattern = classify(c.root);
    return c;
  }

 private:
  const std::vector<std::string>& tokens_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos_, msg); }

  bool at_end() const { return pos_ == tokens_.size(); }
  const std::string& peek() const {
    static const std::string kEmpty;
    return at_end() ? kEmpty : tokens_[pos_];
  }
  bool accept(std::string_view w) {
    if (!at_end() && tokens_[pos_] == w) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view w) {
    if (!accept(w)) fail("expected '" + std::string(w) + "'");
  }

  Verb parse_verb() {
    if (accept("walk")) {
      expect("to");
      return Verb::WalkTo;
    }
    if (accept("push")) return Verb::Push;
    if (accept("pull")) return Verb::Pull;
    fail("expected a verb");
  }

  ObjectNode parse_object() {
    ObjectNode node;
    if (accept("a")) {
      node.spec.determiner = Determiner::A;
    } else if (accept("the")) {
      node.spec.determiner = Determiner::The;
    } else {
      fail("expected a determiner");
    }
    if (auto m = size_modifier_from_string(peek())) {
      node.spec.size_mod = m;
      ++pos_;
    }
    if (auto c = color_from_string(peek())) {
      node.spec.color = c;
      ++pos_;
    }
    if (accept("object")) {
      node.spec.shape = ShapeTerm{};
    } else if (auto s = shape_from_string(peek())) {
      node.spec.shape = ShapeTerm{*s};
      ++pos_;
    } else if (size_modifier_from_string(peek())) {
      fail("modifier order must be size, color, shape");
    } else {
      fail("expected a shape");
    }
    // "that is" opens a clause list; further clauses on the same node are
    // joined by "and". An "and" binds to the most recently opened node.
    if (accept("that")) {
      expect("is");
      node.clauses.push_back(parse_clause());
      while (accept("and")) node.clauses.push_back(parse_clause());
    }
    return node;
  }

  RelClause parse_clause() {
    RelClause cl;
    if (accept("inside")) {
      expect("of");
      cl.relation = Relation::InsideOf;
    } else {
      expect("in");
      expect("the");
      expect("same");
      if (accept("row")) {
        cl.relation = Relation::SameRow;
      } else if (accept("column")) {
        cl.relation = Relation::SameColumn;
      } else if (accept("color")) {
        cl.relation = Relation::SameColor;
      } else if (accept("shape")) {
        cl.relation = Relation::SameShape;
      } else if (accept("size")) {
        cl.relation = Relation::SameSize;
      } else {
        fail("expected a relation kind");
      }
      expect("as");
    }
    cl.object = parse_object();
    return cl;
  }

  std::optional<Adverb> parse_adverb() {
    if (at_end()) return std::nullopt;
    if (accept("while")) {
      if (accept("zigzagging")) return Adverb::WhileZigzagging;
      if (accept("spinning")) return Adverb::WhileSpinning;
      fail("expected 'zigzagging' or 'spinning'");
    }
    if (accept("cautiously")) return Adverb::Cautiously;
    if (accept("hesitantly")) return Adverb::Hesitantly;
    fail("expected an adverb or end of command");
  }

  static Pattern classify(const ObjectNode& root) {
    bool nested = false;
    for (const auto& cl : root.clauses) {
      if (!cl.object.clauses.empty()) nested = true;
    }
    if (nested) return Pattern::NestedRel;
    switch (root.clauses.size()) {
      case 0: return Pattern::Simple;
      case 1: return Pattern::OneRel;
      case 2: return Pattern::TwoRel;
      case 3: return Pattern::ThreeRel;
      default: throw std::logic_error("unsupported clause count");
    }
  }
};

}  // namespace

std::vector<const ObjectNode*> all_nodes(const Command& c) {
  std::vector<const ObjectNode*> out;
  collect_nodes(c.root, out);
  return out;
}

std::vector<ObjectNode*> all_nodes(Command& c) {
  std::vector<ObjectNode*> out;
  collect_nodes(c.root, out);
  return out;
}

std::string structural_key(const Command& c) {
  std::ostringstream os;
  os << to_string(c.verb) << ' ';
  key_node(c.root, os);
  if (c.adverb) os << ' ' << to_string(*c.adverb);
  return os.str();
}

std::vector<std::string> render(const Command& c) {
  std::vector<std::string> out;
  append_words(out, to_string(c.verb));
  render_node(c.root, out);
  if (c.adverb) append_words(out, to_string(*c.adverb));
  return out;
}

std::string render_string(const Command& c) {
  auto tokens = render(c);
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

Command parse(const std::vector<std::string>& tokens) { return Parser(tokens).run(); }

Command parse_string(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream is(text);
  std::string w;
  while (is >> w) tokens.push_back(w);
  return parse(tokens);
}

}  // namespace reascan
