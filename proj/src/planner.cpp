#include "reascan/planner.hpp"

#include <algorithm>
#include <sstream>

namespace reascan {

std::string to_string(const ActionSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.tokens.size(); ++i) {
    if (i > 0) out += ',';
    out += to_string(seq.tokens[i]);
  }
  return out;
}

ActionSequence action_sequence_from_string(const std::string& s) {
  ActionSequence seq;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    auto tok = action_token_from_string(item);
    if (!tok) throw std::invalid_argument("unknown action token '" + item + "'");
    seq.tokens.push_back(*tok);
  }
  return seq;
}

namespace {

// Minimal turn tokens from `from` to `to`; R_turn preferred on the 180 tie.
void emit_turns(Direction from, Direction to, std::vector<ActionToken>& out) {
  int diff = (static_cast<int>(to) - static_cast<int>(from) + 4) % 4;
  switch (diff) {
    case 0: break;
    case 1: out.push_back(ActionToken::RTurn); break;
    case 3: out.push_back(ActionToken::LTurn); break;
    case 2:
      out.push_back(ActionToken::RTurn);
      out.push_back(ActionToken::RTurn);
      break;
  }
}

void emit_walk(std::optional<Adverb> adverb, std::vector<ActionToken>& out) {
  if (adverb == Adverb::WhileSpinning) {
    out.insert(out.end(), 4, ActionToken::LTurn);
  } else if (adverb == Adverb::Cautiously) {
    out.push_back(ActionToken::LTurn);
    out.push_back(ActionToken::RTurn);
    out.push_back(ActionToken::RTurn);
    out.push_back(ActionToken::LTurn);
  }
  out.push_back(ActionToken::Walk);
  if (adverb == Adverb::Hesitantly) out.push_back(ActionToken::Stay);
}

}  // namespace

ActionSequence plan_walk(AgentPose from, Cell target, const World& w,
                         std::optional<Adverb> adverb, AgentPose* final_pose) {
  if (!w.in_grid(target)) throw std::invalid_argument("plan_walk: target outside grid");
  int dr = target.row - from.cell.row;
  int dc = target.col - from.cell.col;
  Direction hdir = dc >= 0 ? Direction::East : Direction::West;
  Direction vdir = dr >= 0 ? Direction::South : Direction::North;

  // Unit steps, as a direction list.
  std::vector<Direction> steps;
  int h = std::abs(dc), v = std::abs(dr);
  if (adverb == Adverb::WhileZigzagging) {
    // Alternate axes starting horizontally until one axis is exhausted.
    while (h > 0 || v > 0) {
      if (h > 0) {
        steps.push_back(hdir);
        --h;
      }
      if (v > 0) {
        steps.push_back(vdir);
        --v;
      }
    }
  } else {
    // Horizontal leg first unless starting with the vertical leg needs
    // strictly fewer turns (e.g. a strictly-west, off-row target from the
    // east-facing start).
    auto turn_cost = [](Direction a, Direction b) {
      int diff = (static_cast<int>(b) - static_cast<int>(a) + 4) % 4;
      return diff == 3 ? 1 : diff;
    };
    bool vertical_first =
        h > 0 && v > 0 &&
        turn_cost(from.direction, vdir) + turn_cost(vdir, hdir) <
            turn_cost(from.direction, hdir) + turn_cost(hdir, vdir);
    for (int pass = 0; pass < 2; ++pass) {
      bool do_vertical = (pass == 0) == vertical_first;
      if (do_vertical) {
        for (int i = 0; i < v; ++i) steps.push_back(vdir);
      } else {
        for (int i = 0; i < h; ++i) steps.push_back(hdir);
      }
    }
  }

  ActionSequence seq;
  Direction dir = from.direction;
  for (Direction step : steps) {
    emit_turns(dir, step, seq.tokens);
    dir = step;
    emit_walk(adverb, seq.tokens);
  }
  if (final_pose) *final_pose = AgentPose{target, dir};
  return seq;
}

ActionSequence plan_manipulate(Verb verb, AgentPose arrival, const WorldObject& target,
                               const World& w, std::optional<Adverb> adverb) {
  ActionSequence seq;
  if (verb == Verb::WalkTo) return seq;

  Direction move_dir = verb == Verb::Push ? arrival.direction : opposite(arrival.direction);
  ActionToken token = verb == Verb::Push ? ActionToken::Push : ActionToken::Pull;

  // Free run until a wall or another non-box object.
  int cells = 0;
  Cell cur = target.anchor;
  while (true) {
    Cell nxt{cur.row + row_delta(move_dir), cur.col + col_delta(move_dir)};
    if (!w.in_grid(nxt)) break;
    bool blocked = false;
    for (const auto& o : w.objects) {
      if (!o.is_box() && o.id != target.id && o.anchor == nxt) blocked = true;
    }
    if (blocked) break;
    cur = nxt;
    ++cells;
  }

  int per_cell = is_heavy(target.size) ? 2 : 1;
  for (int i = 0; i < cells * per_cell; ++i) {
    seq.tokens.push_back(token);
    if (adverb == Adverb::Hesitantly) seq.tokens.push_back(ActionToken::Stay);
  }
  return seq;
}

ActionSequence plan(const Command& c, const World& w) {
  const WorldObject& target = w.at(w.target_id);
  AgentPose arrival;
  ActionSequence seq = plan_walk(w.agent, target.anchor, w, c.adverb, &arrival);
  ActionSequence suffix = plan_manipulate(c.verb, arrival, target, w, c.adverb);
  seq.tokens.insert(seq.tokens.end(), suffix.tokens.begin(), suffix.tokens.end());
  return seq;
}

SimResult replay(const World& start, const ActionSequence& seq) {
  SimResult s{start.agent, start};
  int streak = 0;  // consecutive push/pull tokens toward the next cell move
  ActionToken streak_token = ActionToken::Stay;

  auto object_at_agent = [&]() -> WorldObject* {
    for (auto& o : s.world.objects) {
      if (!o.is_box() && o.anchor == s.agent.cell) return &o;
    }
    return nullptr;
  };

  for (ActionToken t : seq.tokens) {
    // stay is inert and does not interrupt a two-token heavy shove.
    if (t != ActionToken::Stay) {
      if (t != streak_token) streak = 0;
      streak_token = t;
    }
    switch (t) {
      case ActionToken::LTurn:
      case ActionToken::RTurn:
        s.agent.direction = rotate(s.agent.direction, t);
        break;
      case ActionToken::Walk: {
        Cell nxt{s.agent.cell.row + row_delta(s.agent.direction),
                 s.agent.cell.col + col_delta(s.agent.direction)};
        if (!s.world.in_grid(nxt)) throw std::runtime_error("replay: walked into a wall");
        s.agent.cell = nxt;
        break;
      }
      case ActionToken::Stay:
        break;
      case ActionToken::Push:
      case ActionToken::Pull: {
        WorldObject* obj = object_at_agent();
        if (!obj) throw std::runtime_error("replay: push/pull with no object under agent");
        ++streak;
        int per_cell = is_heavy(obj->size) ? 2 : 1;
        if (streak % per_cell == 0) {
          Direction d = t == ActionToken::Push ? s.agent.direction : opposite(s.agent.direction);
          Cell nxt{obj->anchor.row + row_delta(d), obj->anchor.col + col_delta(d)};
          if (!s.world.in_grid(nxt)) throw std::runtime_error("replay: object pushed into wall");
          for (const auto& o : s.world.objects) {
            if (!o.is_box() && o.id != obj->id && o.anchor == nxt) {
              throw std::runtime_error("replay: object pushed into another object");
            }
          }
          obj->anchor = nxt;
          s.agent.cell = nxt;
        }
        break;
      }
    }
  }
  return s;
}

}  // namespace reascan
