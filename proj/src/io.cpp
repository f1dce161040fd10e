#include "reascan/io.hpp"

#include <fstream>

#include "reascan/planner.hpp"

namespace reascan {

using nlohmann::json;
using nlohmann::ordered_json;

nlohmann::ordered_json example_to_json(const Example& ex) {
  ordered_json j;
  j["format_version"] = kFormatVersion;
  j["id"] = ex.id;
  j["pattern"] = to_string(ex.command.pattern);
  j["command"] = render(ex.command);
  j["grid_size"] = ex.world.grid_size;
  j["agent"] = ordered_json{{"row", ex.world.agent.cell.row},
                            {"col", ex.world.agent.cell.col},
                            {"direction", to_string(ex.world.agent.direction)}};
  ordered_json objs = ordered_json::array();
  for (const auto& o : ex.world.objects) {
    objs.push_back(ordered_json{{"id", o.id},
                                {"shape", to_string(o.shape)},
                                {"color", to_string(o.color)},
                                {"size", o.size},
                                {"row", o.anchor.row},
                                {"col", o.anchor.col},
                                {"is_box", o.is_box()}});
  }
  j["objects"] = std::move(objs);
  const WorldObject& t = ex.world.at(ex.world.target_id);
  j["target"] = ordered_json{{"id", t.id}, {"row", t.anchor.row}, {"col", t.anchor.col}};
  std::vector<std::string> actions;
  for (ActionToken tok : ex.actions.tokens) actions.emplace_back(to_string(tok));
  j["actions"] = actions;
  ordered_json dis = ordered_json::array();
  for (const auto& a : ex.annotations) {
    dis.push_back(
        ordered_json{{"id", a.object_id}, {"kind", to_string(a.kind)}, {"note", a.note}});
  }
  j["distractors"] = std::move(dis);
  j["split"] = ex.split_tag;
  return j;
}

namespace {

[[noreturn]] void bad_record(const std::string& what) {
  throw std::runtime_error("bad record: " + what);
}

}  // namespace

Example example_from_json(const json& j) {
  Example ex;
  ex.id = j.at("id").get<std::string>();
  ex.command = parse(j.at("command").get<std::vector<std::string>>());
  auto pattern = pattern_from_string(j.at("pattern").get<std::string>());
  if (!pattern || *pattern != ex.command.pattern) bad_record("pattern tag mismatch");

  ex.world.grid_size = j.at("grid_size").get<int>();
  const json& agent = j.at("agent");
  ex.world.agent.cell = {agent.at("row").get<int>(), agent.at("col").get<int>()};
  auto dir = direction_from_string(agent.at("direction").get<std::string>());
  if (!dir) bad_record("unknown direction");
  ex.world.agent.direction = *dir;

  for (const json& o : j.at("objects")) {
    WorldObject obj;
    obj.id = o.at("id").get<int>();
    auto shape = shape_from_string(o.at("shape").get<std::string>());
    auto color = color_from_string(o.at("color").get<std::string>());
    if (!shape || !color) bad_record("unknown shape or color");
    if (o.at("is_box").get<bool>() != (*shape == Shape::Box)) bad_record("is_box inconsistent");
    obj.shape = *shape;
    obj.color = *color;
    obj.size = o.at("size").get<int>();
    obj.anchor = {o.at("row").get<int>(), o.at("col").get<int>()};
    ex.world.objects.push_back(obj);
  }

  const json& t = j.at("target");
  ex.world.target_id = t.at("id").get<int>();
  const WorldObject* target = ex.world.find(ex.world.target_id);
  if (!target) bad_record("target id not among objects");
  if (target->anchor.row != t.at("row").get<int>() || target->anchor.col != t.at("col").get<int>()) {
    bad_record("target position mismatch");
  }

  // actions/distractors/split are optional so the solver can accept bare
  // command+world records.
  if (j.contains("actions")) {
    for (const std::string& s : j.at("actions").get<std::vector<std::string>>()) {
      auto tok = action_token_from_string(s);
      if (!tok) bad_record("unknown action token '" + s + "'");
      ex.actions.tokens.push_back(*tok);
    }
  }
  if (j.contains("distractors")) {
    for (const json& d : j.at("distractors")) {
      auto kind = distractor_kind_from_string(d.at("kind").get<std::string>());
      if (!kind) bad_record("unknown distractor kind");
      ex.annotations.push_back(
          {d.at("id").get<int>(), *kind, d.at("note").get<std::string>()});
    }
  }
  if (j.contains("split")) ex.split_tag = j.at("split").get<std::string>();
  return ex;
}

nlohmann::ordered_json write_dataset(const std::vector<Example>& examples,
                                     const std::string& path, std::uint64_t seed) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  std::map<std::string, long long> per_split, per_pattern;
  for (const auto& ex : examples) {
    os << example_to_json(ex).dump() << '\n';
    ++per_split[ex.split_tag.empty() ? "-" : ex.split_tag];
    ++per_pattern[std::string(to_string(ex.command.pattern))];
  }
  if (!os) throw std::runtime_error("write failed: " + path);

  ordered_json manifest;
  manifest["format_version"] = kFormatVersion;
  manifest["seed"] = seed;
  manifest["total"] = examples.size();
  manifest["per_split"] = per_split;
  manifest["per_pattern"] = per_pattern;
  return manifest;
}

std::vector<Example> read_dataset(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<Example> out;
  std::string line;
  long long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(example_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::optional<std::string> revalidate(const Example& ex) {
  if (auto err = validate(ex.world)) return err;
  if (!uniquely_refers(ex.command, ex.world)) return "referent not unique";
  ActionSequence oracle = plan(ex.command, ex.world);
  if (!(oracle == ex.actions)) return "gold actions disagree with the oracle";
  try {
    SimResult end = replay(ex.world, ex.actions);
    if (ex.command.verb == Verb::WalkTo &&
        !(end.agent.cell == ex.world.at(ex.world.target_id).anchor)) {
      return "walk does not end on the target";
    }
  } catch (const std::exception& e) {
    return std::string("gold actions not executable: ") + e.what();
  }
  return std::nullopt;
}

std::map<std::string, ActionSequence> read_predictions(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::map<std::string, ActionSequence> out;
  std::string line;
  long long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      ActionSequence seq;
      for (const std::string& s : j.at("actions").get<std::vector<std::string>>()) {
        auto tok = action_token_from_string(s);
        if (!tok) bad_record("unknown action token '" + s + "'");
        seq.tokens.push_back(*tok);
      }
      out[j.at("id").get<std::string>()] = std::move(seq);
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_predictions(const std::map<std::string, ActionSequence>& preds,
                       const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& [id, seq] : preds) {
    ordered_json j;
    j["id"] = id;
    std::vector<std::string> actions;
    for (ActionToken tok : seq.tokens) actions.emplace_back(to_string(tok));
    j["actions"] = actions;
    os << j.dump() << '\n';
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace reascan
