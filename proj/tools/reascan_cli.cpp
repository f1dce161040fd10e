#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "reascan/harness.hpp"
#include "reascan/io.hpp"
#include "reascan/splits.hpp"

using namespace reascan;
using nlohmann::ordered_json;

namespace {

std::vector<Pattern> patterns_from_flag(const std::string& flag) {
  if (flag == "simple") return {Pattern::Simple};
  if (flag == "1rel") return {Pattern::OneRel};
  if (flag == "2rel") return {Pattern::TwoRel};
  if (flag == "c1" || flag == "3rel") return {Pattern::ThreeRel};
  if (flag == "c2" || flag == "nested") return {Pattern::NestedRel};
  if (flag == "all") return {Pattern::Simple, Pattern::OneRel, Pattern::TwoRel};
  throw CLI::ValidationError("--pattern", "unknown pattern '" + flag + "'");
}

void write_with_manifest(const std::vector<Example>& examples, const std::string& out,
                         std::uint64_t seed) {
  ordered_json manifest = write_dataset(examples, out, seed);
  std::ofstream ms(out + ".manifest.json");
  if (!ms) throw std::runtime_error("cannot open for writing: " + out + ".manifest.json");
  ms << manifest.dump(2) << '\n';
  std::cout << "wrote " << examples.size() << " examples to " << out << "\n";
}

int cmd_generate(const std::string& pattern, int commands, int worlds, std::uint64_t seed,
                 const std::string& distractors, const std::string& out) {
  GeneratorConfig cfg;
  cfg.n_commands = commands;
  cfg.worlds_per_command = worlds;
  cfg.seed = seed;
  cfg.random_distractors_only = distractors == "random-only";
  cfg.patterns = patterns_from_flag(pattern);
  DatasetResult r = generate_dataset(cfg);
  if (r.failures > 0) {
    std::cerr << "note: " << r.failures << " command-world draws exhausted retries\n";
  }
  write_with_manifest(r.examples, out, seed);
  return 0;
}

void tag(std::vector<Example>& corpus, const std::vector<std::size_t>& idx, const char* name) {
  for (std::size_t i : idx) corpus[i].split_tag = name;
}

int cmd_split(const std::string& in, const std::string& kind_flag,
              const std::vector<double>& ratios, std::uint64_t seed, int worlds,
              const std::string& out) {
  auto kind = split_kind_from_string(kind_flag);
  if (!kind) throw CLI::ValidationError("--kind", "unknown split kind '" + kind_flag + "'");

  std::vector<Example> corpus;
  SplitResult split;
  switch (*kind) {
    case SplitKind::C1:
    case SplitKind::C2: {
      GeneratorConfig cfg;
      cfg.seed = seed;
      cfg.worlds_per_command = worlds;
      DatasetResult r = *kind == SplitKind::C1 ? split_c1(cfg) : split_c2(cfg);
      corpus = std::move(r.examples);
      for (std::size_t i = 0; i < corpus.size(); ++i) split.test.push_back(i);
      break;
    }
    case SplitKind::RDAblation:
      throw CLI::ValidationError("--kind",
                                 "rd is a generation mode; use generate --distractors random-only");
    default: {
      corpus = read_dataset(in);
      switch (*kind) {
        case SplitKind::Random: {
          SplitRatios r;
          if (!ratios.empty()) {
            if (ratios.size() != 3) throw CLI::ValidationError("--ratios", "need three values");
            r = {ratios[0], ratios[1], ratios[2]};
          }
          split = split_random(corpus, r, seed);
          break;
        }
        case SplitKind::A1: split = split_a1(corpus); break;
        case SplitKind::A2: {
          GeneratorConfig cfg;
          cfg.seed = seed;
          split = split_a2(corpus, cfg);
          break;
        }
        case SplitKind::A3: split = split_a3(corpus); break;
        case SplitKind::B1: split = split_b1(corpus, seed); break;
        case SplitKind::B2: split = split_b2(corpus); break;
        default: throw std::logic_error("unreachable");
      }
    }
  }

  tag(corpus, split.train, "train");
  tag(corpus, split.dev, "dev");
  tag(corpus, split.test, "test");

  std::vector<Example> kept;
  for (const auto& idx : {split.train, split.dev, split.test}) {
    for (std::size_t i : idx) kept.push_back(corpus[i]);
  }
  write_with_manifest(kept, out, seed);

  ordered_json ids;
  ids["kind"] = to_string(*kind);
  for (const char* name : {"train", "dev", "test"}) {
    const auto& idx = std::string(name) == "train" ? split.train
                      : std::string(name) == "dev" ? split.dev
                                                   : split.test;
    std::vector<std::string> list;
    for (std::size_t i : idx) list.push_back(corpus[i].id);
    ids[name] = list;
  }
  std::ofstream ss(out + ".split.json");
  if (!ss) throw std::runtime_error("cannot open for writing: " + out + ".split.json");
  ss << ids.dump(2) << '\n';
  return 0;
}

ordered_json stats_to_json(const CorpusStats& s) {
  ordered_json j;
  j["examples"] = s.examples;
  j["objects"] = s.objects;
  j["verbs"] = s.verb_freq;
  j["adverbs"] = s.adverb_freq;
  j["object_colors"] = s.color_freq;
  j["object_shapes"] = s.shape_freq;
  ordered_json sizes;
  for (const auto& [k, v] : s.size_freq) sizes[std::to_string(k)] = v;
  j["object_sizes"] = sizes;
  j["relations"] = s.relation_freq;
  j["distractor_presence"] = s.distractor_presence;
  j["target_quadrants"] = s.quadrant_hist;
  ordered_json hist;
  for (const auto& [k, v] : s.length_hist) hist[std::to_string(k)] = v;
  j["action_length_hist"] = hist;
  return j;
}

int cmd_stats(const std::string& in, const std::string& json_out) {
  CorpusStats s = compute_stats(read_dataset(in));
  std::cout << to_text(s);
  if (!json_out.empty()) {
    std::ofstream os(json_out);
    if (!os) throw std::runtime_error("cannot open for writing: " + json_out);
    os << stats_to_json(s).dump(2) << '\n';
  }
  return 0;
}

int cmd_evaluate(const std::string& gold_path, const std::string& pred_path) {
  std::vector<Example> gold = read_dataset(gold_path);
  EvalReport r = evaluate(gold, read_predictions(pred_path));
  std::cout.precision(2);
  std::cout << std::fixed << "exact match: " << r.exact_match_percent << "% (" << r.matched << "/"
            << r.count << ")\n";
  for (const auto& [pattern, mc] : r.per_pattern) {
    double pct = mc.second ? 100.0 * static_cast<double>(mc.first) / mc.second : 0.0;
    std::cout << "  " << pattern << ": " << pct << "% (" << mc.first << "/" << mc.second << ")\n";
  }
  return 0;
}

int cmd_solve(const std::string& in, const std::string& out) {
  std::map<std::string, ActionSequence> preds;
  for (const Example& ex : read_dataset(in)) {
    preds[ex.id] = plan(ex.command, ex.world);
  }
  write_predictions(preds, out);
  std::cout << "solved " << preds.size() << " examples to " << out << "\n";
  return 0;
}

int cmd_validate(const std::string& in) {
  std::vector<Example> corpus = read_dataset(in);
  long long bad = 0;
  for (const auto& ex : corpus) {
    if (auto err = revalidate(ex)) {
      std::cerr << ex.id << ": " << *err << "\n";
      ++bad;
    }
  }
  if (bad) {
    std::cerr << bad << " of " << corpus.size() << " records failed validation\n";
    return 1;
  }
  std::cout << "ok: " << corpus.size() << " records validated\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grounded-navigation benchmark generator, oracle, and evaluator"};
  app.require_subcommand(1);

  std::string pattern = "all", distractors = "full", out = "dataset.jsonl";
  int commands = 0;  // 0 = per-pattern default census
  int worlds = 180;
  std::uint64_t seed = 0;

  auto* gen = app.add_subcommand("generate", "generate a dataset");
  gen->add_option("--pattern", pattern, "simple|1rel|2rel|all|c1|c2");
  gen->add_option("--commands", commands, "commands per pattern (0 = default)");
  gen->add_option("--worlds", worlds, "worlds per command");
  gen->add_option("--seed", seed, "master seed");
  gen->add_option("--distractors", distractors, "full|random-only")
      ->check(CLI::IsMember({"full", "random-only"}));
  gen->add_option("--out", out, "output JSON-lines path");

  std::string in, kind = "random";
  std::vector<double> ratios;
  auto* sp = app.add_subcommand("split", "partition or synthesize a split");
  sp->add_option("--in", in, "input dataset (ignored for c1/c2)");
  sp->add_option("--kind", kind, "random|a1|a2|a3|b1|b2|c1|c2");
  sp->add_option("--ratios", ratios, "train dev test fractions (random kind)")->expected(3);
  sp->add_option("--seed", seed, "split/generation seed");
  sp->add_option("--worlds", worlds, "worlds per command (c1/c2)");
  sp->add_option("--out", out, "output JSON-lines path");

  std::string json_out;
  auto* st = app.add_subcommand("stats", "corpus statistics report");
  st->add_option("--in", in, "input dataset")->required();
  st->add_option("--json", json_out, "also write a JSON report here");

  std::string gold_path, pred_path;
  auto* ev = app.add_subcommand("evaluate", "exact-match evaluation");
  ev->add_option("--gold", gold_path, "gold dataset")->required();
  ev->add_option("--pred", pred_path, "predictions JSON-lines")->required();

  auto* so = app.add_subcommand("solve", "emit oracle actions for command+world records");
  so->add_option("--in", in, "input dataset")->required();
  so->add_option("--out", out, "predictions output path");

  auto* va = app.add_subcommand("validate", "re-validate every record");
  va->add_option("--in", in, "input dataset")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(pattern, commands, worlds, seed, distractors, out);
    if (sp->parsed()) return cmd_split(in, kind, ratios, seed, worlds, out);
    if (st->parsed()) return cmd_stats(in, json_out);
    if (ev->parsed()) return cmd_evaluate(gold_path, pred_path);
    if (so->parsed()) return cmd_solve(in, out);
    if (va->parsed()) return cmd_validate(in);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
