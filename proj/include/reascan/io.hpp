#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "reascan/distractors.hpp"

namespace reascan {

inline constexpr int kFormatVersion = 1;

// One JSON-lines record; field order is stable across runs and versions.
nlohmann::ordered_json example_to_json(const Example& ex);
Example example_from_json(const nlohmann::json& j);

// Writes one record per line plus a manifest with per-split/per-pattern
// counts and the generation seed. I/O failures carry the path.
nlohmann::ordered_json write_dataset(const std::vector<Example>& examples,
                                     const std::string& path, std::uint64_t seed);

std::vector<Example> read_dataset(const std::string& path);

// Full re-validation from the record alone: world invariants, referent
// uniqueness, and gold actions consistent with the oracle. Returns a
// diagnostic for the first failure.
std::optional<std::string> revalidate(const Example& ex);

// Prediction files: JSON-lines of {"id": ..., "actions": [...]}.
std::map<std::string, ActionSequence> read_predictions(const std::string& path);
void write_predictions(const std::map<std::string, ActionSequence>& preds,
                       const std::string& path);

}  // namespace reascan
