#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "argmine/corpus.hpp"
#include "argmine/graph.hpp"

namespace argmine {

struct StanceExample {
  std::string doc_id;
  std::string adu_id;
  std::string text;
  Stance label = Stance::pro;
  Language language = Language::en;
};

struct RelationExample {
  std::string doc_id;
  std::string edge_id;
  std::string text_a;  // source ADU text
  std::string text_b;  // target ADU text (undercut: attacked edge's source)
  RelationType label = RelationType::support;
  Language language = Language::en;
};

// One example per ADU; text recovered through the segment edges.
std::vector<StanceExample> extract_stance_examples(const ArgumentGraph& g);

// One example per non-segment edge. Undercuts pair the undercutting ADU with
// the attacked edge's source ADU.
std::vector<RelationExample> extract_relation_examples(const ArgumentGraph& g);

enum class SplitName { train, val, test };
const char* to_string(SplitName s);

struct SplitRatios {
  double train = 0.7;
  double val = 0.1;
  double test = 0.2;
};

struct SplitAssignment {
  std::map<std::string, SplitName> by_doc;
  std::uint64_t seed = 0;

  std::vector<std::string> docs(SplitName which) const;
};

// Document-level seeded split. Sizes are floor(ratio * n) for train and val;
// test takes the remainder. Deterministic for fixed (ids, ratios, seed).
// Throws EMPTY_SPLIT when a split ends up empty, unless allow_empty.
SplitAssignment make_splits(const std::vector<std::string>& ids,
                            const SplitRatios& ratios, std::uint64_t seed,
                            bool allow_empty = false);

enum class Scenario { zero_shot, llm_aug, cross_lingual };
Scenario scenario_from_string(const std::string& s);
const char* to_string(Scenario s);

struct ScenarioConfig {
  Scenario scenario = Scenario::zero_shot;
  SplitRatios ratios;
  std::uint64_t seed = 13;
  bool allow_empty_splits = false;
  std::string config_digest;  // echo of the run config, if any
};

struct BundleManifest {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::string content_digest;  // sha256 over the canonical JSONL serialization
  std::map<std::string, long long> counts;
};

struct DatasetBundle {
  Scenario scenario = Scenario::zero_shot;
  std::vector<StanceExample> stance_train, stance_val, stance_test;
  std::vector<RelationExample> relation_train, relation_val, relation_test;
  SplitAssignment splits;
  BundleManifest manifest;
};

// Assembles one of the three training scenarios. FA documents share the EN
// split assignment by doc_id, so the parallel version of a test document can
// never leak into training. Test splits always carry both languages when fa
// is provided. zero_shot: EN train only. llm_aug: EN train plus synthetic
// stance examples (stance task only). cross_lingual: EN+FA train.
// Throws MISSING_SYNTH / UNPAIRED_FA.
DatasetBundle assemble_scenario(const ScenarioConfig& cfg, const Corpus& en,
                                const Corpus* fa,
                                const std::vector<StanceExample>& synth = {});

// Canonical serialization used both for persistence and for the manifest
// digest: six sections of sorted-key JSONL.
std::string bundle_canonical_jsonl(const DatasetBundle& b);

void write_bundle(const DatasetBundle& b, const std::filesystem::path& dir);
DatasetBundle load_bundle(const std::filesystem::path& dir);

std::map<Stance, int> stance_histogram(const std::vector<StanceExample>& xs);

}  // namespace argmine
