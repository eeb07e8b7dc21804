#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "argmine/augmentation.hpp"
#include "argmine/dataset.hpp"
#include "argmine/model.hpp"

namespace argmine {

// One declarative config file drives every command; CLI flags override
// individual keys before parsing. All subsystem seeds derive from the single
// top-level seed.
struct RunConfig {
  std::string run_id;
  std::string en_dir;
  std::string fa_dir;  // optional
  std::string pe_dir;  // optional
  Scenario scenario = Scenario::zero_shot;
  SplitRatios ratios;
  bool allow_empty_splits = false;
  std::uint64_t seed = 13;
  int target_per_class = 665;
  bool has_generator = false;
  GeneratorSpec generator;
  ModelConfig model;
  TrainConfig train;
  std::string output_dir = "out";

  nlohmann::json raw;         // merged document, source of the digest
  std::string config_digest;  // sha256 of the canonical dump

  std::filesystem::path run_dir() const;
};

nlohmann::json parse_config_json(const std::filesystem::path& file);

// "a.b.c=value" overrides applied onto the config document.
void apply_override(nlohmann::json& doc, const std::string& assignment);

RunConfig run_config_from_json(const nlohmann::json& doc);

// Stage runner with an idempotence manifest under <run_dir>/manifest.json:
// a stage re-runs only when forced, when its recorded config digest differs,
// or when one of its outputs is missing.
class Pipeline {
 public:
  Pipeline(const RunConfig& cfg, bool force, std::ostream& log);

  void run_all();
  void run_augment();
  void run_build();
  void run_train();
  void run_eval();
  void run_report();

 private:
  bool stage_done(const std::string& stage,
                  const std::vector<std::filesystem::path>& outputs) const;
  void mark_stage(const std::string& stage,
                  const std::vector<std::filesystem::path>& outputs);
  void load_corpora();
  DatasetBundle assemble();

  RunConfig cfg_;
  bool force_;
  std::ostream& log_;
  nlohmann::json manifest_;
  Corpus en_;
  Corpus fa_;
  bool corpora_loaded_ = false;
  bool has_fa_ = false;
};

// Shared helpers for the CLI.
std::string scenario_display_name(const RunConfig& cfg);

}  // namespace argmine
