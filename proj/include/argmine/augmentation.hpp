#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "argmine/graph.hpp"

namespace argmine {

struct AugmentationPlan {
  int target_per_class = 0;
  std::map<Stance, int> deficits;
};

// deficits[c] = max(0, T - counts[c]). Throws TARGET_TOO_SMALL when
// T < max(counts).
AugmentationPlan plan_balance(const std::map<Stance, int>& counts, int target);

struct GeneratorSpec {
  std::string name;          // replay | template | http
  std::string endpoint;      // replay: fixture path; http: URL
  std::string prompt_template;  // carries {stance} and {topic} slots
  std::map<std::string, std::string> decoding;
};

enum class RejectionReason { empty, too_short, too_long, duplicate,
                             wrong_language };
const char* to_string(RejectionReason r);

struct SyntheticAdu {
  std::string text;
  Stance stance = Stance::con;
  std::string generator_name;
  bool accepted = false;
  std::optional<RejectionReason> rejection_reason;
};

struct GenerationBatch {
  std::vector<SyntheticAdu> candidates;
  std::vector<std::string> warnings;  // GENERATION_SHORTFALL records
};

class Generator {
 public:
  virtual ~Generator() = default;
  virtual GenerationBatch generate(Stance stance, int n,
                                   const std::vector<std::string>& topic_hints)
      = 0;
  virtual const std::string& name() const = 0;
};

// replay: reads candidates verbatim from a {text, stance} JSONL fixture.
// template: deterministic local filler, usable without any fixture.
// http: POST {prompt, n, decoding} -> {texts: [...]}; bearer token from
// ARGMINE_GENERATOR_TOKEN.
std::unique_ptr<Generator> make_generator(const GeneratorSpec& spec);

struct FilterOptions {
  Language expected_language = Language::en;
  int min_tokens = 3;
  int max_tokens = 128;
  double min_script_fraction = 0.5;
};

struct FilterResult {
  std::vector<SyntheticAdu> accepted;
  std::vector<SyntheticAdu> rejected;
};

// Rule-based stand-in for the manual spot-check: rejects empty texts, texts
// outside [min_tokens, max_tokens] whitespace tokens, exact duplicates after
// case-fold and whitespace-collapse (against the corpus and anything already
// accepted), and script mismatches.
FilterResult filter_malformed(const std::vector<SyntheticAdu>& candidates,
                              const std::set<std::string>& existing_normalized,
                              const FilterOptions& options = {});

struct AugmentOptions {
  FilterOptions filter;
  int batch_size = 64;
  int max_rounds = 50;
};

struct AugmentationRun {
  AugmentationPlan plan;
  std::vector<SyntheticAdu> accepted;
  std::vector<SyntheticAdu> rejected;
  std::vector<std::string> warnings;
  int generator_calls = 0;
};

// Generates, filters and retries per class until the plan's deficits are met.
// Throws SHORTFALL with the achieved counts when the generator cannot keep
// up within the retry budget.
AugmentationRun run_augmentation(const std::map<Stance, int>& counts,
                                 Generator& generator, int target,
                                 const std::set<std::string>& existing_normalized,
                                 const std::vector<std::string>& topic_hints = {},
                                 const AugmentOptions& options = {});

// Review export of rejected candidates (text, stance, reason) for the
// optional human pass.
void write_review_csv(const std::vector<SyntheticAdu>& rejected,
                      const std::filesystem::path& path);

void write_synth_jsonl(const std::vector<SyntheticAdu>& accepted,
                       const std::filesystem::path& path);
std::vector<SyntheticAdu> load_synth_jsonl(const std::filesystem::path& path);

}  // namespace argmine
