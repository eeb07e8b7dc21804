#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "argmine/dataset.hpp"
#include "argmine/metrics.hpp"

namespace argmine {

struct ModelConfig {
  std::string encoder_id = "tiny";
  int n_stance_classes = 2;
  int n_relation_classes = 4;
  int max_length = 128;
};

// Transformer encoder geometry. encoder_id resolves to a registry profile
// (tiny/mini/base), a JSON shape file, or a checkpoint directory.
struct EncoderShape {
  int layers = 2;
  int hidden = 32;
  int heads = 2;
  int ffn = 64;
  int vocab = 512;
  int max_positions = 160;
};

// Throws ENCODER_NOT_FOUND for unresolvable ids, SHAPE_MISMATCH for
// inconsistent geometry.
EncoderShape resolve_encoder(const std::string& encoder_id);

// Whitespace tokenizer with hashed vocabulary buckets; language-neutral and
// fully deterministic. Sequences are [CLS] tokens [SEP]; pairs are
// [CLS] a [SEP] b [SEP], clipped to max_length (source side trimmed last).
class HashTokenizer {
 public:
  static constexpr int kPad = 0;
  static constexpr int kCls = 1;
  static constexpr int kSep = 2;

  HashTokenizer(int vocab, int max_length);

  struct Encoded {
    std::vector<int> ids;
    bool truncated = false;
  };

  // Throws TOKENIZE_ERROR when the input has no tokens.
  Encoded encode(const std::string& text) const;
  Encoded encode_pair(const std::string& text_a, const std::string& text_b) const;

  int vocab() const { return vocab_; }
  int max_length() const { return max_length_; }

 private:
  int token_id(const std::string& token) const;
  int vocab_;
  int max_length_;
};

struct Prediction {
  std::string label;
  std::vector<double> probabilities;
};

struct TrainConfig {
  double learning_rate = 5e-6;
  int batch_size = 16;
  int max_epochs = 100;
  int patience = 3;
  std::uint64_t seed = 42;
  double weight_decay = 0.01;
};

struct EpochStats {
  int epoch = 0;
  double train_loss = 0;
  double eval_loss = 0;
  double stance_val_loss = 0;
  double relation_val_loss = 0;
  double stance_val_accuracy = 0;
  double relation_val_accuracy = 0;
};

std::vector<std::string> stance_class_names();
std::vector<std::string> relation_class_names(int n);

// Shared transformer encoder with two independent linear heads over the
// [CLS] embedding. Value semantics; copies are deep.
class TwoHeadClassifier {
 public:
  TwoHeadClassifier(const ModelConfig& cfg, std::uint64_t seed);
  TwoHeadClassifier(const TwoHeadClassifier&);
  TwoHeadClassifier& operator=(const TwoHeadClassifier&);
  TwoHeadClassifier(TwoHeadClassifier&&) noexcept;
  TwoHeadClassifier& operator=(TwoHeadClassifier&&) noexcept;
  ~TwoHeadClassifier();

  const ModelConfig& config() const;
  const EncoderShape& shape() const;
  const std::vector<std::string>& build_warnings() const;

  Prediction predict_stance(const std::string& text) const;
  Prediction predict_relation(const std::string& text_a,
                              const std::string& text_b) const;
  std::vector<Prediction> predict_stance_batch(
      const std::vector<std::string>& texts) const;
  std::vector<Prediction> predict_relation_batch(
      const std::vector<std::pair<std::string, std::string>>& pairs) const;

  void save(const std::filesystem::path& dir) const;
  static TwoHeadClassifier load(const std::filesystem::path& dir,
                                const std::optional<ModelConfig>& expected = {});

  struct Impl;
  Impl& impl() { return *impl_; }
  const Impl& impl() const { return *impl_; }

 private:
  explicit TwoHeadClassifier(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

struct TrainedModel {
  TwoHeadClassifier model;  // best checkpoint restored
  std::vector<EpochStats> history;
  int best_epoch = 0;
  std::map<std::string, long> truncation_counts;
};

// Joint training: alternating stance/relation mini-batches in proportion to
// dataset sizes, AdamW, per-epoch validation, early stop on eval_loss (the
// size-weighted mean of per-task validation losses), best checkpoint kept.
// Throws EMPTY_TRAIN / DIVERGENCE.
TrainedModel train(const TwoHeadClassifier& model, const DatasetBundle& bundle,
                   const TrainConfig& tcfg);

void save_trained(const TrainedModel& trained, const std::filesystem::path& dir);
std::vector<EpochStats> load_history(const std::filesystem::path& dir);

enum class Task { stance, relation };

// Runs predictions over one split of the bundle (optionally filtered by
// language) and reports per-class + macro metrics. Throws EMPTY_SPLIT.
MetricsReport evaluate_model(const TwoHeadClassifier& model,
                             const DatasetBundle& bundle, SplitName split,
                             Task task,
                             std::optional<Language> language = std::nullopt);

}  // namespace argmine
