#include "argmine/model.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "argmine/digest.hpp"
#include "argmine/error.hpp"
#include "argmine/text.hpp"
#include "model_impl.hpp"

namespace argmine {

using nlohmann::json;
using nn::Matrix;

EncoderShape resolve_encoder(const std::string& encoder_id) {
  namespace fs = std::filesystem;
  EncoderShape s;
  if (encoder_id == "tiny") {
    s = {2, 32, 2, 64, 512, 160};
  } else if (encoder_id == "mini") {
    s = {4, 128, 4, 512, 8192, 256};
  } else if (encoder_id == "base") {
    // XLM-R-base geometry with a hashed vocabulary; weights are randomly
    // initialized unless loaded from a checkpoint.
    s = {12, 768, 12, 3072, 32000, 514};
  } else {
    fs::path p(encoder_id);
    if (fs::is_directory(p)) p /= "config.json";
    std::ifstream in(p);
    if (!in)
      throw Error(Errc::encoder_not_found, "'" + encoder_id + "'");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.contains("hidden"))
      throw Error(Errc::encoder_not_found,
                  "'" + encoder_id + "' is not an encoder shape file");
    s.layers = j.value("layers", 2);
    s.hidden = j.at("hidden").get<int>();
    s.heads = j.value("heads", 2);
    s.ffn = j.value("ffn", 4 * s.hidden);
    s.vocab = j.value("vocab", 512);
    s.max_positions = j.value("max_positions", 512);
  }
  if (s.hidden % s.heads != 0)
    throw Error(Errc::shape_mismatch,
                "hidden " + std::to_string(s.hidden) +
                    " not divisible by heads " + std::to_string(s.heads));
  if (s.layers < 0 || s.vocab < 8 || s.max_positions < 4)
    throw Error(Errc::shape_mismatch, "degenerate encoder shape");
  return s;
}

HashTokenizer::HashTokenizer(int vocab, int max_length)
    : vocab_(vocab), max_length_(max_length) {}

int HashTokenizer::token_id(const std::string& token) const {
  const auto buckets = static_cast<std::uint64_t>(vocab_ - 4);
  return static_cast<int>(4 + fnv1a64(token) % buckets);
}

HashTokenizer::Encoded HashTokenizer::encode(const std::string& text) const {
  auto tokens = text::whitespace_tokens(text);
  if (tokens.empty())
    throw Error(Errc::tokenize_error, "input has no tokens");
  Encoded out;
  const auto budget = static_cast<std::size_t>(max_length_ - 2);
  out.truncated = tokens.size() > budget;
  if (out.truncated) tokens.resize(budget);
  out.ids.reserve(tokens.size() + 2);
  out.ids.push_back(kCls);
  for (const auto& t : tokens) out.ids.push_back(token_id(t));
  out.ids.push_back(kSep);
  return out;
}

HashTokenizer::Encoded HashTokenizer::encode_pair(const std::string& text_a,
                                                  const std::string& text_b) const {
  auto a = text::whitespace_tokens(text_a);
  auto b = text::whitespace_tokens(text_b);
  if (a.empty() || b.empty())
    throw Error(Errc::tokenize_error, "pair side has no tokens");
  Encoded out;
  const auto budget = static_cast<std::size_t>(max_length_ - 3);
  out.truncated = a.size() + b.size() > budget;
  while (a.size() + b.size() > budget) {
    // Trim the target side first (D-pair order keeps the source intact).
    if (b.size() > 1 && b.size() >= a.size()) b.pop_back();
    else if (a.size() > 1) a.pop_back();
    else b.pop_back();
  }
  out.ids.reserve(a.size() + b.size() + 3);
  out.ids.push_back(kCls);
  for (const auto& t : a) out.ids.push_back(token_id(t));
  out.ids.push_back(kSep);
  for (const auto& t : b) out.ids.push_back(token_id(t));
  out.ids.push_back(kSep);
  return out;
}

std::vector<std::string> stance_class_names() { return {"pro", "con"}; }

std::vector<std::string> relation_class_names(int n) {
  std::vector<std::string> names{"support", "rebuttal", "undercut", "example"};
  if (n <= static_cast<int>(names.size())) {
    names.resize(static_cast<std::size_t>(n));
    return names;
  }
  for (int i = static_cast<int>(names.size()); i < n; ++i)
    names.push_back("class_" + std::to_string(i));
  return names;
}

namespace {

void shape_param(nn::Param& p, const std::string& name, Eigen::Index rows,
                 Eigen::Index cols, bool decay = true) {
  p.name = name;
  p.value = Matrix::Zero(rows, cols);
  p.decay = decay;
}

Prediction softmax_prediction(const Matrix& logits,
                              const std::vector<std::string>& labels) {
  Eigen::ArrayXd row = logits.row(0).array();
  row -= row.maxCoeff();
  row = row.exp();
  row /= row.sum();
  Prediction pred;
  pred.probabilities.assign(row.data(), row.data() + row.size());
  Eigen::Index best = 0;
  row.maxCoeff(&best);
  pred.label = labels[static_cast<std::size_t>(best)];
  return pred;
}

}  // namespace

Prediction TwoHeadClassifier::Impl::predict(
    const std::vector<int>& ids, const nn::Param& head_w,
    const nn::Param& head_b, const std::vector<std::string>& labels) const {
  Matrix cls = encode_cls(ids, nullptr);
  Matrix logits = cls * head_w.value;
  logits.array().rowwise() += head_b.value.row(0).array();
  return softmax_prediction(logits, labels);
}

TwoHeadClassifier::TwoHeadClassifier(std::unique_ptr<Impl> impl)
    : impl_(std::move(impl)) {}

TwoHeadClassifier::TwoHeadClassifier(const ModelConfig& cfg, std::uint64_t seed)
    : impl_(std::make_unique<Impl>(cfg, resolve_encoder(cfg.encoder_id))) {
  Impl& m = *impl_;
  if (cfg.n_stance_classes < 2 || cfg.n_relation_classes < 2)
    throw Error(Errc::shape_mismatch, "each head needs at least two classes");
  if (cfg.max_length <= 3)
    throw Error(Errc::shape_mismatch, "max_length too small");
  if (cfg.max_length > m.shape.max_positions)
    throw Error(Errc::shape_mismatch,
                "max_length " + std::to_string(cfg.max_length) +
                    " exceeds encoder positions " +
                    std::to_string(m.shape.max_positions));
  if (cfg.n_stance_classes != 2)
    m.warnings.push_back("n_stance_classes=" +
                         std::to_string(cfg.n_stance_classes) +
                         " differs from the default of 2");
  if (cfg.n_relation_classes != 4)
    m.warnings.push_back("n_relation_classes=" +
                         std::to_string(cfg.n_relation_classes) +
                         " differs from the default of 4");

  const auto H = static_cast<Eigen::Index>(m.shape.hidden);
  const auto F = static_cast<Eigen::Index>(m.shape.ffn);
  m.encoder.heads = m.shape.heads;
  shape_param(m.encoder.tok_emb, "tok_emb", m.shape.vocab, H);
  shape_param(m.encoder.pos_emb, "pos_emb", m.shape.max_positions, H);
  shape_param(m.encoder.emb_ln_g, "emb_ln_g", 1, H, false);
  shape_param(m.encoder.emb_ln_b, "emb_ln_b", 1, H, false);
  m.encoder.layers.resize(static_cast<std::size_t>(m.shape.layers));
  for (int l = 0; l < m.shape.layers; ++l) {
    auto& lp = m.encoder.layers[static_cast<std::size_t>(l)];
    const std::string prefix = "layer" + std::to_string(l) + ".";
    shape_param(lp.wq, prefix + "wq", H, H);
    shape_param(lp.bq, prefix + "bq", 1, H, false);
    shape_param(lp.wk, prefix + "wk", H, H);
    shape_param(lp.bk, prefix + "bk", 1, H, false);
    shape_param(lp.wv, prefix + "wv", H, H);
    shape_param(lp.bv, prefix + "bv", 1, H, false);
    shape_param(lp.wo, prefix + "wo", H, H);
    shape_param(lp.bo, prefix + "bo", 1, H, false);
    shape_param(lp.ln1_g, prefix + "ln1_g", 1, H, false);
    shape_param(lp.ln1_b, prefix + "ln1_b", 1, H, false);
    shape_param(lp.w1, prefix + "w1", H, F);
    shape_param(lp.b1, prefix + "b1", 1, F, false);
    shape_param(lp.w2, prefix + "w2", F, H);
    shape_param(lp.b2, prefix + "b2", 1, H, false);
    shape_param(lp.ln2_g, prefix + "ln2_g", 1, H, false);
    shape_param(lp.ln2_b, prefix + "ln2_b", 1, H, false);
  }
  shape_param(m.stance_w, "stance_w", H, cfg.n_stance_classes);
  shape_param(m.stance_b, "stance_b", 1, cfg.n_stance_classes, false);
  shape_param(m.rel_w, "rel_w", H, cfg.n_relation_classes);
  shape_param(m.rel_b, "rel_b", 1, cfg.n_relation_classes, false);

  std::mt19937_64 rng(seed);
  for (nn::Param* p : m.all_params()) {
    if (p->decay) nn::init_normal(*p, rng);  // biases and LN params stay zero
  }
  m.encoder.emb_ln_g.value.setOnes();
  for (auto& lp : m.encoder.layers) {
    lp.ln1_g.value.setOnes();
    lp.ln2_g.value.setOnes();
  }
}

TwoHeadClassifier::TwoHeadClassifier(const TwoHeadClassifier& other)
    : impl_(std::make_unique<Impl>(*other.impl_)) {}

TwoHeadClassifier& TwoHeadClassifier::operator=(const TwoHeadClassifier& other) {
  if (this != &other) impl_ = std::make_unique<Impl>(*other.impl_);
  return *this;
}

TwoHeadClassifier::TwoHeadClassifier(TwoHeadClassifier&&) noexcept = default;
TwoHeadClassifier& TwoHeadClassifier::operator=(TwoHeadClassifier&&) noexcept =
    default;
TwoHeadClassifier::~TwoHeadClassifier() = default;

const ModelConfig& TwoHeadClassifier::config() const { return impl_->cfg; }
const EncoderShape& TwoHeadClassifier::shape() const { return impl_->shape; }
const std::vector<std::string>& TwoHeadClassifier::build_warnings() const {
  return impl_->warnings;
}

Prediction TwoHeadClassifier::predict_stance(const std::string& text) const {
  auto encoded = impl_->tokenizer.encode(text);
  return impl_->predict(encoded.ids, impl_->stance_w, impl_->stance_b,
                        stance_class_names());
}

Prediction TwoHeadClassifier::predict_relation(const std::string& text_a,
                                               const std::string& text_b) const {
  auto encoded = impl_->tokenizer.encode_pair(text_a, text_b);
  return impl_->predict(encoded.ids, impl_->rel_w, impl_->rel_b,
                        relation_class_names(impl_->cfg.n_relation_classes));
}

std::vector<Prediction> TwoHeadClassifier::predict_stance_batch(
    const std::vector<std::string>& texts) const {
  std::vector<Prediction> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(predict_stance(t));
  return out;
}

std::vector<Prediction> TwoHeadClassifier::predict_relation_batch(
    const std::vector<std::pair<std::string, std::string>>& pairs) const {
  std::vector<Prediction> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) out.push_back(predict_relation(a, b));
  return out;
}

namespace {

json config_json(const ModelConfig& cfg, const EncoderShape& shape) {
  return json{{"encoder_id", cfg.encoder_id},
              {"n_stance_classes", cfg.n_stance_classes},
              {"n_relation_classes", cfg.n_relation_classes},
              {"max_length", cfg.max_length},
              {"shape",
               {{"layers", shape.layers},
                {"hidden", shape.hidden},
                {"heads", shape.heads},
                {"ffn", shape.ffn},
                {"vocab", shape.vocab},
                {"max_positions", shape.max_positions}}}};
}

constexpr char kWeightsMagic[4] = {'A', 'M', 'W', 'B'};

void write_u64(std::ostream& os, std::uint64_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t read_u64(std::istream& is) {
  std::uint64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

}  // namespace

void TwoHeadClassifier::save(const std::filesystem::path& dir) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream cfg_out(dir / "config.json", std::ios::binary);
  if (!cfg_out)
    throw Error(Errc::io_error, "cannot write " + (dir / "config.json").string());
  cfg_out << config_json(impl_->cfg, impl_->shape).dump(2) << "\n";

  std::ofstream out(dir / "weights.bin", std::ios::binary);
  if (!out)
    throw Error(Errc::io_error, "cannot write " + (dir / "weights.bin").string());
  out.write(kWeightsMagic, 4);
  auto params = const_cast<Impl&>(*impl_).all_params();
  write_u64(out, params.size());
  for (const nn::Param* p : params) {
    write_u64(out, p->name.size());
    out.write(p->name.data(), static_cast<std::streamsize>(p->name.size()));
    write_u64(out, static_cast<std::uint64_t>(p->value.rows()));
    write_u64(out, static_cast<std::uint64_t>(p->value.cols()));
    out.write(reinterpret_cast<const char*>(p->value.data()),
              static_cast<std::streamsize>(sizeof(double) *
                                           static_cast<std::size_t>(
                                               p->value.size())));
  }
  if (!out) throw Error(Errc::io_error, "short write to weights.bin");
}

TwoHeadClassifier TwoHeadClassifier::load(
    const std::filesystem::path& dir, const std::optional<ModelConfig>& expected) {
  std::ifstream cfg_in(dir / "config.json");
  if (!cfg_in)
    throw Error(Errc::io_error, "missing " + (dir / "config.json").string());
  json j = json::parse(cfg_in);
  ModelConfig cfg;
  cfg.encoder_id = j.at("encoder_id").get<std::string>();
  cfg.n_stance_classes = j.at("n_stance_classes").get<int>();
  cfg.n_relation_classes = j.at("n_relation_classes").get<int>();
  cfg.max_length = j.at("max_length").get<int>();

  if (expected) {
    if (expected->encoder_id != cfg.encoder_id ||
        expected->n_stance_classes != cfg.n_stance_classes ||
        expected->n_relation_classes != cfg.n_relation_classes ||
        expected->max_length != cfg.max_length)
      throw Error(Errc::config_mismatch,
                  "checkpoint config differs from the requested config");
  }

  TwoHeadClassifier model(cfg, /*seed=*/0);

  std::ifstream in(dir / "weights.bin", std::ios::binary);
  if (!in)
    throw Error(Errc::io_error, "missing " + (dir / "weights.bin").string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != std::string(kWeightsMagic, 4))
    throw Error(Errc::config_mismatch, "bad weights file magic");
  const std::uint64_t count = read_u64(in);
  auto params = model.impl_->all_params();
  if (count != params.size())
    throw Error(Errc::config_mismatch,
                "checkpoint has " + std::to_string(count) +
                    " tensors, model expects " + std::to_string(params.size()));
  for (nn::Param* p : params) {
    const std::uint64_t name_len = read_u64(in);
    std::string name(name_len, '\0');
    in.read(name.data(), static_cast<std::streamsize>(name_len));
    const auto rows = static_cast<Eigen::Index>(read_u64(in));
    const auto cols = static_cast<Eigen::Index>(read_u64(in));
    if (!in || name != p->name || rows != p->value.rows() ||
        cols != p->value.cols())
      throw Error(Errc::config_mismatch,
                  "tensor '" + name + "' does not match expected '" + p->name +
                      "' (" + std::to_string(p->value.rows()) + "x" +
                      std::to_string(p->value.cols()) + ")");
    in.read(reinterpret_cast<char*>(p->value.data()),
            static_cast<std::streamsize>(sizeof(double) *
                                         static_cast<std::size_t>(
                                             p->value.size())));
  }
  if (!in) throw Error(Errc::io_error, "short read from weights.bin");
  return model;
}

void save_trained(const TrainedModel& trained, const std::filesystem::path& dir) {
  trained.model.save(dir);
  json j;
  j["best_epoch"] = trained.best_epoch;
  j["truncation_counts"] = trained.truncation_counts;
  json epochs = json::array();
  for (const auto& e : trained.history) {
    epochs.push_back({{"epoch", e.epoch},
                      {"train_loss", e.train_loss},
                      {"eval_loss", e.eval_loss},
                      {"stance_val_loss", e.stance_val_loss},
                      {"relation_val_loss", e.relation_val_loss},
                      {"stance_val_accuracy", e.stance_val_accuracy},
                      {"relation_val_accuracy", e.relation_val_accuracy}});
  }
  j["epochs"] = epochs;
  std::ofstream out(dir / "history.json", std::ios::binary);
  if (!out)
    throw Error(Errc::io_error, "cannot write " + (dir / "history.json").string());
  out << j.dump(2) << "\n";
}

std::vector<EpochStats> load_history(const std::filesystem::path& dir) {
  std::ifstream in(dir / "history.json");
  if (!in)
    throw Error(Errc::io_error, "missing " + (dir / "history.json").string());
  json j = json::parse(in);
  std::vector<EpochStats> out;
  for (const auto& e : j.at("epochs")) {
    EpochStats s;
    s.epoch = e.at("epoch").get<int>();
    s.train_loss = e.at("train_loss").get<double>();
    s.eval_loss = e.at("eval_loss").get<double>();
    s.stance_val_loss = e.value("stance_val_loss", 0.0);
    s.relation_val_loss = e.value("relation_val_loss", 0.0);
    s.stance_val_accuracy = e.value("stance_val_accuracy", 0.0);
    s.relation_val_accuracy = e.value("relation_val_accuracy", 0.0);
    out.push_back(s);
  }
  return out;
}

MetricsReport evaluate_model(const TwoHeadClassifier& model,
                             const DatasetBundle& bundle, SplitName split,
                             Task task, std::optional<Language> language) {
  std::vector<std::string> golds, preds;
  if (task == Task::stance) {
    const auto& xs = split == SplitName::train  ? bundle.stance_train
                     : split == SplitName::val ? bundle.stance_val
                                               : bundle.stance_test;
    for (const auto& x : xs) {
      if (language && x.language != *language) continue;
      golds.push_back(to_string(x.label));
      preds.push_back(model.predict_stance(x.text).label);
    }
    if (golds.empty()) throw Error(Errc::empty_split, "no stance examples");
    return metrics_report(confusion(golds, preds, stance_class_names()));
  }
  const auto& xs = split == SplitName::train  ? bundle.relation_train
                   : split == SplitName::val ? bundle.relation_val
                                             : bundle.relation_test;
  for (const auto& x : xs) {
    if (language && x.language != *language) continue;
    golds.push_back(to_string(x.label));
    preds.push_back(model.predict_relation(x.text_a, x.text_b).label);
  }
  if (golds.empty()) throw Error(Errc::empty_split, "no relation examples");
  return metrics_report(confusion(
      golds, preds, relation_class_names(model.config().n_relation_classes)));
}

}  // namespace argmine
