#include <cmath>
#include <limits>

#include "argmine/digest.hpp"
#include "argmine/error.hpp"
#include "argmine/model.hpp"
#include "model_impl.hpp"

namespace argmine {

namespace {

using nn::Matrix;

struct Encoded {
  std::vector<int> ids;
  int label = 0;
};

int stance_label_index(Stance s) { return s == Stance::pro ? 0 : 1; }

int relation_label_index(RelationType r) {
  switch (r) {
    case RelationType::support: return 0;
    case RelationType::rebuttal: return 1;
    case RelationType::undercut: return 2;
    case RelationType::example: return 3;
    default: return 0;
  }
}

std::pair<std::vector<Encoded>, long> encode_stance(
    const HashTokenizer& tok, const std::vector<StanceExample>& xs) {
  std::vector<Encoded> out;
  long truncated = 0;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    auto enc = tok.encode(x.text);
    truncated += enc.truncated ? 1 : 0;
    out.push_back({std::move(enc.ids), stance_label_index(x.label)});
  }
  return {std::move(out), truncated};
}

std::pair<std::vector<Encoded>, long> encode_relation(
    const HashTokenizer& tok, const std::vector<RelationExample>& xs) {
  std::vector<Encoded> out;
  long truncated = 0;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    auto enc = tok.encode_pair(x.text_a, x.text_b);
    truncated += enc.truncated ? 1 : 0;
    out.push_back({std::move(enc.ids), relation_label_index(x.label)});
  }
  return {std::move(out), truncated};
}

// Cross-entropy over one example; fills head and encoder grads when
// training. Returns the loss.
double example_loss(TwoHeadClassifier::Impl& m, const Encoded& ex,
                    nn::Param& head_w, nn::Param& head_b, bool backward,
                    double grad_scale) {
  nn::ForwardCache cache;
  Matrix final = nn::encoder_forward(m.encoder, ex.ids, backward ? &cache : nullptr);
  Matrix cls = final.row(0);
  Matrix logits = cls * head_w.value;
  logits.array().rowwise() += head_b.value.row(0).array();

  Eigen::ArrayXd row = logits.row(0).array();
  row -= row.maxCoeff();
  Eigen::ArrayXd expd = row.exp();
  const double denom = expd.sum();
  const double log_prob = row(ex.label) - std::log(denom);
  const double loss = -log_prob;
  if (!backward) return loss;

  Eigen::ArrayXd probs = expd / denom;
  Matrix dlogits(1, logits.cols());
  dlogits.row(0) = probs.matrix().transpose();
  dlogits(0, ex.label) -= 1.0;
  dlogits *= grad_scale;

  head_w.ensure_state();
  head_b.ensure_state();
  head_w.grad += cls.transpose() * dlogits;
  head_b.grad += dlogits;
  Matrix dcls = dlogits * head_w.value.transpose();
  Matrix dfinal = Matrix::Zero(final.rows(), final.cols());
  dfinal.row(0) = dcls;
  nn::encoder_backward(m.encoder, cache, dfinal);
  return loss;
}

double mean_eval_loss(TwoHeadClassifier::Impl& m,
                      const std::vector<Encoded>& xs, nn::Param& head_w,
                      nn::Param& head_b, double* accuracy) {
  if (xs.empty()) {
    if (accuracy) *accuracy = 0;
    return 0;
  }
  double total = 0;
  long correct = 0;
  for (const auto& ex : xs) {
    Matrix cls = m.encode_cls(ex.ids, nullptr);
    Matrix logits = cls * head_w.value;
    logits.array().rowwise() += head_b.value.row(0).array();
    Eigen::ArrayXd row = logits.row(0).array();
    row -= row.maxCoeff();
    total += std::log(row.exp().sum()) - row(ex.label);
    Eigen::Index best = 0;
    logits.row(0).maxCoeff(&best);
    if (static_cast<int>(best) == ex.label) ++correct;
  }
  if (accuracy)
    *accuracy = static_cast<double>(correct) / static_cast<double>(xs.size());
  return total / static_cast<double>(xs.size());
}

void fisher_yates(std::vector<std::size_t>& idx, std::mt19937_64& rng) {
  for (std::size_t i = idx.size(); i > 1; --i)
    std::swap(idx[i - 1], idx[rng() % i]);
}

// Size-proportional interleaving of stance/relation batches: at every step
// the task lagging most behind its quota goes next.
std::vector<Task> batch_schedule(std::size_t stance_batches,
                                 std::size_t relation_batches) {
  std::vector<Task> schedule;
  schedule.reserve(stance_batches + relation_batches);
  std::size_t s = 0, r = 0;
  while (s < stance_batches || r < relation_batches) {
    if (r >= relation_batches) {
      schedule.push_back(Task::stance);
      ++s;
    } else if (s >= stance_batches) {
      schedule.push_back(Task::relation);
      ++r;
    } else {
      const double s_progress =
          static_cast<double>(s + 1) / static_cast<double>(stance_batches);
      const double r_progress =
          static_cast<double>(r + 1) / static_cast<double>(relation_batches);
      if (s_progress <= r_progress) {
        schedule.push_back(Task::stance);
        ++s;
      } else {
        schedule.push_back(Task::relation);
        ++r;
      }
    }
  }
  return schedule;
}

}  // namespace

TrainedModel train(const TwoHeadClassifier& model, const DatasetBundle& bundle,
                   const TrainConfig& tcfg) {
  if (tcfg.learning_rate <= 0)
    throw Error(Errc::config_error, "learning_rate must be positive");
  if (tcfg.patience < 1)
    throw Error(Errc::config_error, "patience must be >= 1");
  if (tcfg.batch_size < 1)
    throw Error(Errc::config_error, "batch_size must be >= 1");

  TrainedModel trained{model, {}, 0, {}};
  TwoHeadClassifier::Impl& m = trained.model.impl();

  auto [stance_train, st_trunc] = encode_stance(m.tokenizer, bundle.stance_train);
  auto [stance_val, sv_trunc] = encode_stance(m.tokenizer, bundle.stance_val);
  auto [relation_train, rt_trunc] =
      encode_relation(m.tokenizer, bundle.relation_train);
  auto [relation_val, rv_trunc] =
      encode_relation(m.tokenizer, bundle.relation_val);
  trained.truncation_counts = {{"stance_train", st_trunc},
                               {"stance_val", sv_trunc},
                               {"relation_train", rt_trunc},
                               {"relation_val", rv_trunc}};

  const bool has_stance = !stance_train.empty() && !stance_val.empty();
  const bool has_relation = !relation_train.empty() && !relation_val.empty();
  if (!has_stance && !has_relation)
    throw Error(Errc::empty_train,
                "need non-empty train and val splits for at least one task");

  nn::AdamW opt;
  opt.lr = tcfg.learning_rate;
  opt.weight_decay = tcfg.weight_decay;

  const auto batch = static_cast<std::size_t>(tcfg.batch_size);
  auto n_batches = [batch](std::size_t n) { return (n + batch - 1) / batch; };

  // Best-checkpoint copies carry only parameter values.
  std::vector<Matrix> best_values;
  auto snapshot = [&m, &best_values]() {
    best_values.clear();
    for (nn::Param* p : m.all_params()) best_values.push_back(p->value);
  };
  auto restore = [&m, &best_values]() {
    std::size_t i = 0;
    for (nn::Param* p : m.all_params()) p->value = best_values[i++];
  };

  double best_eval = std::numeric_limits<double>::infinity();
  int best_epoch = -1;

  for (int epoch = 0; epoch < tcfg.max_epochs; ++epoch) {
    std::mt19937_64 rng(derive_seed(tcfg.seed, "epoch_" + std::to_string(epoch)));
    std::vector<std::size_t> stance_idx(stance_train.size());
    std::vector<std::size_t> relation_idx(relation_train.size());
    for (std::size_t i = 0; i < stance_idx.size(); ++i) stance_idx[i] = i;
    for (std::size_t i = 0; i < relation_idx.size(); ++i) relation_idx[i] = i;
    fisher_yates(stance_idx, rng);
    fisher_yates(relation_idx, rng);

    const auto schedule =
        batch_schedule(has_stance ? n_batches(stance_train.size()) : 0,
                       has_relation ? n_batches(relation_train.size()) : 0);

    double loss_sum = 0;
    std::size_t stance_cursor = 0, relation_cursor = 0;
    for (Task task : schedule) {
      const bool is_stance = task == Task::stance;
      auto& pool = is_stance ? stance_train : relation_train;
      auto& idx = is_stance ? stance_idx : relation_idx;
      auto& cursor = is_stance ? stance_cursor : relation_cursor;
      nn::Param& head_w = is_stance ? m.stance_w : m.rel_w;
      nn::Param& head_b = is_stance ? m.stance_b : m.rel_b;

      const std::size_t take = std::min(batch, idx.size() - cursor);
      for (nn::Param* p : m.encoder_params()) p->zero_grad();
      head_w.zero_grad();
      head_b.zero_grad();

      double batch_loss = 0;
      const double grad_scale = 1.0 / static_cast<double>(take);
      for (std::size_t i = 0; i < take; ++i)
        batch_loss += example_loss(m, pool[idx[cursor + i]], head_w, head_b,
                                   true, grad_scale);
      cursor += take;
      batch_loss /= static_cast<double>(take);
      loss_sum += batch_loss;
      if (!std::isfinite(batch_loss))
        throw Error(Errc::divergence,
                    "non-finite training loss at epoch " + std::to_string(epoch));

      for (nn::Param* p : m.encoder_params()) opt.step(*p);
      opt.step(head_w);
      opt.step(head_b);
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.train_loss =
        schedule.empty() ? 0 : loss_sum / static_cast<double>(schedule.size());
    stats.stance_val_loss = mean_eval_loss(m, stance_val, m.stance_w,
                                           m.stance_b, &stats.stance_val_accuracy);
    stats.relation_val_loss = mean_eval_loss(
        m, relation_val, m.rel_w, m.rel_b, &stats.relation_val_accuracy);
    const double sn = static_cast<double>(stance_val.size());
    const double rn = static_cast<double>(relation_val.size());
    stats.eval_loss = (sn + rn) > 0
                          ? (sn * stats.stance_val_loss +
                             rn * stats.relation_val_loss) /
                                (sn + rn)
                          : 0;
    if (!std::isfinite(stats.eval_loss))
      throw Error(Errc::divergence,
                  "non-finite eval loss at epoch " + std::to_string(epoch));
    trained.history.push_back(stats);

    if (stats.eval_loss < best_eval) {
      best_eval = stats.eval_loss;
      best_epoch = epoch;
      snapshot();
    } else if (epoch - best_epoch >= tcfg.patience) {
      break;
    }
  }

  restore();
  trained.best_epoch = best_epoch < 0 ? 0 : best_epoch;
  return trained;
}

}  // namespace argmine
