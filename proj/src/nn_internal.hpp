#pragma once

// Internal dense-math layer for the transformer encoder: parameters with
// Adam state, forward caches, and hand-derived backward passes. Double
// precision throughout so gradient checks and the determinism contracts hold
// tightly.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace argmine::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Param {
  std::string name;
  Matrix value;
  Matrix grad;
  Matrix adam_m, adam_v;
  long steps = 0;
  bool decay = true;  // LN scales and biases are excluded from weight decay

  void ensure_state() {
    if (grad.size() == 0) {
      grad = Matrix::Zero(value.rows(), value.cols());
      adam_m = grad;
      adam_v = grad;
    }
  }
  void zero_grad() {
    if (grad.size() != 0) grad.setZero();
  }
};

struct AdamW {
  double lr = 5e-6;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;

  void step(Param& p) const {
    p.ensure_state();
    p.steps += 1;
    p.adam_m = beta1 * p.adam_m + (1.0 - beta1) * p.grad;
    p.adam_v = beta2 * p.adam_v + (1.0 - beta2) * p.grad.cwiseProduct(p.grad);
    const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(p.steps));
    const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(p.steps));
    Eigen::ArrayXXd mhat = p.adam_m.array() / bc1;
    Eigen::ArrayXXd vhat = p.adam_v.array() / bc2;
    Eigen::ArrayXXd update = mhat / (vhat.sqrt() + eps);
    if (p.decay && weight_decay > 0.0) update += weight_decay * p.value.array();
    p.value.array() -= lr * update;
  }
};

struct LayerNormCache {
  Matrix xhat;     // normalized input
  Vector inv_std;  // per row
};

// y = xhat .* gamma + beta, per row. gamma/beta are 1 x H.
Matrix layer_norm_forward(const Matrix& x, const Param& gamma,
                          const Param& beta, LayerNormCache& cache);

Matrix layer_norm_backward(const Matrix& dy, Param& gamma, Param& beta,
                           const LayerNormCache& cache);

Matrix gelu(const Matrix& x);
Matrix gelu_backward(const Matrix& dy, const Matrix& x);

// Row-wise softmax with max subtraction.
Matrix softmax_rows(const Matrix& scores);

struct EncoderLayerParams {
  Param wq, bq, wk, bk, wv, bv, wo, bo;
  Param ln1_g, ln1_b;
  Param w1, b1, w2, b2;
  Param ln2_g, ln2_b;
};

struct EncoderParams {
  Param tok_emb;  // vocab x H
  Param pos_emb;  // P x H
  Param emb_ln_g, emb_ln_b;
  std::vector<EncoderLayerParams> layers;
  int heads = 1;

  std::vector<Param*> all();
};

struct AttentionCache {
  Matrix q, k, v;              // T x H
  std::vector<Matrix> probs;   // per head, T x T
  Matrix context;              // T x H
};

struct LayerCache {
  Matrix input;
  AttentionCache attn;
  Matrix attn_proj;
  LayerNormCache ln1;
  Matrix n1;
  Matrix ffn_pre;
  Matrix ffn_act;
  LayerNormCache ln2;
  Matrix output;
};

struct ForwardCache {
  std::vector<int> ids;
  Matrix embedded;  // token + position sums, pre-LN
  LayerNormCache emb_ln;
  Matrix emb_out;
  std::vector<LayerCache> layers;
};

// Returns the final hidden states (T x H); fills the cache when given.
Matrix encoder_forward(const EncoderParams& p, const std::vector<int>& ids,
                       ForwardCache* cache);

// Accumulates parameter gradients for d(final hidden states).
void encoder_backward(EncoderParams& p, const ForwardCache& cache,
                      const Matrix& d_final);

void init_normal(Param& p, std::mt19937_64& rng, double stddev = 0.02);

}  // namespace argmine::nn
