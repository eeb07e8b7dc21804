#include "nn_internal.hpp"

#include <cmath>

namespace argmine::nn {

namespace {
constexpr double kLnEps = 1e-12;
constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
}  // namespace

Matrix layer_norm_forward(const Matrix& x, const Param& gamma,
                          const Param& beta, LayerNormCache& cache) {
  const auto rows = x.rows();
  cache.xhat.resize(rows, x.cols());
  cache.inv_std.resize(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double mu = x.row(i).mean();
    const double var = (x.row(i).array() - mu).square().mean();
    const double inv = 1.0 / std::sqrt(var + kLnEps);
    cache.inv_std(i) = inv;
    cache.xhat.row(i) = ((x.row(i).array() - mu) * inv).matrix();
  }
  Matrix y = cache.xhat;
  y.array().rowwise() *= gamma.value.row(0).array();
  y.array().rowwise() += beta.value.row(0).array();
  return y;
}

Matrix layer_norm_backward(const Matrix& dy, Param& gamma, Param& beta,
                           const LayerNormCache& cache) {
  gamma.ensure_state();
  beta.ensure_state();
  gamma.grad.row(0) += (dy.array() * cache.xhat.array()).colwise().sum().matrix();
  beta.grad.row(0) += dy.colwise().sum();

  Matrix dx(dy.rows(), dy.cols());
  for (Eigen::Index i = 0; i < dy.rows(); ++i) {
    Eigen::ArrayXd dyg = dy.row(i).array() * gamma.value.row(0).array();
    const double mean_dyg = dyg.mean();
    const double mean_dyg_xhat = (dyg * cache.xhat.row(i).array()).mean();
    dx.row(i) =
        (cache.inv_std(i) *
         (dyg - mean_dyg - cache.xhat.row(i).array() * mean_dyg_xhat))
            .matrix();
  }
  return dx;
}

Matrix gelu(const Matrix& x) {
  return x.unaryExpr([](double v) {
    return v * 0.5 * (1.0 + std::erf(v * kInvSqrt2));
  });
}

Matrix gelu_backward(const Matrix& dy, const Matrix& x) {
  Matrix dx = x.unaryExpr([](double v) {
    const double phi = 0.5 * (1.0 + std::erf(v * kInvSqrt2));
    const double pdf = std::exp(-0.5 * v * v) * kInvSqrt2Pi;
    return phi + v * pdf;
  });
  dx.array() *= dy.array();
  return dx;
}

Matrix softmax_rows(const Matrix& scores) {
  Matrix out(scores.rows(), scores.cols());
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::ArrayXd row = scores.row(i).array();
    row -= row.maxCoeff();
    row = row.exp();
    out.row(i) = (row / row.sum()).matrix();
  }
  return out;
}

std::vector<Param*> EncoderParams::all() {
  std::vector<Param*> out{&tok_emb, &pos_emb, &emb_ln_g, &emb_ln_b};
  for (auto& l : layers) {
    for (Param* p : {&l.wq, &l.bq, &l.wk, &l.bk, &l.wv, &l.bv, &l.wo, &l.bo,
                     &l.ln1_g, &l.ln1_b, &l.w1, &l.b1, &l.w2, &l.b2, &l.ln2_g,
                     &l.ln2_b})
      out.push_back(p);
  }
  return out;
}

namespace {

Matrix add_bias(Matrix m, const Param& bias) {
  m.array().rowwise() += bias.value.row(0).array();
  return m;
}

}  // namespace

Matrix encoder_forward(const EncoderParams& p, const std::vector<int>& ids,
                       ForwardCache* cache) {
  const auto T = static_cast<Eigen::Index>(ids.size());
  const Eigen::Index H = p.tok_emb.value.cols();
  const int heads = p.heads;
  const Eigen::Index dh = H / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  Matrix x(T, H);
  for (Eigen::Index t = 0; t < T; ++t)
    x.row(t) = p.tok_emb.value.row(ids[t]) + p.pos_emb.value.row(t);

  ForwardCache local;
  ForwardCache& c = cache ? *cache : local;
  c.ids = ids;
  c.embedded = x;
  x = layer_norm_forward(x, p.emb_ln_g, p.emb_ln_b, c.emb_ln);
  c.emb_out = x;
  c.layers.assign(p.layers.size(), {});

  for (std::size_t li = 0; li < p.layers.size(); ++li) {
    const EncoderLayerParams& lp = p.layers[li];
    LayerCache& lc = c.layers[li];
    lc.input = x;

    lc.attn.q = add_bias(x * lp.wq.value, lp.bq);
    lc.attn.k = add_bias(x * lp.wk.value, lp.bk);
    lc.attn.v = add_bias(x * lp.wv.value, lp.bv);
    lc.attn.context.resize(T, H);
    lc.attn.probs.resize(static_cast<std::size_t>(heads));
    for (int h = 0; h < heads; ++h) {
      auto qh = lc.attn.q.middleCols(h * dh, dh);
      auto kh = lc.attn.k.middleCols(h * dh, dh);
      auto vh = lc.attn.v.middleCols(h * dh, dh);
      Matrix scores = (qh * kh.transpose()) * scale;
      Matrix probs = softmax_rows(scores);
      lc.attn.probs[static_cast<std::size_t>(h)] = probs;
      lc.attn.context.middleCols(h * dh, dh) = probs * vh;
    }
    lc.attn_proj = add_bias(lc.attn.context * lp.wo.value, lp.bo);

    Matrix res1 = x + lc.attn_proj;
    lc.n1 = layer_norm_forward(res1, lp.ln1_g, lp.ln1_b, lc.ln1);

    lc.ffn_pre = add_bias(lc.n1 * lp.w1.value, lp.b1);
    lc.ffn_act = gelu(lc.ffn_pre);
    Matrix ffn_out = add_bias(lc.ffn_act * lp.w2.value, lp.b2);

    Matrix res2 = lc.n1 + ffn_out;
    x = layer_norm_forward(res2, lp.ln2_g, lp.ln2_b, lc.ln2);
    lc.output = x;
  }
  return x;
}

void encoder_backward(EncoderParams& p, const ForwardCache& cache,
                      const Matrix& d_final) {
  const auto T = static_cast<Eigen::Index>(cache.ids.size());
  const Eigen::Index H = p.tok_emb.value.cols();
  const int heads = p.heads;
  const Eigen::Index dh = H / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  Matrix dx = d_final;
  for (std::size_t li = p.layers.size(); li-- > 0;) {
    EncoderLayerParams& lp = p.layers[li];
    const LayerCache& lc = cache.layers[li];
    for (Param* prm :
         {&lp.wq, &lp.bq, &lp.wk, &lp.bk, &lp.wv, &lp.bv, &lp.wo, &lp.bo,
          &lp.ln1_g, &lp.ln1_b, &lp.w1, &lp.b1, &lp.w2, &lp.b2, &lp.ln2_g,
          &lp.ln2_b})
      prm->ensure_state();

    // LN2 over (n1 + ffn_out)
    Matrix d_res2 = layer_norm_backward(dx, lp.ln2_g, lp.ln2_b, lc.ln2);
    Matrix d_n1 = d_res2;
    const Matrix& d_ffn_out = d_res2;

    lp.w2.grad += lc.ffn_act.transpose() * d_ffn_out;
    lp.b2.grad.row(0) += d_ffn_out.colwise().sum();
    Matrix d_act = d_ffn_out * lp.w2.value.transpose();
    Matrix d_pre = gelu_backward(d_act, lc.ffn_pre);
    lp.w1.grad += lc.n1.transpose() * d_pre;
    lp.b1.grad.row(0) += d_pre.colwise().sum();
    d_n1 += d_pre * lp.w1.value.transpose();

    // LN1 over (input + attn_proj)
    Matrix d_res1 = layer_norm_backward(d_n1, lp.ln1_g, lp.ln1_b, lc.ln1);
    Matrix d_input = d_res1;
    const Matrix& d_proj = d_res1;

    lp.wo.grad += lc.attn.context.transpose() * d_proj;
    lp.bo.grad.row(0) += d_proj.colwise().sum();
    Matrix d_context = d_proj * lp.wo.value.transpose();

    Matrix dq(T, H), dk(T, H), dv(T, H);
    for (int h = 0; h < heads; ++h) {
      const Matrix& probs = lc.attn.probs[static_cast<std::size_t>(h)];
      auto qh = lc.attn.q.middleCols(h * dh, dh);
      auto kh = lc.attn.k.middleCols(h * dh, dh);
      auto vh = lc.attn.v.middleCols(h * dh, dh);
      auto d_ch = d_context.middleCols(h * dh, dh);

      Matrix d_probs = d_ch * vh.transpose();
      dv.middleCols(h * dh, dh) = probs.transpose() * d_ch;
      // softmax backward per row
      Matrix d_scores(probs.rows(), probs.cols());
      for (Eigen::Index i = 0; i < probs.rows(); ++i) {
        const double dot = d_probs.row(i).dot(probs.row(i));
        d_scores.row(i) =
            (probs.row(i).array() * (d_probs.row(i).array() - dot)).matrix();
      }
      d_scores *= scale;
      dq.middleCols(h * dh, dh) = d_scores * kh;
      dk.middleCols(h * dh, dh) = d_scores.transpose() * qh;
    }

    lp.wq.grad += lc.input.transpose() * dq;
    lp.bq.grad.row(0) += dq.colwise().sum();
    lp.wk.grad += lc.input.transpose() * dk;
    lp.bk.grad.row(0) += dk.colwise().sum();
    lp.wv.grad += lc.input.transpose() * dv;
    lp.bv.grad.row(0) += dv.colwise().sum();

    d_input += dq * lp.wq.value.transpose() + dk * lp.wk.value.transpose() +
               dv * lp.wv.value.transpose();
    dx = d_input;
  }

  for (Param* prm : {&p.tok_emb, &p.pos_emb, &p.emb_ln_g, &p.emb_ln_b})
    prm->ensure_state();
  Matrix d_emb = layer_norm_backward(dx, p.emb_ln_g, p.emb_ln_b, cache.emb_ln);
  for (Eigen::Index t = 0; t < T; ++t) {
    p.tok_emb.grad.row(cache.ids[static_cast<std::size_t>(t)]) += d_emb.row(t);
    p.pos_emb.grad.row(t) += d_emb.row(t);
  }
}

void init_normal(Param& p, std::mt19937_64& rng, double stddev) {
  std::normal_distribution<double> dist(0.0, stddev);
  for (Eigen::Index i = 0; i < p.value.rows(); ++i)
    for (Eigen::Index j = 0; j < p.value.cols(); ++j)
      p.value(i, j) = dist(rng);
}

}  // namespace argmine::nn
