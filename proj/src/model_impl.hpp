#pragma once

// Shared between model.cpp (construction, inference, persistence) and
// trainer.cpp (optimization loop).

#include "argmine/model.hpp"
#include "nn_internal.hpp"

namespace argmine {

struct TwoHeadClassifier::Impl {
  ModelConfig cfg;
  EncoderShape shape;
  HashTokenizer tokenizer;
  nn::EncoderParams encoder;
  nn::Param stance_w, stance_b, rel_w, rel_b;
  std::vector<std::string> warnings;

  Impl(const ModelConfig& c, const EncoderShape& s)
      : cfg(c), shape(s), tokenizer(s.vocab, c.max_length) {}

  std::vector<nn::Param*> encoder_params() { return encoder.all(); }
  std::vector<nn::Param*> stance_params() { return {&stance_w, &stance_b}; }
  std::vector<nn::Param*> relation_params() { return {&rel_w, &rel_b}; }
  std::vector<nn::Param*> all_params() {
    auto out = encoder_params();
    for (auto* p : stance_params()) out.push_back(p);
    for (auto* p : relation_params()) out.push_back(p);
    return out;
  }

  // CLS row of the final hidden states.
  nn::Matrix encode_cls(const std::vector<int>& ids,
                        nn::ForwardCache* cache) const {
    nn::Matrix final = nn::encoder_forward(encoder, ids, cache);
    return final.row(0);
  }

  Prediction predict(const std::vector<int>& ids, const nn::Param& head_w,
                     const nn::Param& head_b,
                     const std::vector<std::string>& labels) const;
};

}  // namespace argmine
