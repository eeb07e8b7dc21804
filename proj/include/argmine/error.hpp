#pragma once

#include <stdexcept>
#include <string>

namespace argmine {

// Error taxonomy shared across the toolkit. Codes map onto CLI exit codes:
// config/usage -> 1, data -> 2, runtime -> 3.
enum class Errc {
  // parsing / corpus
  parse_error,
  schema_error,
  validation_error,
  unmatched_doc,
  structure_mismatch,
  offset_error,
  dangling_relation,
  missing_stance,
  // graph ops
  not_valid,
  no_segment,
  bad_target,
  // pe mapping
  no_major_claim,
  cycle_detected,
  unreachable_component,
  // dataset
  empty_split,
  missing_synth,
  unpaired_fa,
  length_mismatch,
  unknown_label,
  // augmentation
  target_too_small,
  generator_unreachable,
  fixture_exhausted,
  shortfall,
  // model
  encoder_not_found,
  shape_mismatch,
  empty_train,
  divergence,
  tokenize_error,
  config_mismatch,
  missing_prediction,
  // generic
  io_error,
  config_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

  // Exit code contract used by the CLI.
  int exit_code() const;

 private:
  Errc code_;
};

}  // namespace argmine
