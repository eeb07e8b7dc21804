#include "argmine/error.hpp"

namespace argmine {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::parse_error: return "PARSE_ERROR";
    case Errc::schema_error: return "SCHEMA_ERROR";
    case Errc::validation_error: return "VALIDATION_ERROR";
    case Errc::unmatched_doc: return "UNMATCHED_DOC";
    case Errc::structure_mismatch: return "STRUCTURE_MISMATCH";
    case Errc::offset_error: return "OFFSET_ERROR";
    case Errc::dangling_relation: return "DANGLING_RELATION";
    case Errc::missing_stance: return "MISSING_STANCE";
    case Errc::not_valid: return "NOT_VALID";
    case Errc::no_segment: return "NO_SEGMENT";
    case Errc::bad_target: return "BAD_TARGET";
    case Errc::no_major_claim: return "NO_MAJOR_CLAIM";
    case Errc::cycle_detected: return "CYCLE_DETECTED";
    case Errc::unreachable_component: return "UNREACHABLE_COMPONENT";
    case Errc::empty_split: return "EMPTY_SPLIT";
    case Errc::missing_synth: return "MISSING_SYNTH";
    case Errc::unpaired_fa: return "UNPAIRED_FA";
    case Errc::length_mismatch: return "LENGTH_MISMATCH";
    case Errc::unknown_label: return "UNKNOWN_LABEL";
    case Errc::target_too_small: return "TARGET_TOO_SMALL";
    case Errc::generator_unreachable: return "GENERATOR_UNREACHABLE";
    case Errc::fixture_exhausted: return "FIXTURE_EXHAUSTED";
    case Errc::shortfall: return "SHORTFALL";
    case Errc::encoder_not_found: return "ENCODER_NOT_FOUND";
    case Errc::shape_mismatch: return "SHAPE_MISMATCH";
    case Errc::empty_train: return "EMPTY_TRAIN";
    case Errc::divergence: return "DIVERGENCE";
    case Errc::tokenize_error: return "TOKENIZE_ERROR";
    case Errc::config_mismatch: return "CONFIG_MISMATCH";
    case Errc::missing_prediction: return "MISSING_PREDICTION";
    case Errc::io_error: return "IO_ERROR";
    case Errc::config_error: return "CONFIG_ERROR";
  }
  return "UNKNOWN";
}

int Error::exit_code() const {
  switch (code_) {
    case Errc::config_error:
    case Errc::missing_synth:
    case Errc::config_mismatch:
      return 1;
    case Errc::parse_error:
    case Errc::schema_error:
    case Errc::validation_error:
    case Errc::unmatched_doc:
    case Errc::structure_mismatch:
    case Errc::offset_error:
    case Errc::dangling_relation:
    case Errc::missing_stance:
    case Errc::no_major_claim:
    case Errc::cycle_detected:
    case Errc::unreachable_component:
    case Errc::unknown_label:
      return 2;
    default:
      return 3;
  }
}

}  // namespace argmine
