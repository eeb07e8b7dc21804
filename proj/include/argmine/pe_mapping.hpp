#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "argmine/corpus.hpp"
#include "argmine/graph.hpp"

namespace argmine {

Stance flip(Stance s);

enum class MapRule { root, direct_child, inherit_support, flip_attack };

const char* to_string(MapRule r);

struct MappingStep {
  std::string component_id;
  Stance assigned = Stance::pro;
  MapRule rule = MapRule::root;
  std::optional<RelationType> edge_label;  // support or rebuttal
};

struct MappingTrace {
  std::vector<MappingStep> steps;  // top-down order
  std::vector<std::string> warnings;
};

struct MappingOptions {
  // lenient drops unreachable premises with a warning instead of failing.
  bool lenient = false;
};

// Converts a Persuasive-Essays document into a Microtext-scheme graph:
// all MajorClaims collapse into one virtual pro root, Claims attach to the
// root (for -> pro/support, against -> con/rebuttal), and premises inherit or
// flip their target's stance depending on support/attack, top-down. Throws
// NO_MAJOR_CLAIM, CYCLE_DETECTED, UNREACHABLE_COMPONENT (strict mode).
std::pair<ArgumentGraph, MappingTrace> map_pe_to_microtext(
    const PEDocument& d, const MappingOptions& options = {});

}  // namespace argmine
