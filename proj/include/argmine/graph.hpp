#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace argmine {

enum class Stance { pro, con };
enum class RelationType { segment, support, rebuttal, undercut, example };
enum class Language { en, fa };

Stance stance_from_string(const std::string& s);
const char* to_string(Stance s);

// Accepts both long names and the short codes used by arggraph-style files
// (seg/sup/reb/und/exa).
std::optional<RelationType> relation_from_string(const std::string& s);
const char* to_string(RelationType r);

Language language_from_string(const std::string& s);
const char* to_string(Language l);

struct Edu {
  std::string id;
  std::string text;
};

struct Adu {
  std::string id;
  Stance stance = Stance::pro;
};

// target is a node id for segment/support/rebuttal/example and an edge id
// for undercut; resolution happens by lookup.
struct Edge {
  std::string id;
  RelationType rel = RelationType::support;
  std::string source;
  std::string target;
};

// One Microtext-style document. Treated as immutable once built; all
// operations below are pure.
struct ArgumentGraph {
  std::string doc_id;
  Language language = Language::en;
  std::string topic;  // optional
  std::vector<Edu> edus;
  std::vector<Adu> adus;
  std::vector<Edge> edges;

  const Edu* find_edu(const std::string& id) const;
  const Adu* find_adu(const std::string& id) const;
  const Edge* find_edge(const std::string& id) const;
};

struct Violation {
  std::string code;
  std::string offending_id;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

// Checks every structural invariant and reports all failures, not just the
// first. Violation codes: DUPLICATE_ID, EMPTY_EDU_TEXT, DANGLING_REF,
// SELF_LOOP, BAD_SEGMENT_ENDPOINTS, BAD_RELATION_ENDPOINTS,
// BAD_UNDERCUT_TARGET, ADU_NO_SEGMENT, MULTIPLE_ROOTS, NO_ROOT,
// MULTIPLE_OUT_EDGES, CYCLE.
ValidationReport validate_graph(const ArgumentGraph& g);

// The unique ADU with no outgoing non-segment edge. Throws NOT_VALID when
// validate_graph(g) fails.
const Adu& root(const ArgumentGraph& g);

// Concatenates the texts of all EDUs segment-linked to the ADU, in document
// EDU order, joined by a single space. Throws NO_SEGMENT.
std::string adu_text(const ArgumentGraph& g, const std::string& adu_id);

// For an undercut edge, returns (undercutting ADU id, source ADU id of the
// attacked edge). Throws BAD_TARGET when the target edge is missing.
std::pair<std::string, std::string> undercut_endpoints(const ArgumentGraph& g,
                                                       const Edge& e);

}  // namespace argmine
