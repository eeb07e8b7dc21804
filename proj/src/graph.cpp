#include "argmine/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "argmine/error.hpp"

namespace argmine {

Stance stance_from_string(const std::string& s) {
  if (s == "pro") return Stance::pro;
  if (s == "con" || s == "opp") return Stance::con;
  throw Error(Errc::schema_error, "unknown stance '" + s + "'");
}

const char* to_string(Stance s) { return s == Stance::pro ? "pro" : "con"; }

std::optional<RelationType> relation_from_string(const std::string& s) {
  if (s == "segment" || s == "seg") return RelationType::segment;
  if (s == "support" || s == "sup") return RelationType::support;
  if (s == "rebuttal" || s == "reb") return RelationType::rebuttal;
  if (s == "undercut" || s == "und") return RelationType::undercut;
  if (s == "example" || s == "exa") return RelationType::example;
  return std::nullopt;
}

const char* to_string(RelationType r) {
  switch (r) {
    case RelationType::segment: return "segment";
    case RelationType::support: return "support";
    case RelationType::rebuttal: return "rebuttal";
    case RelationType::undercut: return "undercut";
    case RelationType::example: return "example";
  }
  return "?";
}

Language language_from_string(const std::string& s) {
  if (s == "en") return Language::en;
  if (s == "fa") return Language::fa;
  throw Error(Errc::schema_error, "unknown language '" + s + "'");
}

const char* to_string(Language l) { return l == Language::en ? "en" : "fa"; }

const Edu* ArgumentGraph::find_edu(const std::string& id) const {
  for (const auto& e : edus)
    if (e.id == id) return &e;
  return nullptr;
}

const Adu* ArgumentGraph::find_adu(const std::string& id) const {
  for (const auto& a : adus)
    if (a.id == id) return &a;
  return nullptr;
}

const Edge* ArgumentGraph::find_edge(const std::string& id) const {
  for (const auto& e : edges)
    if (e.id == id) return &e;
  return nullptr;
}

namespace {

void add(ValidationReport& r, const std::string& code, const std::string& id,
         const std::string& detail) {
  r.ok = false;
  r.violations.push_back({code, id, detail});
}

}  // namespace

ValidationReport validate_graph(const ArgumentGraph& g) {
  ValidationReport report;

  std::set<std::string> edu_ids, adu_ids, edge_ids;
  for (const auto& e : g.edus) {
    if (!edu_ids.insert(e.id).second)
      add(report, "DUPLICATE_ID", e.id, "duplicate EDU id");
    if (e.text.empty())
      add(report, "EMPTY_EDU_TEXT", e.id, "EDU has empty text");
  }
  for (const auto& a : g.adus) {
    if (!adu_ids.insert(a.id).second)
      add(report, "DUPLICATE_ID", a.id, "duplicate ADU id");
    if (edu_ids.count(a.id))
      add(report, "DUPLICATE_ID", a.id, "ADU id collides with EDU id");
  }
  for (const auto& e : g.edges) {
    if (!edge_ids.insert(e.id).second)
      add(report, "DUPLICATE_ID", e.id, "duplicate edge id");
    if (adu_ids.count(e.id) || edu_ids.count(e.id))
      add(report, "DUPLICATE_ID", e.id, "edge id collides with a node id");
  }

  // Per-edge endpoint rules. Dangling refs are recorded and the edge is then
  // skipped by the structural checks below.
  std::set<std::string> dangling_edges;
  for (const auto& e : g.edges) {
    if (e.source == e.target) {
      add(report, "SELF_LOOP", e.id, "edge source equals target");
      dangling_edges.insert(e.id);
      continue;
    }
    const bool src_is_edu = edu_ids.count(e.source) > 0;
    const bool src_is_adu = adu_ids.count(e.source) > 0;
    const bool trg_is_adu = adu_ids.count(e.target) > 0;
    const bool trg_is_edge = edge_ids.count(e.target) > 0;
    if (!src_is_edu && !src_is_adu) {
      add(report, "DANGLING_REF", e.id, "source '" + e.source + "' not found");
      dangling_edges.insert(e.id);
      continue;
    }
    switch (e.rel) {
      case RelationType::segment:
        if (!src_is_edu || !trg_is_adu) {
          add(report, "BAD_SEGMENT_ENDPOINTS", e.id,
              "segment edges connect an EDU to an ADU");
          dangling_edges.insert(e.id);
        }
        break;
      case RelationType::undercut:
        if (!src_is_adu) {
          add(report, "BAD_RELATION_ENDPOINTS", e.id,
              "undercut source must be an ADU");
          dangling_edges.insert(e.id);
        } else if (!trg_is_edge) {
          add(report, "BAD_UNDERCUT_TARGET", e.id,
              "undercut must target an edge, got '" + e.target + "'");
          dangling_edges.insert(e.id);
        } else if (g.find_edge(e.target)->rel == RelationType::segment) {
          add(report, "BAD_UNDERCUT_TARGET", e.id,
              "undercut may not target a segment edge");
          dangling_edges.insert(e.id);
        }
        break;
      default:
        if (!src_is_adu || !trg_is_adu) {
          if (!trg_is_adu && !trg_is_edge && !edu_ids.count(e.target)) {
            add(report, "DANGLING_REF", e.id,
                "target '" + e.target + "' not found");
          } else {
            add(report, "BAD_RELATION_ENDPOINTS", e.id,
                std::string(to_string(e.rel)) + " edges connect two ADUs");
          }
          dangling_edges.insert(e.id);
        }
        break;
    }
  }

  // Every ADU must be recoverable through at least one segment edge.
  std::set<std::string> segmented;
  for (const auto& e : g.edges) {
    if (e.rel == RelationType::segment && !dangling_edges.count(e.id))
      segmented.insert(e.target);
  }
  for (const auto& a : g.adus) {
    if (!segmented.count(a.id))
      add(report, "ADU_NO_SEGMENT", a.id, "ADU has no segment edge");
  }

  // Tree over ADUs: exactly one root, out-degree one elsewhere, no cycles.
  std::map<std::string, std::vector<const Edge*>> out;
  for (const auto& e : g.edges) {
    if (e.rel == RelationType::segment || dangling_edges.count(e.id)) continue;
    if (adu_ids.count(e.source)) out[e.source].push_back(&e);
  }
  std::vector<std::string> roots;
  for (const auto& a : g.adus) {
    auto it = out.find(a.id);
    if (it == out.end()) {
      roots.push_back(a.id);
    } else if (it->second.size() > 1) {
      add(report, "MULTIPLE_OUT_EDGES", a.id,
          "ADU is the source of " + std::to_string(it->second.size()) +
              " non-segment edges");
    }
  }
  if (roots.empty() && !g.adus.empty()) {
    add(report, "NO_ROOT", g.doc_id, "no parentless ADU");
  } else if (roots.size() > 1) {
    std::string ids;
    for (const auto& r : roots) ids += (ids.empty() ? "" : ",") + r;
    add(report, "MULTIPLE_ROOTS", ids,
        std::to_string(roots.size()) + " parentless ADUs");
  }

  // Cycle check: follow each ADU's parent chain (undercuts hop to the
  // attacked edge's source) and make sure it terminates.
  if (roots.size() == 1) {
    for (const auto& a : g.adus) {
      std::set<std::string> seen;
      std::string cur = a.id;
      while (true) {
        if (!seen.insert(cur).second) {
          add(report, "CYCLE", a.id, "ADU parent chain revisits '" + cur + "'");
          break;
        }
        auto it = out.find(cur);
        if (it == out.end() || it->second.empty()) break;  // reached a root
        const Edge* e = it->second.front();
        if (e->rel == RelationType::undercut) {
          const Edge* t = g.find_edge(e->target);
          if (t == nullptr) break;  // already reported as dangling
          cur = t->source;
        } else {
          cur = e->target;
        }
      }
    }
  }

  return report;
}

const Adu& root(const ArgumentGraph& g) {
  ValidationReport r = validate_graph(g);
  if (!r.ok)
    throw Error(Errc::not_valid, "graph '" + g.doc_id + "' has " +
                                     std::to_string(r.violations.size()) +
                                     " violations");
  for (const auto& a : g.adus) {
    bool has_out = false;
    for (const auto& e : g.edges) {
      if (e.rel != RelationType::segment && e.source == a.id) {
        has_out = true;
        break;
      }
    }
    if (!has_out) return a;
  }
  throw Error(Errc::not_valid, "graph '" + g.doc_id + "' has no root");
}

std::string adu_text(const ArgumentGraph& g, const std::string& adu_id) {
  std::vector<std::size_t> indices;
  for (const auto& e : g.edges) {
    if (e.rel != RelationType::segment || e.target != adu_id) continue;
    for (std::size_t i = 0; i < g.edus.size(); ++i) {
      if (g.edus[i].id == e.source) {
        indices.push_back(i);
        break;
      }
    }
  }
  if (indices.empty())
    throw Error(Errc::no_segment, "ADU '" + adu_id + "' has no segment edge");
  std::sort(indices.begin(), indices.end());
  std::string out;
  for (std::size_t i : indices) {
    if (!out.empty()) out += ' ';
    out += g.edus[i].text;
  }
  return out;
}

std::pair<std::string, std::string> undercut_endpoints(const ArgumentGraph& g,
                                                       const Edge& e) {
  if (e.rel != RelationType::undercut)
    throw Error(Errc::bad_target, "edge '" + e.id + "' is not an undercut");
  const Edge* target = g.find_edge(e.target);
  if (target == nullptr)
    throw Error(Errc::bad_target,
                "undercut '" + e.id + "' targets missing edge '" + e.target + "'");
  return {e.source, target->source};
}

}  // namespace argmine
