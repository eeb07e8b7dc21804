#include "argmine/pe_mapping.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "argmine/error.hpp"

namespace argmine {

Stance flip(Stance s) { return s == Stance::pro ? Stance::con : Stance::pro; }

const char* to_string(MapRule r) {
  switch (r) {
    case MapRule::root: return "root";
    case MapRule::direct_child: return "direct_child";
    case MapRule::inherit_support: return "inherit_support";
    case MapRule::flip_attack: return "flip_attack";
  }
  return "?";
}

namespace {

constexpr const char* kRootId = "root";

std::string edu_id_for(const std::string& component_id) {
  return "e_" + component_id;
}

}  // namespace

std::pair<ArgumentGraph, MappingTrace> map_pe_to_microtext(
    const PEDocument& d, const MappingOptions& options) {
  MappingTrace trace;
  ArgumentGraph g;
  g.doc_id = d.essay_id.empty() ? "essay" : d.essay_id;
  g.language = Language::en;

  std::vector<const PeComponent*> majors;
  for (const auto& c : d.components)
    if (c.kind == PeKind::major_claim) majors.push_back(&c);
  if (majors.empty())
    throw Error(Errc::no_major_claim, "essay '" + g.doc_id + "'");

  // First outgoing relation per component, annotation order (D11).
  std::map<std::string, const PeRelation*> out_relation;
  for (const auto& r : d.relations) {
    auto [it, inserted] = out_relation.try_emplace(r.source_id, &r);
    if (!inserted)
      trace.warnings.push_back("component " + r.source_id +
                               " has multiple outgoing relations; using the "
                               "first in annotation order");
  }

  // Stance assignment, filled top-down.
  std::map<std::string, Stance> assigned;
  std::set<std::string> dropped;

  // Root: all MajorClaims collapse into one virtual pro root whose EDU text
  // concatenates the spans in document order.
  std::vector<const PeComponent*> majors_doc_order = majors;
  std::sort(majors_doc_order.begin(), majors_doc_order.end(),
            [](const PeComponent* a, const PeComponent* b) {
              return a->start < b->start;
            });
  std::string root_text;
  for (const auto* m : majors_doc_order) {
    if (!root_text.empty()) root_text += ' ';
    root_text += m->text;
  }
  for (const auto* m : majors) {
    assigned[m->id] = Stance::pro;
    trace.steps.push_back({m->id, Stance::pro, MapRule::root, std::nullopt});
    if (out_relation.count(m->id))
      trace.warnings.push_back("ignoring outgoing relation of MajorClaim " +
                               m->id);
  }

  struct PendingEdge {
    std::string source_adu;
    std::string target_adu;
    RelationType label;
  };
  std::vector<PendingEdge> relation_edges;

  // Maps a component id to the ADU that represents it (majors -> root).
  auto adu_of = [&](const std::string& component_id) -> std::string {
    for (const auto* m : majors)
      if (m->id == component_id) return kRootId;
    return component_id;
  };

  std::vector<const PeComponent*> mapped_components;  // step order

  // Direct children: Claims keep their stance in the two-label scheme.
  for (const auto& c : d.components) {
    if (c.kind != PeKind::claim) continue;
    auto it = d.claim_stances.find(c.id);
    if (it == d.claim_stances.end())
      throw Error(Errc::missing_stance, c.id);
    const Stance stance =
        it->second == PeStance::for_ ? Stance::pro : Stance::con;
    const RelationType label = it->second == PeStance::for_
                                   ? RelationType::support
                                   : RelationType::rebuttal;
    assigned[c.id] = stance;
    trace.steps.push_back({c.id, stance, MapRule::direct_child, label});
    relation_edges.push_back({c.id, kRootId, label});
    mapped_components.push_back(&c);
    if (out_relation.count(c.id))
      trace.warnings.push_back("ignoring outgoing relation of Claim " + c.id);
  }

  // Premises resolve top-down: repeated annotation-order passes assign any
  // premise whose target already carries a stance.
  std::vector<const PeComponent*> premises;
  for (const auto& c : d.components)
    if (c.kind == PeKind::premise) premises.push_back(&c);

  std::set<std::string> resolved;
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto* p : premises) {
      if (resolved.count(p->id) || dropped.count(p->id)) continue;
      auto rel_it = out_relation.find(p->id);
      if (rel_it == out_relation.end()) {
        if (!options.lenient)
          throw Error(Errc::unreachable_component,
                      p->id + " has no outgoing relation");
        trace.warnings.push_back("dropping " + p->id +
                                 ": no outgoing relation");
        dropped.insert(p->id);
        progress = true;
        continue;
      }
      const PeRelation* rel = rel_it->second;
      if (dropped.count(rel->target_id)) {
        if (!options.lenient)
          throw Error(Errc::unreachable_component,
                      p->id + " targets dropped component " + rel->target_id);
        trace.warnings.push_back("dropping " + p->id + ": target " +
                                 rel->target_id + " was dropped");
        dropped.insert(p->id);
        progress = true;
        continue;
      }
      auto target_it = assigned.find(rel->target_id);
      if (target_it == assigned.end()) continue;  // not ready yet

      const bool is_support = rel->kind == PeRelationKind::support;
      const Stance stance =
          is_support ? target_it->second : flip(target_it->second);
      const RelationType label =
          is_support ? RelationType::support : RelationType::rebuttal;
      assigned[p->id] = stance;
      resolved.insert(p->id);
      trace.steps.push_back(
          {p->id, stance,
           is_support ? MapRule::inherit_support : MapRule::flip_attack,
           label});
      relation_edges.push_back({p->id, adu_of(rel->target_id), label});
      mapped_components.push_back(p);
      progress = true;
    }
  }

  // Anything left either chains to a missing component or sits in a cycle.
  for (const auto* p : premises) {
    if (resolved.count(p->id) || dropped.count(p->id)) continue;
    std::set<std::string> seen;
    std::string cur = p->id;
    bool cycle = false;
    while (true) {
      if (!seen.insert(cur).second) {
        cycle = true;
        break;
      }
      auto it = out_relation.find(cur);
      if (it == out_relation.end()) break;
      if (d.find(it->second->target_id) == nullptr) break;
      cur = it->second->target_id;
    }
    if (cycle)
      throw Error(Errc::cycle_detected,
                  p->id + " participates in a relation cycle");
    if (!options.lenient)
      throw Error(Errc::unreachable_component,
                  p->id + " has no path to the root");
    trace.warnings.push_back("dropping " + p->id + ": no path to the root");
    dropped.insert(p->id);
  }
  // Drops can cascade; relation edges never point at dropped components
  // because a premise is only mapped once its target is assigned.

  // Assemble the graph. EDUs follow document order (span start); the virtual
  // root EDU sits at the first MajorClaim's position.
  struct EduSlot {
    std::size_t start;
    Edu edu;
    std::string adu_id;
  };
  std::vector<EduSlot> slots;
  slots.push_back(
      {majors_doc_order.front()->start, {edu_id_for(kRootId), root_text},
       kRootId});
  for (const auto* c : mapped_components)
    slots.push_back({c->start, {edu_id_for(c->id), c->text}, c->id});
  std::stable_sort(slots.begin(), slots.end(),
                   [](const EduSlot& a, const EduSlot& b) {
                     return a.start < b.start;
                   });

  g.adus.push_back({kRootId, Stance::pro});
  for (const auto* c : mapped_components)
    g.adus.push_back({c->id, assigned.at(c->id)});

  int seg_counter = 0;
  for (const auto& slot : slots) {
    g.edus.push_back(slot.edu);
    g.edges.push_back({"s" + std::to_string(++seg_counter),
                       RelationType::segment, slot.edu.id, slot.adu_id});
  }
  for (const auto& e : relation_edges)
    g.edges.push_back({"r_" + e.source_adu, e.label, e.source_adu,
                       e.target_adu});

  return {std::move(g), std::move(trace)};
}

}  // namespace argmine
