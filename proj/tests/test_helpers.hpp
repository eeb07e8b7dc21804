#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "argmine/graph.hpp"

namespace argmine::testing {

inline std::filesystem::path data_dir() {
  return std::filesystem::path(ARGMINE_DATA_DIR);
}

inline std::filesystem::path en_corpus_dir() { return data_dir() / "microtext" / "en"; }
inline std::filesystem::path fa_corpus_dir() { return data_dir() / "microtext" / "fa"; }
inline std::filesystem::path replay_fixture() {
  return data_dir() / "fixtures" / "replay_en.jsonl";
}

// The Case 1 discussion graph: five ADUs, one rebuttal, one undercut of that
// rebuttal, one support and one example edge.
inline ArgumentGraph case1_graph() {
  ArgumentGraph g;
  g.doc_id = "micro_d14";
  g.language = Language::en;
  g.edus = {
      {"e1", "I think Fritz has never been in a fight in his life."},
      {"e2", "As a boy he did use to scuffle with the other choirboys,"},
      {"e3", "but that hardly counts as a proper brawl."},
      {"e4", "And he always chickens out when things get dicey."},
      {"e5", "Yesterday, when the bouncer wouldn't let us in, he was suddenly gone."},
  };
  g.adus = {{"a1", Stance::pro},
            {"a2", Stance::con},
            {"a3", Stance::pro},
            {"a4", Stance::pro},
            {"a5", Stance::pro}};
  g.edges = {{"s1", RelationType::segment, "e1", "a1"},
             {"s2", RelationType::segment, "e2", "a2"},
             {"s3", RelationType::segment, "e3", "a3"},
             {"s4", RelationType::segment, "e4", "a4"},
             {"s5", RelationType::segment, "e5", "a5"},
             {"c1", RelationType::rebuttal, "a2", "a1"},
             {"c2", RelationType::undercut, "a3", "c1"},
             {"c3", RelationType::support, "a4", "a1"},
             {"c4", RelationType::example, "a5", "a4"}};
  return g;
}

// The Case 2 graph: four ADUs, two rebuttals into the root, one support.
inline ArgumentGraph case2_graph() {
  ArgumentGraph g;
  g.doc_id = "micro_k015";
  g.language = Language::en;
  g.edus = {
      {"e1", "BER should be re-conceptualized from scratch,"},
      {"e2", "even if billions of Euros have already been invested in the existing airport project"},
      {"e3", "and this would delay the date of completion indefinitely."},
      {"e4", "Both the drawn-out building operations and the mounting safety issues show clear shortcomings in the entire planning."},
  };
  g.adus = {{"a1", Stance::pro},
            {"a2", Stance::con},
            {"a3", Stance::con},
            {"a4", Stance::pro}};
  g.edges = {{"s1", RelationType::segment, "e1", "a1"},
             {"s2", RelationType::segment, "e2", "a2"},
             {"s3", RelationType::segment, "e3", "a3"},
             {"s4", RelationType::segment, "e4", "a4"},
             {"c1", RelationType::rebuttal, "a2", "a1"},
             {"c2", RelationType::rebuttal, "a3", "a1"},
             {"c3", RelationType::support, "a4", "a1"}};
  return g;
}

inline ArgumentGraph single_adu_graph() {
  ArgumentGraph g;
  g.doc_id = "single";
  g.edus = {{"e1", "Only one unit here."}};
  g.adus = {{"a1", Stance::pro}};
  g.edges = {{"s1", RelationType::segment, "e1", "a1"}};
  return g;
}

}  // namespace argmine::testing
