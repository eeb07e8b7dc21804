#pragma once

#include <map>
#include <string>
#include <vector>

#include "argmine/graph.hpp"

namespace argmine {

struct ConfusionMatrix {
  std::vector<std::string> classes;
  std::vector<std::vector<long>> counts;  // rows = gold, cols = predicted

  long total() const;
};

// counts[i][j] = #(gold = classes[i], pred = classes[j]).
// Throws LENGTH_MISMATCH / UNKNOWN_LABEL.
ConfusionMatrix confusion(const std::vector<std::string>& golds,
                          const std::vector<std::string>& preds,
                          const std::vector<std::string>& classes);

struct ClassMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  long support = 0;
};

struct MacroMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

struct MetricsReport {
  std::vector<std::string> classes;
  std::map<std::string, ClassMetrics> per_class;
  MacroMetrics macro;
};

// Zero-denominator precision/recall/F1 define to 0.
std::map<std::string, ClassMetrics> per_class_metrics(
    const ConfusionMatrix& cm);

// Unweighted arithmetic mean over all classes.
MacroMetrics macro_average(const ConfusionMatrix& cm);
MacroMetrics macro_average(const std::vector<std::string>& classes,
                           const std::map<std::string, ClassMetrics>& per_class);

MetricsReport metrics_report(const ConfusionMatrix& cm);

// One row of the aggregated results table.
struct ResultRow {
  std::string model;
  std::string eval_set;  // "EN" / "FA"
  MacroMetrics macro;
};

// Text table: "Model  Eval. set  P  R  F1", percentages with one decimal,
// rows in insertion order.
std::string render_results_table(const std::vector<ResultRow>& rows);
std::string results_csv(const std::vector<ResultRow>& rows);

std::string metrics_report_json(const MetricsReport& report);

// ---- case studies ----

struct CasePredictions {
  std::string model_name;
  std::map<std::string, Stance> adu_stance;          // adu id -> prediction
  std::map<std::string, RelationType> edge_relation;  // edge id -> prediction
};

struct CaseReport {
  std::string doc_id;
  struct StanceRow {
    std::string model_name;
    // aligned with adu_ids; true marks a gold/predicted mismatch
    std::vector<Stance> predicted;
    std::vector<bool> mismatch;
  };
  struct RelationRow {
    std::string model_name;
    std::vector<RelationType> predicted;
    std::vector<bool> mismatch;
  };
  std::vector<std::string> adu_ids;
  std::vector<Stance> gold_stances;
  std::vector<std::string> edge_ids;  // non-segment edges, document order
  std::vector<RelationType> gold_relations;
  std::vector<StanceRow> stance_rows;
  std::vector<RelationRow> relation_rows;
};

// Builds the per-ADU / per-edge gold-versus-predicted comparison. Every model
// must cover every ADU and edge; throws MISSING_PREDICTION otherwise.
CaseReport case_report(const ArgumentGraph& g,
                       const std::vector<CasePredictions>& predictions);

// Plain-text rendering; '*' marks a mismatch.
std::string render_case_report(const CaseReport& report);

}  // namespace argmine
