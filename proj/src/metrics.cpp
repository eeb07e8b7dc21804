#include "argmine/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "argmine/error.hpp"
#include "argmine/text.hpp"

namespace argmine {

long ConfusionMatrix::total() const {
  long t = 0;
  for (const auto& row : counts)
    for (long c : row) t += c;
  return t;
}

ConfusionMatrix confusion(const std::vector<std::string>& golds,
                          const std::vector<std::string>& preds,
                          const std::vector<std::string>& classes) {
  if (golds.size() != preds.size())
    throw Error(Errc::length_mismatch,
                std::to_string(golds.size()) + " golds vs " +
                    std::to_string(preds.size()) + " preds");
  ConfusionMatrix cm;
  cm.classes = classes;
  cm.counts.assign(classes.size(), std::vector<long>(classes.size(), 0));
  auto index_of = [&classes](const std::string& label) {
    auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end())
      throw Error(Errc::unknown_label, "'" + label + "'");
    return static_cast<std::size_t>(it - classes.begin());
  };
  for (std::size_t i = 0; i < golds.size(); ++i)
    ++cm.counts[index_of(golds[i])][index_of(preds[i])];
  return cm;
}

std::map<std::string, ClassMetrics> per_class_metrics(
    const ConfusionMatrix& cm) {
  std::map<std::string, ClassMetrics> out;
  const std::size_t k = cm.classes.size();
  for (std::size_t i = 0; i < k; ++i) {
    long tp = cm.counts[i][i];
    long gold = 0, predicted = 0;
    for (std::size_t j = 0; j < k; ++j) {
      gold += cm.counts[i][j];
      predicted += cm.counts[j][i];
    }
    ClassMetrics m;
    m.support = gold;
    m.precision = predicted > 0
                      ? static_cast<double>(tp) / static_cast<double>(predicted)
                      : 0.0;
    m.recall = gold > 0 ? static_cast<double>(tp) / static_cast<double>(gold)
                        : 0.0;
    m.f1 = (m.precision + m.recall) > 0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    out[cm.classes[i]] = m;
  }
  return out;
}

MacroMetrics macro_average(const std::vector<std::string>& classes,
                           const std::map<std::string, ClassMetrics>& per_class) {
  MacroMetrics macro;
  if (classes.empty()) return macro;
  for (const auto& label : classes) {
    const ClassMetrics& m = per_class.at(label);
    macro.precision += m.precision;
    macro.recall += m.recall;
    macro.f1 += m.f1;
  }
  const auto k = static_cast<double>(classes.size());
  macro.precision /= k;
  macro.recall /= k;
  macro.f1 /= k;
  return macro;
}

MacroMetrics macro_average(const ConfusionMatrix& cm) {
  return macro_average(cm.classes, per_class_metrics(cm));
}

MetricsReport metrics_report(const ConfusionMatrix& cm) {
  MetricsReport report;
  report.classes = cm.classes;
  report.per_class = per_class_metrics(cm);
  report.macro = macro_average(cm.classes, report.per_class);
  return report;
}

std::string render_results_table(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(28) << "Model" << std::setw(11) << "Eval. set"
     << std::right << std::setw(7) << "P" << std::setw(7) << "R"
     << std::setw(7) << "F1" << "\n";
  for (const auto& row : rows) {
    os << std::left << std::setw(28) << row.model << std::setw(11)
       << row.eval_set << std::right << std::setw(7)
       << text::percent_1dp(row.macro.precision) << std::setw(7)
       << text::percent_1dp(row.macro.recall) << std::setw(7)
       << text::percent_1dp(row.macro.f1) << "\n";
  }
  return os.str();
}

std::string results_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << "model,eval_set,precision,recall,f1\n";
  for (const auto& row : rows)
    os << row.model << "," << row.eval_set << ","
       << text::percent_1dp(row.macro.precision) << ","
       << text::percent_1dp(row.macro.recall) << ","
       << text::percent_1dp(row.macro.f1) << "\n";
  return os.str();
}

std::string metrics_report_json(const MetricsReport& report) {
  nlohmann::json j;
  j["classes"] = report.classes;
  for (const auto& [label, m] : report.per_class) {
    j["per_class"][label] = {{"precision", m.precision},
                             {"recall", m.recall},
                             {"f1", m.f1},
                             {"support", m.support}};
  }
  j["macro"] = {{"precision", report.macro.precision},
                {"recall", report.macro.recall},
                {"f1", report.macro.f1}};
  return j.dump(2);
}

CaseReport case_report(const ArgumentGraph& g,
                       const std::vector<CasePredictions>& predictions) {
  CaseReport report;
  report.doc_id = g.doc_id;
  for (const auto& adu : g.adus) {
    report.adu_ids.push_back(adu.id);
    report.gold_stances.push_back(adu.stance);
  }
  for (const auto& e : g.edges) {
    if (e.rel == RelationType::segment) continue;
    report.edge_ids.push_back(e.id);
    report.gold_relations.push_back(e.rel);
  }

  for (const auto& model : predictions) {
    CaseReport::StanceRow srow;
    srow.model_name = model.model_name;
    for (std::size_t i = 0; i < report.adu_ids.size(); ++i) {
      auto it = model.adu_stance.find(report.adu_ids[i]);
      if (it == model.adu_stance.end())
        throw Error(Errc::missing_prediction,
                    model.model_name + " lacks a stance for " +
                        report.adu_ids[i]);
      srow.predicted.push_back(it->second);
      srow.mismatch.push_back(it->second != report.gold_stances[i]);
    }
    report.stance_rows.push_back(std::move(srow));

    if (!model.edge_relation.empty() || report.edge_ids.empty()) {
      CaseReport::RelationRow rrow;
      rrow.model_name = model.model_name;
      for (std::size_t i = 0; i < report.edge_ids.size(); ++i) {
        auto it = model.edge_relation.find(report.edge_ids[i]);
        if (it == model.edge_relation.end())
          throw Error(Errc::missing_prediction,
                      model.model_name + " lacks a relation for " +
                          report.edge_ids[i]);
        rrow.predicted.push_back(it->second);
        rrow.mismatch.push_back(it->second != report.gold_relations[i]);
      }
      report.relation_rows.push_back(std::move(rrow));
    }
  }
  return report;
}

std::string render_case_report(const CaseReport& report) {
  std::ostringstream os;
  os << "Case " << report.doc_id << " - ADU stances ('*' marks a mismatch)\n";
  os << std::left << std::setw(24) << "Model";
  for (const auto& id : report.adu_ids)
    os << std::setw(10) << id;
  os << "\n" << std::setw(24) << "Gold";
  for (Stance s : report.gold_stances) os << std::setw(10) << to_string(s);
  os << "\n";
  for (const auto& row : report.stance_rows) {
    os << std::setw(24) << row.model_name;
    for (std::size_t i = 0; i < row.predicted.size(); ++i) {
      std::string cell = to_string(row.predicted[i]);
      if (row.mismatch[i]) cell += "*";
      os << std::setw(10) << cell;
    }
    os << "\n";
  }
  if (!report.edge_ids.empty() && !report.relation_rows.empty()) {
    os << "\nCase " << report.doc_id << " - relations\n";
    os << std::left << std::setw(24) << "Model";
    for (const auto& id : report.edge_ids) os << std::setw(10) << id;
    os << "\n" << std::setw(24) << "Gold";
    for (RelationType r : report.gold_relations)
      os << std::setw(10) << to_string(r);
    os << "\n";
    for (const auto& row : report.relation_rows) {
      os << std::setw(24) << row.model_name;
      for (std::size_t i = 0; i < row.predicted.size(); ++i) {
        std::string cell = to_string(row.predicted[i]);
        if (row.mismatch[i]) cell += "*";
        os << std::setw(10) << cell;
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace argmine
