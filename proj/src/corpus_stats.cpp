#include <iomanip>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "argmine/corpus.hpp"
#include "argmine/error.hpp"
#include "argmine/text.hpp"

namespace argmine {

StatsTable corpus_stats(const Corpus& c) {
  StatsTable t;
  t.documents = static_cast<long long>(c.documents.size());
  for (const auto& g : c.documents) {
    t.sentences += static_cast<long long>(g.edus.size());
    for (const auto& edu : g.edus)
      t.words += static_cast<long long>(text::count_words(edu.text));
    for (const auto& adu : g.adus) {
      const long long w =
          static_cast<long long>(text::count_words(adu_text(g, adu.id)));
      if (adu.stance == Stance::pro) {
        ++t.pro_count;
        t.pro_words += w;
      } else {
        ++t.con_count;
        t.con_words += w;
      }
    }
  }
  return t;
}

void dump_corpus_jsonl(const Corpus& c, std::ostream& os) {
  for (const auto& g : c.documents) {
    nlohmann::json doc;
    doc["doc_id"] = g.doc_id;
    doc["language"] = to_string(g.language);
    if (!g.topic.empty()) doc["topic"] = g.topic;
    nlohmann::json edus = nlohmann::json::array();
    for (const auto& e : g.edus) edus.push_back({{"id", e.id}, {"text", e.text}});
    nlohmann::json adus = nlohmann::json::array();
    for (const auto& a : g.adus)
      adus.push_back({{"id", a.id}, {"stance", to_string(a.stance)}});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges)
      edges.push_back({{"id", e.id},
                       {"rel", to_string(e.rel)},
                       {"src", e.source},
                       {"trg", e.target}});
    doc["edus"] = edus;
    doc["adus"] = adus;
    doc["edges"] = edges;
    os << doc.dump() << "\n";
  }
}

std::string render_stats_table(const StatsTable& en, const StatsTable* fa) {
  struct Row {
    const char* label;
    long long en;
    long long fa;
  };
  const Row rows[] = {
      {"Documents", en.documents, fa ? fa->documents : 0},
      {"Sentences", en.sentences, fa ? fa->sentences : 0},
      {"Words", en.words, fa ? fa->words : 0},
      {"pro", en.pro_count, fa ? fa->pro_count : 0},
      {"con", en.con_count, fa ? fa->con_count : 0},
      {"pro Words", en.pro_words, fa ? fa->pro_words : 0},
      {"con Words", en.con_words, fa ? fa->con_words : 0},
  };
  std::ostringstream os;
  os << std::left << std::setw(12) << "" << std::right << std::setw(8) << "EN";
  if (fa) os << std::setw(8) << "FA";
  os << "\n";
  for (const auto& row : rows) {
    os << std::left << std::setw(12) << row.label << std::right << std::setw(8)
       << text::with_thousands(row.en);
    if (fa) os << std::setw(8) << text::with_thousands(row.fa);
    os << "\n";
  }
  return os.str();
}

}  // namespace argmine
