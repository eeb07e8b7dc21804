#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "argmine/graph.hpp"

namespace argmine {

struct ParseOptions {
  // strict: unknown edge types and invariant breaches are hard errors.
  // lenient: unknown edge types are quarantined and dropped with a warning,
  // and validation failures do not throw.
  bool strict = true;
};

struct ParseResult {
  ArgumentGraph graph;
  std::vector<std::string> warnings;
  // Unknown-edge-type records dropped in lenient mode (D-quarantine).
  std::vector<std::string> quarantined_edges;
};

ParseResult parse_microtext(const std::string& xml, Language language,
                            const ParseOptions& options = {});

std::string serialize_microtext(const ArgumentGraph& g);

struct Corpus {
  Language language = Language::en;
  std::vector<ArgumentGraph> documents;  // sorted by doc_id

  const ArgumentGraph* find(const std::string& doc_id) const;
};

struct FileError {
  std::string file;
  std::string message;
};

struct LoadReport {
  std::size_t loaded = 0;
  std::vector<FileError> errors;
  std::vector<std::string> warnings;
};

// Loads every *.xml under dir in lexicographic order. In strict mode any
// per-file failure aborts the load with the file names in the message; in
// lenient mode failing files are skipped and recorded in the report.
Corpus load_corpus(const std::filesystem::path& dir, Language language,
                   const ParseOptions& options = {},
                   LoadReport* report = nullptr);

struct StatsTable {
  long long documents = 0;
  long long sentences = 0;  // EDU count, see corpus_stats
  long long words = 0;
  long long pro_count = 0;
  long long con_count = 0;
  long long pro_words = 0;
  long long con_words = 0;
};

// Words are counted by Unicode-whitespace tokenization of EDU texts; the
// sentences row reports the EDU count, the only segmentation the corpus
// carries.
StatsTable corpus_stats(const Corpus& c);

struct ParallelCorpus {
  struct Pair {
    const ArgumentGraph* en;
    const ArgumentGraph* fa;
  };
  std::vector<Pair> pairs;
};

// Matches documents by doc_id and checks per-pair structural isomorphism:
// identical ADU id/stance sets and identical non-segment edges. Segmentation
// is language-specific and not compared. Throws UNMATCHED_DOC or
// STRUCTURE_MISMATCH.
ParallelCorpus pair_parallel(const Corpus& en, const Corpus& fa);

// ---- Persuasive-Essays (brat standoff) ----

enum class PeKind { major_claim, claim, premise };
enum class PeRelationKind { support, attack };
enum class PeStance { for_, against };

const char* to_string(PeKind k);

struct PeComponent {
  std::string id;
  PeKind kind = PeKind::premise;
  std::size_t start = 0;  // codepoint offsets into the essay text
  std::size_t end = 0;
  std::string text;
};

struct PeRelation {
  std::string source_id;
  std::string target_id;
  PeRelationKind kind = PeRelationKind::support;
};

struct PEDocument {
  std::string essay_id;
  std::vector<PeComponent> components;
  std::vector<PeRelation> relations;
  std::map<std::string, PeStance> claim_stances;

  const PeComponent* find(const std::string& id) const;
};

// Parses a brat .ann next to its .txt. Offsets are Unicode codepoints; the
// surface text on T lines is checked against the essay slice (brat maps
// newlines to spaces there). Throws OFFSET_ERROR, DANGLING_RELATION,
// MISSING_STANCE, SCHEMA_ERROR.
PEDocument parse_pe(const std::string& ann_text, const std::string& essay_text,
                    const std::string& essay_id = "");

// Canonical corpus dump: one JSON object per document, sorted keys (D8-style
// byte-stable output).
void dump_corpus_jsonl(const Corpus& c, std::ostream& os);

// Aligned-column stats table with the Table-2 row labels. fa may be null.
std::string render_stats_table(const StatsTable& en, const StatsTable* fa);

}  // namespace argmine
