#include "argmine/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "argmine/digest.hpp"
#include "argmine/error.hpp"

namespace argmine {

using nlohmann::json;

std::vector<StanceExample> extract_stance_examples(const ArgumentGraph& g) {
  std::vector<StanceExample> out;
  out.reserve(g.adus.size());
  for (const auto& adu : g.adus)
    out.push_back(
        {g.doc_id, adu.id, adu_text(g, adu.id), adu.stance, g.language});
  return out;
}

std::vector<RelationExample> extract_relation_examples(const ArgumentGraph& g) {
  std::vector<RelationExample> out;
  for (const auto& e : g.edges) {
    if (e.rel == RelationType::segment) continue;
    RelationExample x;
    x.doc_id = g.doc_id;
    x.edge_id = e.id;
    x.label = e.rel;
    x.language = g.language;
    if (e.rel == RelationType::undercut) {
      auto [src, proxy] = undercut_endpoints(g, e);
      x.text_a = adu_text(g, src);
      x.text_b = adu_text(g, proxy);
    } else {
      x.text_a = adu_text(g, e.source);
      x.text_b = adu_text(g, e.target);
    }
    out.push_back(std::move(x));
  }
  return out;
}

const char* to_string(SplitName s) {
  switch (s) {
    case SplitName::train: return "train";
    case SplitName::val: return "val";
    case SplitName::test: return "test";
  }
  return "?";
}

std::vector<std::string> SplitAssignment::docs(SplitName which) const {
  std::vector<std::string> out;
  for (const auto& [id, split] : by_doc)
    if (split == which) out.push_back(id);
  return out;
}

SplitAssignment make_splits(const std::vector<std::string>& ids,
                            const SplitRatios& ratios, std::uint64_t seed,
                            bool allow_empty) {
  const double sum = ratios.train + ratios.val + ratios.test;
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(Errc::config_error,
                "split ratios sum to " + std::to_string(sum) + ", expected 1");

  std::vector<std::string> shuffled = ids;
  std::sort(shuffled.begin(), shuffled.end());
  // Hand-rolled Fisher-Yates: std::shuffle's algorithm is not pinned by the
  // standard, and split assignments must be stable across toolchains.
  std::mt19937_64 rng(seed);
  for (std::size_t i = shuffled.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(shuffled[i - 1], shuffled[j]);
  }

  const std::size_t n = shuffled.size();
  const auto n_train = static_cast<std::size_t>(
      std::floor(ratios.train * static_cast<double>(n)));
  const auto n_val = static_cast<std::size_t>(
      std::floor(ratios.val * static_cast<double>(n)));
  const std::size_t n_test = n - n_train - n_val;

  if (!allow_empty && (n_train == 0 || n_val == 0 || n_test == 0))
    throw Error(Errc::empty_split,
                "split sizes (" + std::to_string(n_train) + "," +
                    std::to_string(n_val) + "," + std::to_string(n_test) +
                    ") contain an empty split");

  SplitAssignment out;
  out.seed = seed;
  for (std::size_t i = 0; i < n; ++i) {
    SplitName s = i < n_train               ? SplitName::train
                  : i < n_train + n_val     ? SplitName::val
                                            : SplitName::test;
    out.by_doc[shuffled[i]] = s;
  }
  return out;
}

Scenario scenario_from_string(const std::string& s) {
  if (s == "zero_shot") return Scenario::zero_shot;
  if (s == "llm_aug") return Scenario::llm_aug;
  if (s == "cross_lingual") return Scenario::cross_lingual;
  throw Error(Errc::config_error, "unknown scenario '" + s + "'");
}

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::zero_shot: return "zero_shot";
    case Scenario::llm_aug: return "llm_aug";
    case Scenario::cross_lingual: return "cross_lingual";
  }
  return "?";
}

namespace {

json to_json(const StanceExample& x) {
  return json{{"adu_id", x.adu_id},
              {"doc_id", x.doc_id},
              {"label", to_string(x.label)},
              {"language", to_string(x.language)},
              {"text", x.text}};
}

json to_json(const RelationExample& x) {
  return json{{"doc_id", x.doc_id},
              {"edge_id", x.edge_id},
              {"label", to_string(x.label)},
              {"language", to_string(x.language)},
              {"text_a", x.text_a},
              {"text_b", x.text_b}};
}

StanceExample stance_from_json(const json& j) {
  StanceExample x;
  x.doc_id = j.at("doc_id").get<std::string>();
  x.adu_id = j.at("adu_id").get<std::string>();
  x.text = j.at("text").get<std::string>();
  x.label = stance_from_string(j.at("label").get<std::string>());
  x.language = language_from_string(j.at("language").get<std::string>());
  return x;
}

RelationExample relation_from_json(const json& j) {
  RelationExample x;
  x.doc_id = j.at("doc_id").get<std::string>();
  x.edge_id = j.at("edge_id").get<std::string>();
  x.text_a = j.at("text_a").get<std::string>();
  x.text_b = j.at("text_b").get<std::string>();
  auto rel = relation_from_string(j.at("label").get<std::string>());
  if (!rel || *rel == RelationType::segment)
    throw Error(Errc::schema_error,
                "bad relation label '" + j.at("label").get<std::string>() + "'");
  x.label = *rel;
  x.language = language_from_string(j.at("language").get<std::string>());
  return x;
}

// Appends every example of the given documents, documents in sorted id
// order, to keep assembly deterministic.
template <typename ExampleT, typename ExtractFn>
void collect(const Corpus& corpus, const std::vector<std::string>& doc_ids,
             ExtractFn extract, std::vector<ExampleT>& out) {
  for (const auto& id : doc_ids) {
    const ArgumentGraph* g = corpus.find(id);
    if (g == nullptr) continue;
    auto xs = extract(*g);
    out.insert(out.end(), xs.begin(), xs.end());
  }
}

}  // namespace

DatasetBundle assemble_scenario(const ScenarioConfig& cfg, const Corpus& en,
                                const Corpus* fa,
                                const std::vector<StanceExample>& synth) {
  if (cfg.scenario == Scenario::llm_aug && synth.empty())
    throw Error(Errc::missing_synth,
                "llm_aug scenario requires synthetic stance examples");
  if (cfg.scenario == Scenario::cross_lingual && fa == nullptr)
    throw Error(Errc::unpaired_fa,
                "cross_lingual scenario requires the FA corpus");
  if (fa != nullptr) pair_parallel(en, *fa);  // structural check up front

  std::vector<std::string> ids;
  ids.reserve(en.documents.size());
  for (const auto& d : en.documents) ids.push_back(d.doc_id);

  DatasetBundle b;
  b.scenario = cfg.scenario;
  b.splits = make_splits(ids, cfg.ratios, cfg.seed, cfg.allow_empty_splits);

  const auto train_ids = b.splits.docs(SplitName::train);
  const auto val_ids = b.splits.docs(SplitName::val);
  const auto test_ids = b.splits.docs(SplitName::test);

  auto stance = [](const ArgumentGraph& g) { return extract_stance_examples(g); };
  auto relation = [](const ArgumentGraph& g) {
    return extract_relation_examples(g);
  };

  collect(en, train_ids, stance, b.stance_train);
  collect(en, val_ids, stance, b.stance_val);
  collect(en, test_ids, stance, b.stance_test);
  collect(en, train_ids, relation, b.relation_train);
  collect(en, val_ids, relation, b.relation_val);
  collect(en, test_ids, relation, b.relation_test);

  if (cfg.scenario == Scenario::llm_aug)
    b.stance_train.insert(b.stance_train.end(), synth.begin(), synth.end());

  if (cfg.scenario == Scenario::cross_lingual) {
    collect(*fa, train_ids, stance, b.stance_train);
    collect(*fa, val_ids, stance, b.stance_val);
    collect(*fa, train_ids, relation, b.relation_train);
    collect(*fa, val_ids, relation, b.relation_val);
  }
  if (fa != nullptr) {
    collect(*fa, test_ids, stance, b.stance_test);
    collect(*fa, test_ids, relation, b.relation_test);
  }

  b.manifest.scenario = to_string(cfg.scenario);
  b.manifest.seed = cfg.seed;
  b.manifest.config_digest = cfg.config_digest;
  b.manifest.counts = {
      {"stance_train", static_cast<long long>(b.stance_train.size())},
      {"stance_val", static_cast<long long>(b.stance_val.size())},
      {"stance_test", static_cast<long long>(b.stance_test.size())},
      {"relation_train", static_cast<long long>(b.relation_train.size())},
      {"relation_val", static_cast<long long>(b.relation_val.size())},
      {"relation_test", static_cast<long long>(b.relation_test.size())},
  };
  b.manifest.content_digest = sha256_hex(bundle_canonical_jsonl(b));
  return b;
}

std::string bundle_canonical_jsonl(const DatasetBundle& b) {
  std::ostringstream os;
  auto section = [&os](const char* name, const auto& xs) {
    os << "#" << name << "\n";
    for (const auto& x : xs) os << to_json(x).dump() << "\n";
  };
  section("stance_train", b.stance_train);
  section("stance_val", b.stance_val);
  section("stance_test", b.stance_test);
  section("relation_train", b.relation_train);
  section("relation_val", b.relation_val);
  section("relation_test", b.relation_test);
  return os.str();
}

namespace {

template <typename T, typename FromJson>
std::vector<T> read_jsonl(const std::filesystem::path& file, FromJson from) {
  std::vector<T> out;
  std::ifstream in(file);
  if (!in) throw Error(Errc::io_error, "cannot read " + file.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(from(json::parse(line)));
  }
  return out;
}

}  // namespace

void write_bundle(const DatasetBundle& b, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto write = [&](const char* name, const auto& xs) {
    std::ofstream out(dir / (std::string(name) + ".jsonl"), std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write under " + dir.string());
    for (const auto& x : xs) out << to_json(x).dump() << "\n";
  };
  write("stance_train", b.stance_train);
  write("stance_val", b.stance_val);
  write("stance_test", b.stance_test);
  write("relation_train", b.relation_train);
  write("relation_val", b.relation_val);
  write("relation_test", b.relation_test);

  json manifest;
  manifest["scenario"] = b.manifest.scenario;
  manifest["seed"] = b.manifest.seed;
  manifest["config_digest"] = b.manifest.config_digest;
  manifest["content_digest"] = b.manifest.content_digest;
  manifest["counts"] = b.manifest.counts;
  json splits;
  for (const auto& [id, split] : b.splits.by_doc)
    splits[id] = to_string(split);
  manifest["splits"] = splits;
  manifest["split_seed"] = b.splits.seed;
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << "\n";
}

DatasetBundle load_bundle(const std::filesystem::path& dir) {
  DatasetBundle b;
  b.stance_train = read_jsonl<StanceExample>(dir / "stance_train.jsonl",
                                             stance_from_json);
  b.stance_val =
      read_jsonl<StanceExample>(dir / "stance_val.jsonl", stance_from_json);
  b.stance_test =
      read_jsonl<StanceExample>(dir / "stance_test.jsonl", stance_from_json);
  b.relation_train = read_jsonl<RelationExample>(dir / "relation_train.jsonl",
                                                 relation_from_json);
  b.relation_val = read_jsonl<RelationExample>(dir / "relation_val.jsonl",
                                               relation_from_json);
  b.relation_test = read_jsonl<RelationExample>(dir / "relation_test.jsonl",
                                                relation_from_json);

  std::ifstream in(dir / "manifest.json");
  if (!in)
    throw Error(Errc::io_error,
                "missing manifest under " + dir.string());
  json manifest = json::parse(in);
  b.scenario = scenario_from_string(manifest.at("scenario").get<std::string>());
  b.manifest.scenario = manifest.at("scenario").get<std::string>();
  b.manifest.seed = manifest.at("seed").get<std::uint64_t>();
  b.manifest.config_digest = manifest.value("config_digest", "");
  b.manifest.content_digest = manifest.at("content_digest").get<std::string>();
  for (const auto& [k, v] : manifest.at("counts").items())
    b.manifest.counts[k] = v.get<long long>();
  b.splits.seed = manifest.value("split_seed", 0ULL);
  if (manifest.contains("splits")) {
    for (const auto& [id, split] : manifest.at("splits").items()) {
      const std::string s = split.get<std::string>();
      b.splits.by_doc[id] = s == "train"  ? SplitName::train
                            : s == "val" ? SplitName::val
                                         : SplitName::test;
    }
  }
  return b;
}

std::map<Stance, int> stance_histogram(const std::vector<StanceExample>& xs) {
  std::map<Stance, int> h{{Stance::pro, 0}, {Stance::con, 0}};
  for (const auto& x : xs) ++h[x.label];
  return h;
}

}  // namespace argmine
