#include "argmine/pipeline.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "argmine/digest.hpp"
#include "argmine/error.hpp"
#include "argmine/text.hpp"

namespace argmine {

using nlohmann::json;
namespace fs = std::filesystem;

std::filesystem::path RunConfig::run_dir() const {
  return fs::path(output_dir) / run_id;
}

json parse_config_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::config_error, "cannot read config " + file.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded())
    throw Error(Errc::config_error, "config is not valid JSON: " + file.string());
  return doc;
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw Error(Errc::config_error,
                "override must look like key.path=value: " + assignment);
  const std::string path = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty())
      throw Error(Errc::config_error, "bad override path: " + path);
    if (dot == std::string::npos) {
      json parsed = json::parse(value, nullptr, false);
      (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

RunConfig run_config_from_json(const json& doc) {
  RunConfig cfg;
  cfg.raw = doc;
  cfg.config_digest = sha256_hex(doc.dump());

  const json corpus = doc.value("corpus", json::object());
  cfg.en_dir = corpus.value("en_dir", "");
  cfg.fa_dir = corpus.value("fa_dir", "");
  cfg.pe_dir = corpus.value("pe_dir", "");
  cfg.scenario = scenario_from_string(doc.value("scenario", "zero_shot"));
  const json split = doc.value("split", json::object());
  cfg.ratios.train = split.value("train", 0.7);
  cfg.ratios.val = split.value("val", 0.1);
  cfg.ratios.test = split.value("test", 0.2);
  cfg.allow_empty_splits = split.value("allow_empty", false);
  cfg.seed = doc.value("seed", 13ULL);
  cfg.output_dir = doc.value("output_dir", "out");
  cfg.run_id = doc.value("run_id", cfg.config_digest.substr(0, 12));

  if (doc.contains("augmentation")) {
    const json& aug = doc.at("augmentation");
    cfg.target_per_class = aug.value("target_per_class", 665);
    if (aug.contains("generator")) {
      const json& gen = aug.at("generator");
      cfg.has_generator = true;
      cfg.generator.name = gen.value("name", "replay");
      cfg.generator.endpoint = gen.value("endpoint", "");
      cfg.generator.prompt_template = gen.value(
          "prompt_template",
          "Write one standalone {stance} argument about {topic}.");
      if (gen.contains("decoding"))
        for (const auto& [k, v] : gen.at("decoding").items())
          cfg.generator.decoding[k] =
              v.is_string() ? v.get<std::string>() : v.dump();
    }
  }

  const json model = doc.value("model", json::object());
  cfg.model.encoder_id = model.value("encoder_id", "tiny");
  cfg.model.n_stance_classes = model.value("n_stance_classes", 2);
  cfg.model.n_relation_classes = model.value("n_relation_classes", 4);
  cfg.model.max_length = model.value("max_length", 128);

  const json train = doc.value("train", json::object());
  cfg.train.learning_rate = train.value("learning_rate", 5e-6);
  cfg.train.batch_size = train.value("batch_size", 16);
  cfg.train.max_epochs = train.value("max_epochs", 100);
  cfg.train.patience = train.value("patience", 3);
  cfg.train.weight_decay = train.value("weight_decay", 0.01);
  cfg.train.seed = derive_seed(cfg.seed, "train");

  if (cfg.en_dir.empty())
    throw Error(Errc::config_error, "corpus.en_dir is required");
  if (cfg.scenario == Scenario::llm_aug && !cfg.has_generator)
    throw Error(Errc::config_error,
                "scenario llm_aug requires augmentation.generator");
  if (cfg.scenario == Scenario::cross_lingual && cfg.fa_dir.empty())
    throw Error(Errc::config_error,
                "scenario cross_lingual requires corpus.fa_dir");
  return cfg;
}

std::string scenario_display_name(const RunConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::zero_shot: return "Zero-shot transfer";
    case Scenario::llm_aug:
      return "LLM-augmented (" +
             (cfg.generator.name.empty() ? std::string("?") : cfg.generator.name) +
             ")";
    case Scenario::cross_lingual: return "EN+FA Cross-lingual";
  }
  return "?";
}

Pipeline::Pipeline(const RunConfig& cfg, bool force, std::ostream& log)
    : cfg_(cfg), force_(force), log_(log), manifest_(json::object()) {
  fs::create_directories(cfg_.run_dir());
  const fs::path manifest_path = cfg_.run_dir() / "manifest.json";
  if (fs::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    manifest_ = json::parse(in, nullptr, false);
    if (manifest_.is_discarded()) manifest_ = json::object();
  }
  manifest_["config_digest"] = cfg_.config_digest;
  manifest_["run_id"] = cfg_.run_id;
}

bool Pipeline::stage_done(const std::string& stage,
                          const std::vector<fs::path>& outputs) const {
  if (force_) return false;
  if (!manifest_.contains("stages") || !manifest_["stages"].contains(stage))
    return false;
  if (manifest_["stages"][stage].value("config_digest", "") !=
      cfg_.config_digest)
    return false;
  for (const auto& p : outputs)
    if (!fs::exists(p)) return false;
  return true;
}

void Pipeline::mark_stage(const std::string& stage,
                          const std::vector<fs::path>& outputs) {
  json record;
  record["config_digest"] = cfg_.config_digest;
  json artifact_digests = json::object();
  for (const auto& p : outputs) {
    std::ifstream in(p, std::ios::binary);
    if (in) {
      std::ostringstream buf;
      buf << in.rdbuf();
      artifact_digests[p.filename().string()] = sha256_hex(buf.str());
    }
  }
  record["artifacts"] = artifact_digests;
  manifest_["stages"][stage] = record;
  std::ofstream out(cfg_.run_dir() / "manifest.json", std::ios::binary);
  out << manifest_.dump(2) << "\n";
}

void Pipeline::load_corpora() {
  if (corpora_loaded_) return;
  LoadReport report;
  en_ = load_corpus(cfg_.en_dir, Language::en, {}, &report);
  log_ << "loaded " << en_.documents.size() << " EN documents from "
       << cfg_.en_dir << "\n";
  if (!cfg_.fa_dir.empty()) {
    LoadReport fa_report;
    fa_ = load_corpus(cfg_.fa_dir, Language::fa, {}, &fa_report);
    has_fa_ = true;
    log_ << "loaded " << fa_.documents.size() << " FA documents from "
         << cfg_.fa_dir << "\n";
  }
  corpora_loaded_ = true;
}

void Pipeline::run_augment() {
  if (cfg_.scenario != Scenario::llm_aug) return;
  const fs::path synth_path = cfg_.run_dir() / "synth.jsonl";
  const fs::path review_path = cfg_.run_dir() / "review_rejected.csv";
  if (stage_done("augment", {synth_path})) {
    log_ << "augment: up to date\n";
    return;
  }
  load_corpora();

  std::vector<std::string> ids;
  for (const auto& d : en_.documents) ids.push_back(d.doc_id);
  auto splits = make_splits(ids, cfg_.ratios, derive_seed(cfg_.seed, "split"),
                            cfg_.allow_empty_splits);

  std::map<Stance, int> counts{{Stance::pro, 0}, {Stance::con, 0}};
  std::set<std::string> existing;
  std::set<std::string> topics;
  for (const auto& d : en_.documents) {
    const bool in_train = splits.by_doc.at(d.doc_id) == SplitName::train;
    for (const auto& adu : d.adus) {
      const std::string t = adu_text(d, adu.id);
      existing.insert(text::normalize_for_dedup(t));
      if (in_train) ++counts[adu.stance];
    }
    if (in_train && !d.topic.empty()) topics.insert(d.topic);
  }

  auto generator = make_generator(cfg_.generator);
  std::vector<std::string> topic_hints(topics.begin(), topics.end());
  AugmentationRun run = run_augmentation(counts, *generator,
                                         cfg_.target_per_class, existing,
                                         topic_hints);
  log_ << "augment: accepted " << run.accepted.size() << ", rejected "
       << run.rejected.size() << " in " << run.generator_calls << " calls\n";
  for (const auto& w : run.warnings) log_ << "  warning: " << w << "\n";
  write_synth_jsonl(run.accepted, synth_path);
  write_review_csv(run.rejected, review_path);
  mark_stage("augment", {synth_path});
}

DatasetBundle Pipeline::assemble() {
  load_corpora();
  std::vector<StanceExample> synth;
  if (cfg_.scenario == Scenario::llm_aug) {
    const fs::path synth_path = cfg_.run_dir() / "synth.jsonl";
    for (const auto& adu : load_synth_jsonl(synth_path)) {
      StanceExample x;
      x.doc_id = "synth";
      x.adu_id = adu.generator_name;
      x.text = adu.text;
      x.label = adu.stance;
      x.language = Language::en;
      synth.push_back(std::move(x));
    }
  }
  ScenarioConfig scfg;
  scfg.scenario = cfg_.scenario;
  scfg.ratios = cfg_.ratios;
  scfg.seed = derive_seed(cfg_.seed, "split");
  scfg.allow_empty_splits = cfg_.allow_empty_splits;
  scfg.config_digest = cfg_.config_digest;
  return assemble_scenario(scfg, en_, has_fa_ ? &fa_ : nullptr, synth);
}

void Pipeline::run_build() {
  const fs::path bundle_dir = cfg_.run_dir() / "bundle";
  if (stage_done("build", {bundle_dir / "manifest.json"})) {
    log_ << "build: up to date\n";
    return;
  }
  run_augment();
  DatasetBundle bundle = assemble();
  write_bundle(bundle, bundle_dir);
  log_ << "build: bundle " << bundle.manifest.content_digest.substr(0, 12)
       << " with " << bundle.stance_train.size() << " stance_train examples\n";
  mark_stage("build", {bundle_dir / "manifest.json"});
}

void Pipeline::run_train() {
  const fs::path checkpoint = cfg_.run_dir() / "checkpoint";
  if (stage_done("train", {checkpoint / "weights.bin"})) {
    log_ << "train: up to date\n";
    return;
  }
  run_build();
  DatasetBundle bundle = load_bundle(cfg_.run_dir() / "bundle");
  TwoHeadClassifier model(cfg_.model, derive_seed(cfg_.seed, "init"));
  for (const auto& w : model.build_warnings()) log_ << "  warning: " << w << "\n";
  TrainedModel trained = train(model, bundle, cfg_.train);
  save_trained(trained, checkpoint);
  log_ << "train: " << trained.history.size() << " epochs, best epoch "
       << trained.best_epoch << ", best eval_loss "
       << trained.history[static_cast<std::size_t>(trained.best_epoch)].eval_loss
       << "\n";
  mark_stage("train", {checkpoint / "weights.bin"});
}

void Pipeline::run_eval() {
  const fs::path reports = cfg_.run_dir() / "reports";
  if (stage_done("eval", {reports / "results.json"})) {
    log_ << "eval: up to date\n";
    return;
  }
  run_train();
  DatasetBundle bundle = load_bundle(cfg_.run_dir() / "bundle");
  TwoHeadClassifier model = TwoHeadClassifier::load(cfg_.run_dir() / "checkpoint");
  fs::create_directories(reports);

  json results;
  results["model"] = scenario_display_name(cfg_);
  std::vector<Language> langs{Language::en};
  if (!cfg_.fa_dir.empty()) langs.push_back(Language::fa);
  for (Language lang : langs) {
    for (Task task : {Task::stance, Task::relation}) {
      const char* task_name = task == Task::stance ? "stance" : "relation";
      const std::string key = std::string(task_name) + "_" + to_string(lang);
      MetricsReport r;
      try {
        r = evaluate_model(model, bundle, SplitName::test, task, lang);
      } catch (const Error& e) {
        if (e.code() == Errc::empty_split) {
          log_ << "eval: skipping " << key << " (" << e.what() << ")\n";
          continue;
        }
        throw;
      }
      results["reports"][key] = json::parse(metrics_report_json(r));
      std::ofstream out(reports / (key + ".json"), std::ios::binary);
      out << metrics_report_json(r) << "\n";
    }
  }
  std::ofstream out(reports / "results.json", std::ios::binary);
  out << results.dump(2) << "\n";
  log_ << "eval: wrote " << (reports / "results.json").string() << "\n";
  mark_stage("eval", {reports / "results.json"});
}

void Pipeline::run_report() {
  const fs::path reports = cfg_.run_dir() / "reports";
  run_eval();
  std::ifstream in(reports / "results.json");
  if (!in)
    throw Error(Errc::io_error, "missing " + (reports / "results.json").string());
  json results = json::parse(in);

  std::vector<ResultRow> rows;
  const std::string model_name = results.value("model", "model");
  for (const char* lang : {"en", "fa"}) {
    const std::string key = std::string("stance_") + lang;
    if (!results["reports"].contains(key)) continue;
    const json& macro = results["reports"][key]["macro"];
    ResultRow row;
    row.model = model_name;
    row.eval_set = lang == std::string("en") ? "EN" : "FA";
    row.macro.precision = macro.at("precision").get<double>();
    row.macro.recall = macro.at("recall").get<double>();
    row.macro.f1 = macro.at("f1").get<double>();
    rows.push_back(row);
  }
  const std::string table = render_results_table(rows);
  std::ofstream out(reports / "results.txt", std::ios::binary);
  out << table;
  std::ofstream csv(reports / "results.csv", std::ios::binary);
  csv << results_csv(rows);
  log_ << table;
  mark_stage("report", {reports / "results.txt"});
}

void Pipeline::run_all() {
  run_augment();
  run_build();
  run_train();
  run_eval();
  run_report();
}

}  // namespace argmine
