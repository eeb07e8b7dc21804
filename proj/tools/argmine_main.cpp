// argmine: command-line front end for the cross-lingual argument-mining
// pipeline. Commands: stats, validate, convert-pe, build, augment, train,
// eval, report, pipeline.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 runtime
// failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "argmine/corpus.hpp"
#include "argmine/error.hpp"
#include "argmine/pe_mapping.hpp"
#include "argmine/pipeline.hpp"

namespace {

using namespace argmine;
using nlohmann::json;
namespace fs = std::filesystem;

struct CommonOpts {
  std::string config_file;
  std::vector<std::string> overrides;
  std::string en_dir, fa_dir, pe_dir, out_dir, scenario, encoder;
  long long seed = -1;
  bool force = false;
};

void add_config_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config,-c", opts.config_file, "run config JSON");
  cmd->add_option("--set", opts.overrides,
                  "config override, key.path=value (repeatable)");
  cmd->add_option("--en-dir", opts.en_dir, "EN Microtext directory");
  cmd->add_option("--fa-dir", opts.fa_dir, "FA Microtext directory");
  cmd->add_option("--pe-dir", opts.pe_dir, "Persuasive-Essays directory");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--scenario", opts.scenario,
                  "zero_shot | llm_aug | cross_lingual");
  cmd->add_option("--encoder", opts.encoder, "encoder id (tiny/mini/base/path)");
  cmd->add_option("--seed", opts.seed, "master seed");
}

RunConfig build_run_config(const CommonOpts& opts) {
  json doc = json::object();
  if (!opts.config_file.empty()) doc = parse_config_json(opts.config_file);
  // Flags win over the file (D-config precedence).
  if (!opts.en_dir.empty()) doc["corpus"]["en_dir"] = opts.en_dir;
  if (!opts.fa_dir.empty()) doc["corpus"]["fa_dir"] = opts.fa_dir;
  if (!opts.pe_dir.empty()) doc["corpus"]["pe_dir"] = opts.pe_dir;
  if (!opts.out_dir.empty()) doc["output_dir"] = opts.out_dir;
  if (!opts.scenario.empty()) doc["scenario"] = opts.scenario;
  if (!opts.encoder.empty()) doc["model"]["encoder_id"] = opts.encoder;
  if (opts.seed >= 0) doc["seed"] = opts.seed;
  for (const auto& assignment : opts.overrides) apply_override(doc, assignment);
  return run_config_from_json(doc);
}

int cmd_stats(const CommonOpts& opts) {
  std::string en_dir = opts.en_dir;
  std::string fa_dir = opts.fa_dir;
  if (!opts.config_file.empty()) {
    json doc = parse_config_json(opts.config_file);
    if (en_dir.empty()) en_dir = doc["corpus"].value("en_dir", "");
    if (fa_dir.empty()) fa_dir = doc["corpus"].value("fa_dir", "");
  }
  if (en_dir.empty())
    throw Error(Errc::config_error, "stats needs --en-dir or a config");

  Corpus en = load_corpus(en_dir, Language::en);
  StatsTable en_stats = corpus_stats(en);
  if (fa_dir.empty() || !fs::is_directory(fa_dir)) {
    if (!fa_dir.empty())
      std::cerr << "warning: fa_dir '" << fa_dir << "' not found; EN only\n";
    std::cout << render_stats_table(en_stats, nullptr);
    return 0;
  }
  Corpus fa = load_corpus(fa_dir, Language::fa);
  StatsTable fa_stats = corpus_stats(fa);
  std::cout << render_stats_table(en_stats, &fa_stats);
  return 0;
}

int cmd_validate(const std::string& dir, const std::string& lang_str) {
  const Language lang = language_from_string(lang_str);
  LoadReport report;
  ParseOptions lenient{.strict = false};
  Corpus corpus = load_corpus(dir, lang, lenient, &report);
  std::size_t violation_count = 0;
  for (const auto& doc : corpus.documents) {
    ValidationReport vr = validate_graph(doc);
    for (const auto& v : vr.violations) {
      std::cout << doc.doc_id << ": " << v.code << " (" << v.offending_id
                << ") " << v.detail << "\n";
      ++violation_count;
    }
  }
  for (const auto& e : report.errors)
    std::cout << e.file << ": " << e.message << "\n";
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << corpus.documents.size() << " documents, " << violation_count
            << " violations, " << report.errors.size() << " unreadable files\n";
  return (violation_count == 0 && report.errors.empty()) ? 0 : 2;
}

int cmd_convert_pe(const CommonOpts& opts, bool lenient) {
  if (opts.pe_dir.empty())
    throw Error(Errc::config_error, "convert-pe needs --pe-dir");
  const fs::path out_dir = opts.out_dir.empty() ? "pe_converted" : opts.out_dir;
  fs::create_directories(out_dir);

  std::vector<fs::path> essays;
  for (const auto& entry : fs::directory_iterator(opts.pe_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      essays.push_back(entry.path());
  std::sort(essays.begin(), essays.end());

  int converted = 0;
  for (const auto& txt : essays) {
    fs::path ann = txt;
    ann.replace_extension(".ann");
    if (!fs::exists(ann)) {
      std::cerr << "warning: no .ann for " << txt << "\n";
      continue;
    }
    auto read_file = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      return buf.str();
    };
    const std::string essay_id = txt.stem().string();
    PEDocument doc = parse_pe(read_file(ann), read_file(txt), essay_id);
    auto [graph, trace] = map_pe_to_microtext(doc, {.lenient = lenient});
    for (const auto& w : trace.warnings)
      std::cerr << essay_id << ": " << w << "\n";

    std::ofstream xml(out_dir / (essay_id + ".xml"), std::ios::binary);
    xml << serialize_microtext(graph);
    std::ofstream tr(out_dir / (essay_id + ".trace.jsonl"), std::ios::binary);
    for (const auto& step : trace.steps) {
      json j{{"component_id", step.component_id},
             {"stance", to_string(step.assigned)},
             {"rule", to_string(step.rule)}};
      j["edge_label"] =
          step.edge_label ? json(to_string(*step.edge_label)) : json();
      tr << j.dump() << "\n";
    }
    ++converted;
  }
  std::cout << "converted " << converted << " essays into "
            << out_dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cross-lingual argument mining toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string validate_dir, validate_lang = "en";
  bool lenient = false;

  CLI::App* stats = app.add_subcommand("stats", "corpus statistics table");
  add_config_options(stats, opts);

  CLI::App* validate =
      app.add_subcommand("validate", "validate a corpus directory");
  validate->add_option("--dir", validate_dir, "corpus directory")->required();
  validate->add_option("--language", validate_lang, "en | fa");

  CLI::App* convert =
      app.add_subcommand("convert-pe", "map Persuasive-Essays annotations");
  add_config_options(convert, opts);
  convert->add_flag("--lenient", lenient, "drop unreachable components");

  for (const char* name : {"build", "augment", "train", "eval", "report",
                           "pipeline"}) {
    CLI::App* cmd = app.add_subcommand(
        name, std::string("run the ") + name + " stage");
    add_config_options(cmd, opts);
    cmd->add_flag("--force", opts.force, "re-run even if up to date");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (stats->parsed()) return cmd_stats(opts);
    if (validate->parsed()) return cmd_validate(validate_dir, validate_lang);
    if (convert->parsed()) return cmd_convert_pe(opts, lenient);

    RunConfig cfg = build_run_config(opts);
    Pipeline pipeline(cfg, opts.force, std::cout);
    if (app.get_subcommand("augment")->parsed()) pipeline.run_augment();
    else if (app.get_subcommand("build")->parsed()) pipeline.run_build();
    else if (app.get_subcommand("train")->parsed()) pipeline.run_train();
    else if (app.get_subcommand("eval")->parsed()) pipeline.run_eval();
    else if (app.get_subcommand("report")->parsed()) pipeline.run_report();
    else if (app.get_subcommand("pipeline")->parsed()) pipeline.run_all();
    return 0;
  } catch (const argmine::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
