#include <algorithm>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "argmine/corpus.hpp"
#include "argmine/error.hpp"

namespace argmine {

namespace {

namespace pt = boost::property_tree;

std::string attr(const pt::ptree& node, const std::string& name,
                 const std::string& context) {
  auto v = node.get_optional<std::string>("<xmlattr>." + name);
  if (!v)
    throw Error(Errc::schema_error,
                context + " is missing attribute '" + name + "'");
  return *v;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

ParseResult parse_microtext(const std::string& xml, Language language,
                            const ParseOptions& options) {
  pt::ptree tree;
  std::istringstream in(xml);
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw Error(Errc::parse_error, e.what());
  }

  auto graph_node = tree.get_child_optional("arggraph");
  if (!graph_node)
    throw Error(Errc::schema_error, "missing <arggraph> root element");

  ParseResult result;
  ArgumentGraph& g = result.graph;
  g.doc_id = attr(*graph_node, "id", "<arggraph>");
  g.language = language;
  if (auto lang = graph_node->get_optional<std::string>("<xmlattr>.lang")) {
    if (language_from_string(*lang) != language)
      throw Error(Errc::schema_error, "document '" + g.doc_id +
                                          "' declares lang '" + *lang +
                                          "' but was loaded as " +
                                          to_string(language));
  }
  g.topic = graph_node->get<std::string>("<xmlattr>.topic_id", "");

  for (const auto& [key, node] : *graph_node) {
    if (key == "edu") {
      Edu edu;
      edu.id = attr(node, "id", "<edu>");
      edu.text = node.get_value<std::string>();
      g.edus.push_back(std::move(edu));
    } else if (key == "adu") {
      Adu adu;
      adu.id = attr(node, "id", "<adu>");
      adu.stance = stance_from_string(attr(node, "stance", "<adu>"));
      g.adus.push_back(adu);
    } else if (key == "edge") {
      const std::string id = attr(node, "id", "<edge>");
      const std::string rel = attr(node, "rel", "<edge>");
      auto rel_type = relation_from_string(rel);
      if (!rel_type) {
        if (options.strict)
          throw Error(Errc::parse_error, "document '" + g.doc_id +
                                             "': unknown edge type '" + rel +
                                             "' on edge '" + id + "'");
        result.quarantined_edges.push_back(id);
        result.warnings.push_back("dropped edge '" + id +
                                  "' with unknown type '" + rel + "'");
        continue;
      }
      Edge edge;
      edge.id = id;
      edge.rel = *rel_type;
      edge.source = attr(node, "src", "<edge>");
      edge.target = attr(node, "trg", "<edge>");
      g.edges.push_back(std::move(edge));
    }
  }

  ValidationReport report = validate_graph(g);
  if (!report.ok) {
    if (options.strict) {
      std::string detail;
      for (const auto& v : report.violations) {
        if (!detail.empty()) detail += "; ";
        detail += v.code + "(" + v.offending_id + ")";
      }
      throw Error(Errc::validation_error,
                  "document '" + g.doc_id + "': " + detail);
    }
    for (const auto& v : report.violations)
      result.warnings.push_back(g.doc_id + ": " + v.code + " on " +
                                v.offending_id);
  }
  return result;
}

std::string serialize_microtext(const ArgumentGraph& g) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<arggraph id=\"" << xml_escape(g.doc_id) << "\" lang=\""
     << to_string(g.language) << "\"";
  if (!g.topic.empty()) os << " topic_id=\"" << xml_escape(g.topic) << "\"";
  os << ">\n";
  for (const auto& e : g.edus)
    os << "  <edu id=\"" << xml_escape(e.id) << "\">" << xml_escape(e.text)
       << "</edu>\n";
  for (const auto& a : g.adus)
    os << "  <adu id=\"" << xml_escape(a.id) << "\" stance=\""
       << to_string(a.stance) << "\"/>\n";
  for (const auto& e : g.edges)
    os << "  <edge id=\"" << xml_escape(e.id) << "\" rel=\"" << to_string(e.rel)
       << "\" src=\"" << xml_escape(e.source) << "\" trg=\""
       << xml_escape(e.target) << "\"/>\n";
  os << "</arggraph>\n";
  return os.str();
}

const ArgumentGraph* Corpus::find(const std::string& doc_id) const {
  for (const auto& d : documents)
    if (d.doc_id == doc_id) return &d;
  return nullptr;
}

Corpus load_corpus(const std::filesystem::path& dir, Language language,
                   const ParseOptions& options, LoadReport* report) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw Error(Errc::io_error, "not a directory: " + dir.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xml")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  Corpus corpus;
  corpus.language = language;
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  if (files.empty())
    rep.warnings.push_back("no .xml files under " + dir.string());

  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      rep.errors.push_back({file.string(), "unreadable"});
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      ParseResult r = parse_microtext(buf.str(), language, options);
      for (const auto& w : r.warnings)
        rep.warnings.push_back(file.filename().string() + ": " + w);
      corpus.documents.push_back(std::move(r.graph));
      ++rep.loaded;
    } catch (const Error& e) {
      rep.errors.push_back({file.string(), e.what()});
    }
  }

  if (options.strict && !rep.errors.empty()) {
    std::string files_list;
    for (const auto& e : rep.errors) {
      if (!files_list.empty()) files_list += "; ";
      files_list += e.file + " (" + e.message + ")";
    }
    throw Error(Errc::parse_error, std::to_string(rep.errors.size()) +
                                       " file(s) failed: " + files_list);
  }

  std::sort(corpus.documents.begin(), corpus.documents.end(),
            [](const ArgumentGraph& a, const ArgumentGraph& b) {
              return a.doc_id < b.doc_id;
            });
  return corpus;
}

ParallelCorpus pair_parallel(const Corpus& en, const Corpus& fa) {
  for (const auto& d : fa.documents)
    if (en.find(d.doc_id) == nullptr)
      throw Error(Errc::unmatched_doc, d.doc_id);

  ParallelCorpus out;
  for (const auto& den : en.documents) {
    const ArgumentGraph* dfa = fa.find(den.doc_id);
    if (dfa == nullptr) throw Error(Errc::unmatched_doc, den.doc_id);

    std::vector<std::string> mismatches;
    std::map<std::string, Stance> en_adus, fa_adus;
    for (const auto& a : den.adus) en_adus[a.id] = a.stance;
    for (const auto& a : dfa->adus) fa_adus[a.id] = a.stance;
    for (const auto& [id, st] : en_adus) {
      auto it = fa_adus.find(id);
      if (it == fa_adus.end() || it->second != st) mismatches.push_back(id);
    }
    for (const auto& [id, st] : fa_adus)
      if (!en_adus.count(id)) mismatches.push_back(id);

    // Argumentative edges must agree; segmentation may differ per language.
    auto edge_key = [](const Edge& e) {
      return e.id + "|" + to_string(e.rel) + "|" + e.source + "|" + e.target;
    };
    std::set<std::string> en_edges, fa_edges;
    for (const auto& e : den.edges)
      if (e.rel != RelationType::segment) en_edges.insert(edge_key(e));
    for (const auto& e : dfa->edges)
      if (e.rel != RelationType::segment) fa_edges.insert(edge_key(e));
    if (en_edges != fa_edges) mismatches.push_back("<edges>");

    if (!mismatches.empty()) {
      std::string ids;
      for (const auto& m : mismatches) ids += (ids.empty() ? "" : ",") + m;
      throw Error(Errc::structure_mismatch, den.doc_id + ": " + ids);
    }
    out.pairs.push_back({&den, dfa});
  }
  return out;
}

}  // namespace argmine
