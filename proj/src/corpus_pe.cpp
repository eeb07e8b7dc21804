#include <sstream>

#include "argmine/corpus.hpp"
#include "argmine/error.hpp"
#include "argmine/text.hpp"

namespace argmine {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

// brat renders newlines inside a span as spaces on the T line.
std::string flatten_newlines(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace

const char* to_string(PeKind k) {
  switch (k) {
    case PeKind::major_claim: return "MajorClaim";
    case PeKind::claim: return "Claim";
    case PeKind::premise: return "Premise";
  }
  return "?";
}

const PeComponent* PEDocument::find(const std::string& id) const {
  for (const auto& c : components)
    if (c.id == id) return &c;
  return nullptr;
}

PEDocument parse_pe(const std::string& ann_text, const std::string& essay_text,
                    const std::string& essay_id) {
  PEDocument doc;
  doc.essay_id = essay_id;
  const std::size_t essay_len = text::codepoint_length(essay_text);

  std::istringstream in(ann_text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tabs(line);
    const std::string& id = fields[0];
    auto where = [&] { return "line " + std::to_string(line_no); };

    if (id[0] == 'T') {
      if (fields.size() < 2)
        throw Error(Errc::schema_error, where() + ": malformed T line");
      std::istringstream spec(fields[1]);
      std::string kind_str;
      long start = -1, end = -1;
      spec >> kind_str >> start >> end;
      if (start < 0 || end < 0)
        throw Error(Errc::schema_error,
                    where() + ": bad span spec '" + fields[1] + "'");
      PeComponent comp;
      comp.id = id;
      if (kind_str == "MajorClaim") comp.kind = PeKind::major_claim;
      else if (kind_str == "Claim") comp.kind = PeKind::claim;
      else if (kind_str == "Premise") comp.kind = PeKind::premise;
      else
        throw Error(Errc::schema_error,
                    where() + ": unknown component kind '" + kind_str + "'");
      comp.start = static_cast<std::size_t>(start);
      comp.end = static_cast<std::size_t>(end);
      if (comp.end <= comp.start || comp.end > essay_len)
        throw Error(Errc::offset_error,
                    id + ": span " + std::to_string(start) + ".." +
                        std::to_string(end) + " outside essay of length " +
                        std::to_string(essay_len));
      comp.text = text::slice_codepoints(essay_text, comp.start, comp.end);
      if (fields.size() >= 3 && !fields[2].empty() &&
          flatten_newlines(comp.text) != fields[2])
        throw Error(Errc::offset_error,
                    id + ": annotated surface text does not match essay slice");
      doc.components.push_back(std::move(comp));
    } else if (id[0] == 'R') {
      if (fields.size() < 2)
        throw Error(Errc::schema_error, where() + ": malformed R line");
      std::istringstream spec(fields[1]);
      std::string kind_str, arg1, arg2;
      spec >> kind_str >> arg1 >> arg2;
      auto strip = [&](std::string& s, const char* prefix) {
        if (s.rfind(prefix, 0) == 0) s = s.substr(std::string(prefix).size());
      };
      strip(arg1, "Arg1:");
      strip(arg2, "Arg2:");
      PeRelation rel;
      rel.source_id = arg1;
      rel.target_id = arg2;
      if (kind_str == "supports" || kind_str == "support")
        rel.kind = PeRelationKind::support;
      else if (kind_str == "attacks" || kind_str == "attack")
        rel.kind = PeRelationKind::attack;
      else
        throw Error(Errc::schema_error,
                    where() + ": unknown relation kind '" + kind_str + "'");
      doc.relations.push_back(std::move(rel));
    } else if (id[0] == 'A') {
      if (fields.size() < 2)
        throw Error(Errc::schema_error, where() + ": malformed A line");
      std::istringstream spec(fields[1]);
      std::string attr_name, target, value;
      spec >> attr_name >> target >> value;
      if (attr_name != "Stance") continue;  // other attributes are ignored
      if (value == "For") doc.claim_stances[target] = PeStance::for_;
      else if (value == "Against") doc.claim_stances[target] = PeStance::against;
      else
        throw Error(Errc::schema_error,
                    where() + ": unknown stance value '" + value + "'");
    }
    // E/M/N lines and anything else brat emits are not used here.
  }

  for (const auto& rel : doc.relations) {
    if (doc.find(rel.source_id) == nullptr)
      throw Error(Errc::dangling_relation, rel.source_id);
    if (doc.find(rel.target_id) == nullptr)
      throw Error(Errc::dangling_relation, rel.target_id);
  }
  for (const auto& comp : doc.components) {
    if (comp.kind == PeKind::claim && !doc.claim_stances.count(comp.id))
      throw Error(Errc::missing_stance,
                  comp.id + " is a Claim without a for/against stance");
  }
  return doc;
}

}  // namespace argmine
