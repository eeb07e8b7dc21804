#include <doctest.h>

#include <algorithm>
#include <random>

#include "argmine/corpus.hpp"
#include "argmine/error.hpp"
#include "argmine/graph.hpp"
#include "test_helpers.hpp"

using namespace argmine;
using argmine::testing::case1_graph;
using argmine::testing::case2_graph;
using argmine::testing::single_adu_graph;

namespace {

bool has_violation(const ValidationReport& r, const std::string& code) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

}  // namespace

TEST_CASE("case 1 graph validates clean") {
  ArgumentGraph g = case1_graph();
  ValidationReport r = validate_graph(g);
  CHECK(r.ok);
  CHECK(r.violations.empty());
}

TEST_CASE("two parentless ADUs report MULTIPLE_ROOTS") {
  ArgumentGraph g;
  g.doc_id = "twins";
  g.edus = {{"e1", "one"}, {"e2", "two"}};
  g.adus = {{"a1", Stance::pro}, {"a2", Stance::pro}};
  g.edges = {{"s1", RelationType::segment, "e1", "a1"},
             {"s2", RelationType::segment, "e2", "a2"}};
  ValidationReport r = validate_graph(g);
  CHECK_FALSE(r.ok);
  CHECK(has_violation(r, "MULTIPLE_ROOTS"));
}

TEST_CASE("undercut targeting an ADU reports BAD_UNDERCUT_TARGET") {
  ArgumentGraph g = case1_graph();
  for (auto& e : g.edges)
    if (e.id == "c2") e.target = "a1";
  ValidationReport r = validate_graph(g);
  CHECK_FALSE(r.ok);
  CHECK(has_violation(r, "BAD_UNDERCUT_TARGET"));
}

TEST_CASE("self loops and dangling refs are reported together") {
  ArgumentGraph g = case2_graph();
  g.edges.push_back({"bad1", RelationType::support, "a4", "a4"});
  g.edges.push_back({"bad2", RelationType::support, "ghost", "a1"});
  ValidationReport r = validate_graph(g);
  CHECK_FALSE(r.ok);
  CHECK(has_violation(r, "SELF_LOOP"));
  CHECK(has_violation(r, "DANGLING_REF"));
  // a4 now has two outgoing non-segment edges as well
  CHECK(has_violation(r, "MULTIPLE_OUT_EDGES"));
}

TEST_CASE("ADU without a segment edge is flagged") {
  ArgumentGraph g = single_adu_graph();
  g.adus.push_back({"a2", Stance::con});
  g.edges.push_back({"c1", RelationType::rebuttal, "a2", "a1"});
  ValidationReport r = validate_graph(g);
  CHECK_FALSE(r.ok);
  CHECK(has_violation(r, "ADU_NO_SEGMENT"));
}

TEST_CASE("validation is order-insensitive") {
  ArgumentGraph g = case1_graph();
  for (auto& e : g.edges)
    if (e.id == "c2") e.target = "a1";  // one induced violation

  auto codes = [](const ValidationReport& r) {
    std::vector<std::string> out;
    for (const auto& v : r.violations) out.push_back(v.code);
    std::sort(out.begin(), out.end());
    return out;
  };
  const auto baseline = codes(validate_graph(g));

  std::mt19937 rng(7);
  for (int round = 0; round < 10; ++round) {
    ArgumentGraph shuffled = g;
    std::shuffle(shuffled.edges.begin(), shuffled.edges.end(), rng);
    std::shuffle(shuffled.adus.begin(), shuffled.adus.end(), rng);
    CHECK(codes(validate_graph(shuffled)) == baseline);
    CHECK_FALSE(validate_graph(shuffled).ok);
  }
}

TEST_CASE("root finds the unique parentless ADU") {
  CHECK(root(case1_graph()).id == "a1");
  CHECK(root(case2_graph()).id == "a1");
  CHECK(root(single_adu_graph()).id == "a1");
}

TEST_CASE("root throws NOT_VALID on an invalid graph") {
  ArgumentGraph g;
  g.adus = {{"a1", Stance::pro}, {"a2", Stance::pro}};
  g.edus = {{"e1", "x"}, {"e2", "y"}};
  g.edges = {{"s1", RelationType::segment, "e1", "a1"},
             {"s2", RelationType::segment, "e2", "a2"}};
  CHECK_THROWS_AS(root(g), Error);
  try {
    root(g);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_valid);
  }
}

TEST_CASE("adu_text joins EDUs in document order") {
  ArgumentGraph g = case2_graph();
  CHECK(adu_text(g, "a1") == "BER should be re-conceptualized from scratch,");

  SUBCASE("two EDUs in order") {
    ArgumentGraph h = single_adu_graph();
    h.edus = {{"e1", "a"}, {"e2", "b"}};
    h.edges = {{"s1", RelationType::segment, "e1", "a1"},
               {"s2", RelationType::segment, "e2", "a1"}};
    CHECK(adu_text(h, "a1") == "a b");
  }

  SUBCASE("segment edges listed out of order still join in document order") {
    ArgumentGraph h = single_adu_graph();
    h.edus = {{"e1", "a"}, {"e2", "b"}};
    h.edges = {{"s2", RelationType::segment, "e2", "a1"},
               {"s1", RelationType::segment, "e1", "a1"}};
    // oracle: sort by EDU index, then join
    CHECK(adu_text(h, "a1") == "a b");
  }

  SUBCASE("no segment edge raises NO_SEGMENT") {
    ArgumentGraph h = single_adu_graph();
    h.adus.push_back({"a2", Stance::con});
    CHECK_THROWS_AS(adu_text(h, "a2"), Error);
  }
}

TEST_CASE("undercut_endpoints pairs the undercutter with the attacked source") {
  ArgumentGraph g = case1_graph();
  const Edge* undercut = g.find_edge("c2");
  REQUIRE(undercut != nullptr);
  auto [src, proxy] = undercut_endpoints(g, *undercut);
  CHECK(src == "a3");
  CHECK(proxy == "a2");

  SUBCASE("undercut of a support edge resolves to the supporter") {
    ArgumentGraph h = case1_graph();
    h.adus.push_back({"a6", Stance::con});
    h.edus.push_back({"e6", "extra"});
    h.edges.push_back({"s6", RelationType::segment, "e6", "a6"});
    h.edges.push_back({"c5", RelationType::undercut, "a6", "c3"});
    REQUIRE(validate_graph(h).ok);
    auto [s, t] = undercut_endpoints(h, *h.find_edge("c5"));
    CHECK(s == "a6");
    CHECK(t == "a4");
  }

  SUBCASE("chained undercut of a rebuttal resolves to the rebutting ADU") {
    // a3 undercuts c1 (a2 -> a1); the proxy is a2 by hand trace.
    auto [s, t] = undercut_endpoints(g, *g.find_edge("c2"));
    CHECK(t == g.find_edge("c1")->source);
  }

  SUBCASE("missing target edge raises BAD_TARGET") {
    Edge dangling{"cx", RelationType::undercut, "a3", "c99"};
    CHECK_THROWS_AS(undercut_endpoints(g, dangling), Error);
  }
}

TEST_CASE("every undercut edge in the bundled EN corpus resolves") {
  Corpus corpus = load_corpus(argmine::testing::en_corpus_dir(), Language::en);
  REQUIRE(corpus.documents.size() == 112);
  int undercuts = 0;
  for (const auto& doc : corpus.documents) {
    for (const auto& e : doc.edges) {
      if (e.rel != RelationType::undercut) continue;
      ++undercuts;
      auto [src, proxy] = undercut_endpoints(doc, e);
      CHECK_FALSE(src.empty());
      CHECK_FALSE(proxy.empty());
      CHECK(doc.find_adu(proxy) != nullptr);
    }
  }
  CHECK(undercuts > 0);
}

TEST_CASE("valid graphs form a tree over ADUs") {
  Corpus corpus = load_corpus(argmine::testing::en_corpus_dir(), Language::en);
  for (const auto& doc : corpus.documents) {
    const Adu& r = root(doc);
    // out-degree 1 for everything but the root
    for (const auto& adu : doc.adus) {
      int out = 0;
      for (const auto& e : doc.edges)
        if (e.rel != RelationType::segment && e.source == adu.id) ++out;
      if (adu.id == r.id) CHECK(out == 0);
      else CHECK(out == 1);
    }
  }
}
