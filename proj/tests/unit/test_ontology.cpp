#include "fixtures.hpp"
#include "ontology/ontology.hpp"

#include <doctest.h>

#include <random>

using namespace elminer;
using namespace elminer::testing;

namespace {

const std::string kEx = "http://example.org/";

Pattern cls(const std::string& l) { return Pattern::named_class(kEx + l); }

}  // namespace

TEST_CASE("turtle subclass hierarchy is closed transitively") {
  auto store = OntologyStore::parse("@prefix : <http://example.org/> .\n"
                                    "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
                                    ":A rdfs:subClassOf :B . :B rdfs:subClassOf :C .\n"
                                    ":A rdfs:subClassOf [ a <http://www.w3.org/2002/07/owl#Restriction> ] .");
  auto s = store.superclasses(kEx + "A");
  CHECK(s == std::set<std::string>{kEx + "A", kEx + "B", kEx + "C"});
  CHECK(store.superclasses(kEx + "Z") == std::set<std::string>{kEx + "Z"});
  CHECK(store.axioms().size() == 2);
  CHECK(OntologyStore::parse("").empty());
}

TEST_CASE("dbpedia excerpt") {
  auto store = OntologyStore::load_file(data_path("dbo_excerpt.ttl"));
  auto s = store.superclasses(kDbo + "Book");
  CHECK(s.count(kDbo + "WrittenWork"));
  CHECK(s.count(kDbo + "Work"));
  CHECK_FALSE(s.count(kDbo + "MusicalWork"));
  CHECK(store.covers(kDbo + "Book", Pattern::named_class(kDbo + "Work")));
  CHECK(store.covers(kDbo + "Novel", Pattern::named_class(kDbo + "Work")));
  CHECK_FALSE(store.covers(kDbo + "Book", Pattern::some(kDct + "subject", Pattern::named_class(kSkos + "Concept"))));
  CHECK_FALSE(OntologyStore().covers(kDbo + "Book", Pattern::some(kDct + "subject", Pattern::named_class(kSkos + "Concept"))));
}

TEST_CASE("manchester list") {
  auto text = "Prefix: ex: <http://example.org/>\n"
              "# comment\n"
              "ex:Book SubClassOf: ex:A and ex:B\n"
              "<http://example.org/Book> SubClassOf: ex:p some ex:C\n"
              "ex:Novel SubClassOf: ex:Book\n";
  auto store = OntologyStore::parse(text);
  REQUIRE(store.axioms().size() == 3);

  SUBCASE("conjunct of an asserted conjunction") {
    CHECK(store.covers(kEx + "Book", cls("A")));
    CHECK(store.covers(kEx + "Book", Pattern::conjunction({cls("B"), cls("A")})));
    CHECK_FALSE(store.covers(kEx + "Book", Pattern::conjunction({cls("B"), cls("D")})));
  }
  SUBCASE("inherited through the hierarchy") {
    CHECK(store.covers(kEx + "Novel", cls("A")));
    CHECK(store.covers(kEx + "Novel", Pattern::some(kEx + "p", cls("C"))));
  }
  SUBCASE("a stronger axiom is not covered by a weaker one") {
    CHECK_FALSE(store.covers(kEx + "Book", Pattern::some(kEx + "p", Pattern::conjunction({cls("C"), cls("D")}))));
    CHECK_FALSE(store.covers(kEx + "Book", Pattern::conjunction({cls("A"), cls("B"), cls("D")})));
  }
  SUBCASE("trace names its sources") {
    auto cov = store.explain(kEx + "Novel", cls("B"));
    REQUIRE(cov.covered);
    bool asserted = false;
    for (auto& step : cov.trace) asserted |= step.rfind("asserted", 0) == 0;
    CHECK(asserted);
    CHECK(store.explain(kEx + "Novel", cls("Q")).trace.empty());
  }

  CHECK_THROWS_AS(OntologyStore::parse("ex:A SubClassOf: ex:B\n"), OntologyParseError);
  try {
    OntologyStore::parse("Prefix: ex: <http://example.org/>\nex:A SubClassOf: ex:B\nex:A SubClassOf: and\n");
    FAIL("expected a parse error");
  } catch (const OntologyParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("some over a narrower filler and value restrictions") {
  OntologyStore store;
  store.accept_axiom(kEx + "A", cls("B"));
  store.accept_axiom(kEx + "T", Pattern::some(kEx + "p", cls("A")));
  store.accept_axiom(kEx + "T", Pattern::value(kEx + "q", RdfTerm::iri(kEx + "x")));
  CHECK(store.covers(kEx + "T", Pattern::some(kEx + "p", cls("B"))));
  CHECK_FALSE(store.covers(kEx + "T", Pattern::some(kEx + "r", cls("B"))));
  CHECK(store.covers(kEx + "T", Pattern::some(kEx + "q", Pattern::enumeration(RdfTerm::iri(kEx + "x")))));
}

TEST_CASE("accepting axioms") {
  OntologyStore store;
  auto c = Pattern::some(kDct + "subject", Pattern::named_class(kSkos + "Concept"));
  CHECK_FALSE(store.covers(kDbo + "Book", c));
  store.accept_axiom(kDbo + "Book", c);
  CHECK(store.covers(kDbo + "Book", c));
  CHECK_THROWS_AS(store.accept_axiom(kDbo + "Book", c), DuplicateAxiom);
  CHECK(store.axioms().size() == 1);

  store.accept_axiom(kDbo + "Novel", Pattern::named_class(kDbo + "Book"));
  CHECK(store.superclasses(kDbo + "Novel").count(kDbo + "Book"));
  CHECK(store.covers(kDbo + "Novel", c));
}

TEST_CASE("accepting never withdraws coverage") {
  std::mt19937 rng(5);
  auto random_pattern = [&](auto& self, int depth) -> Pattern {
    switch (rng() % (depth > 0 ? 4 : 2)) {
      case 0:
        return cls("C" + std::to_string(rng() % 5));
      case 1:
        return Pattern::value(kEx + "p", RdfTerm::iri(kEx + "x" + std::to_string(rng() % 2)));
      case 2:
        return Pattern::some(kEx + "p" + std::to_string(rng() % 2), self(self, depth - 1));
      default:
        return Pattern::conjunction({self(self, depth - 1), self(self, depth - 1)});
    }
  };
  for (int trial = 0; trial < 30; ++trial) {
    OntologyStore store;
    std::vector<std::pair<std::string, Pattern>> queries;
    for (int i = 0; i < 20; ++i) {
      queries.emplace_back(kEx + "C" + std::to_string(rng() % 5), random_pattern(random_pattern, 2));
    }
    for (int step = 0; step < 10; ++step) {
      std::vector<bool> before;
      for (auto& [t, q] : queries) before.push_back(store.covers(t, q));
      auto target = kEx + "C" + std::to_string(rng() % 5);
      auto p = random_pattern(random_pattern, 2);
      if (!store.contains(target, p)) store.accept_axiom(target, p);
      for (std::size_t i = 0; i < queries.size(); ++i) {
        if (before[i]) CHECK(store.covers(queries[i].first, queries[i].second));
      }
      CHECK(store.covers(target, p));
    }
  }
}

TEST_CASE("ontology export") {
  OntologyStore store;
  auto pm = book_prefixes();
  CHECK(store.export_turtle(pm).unsupported.empty());
  CHECK(parse_turtle(store.export_turtle(pm).document).triples.empty());
  CHECK(store.export_manchester().empty());

  store.accept_axiom(kDbo + "Book", Pattern::named_class(kDbo + "WrittenWork"));
  auto t = store.export_turtle(pm);
  auto triples = parse_turtle(t.document).triples;
  REQUIRE(triples.size() == 1);
  CHECK(triples[0].predicate.value() == vocab::kRdfsSubClassOf);

  auto some = Pattern::some(kDct + "subject", Pattern::named_class(kSkos + "Concept"));
  store.accept_axiom(kDbo + "Book", some);
  t = store.export_turtle(pm);
  CHECK(parse_turtle(t.document).triples.size() == 1);
  REQUIRE(t.unsupported.size() == 1);
  CHECK(t.unsupported[0].superclass == some);

  auto text = store.export_manchester(pm);
  CHECK(text.find("dbo:Book SubClassOf: dct:subject some skos:Concept") != std::string::npos);
  auto back = OntologyStore::parse(text);
  REQUIRE(back.axioms().size() == 2);
  CHECK(back.contains(kDbo + "Book", some));
  CHECK(back.export_manchester(pm) == text);
}
