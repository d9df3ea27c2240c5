#include "fixtures.hpp"
#include "sparql/client.hpp"
#include "sparql/fixture_endpoint.hpp"
#include "sparql/sampling.hpp"
#include "sparql/templates.hpp"

#include <doctest.h>

#include <fstream>
#include <random>
#include <set>

using namespace elminer;
using namespace elminer::testing;

namespace {

std::set<Triple> scan(const LocalGraph& g, const std::vector<RdfTerm>& subjects) {
  std::set<RdfTerm> wanted(subjects.begin(), subjects.end());
  std::set<Triple> out;
  for (auto& t : g.triples()) {
    if (wanted.count(t.subject)) out.insert(t);
  }
  return out;
}

std::vector<RdfTerm> numbered(int n, const std::string& stem = "http://example.org/s") {
  std::vector<RdfTerm> out;
  for (int i = 0; i < n; ++i) out.push_back(RdfTerm::iri(stem + std::to_string(i)));
  return out;
}

}  // namespace

TEST_CASE("query templates are recognized regardless of layout") {
  std::vector<RdfTerm> s{RdfTerm::iri("http://a.org/x"), RdfTerm::iri("http://a.org/y")};
  auto q = recognize_query(triples_query(s));
  REQUIRE(q);
  CHECK(q->kind == RecognizedQuery::Kind::Triples);
  CHECK(q->subjects == std::vector<std::string>{"http://a.org/x", "http://a.org/y"});

  auto loose = recognize_query("select ?s (count(distinct ?p) as ?c)\n where {\n ?s ?p [].\n"
                               "  values ?s { <http://a.org/x> }\n} group   by ?s");
  REQUIRE(loose);
  CHECK(loose->kind == RecognizedQuery::Kind::CountPredicates);

  auto c = recognize_query(count_triples_query(s));
  REQUIRE(c);
  CHECK(c->kind == RecognizedQuery::Kind::CountTriples);

  auto cls = recognize_query(class_instances_query("http://a.org/C", 10, 20));
  REQUIRE(cls);
  CHECK(cls->kind == RecognizedQuery::Kind::ClassInstances);
  CHECK(cls->class_iri == "http://a.org/C");
  CHECK(cls->limit == 10u);
  CHECK(cls->offset == 20u);

  auto a = recognize_query("SELECT ?s WHERE { ?s a <http://a.org/C> } ORDER BY ?s");
  REQUIRE(a);
  CHECK_FALSE(a->limit);

  CHECK_FALSE(recognize_query("SELECT * WHERE { ?s ?p ?o }"));
  CHECK_FALSE(recognize_query("ASK { ?s ?p ?o }"));
}

TEST_CASE("batch partition covers the input disjointly") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    int n = static_cast<int>(rng() % 400);
    std::size_t size = 1 + rng() % 120;
    auto terms = numbered(n);
    auto batches = partition_batches(terms, size);
    CHECK(batches.size() == (terms.size() + size - 1) / size);
    std::vector<RdfTerm> joined;
    for (auto& b : batches) {
      CHECK(b.size() <= size);
      CHECK_FALSE(b.empty());
      joined.insert(joined.end(), b.begin(), b.end());
    }
    CHECK(joined == terms);
  }
  CHECK_THROWS_AS(partition_batches(numbered(3), 0), std::invalid_argument);
}

TEST_CASE("fixture endpoint serves the books graph") {
  auto ep = FixtureEndpoint::from_file(data_path("books.ttl"));
  SparqlClient client(ep->config());

  auto fetched = client.fetch(books(), nullptr);
  std::set<Triple> got(fetched.begin(), fetched.end());
  CHECK(got == scan(ep->graph(), books()));
  CHECK(got.size() == 27);
  CHECK(client.query_count() == 1);

  auto preds = client.count_predicates(books());
  CHECK(preds.size() == 5);
  CHECK(preds.at(res("The_Hobbit")) == 4);

  auto triples = client.count_triples(books());
  CHECK(triples.at(res("The_Fellowship_of_the_Ring")) == 6);
  CHECK(triples.at(res("The_Hobbit")) == 5);

  auto none = client.count_triples({RdfTerm::iri("http://example.org/nothing")});
  CHECK(none.empty());
  CHECK(client.count_triples({}).empty());

  auto instances = client.class_instances(kDbo + "Book");
  auto expected = books();
  std::sort(expected.begin(), expected.end());
  CHECK(instances == expected);
}

TEST_CASE("empty subject list issues no queries") {
  FixtureEndpoint ep({book_graph().triples().begin(), book_graph().triples().end()});
  SparqlClient client(ep.config());
  CHECK(client.fetch({}, nullptr).empty());
  CHECK(client.query_count() == 0);
  CHECK(ep.query_count() == 0);
}

TEST_CASE("batching issues one query per batch and merges in order") {
  auto subjects = numbered(250);
  std::vector<Triple> triples;
  for (auto& s : subjects) triples.push_back(make_triple(s, RdfTerm::iri("http://example.org/p"), RdfTerm::literal("x")));
  FixtureEndpoint ep(triples);
  auto cfg = ep.config();
  cfg.batch_size = 100;
  SparqlClient client(cfg);
  auto fetched = client.fetch(subjects, nullptr);
  CHECK(client.query_count() == 3);
  CHECK(ep.query_count() == 3);
  REQUIRE(fetched.size() == 250);
  // batch order is preserved; within a batch the endpoint answers in term order
  std::vector<RdfTerm> first_batch(subjects.begin(), subjects.begin() + 100);
  std::sort(first_batch.begin(), first_batch.end());
  CHECK(fetched[0].subject == first_batch[0]);
  std::set<RdfTerm> later(subjects.begin() + 100, subjects.end());
  for (std::size_t i = 0; i < 100; ++i) CHECK_FALSE(later.count(fetched[i].subject));
}

TEST_CASE("query budget stops at the cap") {
  auto subjects = numbered(250);
  FixtureEndpoint ep({});
  auto cfg = ep.config();
  cfg.batch_size = 100;
  cfg.query_budget = 2;
  cfg.parallelism = 1;
  SparqlClient client(cfg);
  CHECK_THROWS_AS(client.fetch(subjects, nullptr), QueryBudgetExceeded);
  CHECK(client.query_count() == 2);
  CHECK(ep.query_count() == 2);
  CHECK_THROWS_AS(client.fetch(numbered(1), nullptr), QueryBudgetExceeded);
  CHECK(ep.query_count() == 2);
}

TEST_CASE("budget holds under parallel batches") {
  FixtureEndpoint ep({});
  auto cfg = ep.config();
  cfg.batch_size = 1;
  cfg.query_budget = 7;
  cfg.parallelism = 4;
  SparqlClient client(cfg);
  CHECK_THROWS_AS(client.fetch(numbered(20), nullptr), QueryBudgetExceeded);
  CHECK(ep.query_count() <= 7);
  CHECK(client.query_count() == ep.query_count());
}

TEST_CASE("transient failures are retried and counted") {
  auto ep = FixtureEndpoint::from_file(data_path("books.ttl"));
  auto cfg = ep->config();
  cfg.max_retries = 2;
  SparqlClient client(cfg);
  ep->fail_next(2);
  auto fetched = client.fetch(books(), nullptr);
  CHECK(fetched.size() == 27);
  CHECK(client.query_count() == 3);

  ep->fail_next(3);
  CHECK_THROWS_AS(client.fetch(books(), nullptr), FetchError);
  CHECK(client.query_count() == 6);

  ep->fail_next(1, 404);
  CHECK_THROWS_AS(client.fetch(books(), nullptr), FetchError);
  CHECK(client.query_count() == 7);
}

TEST_CASE("unreachable endpoint raises FetchError") {
  EndpointConfig cfg;
  {
    FixtureEndpoint ep({});
    cfg = ep.config();
  }
  cfg.max_retries = 1;
  cfg.timeout_s = 2;
  SparqlClient client(cfg);
  CHECK_THROWS_AS(client.fetch(books(), nullptr), FetchError);
}

TEST_CASE("long GET requests fall back to POST") {
  auto subjects = numbered(300, "http://example.org/a-rather-long-subject-name-");
  std::vector<Triple> triples;
  for (auto& s : subjects) triples.push_back(make_triple(s, RdfTerm::iri("http://example.org/p"), s));
  FixtureEndpoint ep(triples);
  auto cfg = ep.config();
  cfg.batch_size = 300;
  cfg.max_get_url = 500;
  SparqlClient client(cfg);
  CHECK(client.fetch(subjects, nullptr).size() == 300);
  CHECK(client.query_count() == 1);
}

TEST_CASE("class instances are paged") {
  auto subjects = numbered(23);
  std::vector<Triple> triples;
  for (auto& s : subjects) triples.push_back(make_triple(s, RdfTerm::iri(vocab::kRdfType), RdfTerm::iri("http://example.org/C")));
  FixtureEndpoint ep(triples);
  auto cfg = ep.config();
  cfg.class_page_size = 10;
  SparqlClient client(cfg);
  auto all = client.class_instances("http://example.org/C");
  CHECK(all.size() == 23);
  CHECK(client.query_count() == 3);

  cfg.instance_cap = 15;
  SparqlClient capped(cfg);
  CHECK(capped.class_instances("http://example.org/C").size() == 15);
}

TEST_CASE("fixture fetch equals a subject scan on random graphs") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    auto subjects = numbered(40);
    std::vector<Triple> triples;
    for (int i = 0; i < 150; ++i) {
      auto& s = subjects[rng() % subjects.size()];
      auto p = RdfTerm::iri("http://example.org/p" + std::to_string(rng() % 5));
      RdfTerm o = rng() % 3 == 0 ? RdfTerm::typed_literal(std::to_string(rng() % 10), vocab::kXsdInteger)
                  : rng() % 2 ? RdfTerm::lang_literal("w", "en")
                              : subjects[rng() % subjects.size()];
      triples.push_back(make_triple(s, p, o));
    }
    triples.push_back(make_triple(subjects[0], RdfTerm::iri("http://example.org/b"), RdfTerm::blank("x")));
    FixtureEndpoint ep(triples);
    auto cfg = ep.config();
    cfg.batch_size = 1 + rng() % 15;
    SparqlClient client(cfg);
    std::vector<RdfTerm> u;
    for (auto& s : subjects) {
      if (rng() % 2) u.push_back(s);
    }
    auto fetched = client.fetch(u, nullptr);
    CHECK(std::set<Triple>(fetched.begin(), fetched.end()) == scan(ep.graph(), u));
  }
}

TEST_CASE("malformed fixture reports the line") {
  auto path = std::string("/tmp/elminer_bad_fixture.ttl");
  std::ofstream(path) << "@prefix ex: <http://example.org/> .\nex:a ex:b ex:c .\nex:a ex:b \"unterminated .\n";
  try {
    FixtureEndpoint::from_file(path);
    FAIL("expected a parse error");
  } catch (const TurtleParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("SPARQL JSON results parsing") {
  auto rows = parse_sparql_json(R"({"head":{"vars":["x"]},"results":{"bindings":[
    {"x":{"type":"uri","value":"http://a.org/"}},
    {"x":{"type":"literal","value":"v","xml:lang":"de"}},
    {"x":{"type":"typed-literal","value":"3","datatype":"http://www.w3.org/2001/XMLSchema#integer"}},
    {"x":{"type":"literal","value":"plain"}},
    {"x":{"type":"bnode","value":"b0"}},
    {}]}})");
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].at("x") == RdfTerm::iri("http://a.org/"));
  CHECK(rows[1].at("x") == RdfTerm::lang_literal("v", "de"));
  CHECK(rows[2].at("x") == RdfTerm::typed_literal("3", vocab::kXsdInteger));
  CHECK(rows[3].at("x") == RdfTerm::literal("plain"));
  CHECK(rows[4].at("x").is_blank());
  CHECK(rows[5].empty());
  CHECK_THROWS(parse_sparql_json("{"));
  CHECK_THROWS(parse_sparql_json(R"({"head":{}})"));
}

TEST_CASE("uniform sampling") {
  auto u = numbered(5);
  CHECK(sample(u, {SamplingStrategy::Uniform, 1000, 1}) == u);
  auto big = numbered(100);
  auto a = sample(big, {SamplingStrategy::Uniform, 10, 42});
  auto b = sample(big, {SamplingStrategy::Uniform, 10, 42});
  CHECK(a == b);
  CHECK(a.size() == 10);
  CHECK(std::set<RdfTerm>(a.begin(), a.end()).size() == 10);
  CHECK(a != sample(big, {SamplingStrategy::Uniform, 10, 43}));
  CHECK_THROWS_AS(sample(big, {SamplingStrategy::Uniform, 0, 1}), std::invalid_argument);
}

TEST_CASE("weighted sampling") {
  auto a = RdfTerm::iri("http://example.org/a"), b = RdfTerm::iri("http://example.org/b");
  std::vector<RdfTerm> u{a, b};
  CHECK_THROWS_AS(sample(u, {SamplingStrategy::PredicatesCounting, 1, 0}), MissingCounts);

  auto frequency = [&](long ca, long cb) {
    std::map<RdfTerm, long> counts{{a, ca}, {b, cb}};
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
      auto s = sample(u, {SamplingStrategy::TriplesCounting, 1, seed}, counts);
      REQUIRE(s.size() == 1);
      hits += s[0] == a;
    }
    return hits / 10000.0;
  };
  CHECK(std::abs(frequency(3, 1) - 0.75) <= 0.02);
  CHECK(std::abs(frequency(9, 1) - 0.9) <= 0.02);

  std::map<RdfTerm, long> counts{{a, 5}};
  auto three = numbered(3);
  counts[three[0]] = 1;
  CHECK(sample(three, {SamplingStrategy::PredicatesCounting, 2, 3}, counts) == std::vector<RdfTerm>{three[0]});

  auto big = numbered(50);
  std::map<RdfTerm, long> c;
  for (std::size_t i = 0; i < big.size(); ++i) c[big[i]] = static_cast<long>(i % 7);
  auto s1 = sample(big, {SamplingStrategy::PredicatesCounting, 20, 9}, c);
  CHECK(s1 == sample(big, {SamplingStrategy::PredicatesCounting, 20, 9}, c));
  CHECK(s1.size() == 20);
  for (auto& t : s1) CHECK(c.at(t) > 0);
}
