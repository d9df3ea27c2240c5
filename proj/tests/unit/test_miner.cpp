#include "fixtures.hpp"
#include "miner/miner.hpp"
#include "oracle/matcher.hpp"
#include "random_graph.hpp"

#include <doctest.h>

#include <chrono>
#include <map>
#include <random>
#include <set>

using namespace elminer;
using namespace elminer::testing;

namespace {

MinerConfig config(Rational theta, int depth) {
  MinerConfig c;
  c.min_support = theta;
  c.max_depth = depth;
  return c;
}

// canonical key -> (proof set, support)
using Canon = std::map<std::string, std::pair<ProofSet, Rational>>;

Canon canon(const std::vector<MinedPattern>& ms) {
  Canon out;
  for (auto& m : ms) {
    auto [it, fresh] = out.emplace(canonical_key(m.pattern), std::make_pair(m.proof_set, m.support));
    CHECK_MESSAGE(fresh, "duplicate pattern " << it->first);
  }
  return out;
}

bool mentions(const Pattern& p, const std::string& iri) {
  if (p.iri() == iri) return true;
  for (auto& c : p.children()) {
    if (mentions(c, iri)) return true;
  }
  return false;
}

std::vector<std::string> keys(const std::vector<MinedPattern>& ms) {
  std::vector<std::string> out;
  for (auto& m : ms) out.push_back(canonical_key(m.pattern));
  return out;
}

}  // namespace

TEST_CASE("five books: one closed conjunction with support 1 over all five books") {
  auto start = std::chrono::steady_clock::now();
  LocalGraphSource src(book_graph());
  Miner m(config(Rational(4, 5), 2), src);
  auto r = m.run(books(), uniform_weighting(books()));
  CHECK_FALSE(r.partial);

  Pattern expected = Pattern::conjunction({
      Pattern::named_class(kDbo + "Book"),
      Pattern::named_class(kDbo + "CreativeWork"),
      Pattern::value(kDbp + "language", RdfTerm::literal("English")),
      Pattern::some(kDct + "subject", Pattern::named_class(kSkos + "Concept")),
  });
  REQUIRE(r.closed.size() == 1);
  CHECK(canonical_key(r.closed[0].pattern) == canonical_key(expected));
  CHECK(r.closed[0].support == Rational(1));
  CHECK(r.closed[0].proof_set == make_proof_set(books()));

  std::set<std::string> emitted;
  for (auto& e : r.emitted) {
    CHECK(e.support == Rational(1));
    CHECK(e.proof_set == make_proof_set(books()));
    emitted.insert(canonical_key(e.pattern));
  }
  CHECK(emitted == std::set<std::string>{
                       canonical_key(Pattern::named_class(kDbo + "Book")),
                       canonical_key(Pattern::named_class(kDbo + "CreativeWork")),
                       canonical_key(Pattern::value(kDbp + "language", RdfTerm::literal("English"))),
                       canonical_key(Pattern::some(kDct + "subject", Pattern::named_class(kSkos + "Concept"))),
                   });

  CHECK(canonical_key(m.mine_scope(books(), {}, uniform_weighting(books()))[0].pattern) == canonical_key(expected));
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));
}

TEST_CASE("five books: recursive call weights over dct:subject objects") {
  LocalGraphSource src(book_graph());
  Miner m(config(Rational(4, 5), 2), src);
  std::map<RdfTerm, Rational> seen;
  int calls = 0;
  m.on_redistribute = [&](const std::string& p, int level, const Redistribution& r) {
    ++calls;
    CHECK(p == kDct + "subject");
    CHECK(level == 1);
    CHECK(r.literals.empty());
    seen = std::map<RdfTerm, Rational>(r.weights.begin(), r.weights.end());
  };
  m.run(books(), uniform_weighting(books()));
  CHECK(calls == 1);
  std::map<RdfTerm, Rational> expected{
      {dbc("1937_novels"), parse_rational("6/30")},        {dbc("1954_novels"), parse_rational("5/30")},
      {dbc("1955_novels"), parse_rational("3/30")},        {dbc("1977_books"), parse_rational("3/30")},
      {dbc("The_Silmarillion"), parse_rational("3/30")},   {dbc("The_Lord_of_the_Rings"), parse_rational("8/30")},
      {dbc("Novels_adapted_into_plays"), parse_rational("2/30")},
  };
  CHECK(seen == expected);
  Rational total = 0;
  for (auto& [o, w] : seen) total += w;
  CHECK(total == Rational(1));
}

TEST_CASE("dbo:illustrator is pruned at 0.8 and mined at 0.3") {
  const std::string illustrator = kDbo + "illustrator";
  auto w = uniform_weighting(books());
  auto full = ThreeLevelIndex::build(book_graph().triples_with_subjects(books()));
  CHECK(full.predicate_support(illustrator, w) == Rational(2, 5));

  LocalGraphSource src(book_graph());
  Miner strict(config(Rational(4, 5), 2), src);
  CHECK_FALSE(strict.scope_index(books(), w).has(illustrator));
  CHECK(strict.scope_index(books(), w).has(kDct + "subject"));
  for (auto& e : strict.run(books(), w).emitted) CHECK_FALSE(mentions(e.pattern, illustrator));

  Miner loose(config(Rational(3, 10), 2), src);
  auto r = loose.run(books(), w);
  auto tolkien = Pattern::value(illustrator, res("J._R._R._Tolkien"));
  bool found = false;
  for (auto& e : r.emitted) {
    if (canonical_key(e.pattern) == canonical_key(tolkien)) {
      found = true;
      CHECK(e.support == Rational(2, 5));
      CHECK(e.proof_set == make_proof_set({res("The_Hobbit"), res("The_Silmarillion")}));
    }
  }
  CHECK(found);
}

TEST_CASE("miner equals the brute-force oracle on random graphs") {
  auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(20240611);
  const std::vector<Rational> thetas{Rational(1, 2), Rational(4, 5), Rational(1)};
  int compared = 0, nonempty = 0, nested = 0;
  for (int g = 0; g < 60; ++g) {
    auto rg = random_graph(rng);
    REQUIRE(rg.graph.size() <= 200);
    auto w = uniform_weighting(rg.targets);
    for (auto& theta : thetas) {
      for (int depth : {1, 2}) {
        CAPTURE(g);
        CAPTURE(theta);
        CAPTURE(depth);
        LocalGraphSource src(rg.graph);
        Miner m(config(theta, depth), src);
        auto mined = m.run(rg.targets, w);
        REQUIRE_FALSE(mined.partial);
        auto oracle = enumerate_shallowest_frequent(rg.graph, rg.targets, {}, w, theta, depth);
        CHECK(canon(mined.closed) == canon(oracle));
        CHECK(canon(m.mine_scope(rg.targets, {}, w)) == canon(oracle));
        ++compared;
        if (!oracle.empty()) ++nonempty;
        for (auto& o : oracle) {
          if (elminer::depth(o.pattern) == 2) {
            ++nested;
            break;
          }
        }
      }
    }
  }
  CHECK(compared == 360);
  // the comparison must not be vacuous
  CHECK(nonempty > 180);
  CHECK(nested > 30);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(60));
}

TEST_CASE("emitted patterns hold in the graph with the reported proof sets") {
  std::mt19937 rng(99);
  for (int g = 0; g < 30; ++g) {
    auto rg = random_graph(rng);
    auto w = uniform_weighting(rg.targets);
    Rational theta(1, 3);
    int depth = 1 + g % 3;
    LocalGraphSource src(rg.graph);
    Miner m(config(theta, depth), src);
    auto r = m.run(rg.targets, w);
    for (auto* set : {&r.emitted, &r.closed}) {
      for (auto& e : *set) {
        CAPTURE(serialize(e.pattern));
        auto check = support_of(rg.graph, rg.targets, e.pattern, w);
        CHECK(check.proof_set == e.proof_set);
        CHECK(check.support == e.support);
        CHECK(e.support >= theta);
        CHECK(elminer::depth(e.pattern) <= depth);
      }
    }
    // closed conjunctions have pairwise distinct proof sets
    std::set<ProofSet> sets;
    for (auto& c : r.closed) CHECK(sets.insert(c.proof_set).second);
  }
}

TEST_CASE("two-triple cycle terminates within the depth bound") {
  auto a = RdfTerm::iri(kEx + "a"), b = RdfTerm::iri(kEx + "b");
  const std::string p = kEx + "p";
  LocalGraph g({{a, RdfTerm::iri(p), b}, {b, RdfTerm::iri(p), a}});
  std::vector<RdfTerm> targets{a, b};
  auto w = uniform_weighting(targets);
  for (int depth : {1, 2, 3, 5}) {
    CAPTURE(depth);
    auto start = std::chrono::steady_clock::now();
    LocalGraphSource src(g);
    Miner m(config(Rational(1), depth), src);
    auto r = m.run(targets, w);
    CHECK_FALSE(r.partial);
    for (auto& e : r.emitted) CHECK(elminer::depth(e.pattern) <= depth);
    CHECK(canon(r.closed) == canon(enumerate_shallowest_frequent(g, targets, {}, w, Rational(1), depth)));
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));
  }
}

TEST_CASE("decimal ratings yield a data range bounded above by 5") {
  const std::string score = kEx + "ratingScore";
  const char* values[] = {"1", "2.5", "5", "3.75", "4.0", "1.5"};
  std::vector<Triple> ts;
  std::vector<RdfTerm> targets;
  int i = 0;
  for (auto* v : values) {
    auto s = RdfTerm::iri(kEx + "review" + std::to_string(i++));
    targets.push_back(s);
    ts.push_back({s, RdfTerm::iri(score), RdfTerm::typed_literal(v, vocab::kXsdDecimal)});
  }
  LocalGraph g(ts);
  LocalGraphSource src(g);
  Miner m(config(Rational(1), 2), src);
  auto r = m.run(targets, uniform_weighting(targets));
  REQUIRE(r.closed.size() == 1);
  Pattern expected = Pattern::some(
      score, Pattern::conjunction({Pattern::datatype(DatatypeId::XsdDecimal),
                                   Pattern::min_inclusive(DatatypeId::XsdDecimal, RdfTerm::typed_literal("1", vocab::kXsdDecimal)),
                                   Pattern::max_inclusive(DatatypeId::XsdDecimal, RdfTerm::typed_literal("5", vocab::kXsdDecimal))}));
  CHECK(canonical_key(r.closed[0].pattern) == canonical_key(expected));
  CHECK(serialize(r.closed[0].pattern).find("<= 5") != std::string::npos);
  CHECK(r.closed[0].support == Rational(1));
}

TEST_CASE("cancelling after k emissions leaves a strict prefix") {
  LocalGraphSource src(book_graph());
  auto w = uniform_weighting(books());
  Miner full(config(Rational(1, 5), 2), src);
  auto complete = keys(full.run(books(), w).emitted);
  REQUIRE(complete.size() > 3);
  for (std::size_t k = 1; k < complete.size(); ++k) {
    CAPTURE(k);
    CancellationToken token;
    Miner m(config(Rational(1, 5), 2), src, nullptr, &token);
    std::size_t seen = 0;
    auto r = m.run(books(), w, [&](const MinedPattern&) {
      if (++seen == k) token.cancel();
    });
    CHECK(r.partial);
    CHECK(r.stop_reason == "cancelled");
    auto got = keys(r.emitted);
    REQUIRE(got.size() == k);
    CHECK(std::equal(got.begin(), got.end(), complete.begin()));
  }
}

TEST_CASE("emission order is deterministic and grouped by predicate") {
  LocalGraphSource src(book_graph());
  auto w = uniform_weighting(books());
  Miner a(config(Rational(1, 5), 2), src), b(config(Rational(1, 5), 2), src);
  auto ra = a.run(books(), w), rb = b.run(books(), w);
  CHECK(keys(ra.emitted) == keys(rb.emitted));
  CHECK(keys(ra.closed) == keys(rb.closed));
  // global enumeration first
  CHECK(ra.emitted.front().pattern.kind() == Pattern::Kind::Enum);
}

TEST_CASE("ignored predicates never reach the index") {
  LocalGraphSource src(book_graph());
  auto cfg = config(Rational(4, 5), 2);
  cfg.ignore_predicates = {"^http://purl\\.org/dc/terms/"};
  Diagnostics diag;
  Miner m(cfg, src, &diag);
  auto r = m.run(books(), uniform_weighting(books()));
  for (auto& e : r.emitted) CHECK_FALSE(mentions(e.pattern, kDct + "subject"));
  CHECK(diag.counter("ignored_triples") == 10);
}

TEST_CASE("the depth guard stops recursion at max depth 1") {
  LocalGraphSource src(book_graph());
  Miner m(config(Rational(4, 5), 1), src);
  int calls = 0;
  m.on_redistribute = [&](const std::string&, int, const Redistribution&) { ++calls; };
  auto r = m.run(books(), uniform_weighting(books()));
  CHECK(calls == 0);
  for (auto& e : r.emitted) CHECK(elminer::depth(e.pattern) == 1);
}

TEST_CASE("initial call rejects an empty target set and applies the coverage filter") {
  LocalGraphSource src(book_graph());
  Miner m(config(Rational(4, 5), 2), src);
  CHECK_THROWS_AS(initial_call(m, {}, {}), EmptyTargetSet);

  Diagnostics diag;
  Miner m2(config(Rational(4, 5), 2), src);
  const auto book = canonical_key(Pattern::named_class(kDbo + "Book"));
  std::vector<std::string> streamed;
  auto r = initial_call(
      m2, books(), [&](const Pattern& p) { return canonical_key(p) == book; },
      [&](const MinedPattern& mp) { streamed.push_back(canonical_key(mp.pattern)); }, &diag);
  CHECK(std::find(streamed.begin(), streamed.end(), book) == streamed.end());
  CHECK(streamed.size() == 3);
  CHECK(diag.counter("suppressed_by_ontology") >= 1);
}
