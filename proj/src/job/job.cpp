#include "job/job.hpp"

#include "oracle/matcher.hpp"
#include "rdf/turtle.hpp"
#include "sparql/fixture_endpoint.hpp"
#include "sparql/sampling.hpp"

#include <set>

namespace elminer {

namespace {

using json = nlohmann::json;

const char* strategy_name(SamplingStrategy s) {
  switch (s) {
    case SamplingStrategy::Uniform:
      return "Uniform";
    case SamplingStrategy::PredicatesCounting:
      return "PredicatesCounting";
    case SamplingStrategy::TriplesCounting:
      return "TriplesCounting";
  }
  return "Uniform";
}

SamplingStrategy parse_strategy(const std::string& s) {
  if (s == "Uniform" || s == "uniform") return SamplingStrategy::Uniform;
  if (s == "PredicatesCounting" || s == "predicates") return SamplingStrategy::PredicatesCounting;
  if (s == "TriplesCounting" || s == "triples") return SamplingStrategy::TriplesCounting;
  throw std::invalid_argument("unknown sampling strategy: " + s);
}

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("field '") + key + "' has the wrong type");
  }
}

Rational rational_field(const json& v, const char* key) {
  std::string text;
  if (v.is_string()) text = v.get<std::string>();
  else if (v.is_number()) text = v.dump();
  else throw std::invalid_argument(std::string("field '") + key + "' must be a number or a fraction string");
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(std::string("field '") + key + "' is not a number: " + text);
  }
}

}  // namespace

void JobConfig::validate() const {
  if (endpoint_url.has_value() == fixture_file.has_value())
    throw std::invalid_argument("exactly one of endpoint and fixture must be given");
  if (class_iri.has_value() == uris.has_value())
    throw std::invalid_argument("exactly one of class and uris must be given");
  if (class_iri && !has_iri_scheme(*class_iri)) throw std::invalid_argument("class must be an absolute IRI");
  if (uris) {
    for (auto& u : *uris) {
      if (!has_iri_scheme(u)) throw std::invalid_argument("target URI is not an absolute IRI: " + u);
    }
  }
  miner.validate();
  if (query_budget < 1) throw std::invalid_argument("query-budget must be at least 1");
  if (timeout_s <= 0) throw std::invalid_argument("timeout must be positive");
  if (max_retries < 0) throw std::invalid_argument("max-retries must be >= 0");
  if (politeness_delay_ms < 0) throw std::invalid_argument("politeness-delay must be >= 0");
  if (parallelism < 1) throw std::invalid_argument("parallelism must be at least 1");
  if (instance_cap < 1) throw std::invalid_argument("instance-cap must be at least 1");
  if (endpoint_url) {
    EndpointConfig e;
    e.url = *endpoint_url;
    e.validate();
  }
}

json JobConfig::to_json() const {
  json j;
  if (endpoint_url) j["endpointUrl"] = *endpoint_url;
  if (fixture_file) j["fixtureFile"] = *fixture_file;
  if (class_iri) j["classIri"] = *class_iri;
  if (uris) j["uris"] = *uris;
  j["minSupport"] = to_fraction_string(miner.min_support);
  j["maxDepth"] = miner.max_depth;
  j["batchSize"] = miner.batch_size;
  if (miner.sample_size) j["sampleSize"] = *miner.sample_size;
  j["samplingStrategy"] = strategy_name(miner.strategy);
  j["randomSeed"] = std::to_string(miner.seed);
  j["ignorePredicates"] = miner.ignore_predicates;
  j["queryBudget"] = query_budget;
  if (verify_proofs) j["verifyProofs"] = *verify_proofs;
  j["timeout"] = timeout_s;
  j["maxRetries"] = max_retries;
  j["politenessDelay"] = politeness_delay_ms;
  j["parallelism"] = parallelism;
  j["instanceCap"] = instance_cap;
  if (!prefixes.empty()) j["prefixes"] = json::parse(prefixes.to_json_text());
  return j;
}

namespace {

// Expands `prefix:local` names whose prefix is declared by the configuration, the fixture or
// the well-known set. An unreadable fixture is reported later, when the job runs.
void resolve_names(JobConfig& c) {
  PrefixMap pm = PrefixMap::well_known();
  if (c.fixture_file) {
    try {
      pm.merge(parse_turtle_file(*c.fixture_file).prefixes);
    } catch (const std::exception&) {
    }
  }
  pm.merge(c.prefixes);
  auto expand = [&](std::string& name) {
    auto colon = name.find(':');
    if (colon == std::string::npos || name.compare(colon + 1, 2, "//") == 0) return;
    if (auto full = pm.expand(name)) name = *full;
  };
  if (c.class_iri) expand(*c.class_iri);
  if (c.uris) {
    for (auto& u : *c.uris) expand(u);
  }
}

}  // namespace

JobConfig JobConfig::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("job configuration must be a JSON object");
  static const std::set<std::string> known{
      "endpointUrl", "fixtureFile", "classIri",   "uris",       "minSupport",      "maxDepth",
      "batchSize",   "sampleSize",  "samplingStrategy", "randomSeed", "ignorePredicates", "queryBudget",
      "verifyProofs", "timeout",    "maxRetries", "politenessDelay", "parallelism", "instanceCap",
      "prefixes"};
  for (auto& [k, v] : j.items()) {
    if (!known.count(k)) throw std::invalid_argument("unknown field '" + k + "'");
  }
  JobConfig c;
  if (j.contains("endpointUrl")) c.endpoint_url = get_as<std::string>(j, "endpointUrl");
  if (j.contains("fixtureFile")) c.fixture_file = get_as<std::string>(j, "fixtureFile");
  if (j.contains("classIri")) c.class_iri = get_as<std::string>(j, "classIri");
  if (j.contains("uris")) c.uris = get_as<std::vector<std::string>>(j, "uris");
  if (j.contains("minSupport")) c.miner.min_support = rational_field(j["minSupport"], "minSupport");
  if (j.contains("maxDepth")) c.miner.max_depth = get_as<int>(j, "maxDepth");
  if (j.contains("batchSize")) {
    auto b = get_as<long>(j, "batchSize");
    if (b < 1) throw std::invalid_argument("batch-size must be at least 1");
    c.miner.batch_size = static_cast<std::size_t>(b);
  }
  if (j.contains("sampleSize") && !j["sampleSize"].is_null()) {
    auto s = get_as<long>(j, "sampleSize");
    if (s < 1) throw std::invalid_argument("sample-size must be at least 1");
    c.miner.sample_size = static_cast<std::size_t>(s);
  }
  if (j.contains("samplingStrategy")) c.miner.strategy = parse_strategy(get_as<std::string>(j, "samplingStrategy"));
  if (j.contains("randomSeed")) {
    auto& v = j["randomSeed"];
    try {
      c.miner.seed = v.is_string() ? std::stoull(v.get<std::string>()) : v.get<std::uint64_t>();
    } catch (const std::exception&) {
      throw std::invalid_argument("field 'randomSeed' must be a 64-bit unsigned integer");
    }
  }
  if (j.contains("ignorePredicates")) c.miner.ignore_predicates = get_as<std::vector<std::string>>(j, "ignorePredicates");
  if (j.contains("queryBudget")) c.query_budget = get_as<long>(j, "queryBudget");
  if (j.contains("verifyProofs")) c.verify_proofs = get_as<bool>(j, "verifyProofs");
  if (j.contains("timeout")) c.timeout_s = get_as<double>(j, "timeout");
  if (j.contains("maxRetries")) c.max_retries = get_as<int>(j, "maxRetries");
  if (j.contains("politenessDelay")) c.politeness_delay_ms = get_as<int>(j, "politenessDelay");
  if (j.contains("parallelism")) c.parallelism = get_as<int>(j, "parallelism");
  if (j.contains("instanceCap")) {
    auto cap = get_as<long>(j, "instanceCap");
    if (cap < 1) throw std::invalid_argument("instance-cap must be at least 1");
    c.instance_cap = static_cast<std::size_t>(cap);
  }
  if (j.contains("prefixes")) {
    try {
      c.prefixes = PrefixMap::from_json_text(j["prefixes"].dump());
    } catch (const std::runtime_error& e) {
      throw std::invalid_argument(e.what());
    }
  }
  resolve_names(c);
  c.validate();
  return c;
}

json ResultRecord::to_json() const {
  return {{"resultId", id},
          {"pattern", rendered},
          {"canonical", canonical_key(pattern)},
          {"support", to_fraction_string(support)},
          {"supportPercent", to_double(support) * 100.0},
          {"proofSetSize", proof_set_size},
          {"proofSetSample", proof_set_sample},
          {"depth", depth},
          {"partial", partial},
          {"conjunction", conjunction}};
}

ResultRecord ResultRecord::from_json(const json& j) {
  ResultRecord r;
  r.id = j.at("resultId").get<long>();
  r.pattern = parse_pattern(j.at("canonical").get<std::string>());
  r.rendered = j.at("pattern").get<std::string>();
  r.support = parse_rational(j.at("support").get<std::string>());
  r.proof_set_size = j.at("proofSetSize").get<std::size_t>();
  r.proof_set_sample = j.at("proofSetSample").get<std::vector<std::string>>();
  r.depth = j.at("depth").get<int>();
  r.partial = j.value("partial", false);
  r.conjunction = j.value("conjunction", false);
  return r;
}

ResultRecord make_record(const MinedPattern& m, long id, const PrefixMap& prefixes, bool partial) {
  ResultRecord r;
  r.id = id;
  r.pattern = m.pattern;
  r.rendered = serialize(m.pattern, prefixes);
  r.support = m.support;
  r.proof_set_size = m.proof_set.size();
  for (std::size_t i = 0; i < m.proof_set.size() && i < 10; ++i) r.proof_set_sample.push_back(m.proof_set[i].to_ntriples());
  r.depth = depth(m.pattern);
  r.partial = partial;
  return r;
}

std::string axiom_text(const JobConfig& config, const Pattern& pattern) {
  PrefixMap pm = PrefixMap::well_known();
  pm.merge(config.prefixes);
  if (!config.class_iri) return serialize(pattern, pm);
  return render_iri(*config.class_iri, pm) + " SubClassOf: " + serialize(pattern, pm);
}

JobOutcome run_job(const JobConfig& config, const OntologyStore* ontology, const CancellationToken* token,
                   const ResultSink& on_result) {
  config.validate();
  JobOutcome out;
  Diagnostics& diag = out.diagnostics;
  out.prefixes = PrefixMap::well_known();

  std::unique_ptr<FixtureEndpoint> fixture;
  EndpointConfig ec;
  if (config.fixture_file) {
    TurtleDocument doc;
    try {
      doc = parse_turtle_file(*config.fixture_file);
    } catch (const std::exception& e) {
      throw JobSetupError("fixture " + *config.fixture_file + ": " + e.what());
    }
    out.prefixes.merge(doc.prefixes);
    fixture = std::make_unique<FixtureEndpoint>(doc.triples);
    ec = fixture->config();
  } else {
    ec.url = *config.endpoint_url;
  }
  out.prefixes.merge(config.prefixes);
  ec.batch_size = config.miner.batch_size;
  ec.query_budget = config.query_budget;
  ec.timeout_s = config.timeout_s;
  ec.max_retries = config.max_retries;
  ec.politeness_delay_ms = config.politeness_delay_ms;
  ec.parallelism = config.parallelism;
  ec.instance_cap = config.instance_cap;
  SparqlClient client(ec, &diag);

  auto fail = [&](const std::string& reason, bool fetch) {
    diag.warn(reason);
    out.partial = true;
    out.fetch_failed = fetch;
    out.stop_reason = reason;
    out.queries = client.query_count();
    return out;
  };

  std::vector<RdfTerm> target;
  try {
    if (config.class_iri) {
      target = client.class_instances(*config.class_iri, token);
    } else {
      for (auto& u : *config.uris) target.push_back(RdfTerm::iri(u));
      target = make_proof_set(std::move(target));
    }
    if (config.miner.sample_size && target.size() > *config.miner.sample_size) {
      SampleSpec spec{config.miner.strategy, *config.miner.sample_size, config.miner.seed};
      std::optional<std::map<RdfTerm, long>> counts;
      if (spec.strategy == SamplingStrategy::PredicatesCounting) counts = client.count_predicates(target, token);
      if (spec.strategy == SamplingStrategy::TriplesCounting) counts = client.count_triples(target, token);
      target = sample(target, spec, counts);
    }
  } catch (const Cancelled&) {
    return fail("cancelled", false);
  } catch (const QueryBudgetExceeded& e) {
    return fail(e.what(), false);
  } catch (const FetchError& e) {
    return fail(std::string("fetch failed: ") + e.what(), true);
  }
  out.target_size = target.size();
  if (target.empty()) {
    diag.warn("the target set is empty; nothing to mine");
    out.queries = client.query_count();
    return out;
  }

  std::optional<LocalGraph> retrieved;
  if (config.verify()) retrieved.emplace();
  Miner miner(config.miner, client, &diag, token);
  if (retrieved) {
    miner.on_retrieved = [&](const std::vector<Triple>& ts) {
      for (auto& t : ts) retrieved->add(t);
    };
  }
  Weighting w = uniform_weighting(target);
  auto verify = [&](const MinedPattern& m) {
    if (!retrieved) return;
    bool ok = support_of_set(m.proof_set, w) == m.support;
    for (auto& s : m.proof_set) ok = ok && matches(*retrieved, s, m.pattern, &diag);
    if (!ok) {
      ++out.proof_failures;
      diag.warn("proof set verification failed for " + serialize(m.pattern, out.prefixes));
    }
  };

  CoverageFilter covered;
  if (ontology && config.class_iri) {
    covered = [&](const Pattern& p) { return ontology->covers(*config.class_iri, p); };
  }
  long next_id = 1;
  auto result = initial_call(
      miner, target, covered,
      [&](const MinedPattern& m) {
        verify(m);
        auto rec = make_record(m, next_id++, out.prefixes, false);
        if (on_result) on_result(rec);
        out.streamed.push_back(std::move(rec));
      },
      &diag);

  out.partial = result.partial;
  out.stop_reason = result.stop_reason;
  out.fetch_failed = result.stop_reason.rfind("fetch failed", 0) == 0;
  std::set<std::string> streamed_keys;
  for (auto& r : out.streamed) streamed_keys.insert(canonical_key(r.pattern));
  for (auto& m : result.closed) {
    verify(m);
    auto rec = make_record(m, 0, out.prefixes, out.partial);
    rec.conjunction = !streamed_keys.count(canonical_key(m.pattern));
    out.closed.push_back(std::move(rec));
  }
  out.queries = client.query_count();
  return out;
}

}  // namespace elminer
