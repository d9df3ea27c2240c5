// Command-line front end over the elminer C API.
#include "elminer/elminer.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFetch = 3;

elm_job* g_job = nullptr;
volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) {
  g_stop = 1;
  if (g_job) elm_job_cancel(g_job);
}

void install_signal_handlers() {
  struct sigaction sa {};
  sa.sa_handler = on_signal;
  sigemptyset(&sa.sa_mask);
  // a second Ctrl-C kills the process
  sa.sa_flags = SA_RESETHAND;
  sigaction(SIGINT, &sa, nullptr);
  sigaction(SIGTERM, &sa, nullptr);
}

struct MineOptions {
  std::optional<std::string> endpoint, fixture, class_iri, uris_file, ontology, prefixes_file;
  std::string min_support = "1";
  int max_depth = 1;
  long batch_size = 100;
  std::optional<long> sample_size;
  std::string strategy = "uniform";
  std::uint64_t seed = 0;
  std::vector<std::string> ignore;
  std::string format = "text";
  long query_budget = 10000;
  std::optional<std::string> verify;
  double timeout = 60;
  int max_retries = 3;
  int politeness_ms = 0;
  int parallelism = 2;
  long instance_cap = 1000000;
};

struct ServeOptions {
  std::string data_dir = "elminer-data";
  std::string host = "127.0.0.1";
  int port = 8080;
  int concurrency = 2;
  std::optional<std::string> ontology, ui_dir;
};

std::string take(char* s) {
  std::string out = s ? s : "";
  elm_string_free(s);
  return out;
}

std::vector<std::string> read_uris(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    if (line.size() > 1 && line.front() == '<' && line.back() == '>') line = line.substr(1, line.size() - 2);
    out.push_back(line);
  }
  return out;
}

json job_json(const MineOptions& o) {
  json j;
  if (o.endpoint) j["endpointUrl"] = *o.endpoint;
  if (o.fixture) j["fixtureFile"] = *o.fixture;
  if (o.class_iri) j["classIri"] = *o.class_iri;
  if (o.uris_file) j["uris"] = read_uris(*o.uris_file);
  j["minSupport"] = o.min_support;
  j["maxDepth"] = o.max_depth;
  j["batchSize"] = o.batch_size;
  if (o.sample_size) j["sampleSize"] = *o.sample_size;
  j["samplingStrategy"] = o.strategy;
  j["randomSeed"] = std::to_string(o.seed);
  j["ignorePredicates"] = o.ignore;
  j["queryBudget"] = o.query_budget;
  if (o.verify) j["verifyProofs"] = *o.verify == "on";
  j["timeout"] = o.timeout;
  j["maxRetries"] = o.max_retries;
  j["politenessDelay"] = o.politeness_ms;
  j["parallelism"] = o.parallelism;
  j["instanceCap"] = o.instance_cap;
  if (o.prefixes_file) {
    std::ifstream in(*o.prefixes_file);
    if (!in) throw std::runtime_error("cannot read " + *o.prefixes_file);
    j["prefixes"] = json::parse(in);
  }
  return j;
}

std::string summary_line(const json& r) {
  char pct[32];
  std::snprintf(pct, sizeof pct, "%.1f%%", r["supportPercent"].get<double>());
  return r["axiom"].get<std::string>() + "  [support " + r["support"].get<std::string>() + " (" + pct + "), " +
         std::to_string(r["proofSetSize"].get<long>()) + " subjects, depth " +
         std::to_string(r["depth"].get<int>()) + "]";
}

void stream_record(const char* record_json, void* user) {
  auto& format = *static_cast<const std::string*>(user);
  json r = json::parse(record_json);
  if (format == "text") {
    std::cout << "mined: " << summary_line(r) << "\n" << std::flush;
  } else if (format == "json") {
    r["event"] = "result";
    std::cout << r.dump() << "\n" << std::flush;
  }
}

int run_mine(const MineOptions& o) {
  json config;
  try {
    config = job_json(o);
  } catch (const std::exception& e) {
    std::cerr << "elminer: " << e.what() << "\n";
    return kExitUsage;
  }

  elm_job* job = nullptr;
  if (elm_job_create(config.dump().c_str(), &job) != ELM_OK) {
    std::cerr << "elminer: " << elm_last_error() << "\n";
    return kExitUsage;
  }
  if (o.ontology && elm_job_set_ontology(job, o.ontology->c_str()) != ELM_OK) {
    std::cerr << "elminer: ontology " << *o.ontology << ": " << elm_last_error() << "\n";
    elm_job_free(job);
    return kExitUsage;
  }

  g_job = job;
  install_signal_handlers();
  elm_status st = elm_job_run(job, stream_record, const_cast<std::string*>(&o.format));
  g_job = nullptr;
  if (st != ELM_OK && st != ELM_ERR_FETCH) {
    std::cerr << "elminer: " << elm_last_error() << "\n";
    elm_job_free(job);
    return st == ELM_ERR_INTERNAL ? kExitFailure : kExitUsage;
  }

  char* raw = nullptr;
  elm_job_outcome(job, &raw);
  json outcome = json::parse(take(raw));
  bool partial = outcome["partial"].get<bool>();
  for (auto& w : outcome["warnings"]) std::cerr << "elminer: warning: " << w.get<std::string>() << "\n";

  const std::string footer = std::string("partial: ") + (partial ? "true" : "false");
  if (o.format == "text") {
    for (auto& r : outcome["closed"]) std::cout << "result: " << summary_line(r) << "\n";
    std::cout << footer << "\n";
  } else if (o.format == "json") {
    json summary{{"event", "summary"},
                 {"partial", partial},
                 {"stopReason", outcome["stopReason"]},
                 {"queries", outcome["queries"]},
                 {"targetSize", outcome["targetSize"]},
                 {"proofFailures", outcome["proofFailures"]},
                 {"results", outcome["closed"]}};
    std::cout << summary.dump() << "\n";
  } else {
    char* doc = nullptr;
    elm_job_export(job, o.format == "manchester" ? "manchester" : "shacl-turtle", &doc);
    std::cout << take(doc) << "# " << footer << "\n";
  }
  std::cout << std::flush;
  elm_job_free(job);
  return st == ELM_ERR_FETCH ? kExitFetch : 0;
}

int run_serve(const ServeOptions& o) {
  json config{{"dataDir", o.data_dir}, {"host", o.host}, {"port", o.port}, {"jobConcurrency", o.concurrency}};
  if (o.ontology) config["ontologyFile"] = *o.ontology;
  if (o.ui_dir) config["uiDir"] = *o.ui_dir;
  install_signal_handlers();
  elm_service* service = nullptr;
  elm_status st = elm_service_start(config.dump().c_str(), &service);
  if (st != ELM_OK) {
    std::cerr << "elminer: " << elm_last_error() << "\n";
    return st == ELM_ERR_INVALID_ARGUMENT ? kExitUsage : kExitFailure;
  }
  std::cerr << "elminer: listening on http://" << o.host << ":" << elm_service_port(service) << "\n";
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(200));
  std::cerr << "elminer: shutting down\n";
  elm_service_stop(service);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine OWL 2 EL class descriptions from a SPARQL endpoint or a Turtle fixture."};
  app.set_version_flag("--version", std::string(elm_version()));

  MineOptions m;
  app.add_option("--endpoint", m.endpoint, "SPARQL endpoint URL")->envname("ELMINER_ENDPOINT");
  app.add_option("--fixture", m.fixture, "Turtle file served by a local endpoint");
  app.add_option("--class", m.class_iri, "Target class; instances are the subjects to describe");
  app.add_option("--uris", m.uris_file, "File with one target IRI per line");
  app.add_option("--min-support", m.min_support, "Minimum support, decimal or fraction in (0,1]")
      ->capture_default_str();
  app.add_option("--max-depth", m.max_depth, "Maximum nesting of existential restrictions")->capture_default_str();
  app.add_option("--batch-size", m.batch_size, "Subjects per VALUES query")->capture_default_str();
  app.add_option("--sample-size", m.sample_size, "Sample this many target subjects");
  app.add_option("--strategy", m.strategy, "Sampling strategy")
      ->check(CLI::IsMember({"uniform", "predicates", "triples"}))
      ->capture_default_str();
  app.add_option("--seed", m.seed, "Sampling seed")->capture_default_str();
  app.add_option("--ignore-predicate", m.ignore, "Regular expression over predicate IRIs (repeatable)");
  app.add_option("--ontology", m.ontology, "Accepted axioms; entailed patterns are not reported");
  app.add_option("--prefixes", m.prefixes_file, "JSON object of prefix names to namespaces");
  app.add_option("--format", m.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "turtle-shacl", "manchester"}))
      ->capture_default_str();
  app.add_option("--query-budget", m.query_budget, "Maximum SPARQL requests, retries included")
      ->capture_default_str();
  app.add_option("--verify-proofs", m.verify, "Check every proof set against retrieved triples")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--timeout", m.timeout, "Per-request timeout in seconds")->capture_default_str();
  app.add_option("--max-retries", m.max_retries, "Retries per request")->capture_default_str();
  app.add_option("--politeness-delay", m.politeness_ms, "Milliseconds between requests")->capture_default_str();
  app.add_option("--parallelism", m.parallelism, "Concurrent requests")->capture_default_str();
  app.add_option("--instance-cap", m.instance_cap, "Maximum class instances retrieved")->capture_default_str();

  ServeOptions s;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--data-dir", s.data_dir, "Journal and ontology directory")
      ->envname("ELMINER_DATA_DIR")
      ->capture_default_str();
  serve->add_option("--host", s.host, "Bind address")->capture_default_str();
  serve->add_option("--port", s.port, "Port, 0 for any free port")->envname("ELMINER_PORT")->capture_default_str();
  serve->add_option("--concurrency", s.concurrency, "Jobs run at once")->capture_default_str();
  serve->add_option("--ontology", s.ontology, "Initial ontology of accepted axioms");
  serve->add_option("--ui-dir", s.ui_dir, "Static files served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "elminer: " << e.what() << "\n";
    return kExitUsage;
  }

  if (serve->parsed()) return run_serve(s);
  return run_mine(m);
}
