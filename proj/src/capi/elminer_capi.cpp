#include "elminer/elminer.h"

#include "job/job.hpp"
#include "model/pattern.hpp"
#include "ontology/ontology.hpp"
#include "rdf/turtle.hpp"
#include "service/http_service.hpp"
#include "shacl/shacl.hpp"
#include "sparql/fixture_endpoint.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <optional>
#include <string>

using nlohmann::json;

struct elm_job {
  elminer::JobConfig config;
  elminer::JobConfig render;  // config with every prefix known before the run, for axiom text
  std::optional<elminer::OntologyStore> ontology;
  elminer::CancellationToken token;
  std::optional<elminer::JobOutcome> outcome;
  std::atomic<bool> started{false};
};

struct elm_fixture {
  std::unique_ptr<elminer::FixtureEndpoint> endpoint;
  std::string url;
};

struct elm_service {
  std::unique_ptr<elminer::HttpService> service;
};

namespace {

thread_local std::string last_error;

elm_status fail(elm_status status, const std::string& message) {
  last_error = message;
  return status;
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Runs `f`, translating exceptions into status codes.
template <typename F>
elm_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const elminer::TurtleParseError& e) {
    return fail(ELM_ERR_PARSE, e.what());
  } catch (const elminer::OntologyParseError& e) {
    return fail(ELM_ERR_PARSE, e.what());
  } catch (const elminer::PatternParseError& e) {
    return fail(ELM_ERR_PARSE, e.what());
  } catch (const json::exception& e) {
    return fail(ELM_ERR_PARSE, e.what());
  } catch (const elminer::JobSetupError& e) {
    return fail(ELM_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ELM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ELM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ELM_ERR_INTERNAL, e.what());
  }
}

elminer::PrefixMap prefixes_from(const char* prefixes_json) {
  elminer::PrefixMap pm = elminer::PrefixMap::well_known();
  if (prefixes_json && *prefixes_json) pm.merge(elminer::PrefixMap::from_json_text(prefixes_json));
  return pm;
}

json outcome_json(const elminer::JobOutcome& o) {
  json streamed = json::array(), closed = json::array();
  for (auto& r : o.streamed) streamed.push_back(r.to_json());
  for (auto& r : o.closed) closed.push_back(r.to_json());
  return {{"partial", o.partial},
          {"stopReason", o.stop_reason},
          {"fetchFailed", o.fetch_failed},
          {"queries", o.queries},
          {"targetSize", o.target_size},
          {"proofFailures", o.proof_failures},
          {"warnings", o.diagnostics.warnings()},
          {"diagnostics", o.diagnostics.counters()},
          {"streamed", streamed},
          {"closed", closed}};
}

}  // namespace

extern "C" {

const char* elm_version(void) { return "0.1.0"; }

const char* elm_last_error(void) { return last_error.c_str(); }

void elm_string_free(char* s) { std::free(s); }

elm_status elm_job_create(const char* config_json, elm_job** out) {
  if (!config_json || !out) return fail(ELM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto job = std::make_unique<elm_job>();
    job->config = elminer::JobConfig::from_json(json::parse(config_json));
    job->render = job->config;
    job->render.prefixes = elminer::PrefixMap::well_known();
    if (job->config.fixture_file) {
      try {
        job->render.prefixes.merge(elminer::parse_turtle_file(*job->config.fixture_file).prefixes);
      } catch (const std::exception&) {
        // reported by elm_job_run
      }
    }
    job->render.prefixes.merge(job->config.prefixes);
    *out = job.release();
    return ELM_OK;
  });
}

void elm_job_free(elm_job* job) { delete job; }

elm_status elm_job_set_ontology(elm_job* job, const char* path) {
  if (!job || !path) return fail(ELM_ERR_INVALID_ARGUMENT, "null argument");
  if (job->started) return fail(ELM_ERR_STATE, "the job has already run");
  return guarded([&] {
    job->ontology = elminer::OntologyStore::load_file(path, job->render.prefixes);
    return ELM_OK;
  });
}

elm_status elm_job_run(elm_job* job, elm_result_fn on_result, void* user) {
  if (!job) return fail(ELM_ERR_INVALID_ARGUMENT, "null argument");
  if (job->started.exchange(true)) return fail(ELM_ERR_STATE, "the job has already run");
  return guarded([&] {
    const elminer::OntologyStore* ontology = job->ontology ? &*job->ontology : nullptr;
    elminer::ResultSink sink;
    if (on_result) {
      sink = [&](const elminer::ResultRecord& r) {
        json j = r.to_json();
        j["axiom"] = elminer::axiom_text(job->render, r.pattern);
        on_result(j.dump().c_str(), user);
      };
    }
    job->outcome = elminer::run_job(job->config, ontology, &job->token, sink);
    auto& o = *job->outcome;
    if (o.closed.empty() && o.partial && o.stop_reason != "cancelled") {
      return fail(ELM_ERR_FETCH, o.stop_reason);
    }
    return ELM_OK;
  });
}

void elm_job_cancel(elm_job* job) {
  if (job) job->token.cancel();
}

elm_status elm_job_outcome(const elm_job* job, char** out_json) {
  if (!job || !out_json) return fail(ELM_ERR_INVALID_ARGUMENT, "null argument");
  if (!job->outcome) return fail(ELM_ERR_STATE, "the job has not run");
  return guarded([&] {
    json j = outcome_json(*job->outcome);
    for (auto* list : {&j["streamed"], &j["closed"]}) {
      for (auto& r : *list) {
        auto p = elminer::parse_pattern(r["canonical"].get<std::string>());
        r["axiom"] = elminer::axiom_text(job->render, p);
      }
    }
    *out_json = copy_out(j.dump());
    return ELM_OK;
  });
}

elm_status elm_job_export(const elm_job* job, const char* format, char** out) {
  if (!job || !format || !out) return fail(ELM_ERR_INVALID_ARGUMENT, "null argument");
  if (!job->outcome) return fail(ELM_ERR_STATE, "the job has not run");
  return guarded([&] {
    auto& o = *job->outcome;
    std::string f = format, doc;
    if (f == "manchester") {
      for (auto& r : o.closed) doc += elminer::axiom_text(job->render, r.pattern) + "\n";
    } else if (f == "shacl-turtle") {
      std::vector<elminer::Pattern> patterns;
      for (auto& r : o.closed) patterns.push_back(r.pattern);
      if (!patterns.empty()) {
        auto shapes = elminer::to_shacl_document(patterns);
        doc = elminer::shapes_to_turtle(shapes.triples, o.prefixes);
      }
    } else if (f == "json") {
      json results = json::array();
      for (auto& r : o.closed) {
        json j = r.to_json();
        j["axiom"] = elminer::axiom_text(job->render, r.pattern);
        results.push_back(j);
      }
      doc = results.dump(2) + "\n";
    } else {
      return fail(ELM_ERR_INVALID_ARGUMENT, "format must be manchester, shacl-turtle or json");
    }
    *out = copy_out(doc);
    return ELM_OK;
  });
}

elm_status elm_pattern_canonicalize(const char* text, const char* prefixes_json, char** out) {
  if (!text || !out) return fail(ELM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto pm = prefixes_from(prefixes_json);
    *out = copy_out(elminer::serialize(elminer::parse_pattern(text, pm), pm));
    return ELM_OK;
  });
}

elm_status elm_pattern_to_shacl(const char* text, const char* prefixes_json, char** out) {
  if (!text || !out) return fail(ELM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto pm = prefixes_from(prefixes_json);
    auto shapes = elminer::to_shacl_document({elminer::parse_pattern(text, pm)});
    *out = copy_out(elminer::shapes_to_turtle(shapes.triples, pm));
    return ELM_OK;
  });
}

elm_status elm_fixture_start(const char* turtle_path, elm_fixture** out) {
  if (!turtle_path || !out) return fail(ELM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto f = std::make_unique<elm_fixture>();
    f->endpoint = elminer::FixtureEndpoint::from_file(turtle_path);
    f->url = f->endpoint->url();
    *out = f.release();
    return ELM_OK;
  });
}

const char* elm_fixture_url(const elm_fixture* fixture) { return fixture ? fixture->url.c_str() : ""; }

long elm_fixture_query_count(const elm_fixture* fixture) { return fixture ? fixture->endpoint->query_count() : 0; }

void elm_fixture_stop(elm_fixture* fixture) { delete fixture; }

elm_status elm_service_start(const char* config_json, elm_service** out) {
  if (!out) return fail(ELM_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    json j = config_json && *config_json ? json::parse(config_json) : json::object();
    if (!j.is_object()) throw std::invalid_argument("service configuration must be a JSON object");
    elminer::ServiceConfig c;
    for (auto& [k, v] : j.items()) {
      if (k == "dataDir") c.data_dir = v.get<std::string>();
      else if (k == "host") c.host = v.get<std::string>();
      else if (k == "port") c.port = v.get<int>();
      else if (k == "jobConcurrency") c.job_concurrency = v.get<int>();
      else if (k == "ontologyFile") c.ontology_file = v.get<std::string>();
      else if (k == "uiDir") c.ui_dir = v.get<std::string>();
      else throw std::invalid_argument("unknown field '" + k + "'");
    }
    if (c.job_concurrency < 1) throw std::invalid_argument("job concurrency must be at least 1");
    if (c.port < 0 || c.port > 65535) throw std::invalid_argument("port must be in [0, 65535]");
    auto s = std::make_unique<elm_service>();
    s->service = std::make_unique<elminer::HttpService>(c);
    s->service->start();
    *out = s.release();
    return ELM_OK;
  });
}

int elm_service_port(const elm_service* service) { return service ? service->service->port() : 0; }

void elm_service_stop(elm_service* service) {
  if (!service) return;
  service->service->stop();
  delete service;
}

}  // extern "C"
