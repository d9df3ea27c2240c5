#include "sparql/fixture_endpoint.hpp"

#include "rdf/turtle.hpp"
#include "sparql/templates.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace elminer {

namespace {

using json = nlohmann::json;

json term_json(const RdfTerm& t) {
  if (t.is_iri()) return {{"type", "uri"}, {"value", t.value()}};
  if (t.is_blank()) return {{"type", "bnode"}, {"value", t.value()}};
  json j{{"type", "literal"}, {"value", t.value()}};
  if (t.language()) j["xml:lang"] = *t.language();
  if (t.datatype()) j["datatype"] = *t.datatype();
  return j;
}

json integer_json(long n) {
  return {{"type", "literal"}, {"value", std::to_string(n)}, {"datatype", vocab::kXsdInteger}};
}

std::vector<RdfTerm> values_terms(const RecognizedQuery& q) {
  std::vector<RdfTerm> out;
  for (auto& s : q.subjects) out.push_back(RdfTerm::iri(s));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::unique_ptr<FixtureEndpoint> FixtureEndpoint::from_file(const std::string& turtle_path) {
  return std::make_unique<FixtureEndpoint>(parse_turtle_file(turtle_path).triples);
}

FixtureEndpoint::FixtureEndpoint(const std::vector<Triple>& triples)
    : graph_(triples), server_(std::make_unique<httplib::Server>()) {
  auto handle = [this](const httplib::Request& req, httplib::Response& res) {
    ++queries_;
    int pending = failures_.load();
    while (pending > 0 && !failures_.compare_exchange_weak(pending, pending - 1)) {
    }
    if (pending > 0) {
      res.status = failure_status_.load();
      res.set_content("injected failure", "text/plain");
      return;
    }
    if (!req.has_param("query")) {
      res.status = 400;
      res.set_content("missing query parameter", "text/plain");
      return;
    }
    try {
      res.set_content(answer(req.get_param_value("query")), "application/sparql-results+json");
    } catch (const std::exception& e) {
      res.status = 400;
      res.set_content(e.what(), "text/plain");
    }
  };
  server_->Get("/sparql", handle);
  server_->Post("/sparql", handle);
  port_ = server_->bind_to_any_port("127.0.0.1");
  if (port_ < 0) throw std::runtime_error("fixture endpoint could not bind a loopback port");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

FixtureEndpoint::~FixtureEndpoint() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string FixtureEndpoint::url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/sparql"; }

EndpointConfig FixtureEndpoint::config() const {
  EndpointConfig c;
  c.url = url();
  c.timeout_s = 10;
  c.backoff_ms = 10;
  return c;
}

void FixtureEndpoint::fail_next(int n, int status) {
  failure_status_.store(status);
  failures_.store(n);
}

std::string FixtureEndpoint::answer(const std::string& query) const {
  auto q = recognize_query(query);
  if (!q) throw std::invalid_argument("unsupported query");
  json bindings = json::array();
  std::vector<std::string> vars;
  using K = RecognizedQuery::Kind;
  switch (q->kind) {
    case K::Triples:
      vars = {"s", "p", "o"};
      for (auto& s : values_terms(*q)) {
        for (auto& [p, o] : graph_.outgoing(s)) {
          bindings.push_back({{"s", term_json(s)}, {"p", term_json(p)}, {"o", term_json(o)}});
        }
      }
      break;
    case K::CountPredicates:
    case K::CountTriples:
      vars = {"s", "c"};
      for (auto& s : values_terms(*q)) {
        auto& out = graph_.outgoing(s);
        if (out.empty()) continue;
        long n = static_cast<long>(out.size());
        if (q->kind == K::CountPredicates) {
          std::set<RdfTerm> preds;
          for (auto& po : out) preds.insert(po.first);
          n = static_cast<long>(preds.size());
        }
        bindings.push_back({{"s", term_json(s)}, {"c", integer_json(n)}});
      }
      break;
    case K::ClassInstances: {
      vars = {"s"};
      std::vector<std::string> instances;
      RdfTerm cls = RdfTerm::iri(q->class_iri);
      for (auto& t : graph_.triples()) {
        if (t.predicate.value() == vocab::kRdfType && t.object == cls && t.subject.is_iri())
          instances.push_back(t.subject.value());
      }
      std::sort(instances.begin(), instances.end());
      instances.erase(std::unique(instances.begin(), instances.end()), instances.end());
      std::size_t end = q->limit ? std::min(instances.size(), q->offset + *q->limit) : instances.size();
      for (std::size_t i = q->offset; i < end; ++i) bindings.push_back({{"s", term_json(RdfTerm::iri(instances[i]))}});
      break;
    }
  }
  json doc{{"head", {{"vars", vars}}}, {"results", {{"bindings", bindings}}}};
  return doc.dump();
}

}  // namespace elminer
