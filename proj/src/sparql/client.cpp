#include "sparql/client.hpp"

#include "sparql/templates.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>

namespace elminer {

namespace {

using json = nlohmann::json;

RdfTerm term_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  const std::string value = j.at("value").get<std::string>();
  if (type == "uri") return RdfTerm::iri(value);
  if (type == "bnode") return RdfTerm::blank(value);
  if (type == "literal" || type == "typed-literal") {
    if (j.contains("datatype")) return RdfTerm::typed_literal(value, j["datatype"].get<std::string>());
    if (j.contains("xml:lang")) return RdfTerm::lang_literal(value, j["xml:lang"].get<std::string>());
    return RdfTerm::literal(value);
  }
  throw std::runtime_error("unknown term type in SPARQL results: " + type);
}

void sleep_cancellable(std::chrono::milliseconds total, const CancellationToken* token) {
  auto until = std::chrono::steady_clock::now() + total;
  while (std::chrono::steady_clock::now() < until) {
    if (token && token->cancelled()) throw Cancelled();
    std::this_thread::sleep_for(std::min<std::chrono::steady_clock::duration>(
        std::chrono::milliseconds(20), until - std::chrono::steady_clock::now()));
  }
}

class HttpStatusError : public std::runtime_error {
 public:
  HttpStatusError(int status, const std::string& msg) : std::runtime_error(msg), status_(status) {}
  bool retryable() const { return status_ == 429 || status_ >= 500; }

 private:
  int status_;
};

class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

long integer_value(const RdfTerm& t) {
  try {
    return std::stol(t.value());
  } catch (const std::exception&) {
    throw std::runtime_error("count is not an integer: " + t.to_ntriples());
  }
}

}  // namespace

void EndpointConfig::validate() const {
  if (url.empty()) throw std::invalid_argument("endpoint URL is empty");
  if (url.rfind("http://", 0) != 0 && url.rfind("https://", 0) != 0)
    throw std::invalid_argument("endpoint URL must start with http:// or https://");
  if (timeout_s <= 0) throw std::invalid_argument("timeout must be positive");
  if (max_retries < 0) throw std::invalid_argument("max-retries must be >= 0");
  if (politeness_delay_ms < 0) throw std::invalid_argument("politeness delay must be >= 0");
  if (parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
  if (query_budget < 1) throw std::invalid_argument("query-budget must be >= 1");
  if (batch_size < 1) throw std::invalid_argument("batch-size must be >= 1");
  if (class_page_size < 1) throw std::invalid_argument("class page size must be >= 1");
}

std::vector<Binding> parse_sparql_json(const std::string& body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("malformed SPARQL JSON results: ") + e.what());
  }
  std::vector<Binding> rows;
  try {
    for (auto& b : doc.at("results").at("bindings")) {
      Binding row;
      for (auto& [var, term] : b.items()) row.emplace(var, term_from_json(term));
      rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("unexpected SPARQL JSON results: ") + e.what());
  }
  return rows;
}

SparqlClient::SparqlClient(EndpointConfig config, Diagnostics* diag) : config_(std::move(config)), diag_(diag) {
  config_.validate();
  auto scheme_end = config_.url.find("://") + 3;
  auto slash = config_.url.find('/', scheme_end);
  host_ = config_.url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : config_.url.substr(slash);
}

void SparqlClient::reserve_query() {
  long n = queries_.fetch_add(1) + 1;
  if (n > config_.query_budget) {
    queries_.fetch_sub(1);
    throw QueryBudgetExceeded(config_.query_budget);
  }
}

void SparqlClient::wait_politeness() {
  if (config_.politeness_delay_ms <= 0) return;
  std::unique_lock lock(pace_mu_);
  auto next = last_request_ + std::chrono::milliseconds(config_.politeness_delay_ms);
  auto now = std::chrono::steady_clock::now();
  if (now < next) std::this_thread::sleep_until(next);
  last_request_ = std::chrono::steady_clock::now();
}

std::string SparqlClient::request(const std::string& query) {
  httplib::Client cli(host_);
  auto secs = static_cast<time_t>(config_.timeout_s);
  auto usecs = static_cast<time_t>((config_.timeout_s - static_cast<double>(secs)) * 1e6);
  cli.set_connection_timeout(secs, usecs);
  cli.set_read_timeout(secs, usecs);
  cli.set_write_timeout(secs, usecs);
  if (config_.basic_user) cli.set_basic_auth(*config_.basic_user, config_.basic_password.value_or(""));
  httplib::Headers headers{{"Accept", "application/sparql-results+json"}};

  std::string encoded = httplib::detail::encode_query_param(query);
  std::string sep = path_.find('?') == std::string::npos ? "?" : "&";
  std::string get_target = path_ + sep + "query=" + encoded;
  bool use_get = config_.method == EndpointConfig::Method::Get && host_.size() + get_target.size() <= config_.max_get_url;

  httplib::Result res = use_get ? cli.Get(get_target, headers)
                                : cli.Post(path_, headers, "query=" + encoded, "application/x-www-form-urlencoded");
  if (!res) throw NetworkError("request to " + config_.url + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    std::string snippet = res->body.substr(0, 200);
    throw HttpStatusError(res->status, "endpoint answered HTTP " + std::to_string(res->status) + ": " + snippet);
  }
  return res->body;
}

std::vector<Binding> SparqlClient::select(const std::string& query, const CancellationToken* token) {
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (token && token->cancelled()) throw Cancelled();
    if (attempt > 0) sleep_cancellable(std::chrono::milliseconds(config_.backoff_ms) * (1 << (attempt - 1)), token);
    reserve_query();
    wait_politeness();
    try {
      auto rows = parse_sparql_json(request(query));
      if (diag_ && config_.truncation_cap > 0 && rows.size() == config_.truncation_cap) {
        diag_->warn("result has exactly " + std::to_string(rows.size()) +
                    " rows and may have been truncated by the endpoint");
      }
      return rows;
    } catch (const HttpStatusError& e) {
      if (!e.retryable()) throw FetchError(e.what());
      last_error = e.what();
    } catch (const NetworkError& e) {
      last_error = e.what();
    } catch (const std::runtime_error& e) {
      throw FetchError(e.what());
    }
    if (diag_) diag_->count("query_retries");
  }
  throw FetchError(last_error + " (after " + std::to_string(config_.max_retries) + " retries)");
}

std::vector<std::vector<Binding>> SparqlClient::select_batches(const std::vector<std::vector<RdfTerm>>& batches,
                                                               std::string (*build)(const std::vector<RdfTerm>&),
                                                               const CancellationToken* token) {
  std::vector<std::vector<Binding>> results(batches.size());
  if (batches.empty()) return results;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::size_t error_batch = 0;
  std::mutex error_mu;

  auto worker = [&] {
    while (!failed.load()) {
      std::size_t i = next.fetch_add(1);
      if (i >= batches.size()) return;
      try {
        results[i] = select(build(batches[i]), token);
      } catch (...) {
        std::lock_guard lock(error_mu);
        // the earliest failing batch wins so the reported error is deterministic
        if (!error || i < error_batch) {
          error = std::current_exception();
          error_batch = i;
        }
        failed.store(true);
      }
    }
  };

  auto n = std::min<std::size_t>(static_cast<std::size_t>(config_.parallelism), batches.size());
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const FetchError& e) {
      throw FetchError("batch " + std::to_string(error_batch + 1) + " of " + std::to_string(batches.size()) + ": " +
                       e.what());
    }
  }
  return results;
}

std::vector<Triple> SparqlClient::fetch(const std::vector<RdfTerm>& subjects, const CancellationToken* token) {
  std::vector<Triple> out;
  for (auto& rows : select_batches(partition_batches(subjects, config_.batch_size), &triples_query, token)) {
    for (auto& row : rows) {
      auto s = row.find("s"), p = row.find("p"), o = row.find("o");
      if (s == row.end() || p == row.end() || o == row.end()) throw FetchError("result row lacks ?s ?p ?o");
      out.push_back(make_triple(s->second, p->second, o->second));
    }
  }
  return out;
}

std::map<RdfTerm, long> SparqlClient::counts(const std::vector<RdfTerm>& subjects,
                                             std::string (*build)(const std::vector<RdfTerm>&),
                                             const CancellationToken* token) {
  std::map<RdfTerm, long> out;
  for (auto& rows : select_batches(partition_batches(subjects, config_.batch_size), build, token)) {
    for (auto& row : rows) {
      auto s = row.find("s"), c = row.find("c");
      if (s == row.end() || c == row.end()) throw FetchError("result row lacks ?s ?c");
      out[s->second] = integer_value(c->second);
    }
  }
  return out;
}

std::map<RdfTerm, long> SparqlClient::count_predicates(const std::vector<RdfTerm>& subjects,
                                                       const CancellationToken* token) {
  return counts(subjects, &count_predicates_query, token);
}

std::map<RdfTerm, long> SparqlClient::count_triples(const std::vector<RdfTerm>& subjects,
                                                    const CancellationToken* token) {
  return counts(subjects, &count_triples_query, token);
}

std::vector<RdfTerm> SparqlClient::class_instances(const std::string& class_iri, const CancellationToken* token) {
  std::vector<RdfTerm> out;
  for (std::size_t offset = 0; out.size() < config_.instance_cap; offset += config_.class_page_size) {
    auto limit = std::min(config_.class_page_size, config_.instance_cap - out.size());
    auto rows = select(class_instances_query(class_iri, limit, offset), token);
    for (auto& row : rows) {
      auto s = row.find("s");
      if (s != row.end() && s->second.is_iri()) out.push_back(s->second);
    }
    if (rows.size() < limit) break;
  }
  if (out.size() >= config_.instance_cap && diag_) {
    diag_->warn("class instance list capped at " + std::to_string(config_.instance_cap));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace elminer
