#include "service/job_manager.hpp"

#include "shacl/shacl.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace elminer {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string now_iso() {
  auto now = std::chrono::system_clock::now();
  auto t = std::chrono::system_clock::to_time_t(now);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0') << ms << 'Z';
  return os.str();
}

JobState parse_state(const std::string& s) {
  for (auto st : {JobState::Pending, JobState::Running, JobState::Stopped, JobState::Finished, JobState::Failed}) {
    if (s == to_string(st)) return st;
  }
  throw std::invalid_argument("unknown job state " + s);
}

bool valid_id(const std::string& id) {
  return !id.empty() && id.size() <= 64 &&
         std::all_of(id.begin(), id.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '-'; });
}

}  // namespace

const char* to_string(JobState s) {
  switch (s) {
    case JobState::Pending:
      return "Pending";
    case JobState::Running:
      return "Running";
    case JobState::Stopped:
      return "Stopped";
    case JobState::Finished:
      return "Finished";
    case JobState::Failed:
      return "Failed";
  }
  return "Failed";
}

const char* to_string(ReviewState s) {
  switch (s) {
    case ReviewState::Unreviewed:
      return "Unreviewed";
    case ReviewState::Accepted:
      return "Accepted";
    case ReviewState::Rejected:
      return "Rejected";
  }
  return "Unreviewed";
}

bool is_terminal(JobState s) { return s == JobState::Stopped || s == JobState::Finished || s == JobState::Failed; }

JobManager::JobManager(ManagerConfig config) : config_(std::move(config)) {
  if (config_.job_concurrency < 1) throw std::invalid_argument("job concurrency must be at least 1");
  fs::create_directories(config_.data_dir / "jobs");
  if (config_.ontology_file) ontology_ = OntologyStore::load_file(*config_.ontology_file);
  recover();
  for (int i = 0; i < config_.job_concurrency; ++i) workers_.emplace_back([this] { worker(); });
}

JobManager::~JobManager() { shutdown(); }

void JobManager::shutdown() {
  {
    std::lock_guard lock(mu_);
    if (stopping_ && workers_.empty()) return;
    stopping_ = true;
    for (auto& [id, job] : jobs_) job->token->cancel();
  }
  changed_.notify_all();
  for (auto& t : workers_) t.join();
  workers_.clear();
}

std::string JobManager::new_id() {
  static thread_local std::mt19937_64 rng(std::random_device{}());
  std::ostringstream os;
  os << "job-" << std::setw(4) << std::setfill('0') << ++counter_ << '-' << std::hex << std::setw(8)
     << (rng() & 0xffffffffu);
  return os.str();
}

JobManager::Job& JobManager::find(const std::string& id) {
  auto it = jobs_.find(id);
  if (it == jobs_.end()) throw ApiError(404, "no job " + id);
  return *it->second;
}

const JobManager::Job& JobManager::find(const std::string& id) const {
  auto it = jobs_.find(id);
  if (it == jobs_.end()) throw ApiError(404, "no job " + id);
  return *it->second;
}

void JobManager::journal(const std::string& id, const json& record) {
  std::ofstream out(config_.data_dir / "jobs" / (id + ".jsonl"), std::ios::app);
  out << record.dump() << '\n';
  out.flush();
}

void JobManager::add_event(Job& job, const std::string& type, json data) {
  long id = job.events.empty() ? 1 : job.events.back().id + 1;
  job.events.push_back({id, type, std::move(data)});
  changed_.notify_all();
}

void JobManager::set_state(Job& job, JobState s, const std::string& reason) {
  job.state = s;
  job.updated_at = now_iso();
  json data{{"state", to_string(s)}};
  if (!reason.empty()) data["reason"] = reason;
  if (is_terminal(s)) data["partial"] = job.partial;
  add_event(job, "job-state-changed", data);
}

void JobManager::add_result(Job& job, ResultRecord rec) {
  rec.id = static_cast<long>(job.results.size()) + 1;
  job.results.push_back({std::move(rec), ReviewState::Unreviewed});
  job.updated_at = now_iso();
  add_event(job, "axiom-mined", result_json(job.results.back()));
}

json JobManager::result_json(const Result& r) const {
  json j = r.record.to_json();
  j["reviewState"] = to_string(r.review);
  return j;
}

std::string JobManager::create_job(const json& raw) {
  JobConfig config;
  try {
    config = JobConfig::from_json(raw);
  } catch (const std::invalid_argument& e) {
    throw ApiError(400, e.what());
  }
  std::lock_guard lock(mu_);
  if (stopping_) throw ApiError(503, "service is shutting down");
  auto job = std::make_unique<Job>();
  job->id = new_id();
  job->raw_config = config.to_json();
  job->config = config;
  job->created_at = job->updated_at = now_iso();
  journal(job->id, {{"type", "created"}, {"jobId", job->id}, {"config", job->raw_config}, {"at", job->created_at}});
  set_state(*job, JobState::Pending);
  std::string id = job->id;
  order_.push_back(id);
  jobs_.emplace(id, std::move(job));
  queue_.push_back(id);
  changed_.notify_all();
  return id;
}

json JobManager::snapshot(const Job& job) const {
  json results = json::array();
  for (auto& r : job.results) results.push_back(result_json(r));
  return {{"jobId", job.id},
          {"state", to_string(job.state)},
          {"config", job.raw_config},
          {"createdAt", job.created_at},
          {"updatedAt", job.updated_at},
          {"partial", job.partial},
          {"stopReason", job.stop_reason},
          {"queries", job.queries},
          {"targetSize", job.target_size},
          {"warnings", job.warnings},
          {"diagnostics", job.counters},
          {"results", results}};
}

json JobManager::list_jobs() const {
  std::lock_guard lock(mu_);
  json out = json::array();
  for (auto& id : order_) {
    auto& job = *jobs_.at(id);
    out.push_back({{"jobId", id},
                   {"state", to_string(job.state)},
                   {"createdAt", job.created_at},
                   {"updatedAt", job.updated_at},
                   {"results", job.results.size()},
                   {"target", job.raw_config.value("classIri", "")}});
  }
  return out;
}

json JobManager::job(const std::string& id) const {
  std::lock_guard lock(mu_);
  return snapshot(find(id));
}

json JobManager::stop_job(const std::string& id, std::chrono::milliseconds wait) {
  std::unique_lock lock(mu_);
  Job& job = find(id);
  if (is_terminal(job.state)) throw ApiError(409, std::string("job is already ") + to_string(job.state));
  if (job.state == JobState::Pending) {
    job.partial = true;
    job.stop_reason = "stopped before it started";
    journal(id, {{"type", "state"}, {"state", "Stopped"}, {"reason", job.stop_reason}, {"partial", true},
                 {"at", now_iso()}});
    set_state(job, JobState::Stopped, job.stop_reason);
    return snapshot(job);
  }
  job.token->cancel();
  changed_.wait_for(lock, wait, [&] { return is_terminal(job.state); });
  return snapshot(job);
}

JobState JobManager::wait_for(const std::string& id, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mu_);
  const Job& job = find(id);
  changed_.wait_for(lock, timeout, [&] { return is_terminal(job.state); });
  return job.state;
}

json JobManager::review(const std::string& id, long result_id, const std::string& verdict) {
  std::lock_guard lock(mu_);
  Job& job = find(id);
  if (result_id < 1 || result_id > static_cast<long>(job.results.size())) {
    throw ApiError(404, "no result " + std::to_string(result_id) + " in job " + id);
  }
  Result& r = job.results[static_cast<std::size_t>(result_id - 1)];
  if (verdict == "accept") {
    if (r.review == ReviewState::Accepted) throw ApiError(409, "result is already accepted");
    if (!job.config || !job.config->class_iri) throw ApiError(409, "job has no target class to attach the axiom to");
    const std::string& cls = *job.config->class_iri;
    if (!ontology_.contains(cls, r.record.pattern)) {
      ontology_.accept_axiom(cls, r.record.pattern);
      std::ofstream out(config_.data_dir / "ontology.jsonl", std::ios::app);
      out << json{{"subclass", cls}, {"pattern", canonical_key(r.record.pattern)}}.dump() << '\n';
    }
    r.review = ReviewState::Accepted;
  } else if (verdict == "reject") {
    if (r.review == ReviewState::Accepted) throw ApiError(409, "an accepted axiom cannot be rejected");
    r.review = ReviewState::Rejected;
  } else {
    throw ApiError(400, "verdict must be 'accept' or 'reject'");
  }
  job.updated_at = now_iso();
  journal(id, {{"type", "review"}, {"resultId", result_id}, {"verdict", verdict}, {"at", job.updated_at}});
  add_event(job, "result-reviewed", {{"resultId", result_id}, {"reviewState", to_string(r.review)}});
  return result_json(r);
}

std::pair<std::string, std::string> JobManager::export_job(const std::string& id, const std::string& format,
                                                           bool accepted_only) const {
  if (format != "manchester" && format != "shacl-turtle" && format != "json") {
    throw ApiError(400, "format must be manchester, shacl-turtle or json");
  }
  std::lock_guard lock(mu_);
  const Job& job = find(id);
  std::vector<const Result*> chosen;
  for (auto& r : job.results) {
    if (!accepted_only || r.review == ReviewState::Accepted) chosen.push_back(&r);
  }
  if (format == "json") {
    json results = json::array();
    for (auto* r : chosen) results.push_back(result_json(*r));
    return {json{{"jobId", id}, {"results", results}}.dump(2) + "\n", "application/json"};
  }
  if (chosen.empty()) return {"", format == "manchester" ? "text/plain" : "text/turtle"};
  if (format == "manchester") {
    std::string out;
    JobConfig cfg = job.config.value_or(JobConfig{});
    cfg.prefixes = job.prefixes;
    for (auto* r : chosen) out += axiom_text(cfg, r->record.pattern) + "\n";
    return {out, "text/plain"};
  }
  std::vector<Pattern> patterns;
  for (auto* r : chosen) patterns.push_back(r->record.pattern);
  auto doc = to_shacl_document(patterns);
  return {shapes_to_turtle(doc.triples, job.prefixes), "text/turtle"};
}

std::pair<std::string, std::string> JobManager::export_ontology(const std::string& format) const {
  std::lock_guard lock(mu_);
  if (format == "manchester") return {ontology_.export_manchester(prefixes_), "text/plain"};
  if (format == "turtle") return {ontology_.export_turtle(prefixes_).document, "text/turtle"};
  throw ApiError(400, "format must be manchester or turtle");
}

std::vector<JobEvent> JobManager::events_after(const std::string& id, long after, std::chrono::milliseconds timeout,
                                               bool& finished) const {
  std::unique_lock lock(mu_);
  const Job& job = find(id);
  auto ready = [&] { return stopping_ || is_terminal(job.state) || (!job.events.empty() && job.events.back().id > after); };
  changed_.wait_for(lock, timeout, ready);
  std::vector<JobEvent> out;
  for (auto& e : job.events) {
    if (e.id > after) out.push_back(e);
  }
  finished = is_terminal(job.state) || stopping_;
  return out;
}

void JobManager::worker() {
  for (;;) {
    std::string id;
    {
      std::unique_lock lock(mu_);
      changed_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      id = queue_.front();
      queue_.pop_front();
    }
    run(id);
  }
}

void JobManager::run(const std::string& id) {
  JobConfig config;
  std::shared_ptr<CancellationToken> token;
  OntologyStore ontology;
  {
    std::lock_guard lock(mu_);
    Job& job = find(id);
    if (job.state != JobState::Pending) return;
    config = *job.config;
    token = job.token;
    ontology = ontology_;
    journal(id, {{"type", "state"}, {"state", "Running"}, {"at", now_iso()}});
    set_state(job, JobState::Running);
  }

  JobOutcome outcome;
  std::string failure;
  try {
    outcome = run_job(config, &ontology, token.get(), [&](const ResultRecord& rec) {
      std::lock_guard lock(mu_);
      Job& job = find(id);
      ResultRecord copy = rec;
      copy.id = static_cast<long>(job.results.size()) + 1;
      journal(id, {{"type", "result"}, {"record", copy.to_json()}});
      add_result(job, std::move(copy));
    });
  } catch (const std::exception& e) {
    failure = e.what();
  }

  std::lock_guard lock(mu_);
  Job& job = find(id);
  JobState final_state;
  if (!failure.empty()) {
    final_state = JobState::Failed;
    job.partial = true;
    job.stop_reason = failure;
  } else {
    job.prefixes = outcome.prefixes;
    prefixes_.merge(outcome.prefixes);
    job.partial = outcome.partial;
    job.stop_reason = outcome.stop_reason;
    job.queries = outcome.queries;
    job.target_size = outcome.target_size;
    job.warnings = outcome.diagnostics.warnings();
    job.counters = outcome.diagnostics.counters();
    if (!outcome.partial) {
      for (auto& rec : outcome.closed) {
        if (!rec.conjunction) continue;
        ResultRecord copy = rec;
        copy.id = static_cast<long>(job.results.size()) + 1;
        journal(id, {{"type", "result"}, {"record", copy.to_json()}});
        add_result(job, std::move(copy));
      }
    }
    if (outcome.stop_reason == "cancelled") final_state = JobState::Stopped;
    else if (outcome.partial && job.results.empty()) final_state = JobState::Failed;
    else final_state = JobState::Finished;
  }
  journal(id, {{"type", "state"},
               {"state", to_string(final_state)},
               {"reason", job.stop_reason},
               {"partial", job.partial},
               {"queries", job.queries},
               {"targetSize", job.target_size},
               {"warnings", job.warnings},
               {"diagnostics", job.counters},
               {"prefixes", json::parse(job.prefixes.to_json_text())},
               {"at", now_iso()}});
  set_state(job, final_state, job.stop_reason);
}

void JobManager::recover() {
  std::vector<fs::path> files;
  for (auto& entry : fs::directory_iterator(config_.data_dir / "jobs")) {
    if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (auto& f : files) recover_job(f);
  std::stable_sort(order_.begin(), order_.end(), [&](const std::string& a, const std::string& b) {
    return jobs_.at(a)->created_at < jobs_.at(b)->created_at;
  });
  counter_ = static_cast<long>(jobs_.size());

  std::ifstream onto(config_.data_dir / "ontology.jsonl");
  std::string line;
  while (std::getline(onto, line)) {
    if (line.empty()) continue;
    try {
      auto j = json::parse(line);
      auto subclass = j.at("subclass").get<std::string>();
      auto pattern = parse_pattern(j.at("pattern").get<std::string>());
      if (!ontology_.contains(subclass, pattern)) ontology_.accept_axiom(subclass, pattern);
    } catch (const std::exception&) {
      // a torn last line from a crash; the accepted axiom is also in the job journal
    }
  }
}

void JobManager::recover_job(const fs::path& file) {
  auto job = std::make_unique<Job>();
  job->id = file.stem().string();
  if (!valid_id(job->id)) return;
  std::ifstream in(file);
  std::string line;
  int n = 0;
  std::string corrupt;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      auto j = json::parse(line);
      auto type = j.at("type").get<std::string>();
      if (type == "created") {
        job->raw_config = j.at("config");
        job->created_at = job->updated_at = j.value("at", "");
        try {
          job->config = JobConfig::from_json(job->raw_config);
        } catch (const std::invalid_argument& e) {
          throw std::runtime_error(std::string("stored configuration is invalid: ") + e.what());
        }
        set_state(*job, JobState::Pending);
      } else if (type == "state") {
        job->partial = j.value("partial", job->partial);
        job->stop_reason = j.value("reason", job->stop_reason);
        job->queries = j.value("queries", job->queries);
        job->target_size = j.value("targetSize", job->target_size);
        if (j.contains("warnings")) job->warnings = j["warnings"].get<std::vector<std::string>>();
        if (j.contains("diagnostics")) job->counters = j["diagnostics"].get<std::map<std::string, long>>();
        if (j.contains("prefixes")) {
          job->prefixes = PrefixMap::from_json_text(j["prefixes"].dump());
          prefixes_.merge(job->prefixes);
        }
        set_state(*job, parse_state(j.at("state").get<std::string>()), job->stop_reason);
        job->updated_at = j.value("at", job->updated_at);
      } else if (type == "result") {
        add_result(*job, ResultRecord::from_json(j.at("record")));
      } else if (type == "review") {
        auto rid = j.at("resultId").get<long>();
        if (rid < 1 || rid > static_cast<long>(job->results.size())) throw std::runtime_error("review of unknown result");
        auto& r = job->results[static_cast<std::size_t>(rid - 1)];
        r.review = j.at("verdict").get<std::string>() == "accept" ? ReviewState::Accepted : ReviewState::Rejected;
        add_event(*job, "result-reviewed", {{"resultId", rid}, {"reviewState", to_string(r.review)}});
      } else {
        throw std::runtime_error("unknown record type " + type);
      }
    } catch (const std::exception& e) {
      corrupt = "journal line " + std::to_string(n) + " is corrupt: " + e.what();
      break;
    }
  }
  if (job->events.empty() && corrupt.empty()) corrupt = "journal is empty";
  if (!corrupt.empty()) {
    job->warnings.push_back(corrupt);
    job->stop_reason = corrupt;
    job->partial = true;
    set_state(*job, JobState::Failed, corrupt);
  } else if (!is_terminal(job->state)) {
    job->partial = true;
    job->stop_reason = "interrupted by a service restart";
    journal(job->id, {{"type", "state"}, {"state", "Stopped"}, {"reason", job->stop_reason}, {"partial", true},
                      {"at", now_iso()}});
    set_state(*job, JobState::Stopped, job->stop_reason);
  }
  order_.push_back(job->id);
  jobs_.emplace(job->id, std::move(job));
}

}  // namespace elminer
