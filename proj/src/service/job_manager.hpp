#pragma once

#include "job/job.hpp"
#include "ontology/ontology.hpp"

#include <json.hpp>

#include <condition_variable>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace elminer {

enum class JobState { Pending, Running, Stopped, Finished, Failed };
enum class ReviewState { Unreviewed, Accepted, Rejected };

const char* to_string(JobState s);
const char* to_string(ReviewState s);
bool is_terminal(JobState s);

struct JobEvent {
  long id = 0;
  std::string type;  // "axiom-mined", "job-state-changed", "result-reviewed"
  nlohmann::json data;
};

struct ManagerConfig {
  std::filesystem::path data_dir;
  int job_concurrency = 2;
  std::optional<std::string> ontology_file;
};

// HTTP-level failures carry the status code the API should answer with.
class ApiError : public std::runtime_error {
 public:
  ApiError(int status, const std::string& message) : std::runtime_error(message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

// Owns all jobs, their journals and the shared working ontology. Thread-safe; readers get
// JSON snapshots.
class JobManager {
 public:
  explicit JobManager(ManagerConfig config);
  ~JobManager();

  JobManager(const JobManager&) = delete;
  JobManager& operator=(const JobManager&) = delete;

  // Throws ApiError(400) for an invalid configuration.
  std::string create_job(const nlohmann::json& config);
  nlohmann::json list_jobs() const;
  nlohmann::json job(const std::string& id) const;
  nlohmann::json stop_job(const std::string& id, std::chrono::milliseconds wait = std::chrono::seconds(10));
  nlohmann::json review(const std::string& id, long result_id, const std::string& verdict);
  // format: manchester, shacl-turtle, json. Returns (document, content type).
  std::pair<std::string, std::string> export_job(const std::string& id, const std::string& format,
                                                 bool accepted_only) const;
  std::pair<std::string, std::string> export_ontology(const std::string& format) const;

  // Events with id > after, blocking up to `timeout` for new ones. `finished` is set once the
  // job is terminal and every event up to the terminal one has been returned.
  std::vector<JobEvent> events_after(const std::string& id, long after, std::chrono::milliseconds timeout,
                                     bool& finished) const;

  // Blocks until the job is terminal or the timeout passes; returns the final state.
  JobState wait_for(const std::string& id, std::chrono::milliseconds timeout) const;

  void shutdown();

 private:
  struct Result {
    ResultRecord record;
    ReviewState review = ReviewState::Unreviewed;
  };
  struct Job {
    std::string id;
    nlohmann::json raw_config;
    std::optional<JobConfig> config;
    JobState state = JobState::Pending;
    std::vector<Result> results;
    std::vector<JobEvent> events;
    std::string created_at, updated_at;
    bool partial = false;
    std::string stop_reason;
    long queries = 0;
    std::size_t target_size = 0;
    std::vector<std::string> warnings;
    std::map<std::string, long> counters;
    PrefixMap prefixes;
    std::shared_ptr<CancellationToken> token = std::make_shared<CancellationToken>();
  };

  Job& find(const std::string& id);
  const Job& find(const std::string& id) const;
  void journal(const std::string& id, const nlohmann::json& record);
  void set_state(Job& job, JobState s, const std::string& reason = "");
  void add_event(Job& job, const std::string& type, nlohmann::json data);
  void add_result(Job& job, ResultRecord rec);
  nlohmann::json snapshot(const Job& job) const;
  nlohmann::json result_json(const Result& r) const;
  void recover();
  void recover_job(const std::filesystem::path& file);
  void worker();
  void run(const std::string& id);
  std::string new_id();

  ManagerConfig config_;
  mutable std::mutex mu_;
  mutable std::condition_variable changed_;
  std::map<std::string, std::unique_ptr<Job>> jobs_;
  std::vector<std::string> order_;
  std::deque<std::string> queue_;
  OntologyStore ontology_;
  PrefixMap prefixes_ = PrefixMap::well_known();  // union over jobs, for ontology export
  bool stopping_ = false;
  long counter_ = 0;
  std::vector<std::thread> workers_;
};

}  // namespace elminer
