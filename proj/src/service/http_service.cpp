#include "service/http_service.hpp"

#include <httplib.h>

#include <atomic>

namespace elminer {

namespace {

using json = nlohmann::json;

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const ApiError& e) {
      send_error(res, e.status(), e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, std::string("malformed JSON: ") + e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, e.what());
    }
  };
}

std::string sse_frame(const JobEvent& e) {
  return "id: " + std::to_string(e.id) + "\nevent: " + e.type + "\ndata: " + e.data.dump() + "\n\n";
}

}  // namespace

HttpService::HttpService(ServiceConfig config)
    : config_(std::move(config)), server_(std::make_unique<httplib::Server>()) {
  ManagerConfig mc;
  mc.data_dir = config_.data_dir;
  mc.job_concurrency = config_.job_concurrency;
  mc.ontology_file = config_.ontology_file;
  manager_ = std::make_unique<JobManager>(mc);
  routes();
}

HttpService::~HttpService() { stop(); }

void HttpService::routes() {
  auto& s = *server_;
  JobManager& jm = *manager_;

  s.Post("/jobs", guarded([&jm](const httplib::Request& req, httplib::Response& res) {
    auto id = jm.create_job(json::parse(req.body));
    send_json(res, 201, {{"jobId", id}, {"state", "Pending"}});
  }));
  s.Get("/jobs", guarded([&jm](const httplib::Request&, httplib::Response& res) { send_json(res, 200, jm.list_jobs()); }));
  s.Get(R"(/jobs/([A-Za-z0-9-]+))", guarded([&jm](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, jm.job(req.matches[1]));
  }));
  s.Post(R"(/jobs/([A-Za-z0-9-]+)/stop)", guarded([&jm](const httplib::Request& req, httplib::Response& res) {
    send_json(res, 200, jm.stop_job(req.matches[1]));
  }));
  s.Post(R"(/jobs/([A-Za-z0-9-]+)/results/(\d+)/review)",
         guarded([&jm](const httplib::Request& req, httplib::Response& res) {
           auto body = json::parse(req.body);
           if (!body.is_object() || !body.contains("verdict") || !body["verdict"].is_string())
             throw ApiError(400, "body must be {\"verdict\": \"accept\" | \"reject\"}");
           send_json(res, 200, jm.review(req.matches[1], std::stol(req.matches[2]), body["verdict"].get<std::string>()));
         }));
  s.Get(R"(/jobs/([A-Za-z0-9-]+)/export)", guarded([&jm](const httplib::Request& req, httplib::Response& res) {
    std::string format = req.has_param("format") ? req.get_param_value("format") : "json";
    std::string accepted = req.has_param("accepted") ? req.get_param_value("accepted") : "false";
    auto [doc, type] = jm.export_job(req.matches[1], format, accepted == "true" || accepted == "1");
    res.set_content(doc, type);
  }));
  s.Get("/ontology/export", guarded([&jm](const httplib::Request& req, httplib::Response& res) {
    std::string format = req.has_param("format") ? req.get_param_value("format") : "manchester";
    auto [doc, type] = jm.export_ontology(format);
    res.set_content(doc, type);
  }));

  s.Get(R"(/jobs/([A-Za-z0-9-]+)/events)", guarded([&jm](const httplib::Request& req, httplib::Response& res) {
    std::string id = req.matches[1];
    jm.job(id);  // 404 before the stream starts
    long last = 0;
    std::string header = req.get_header_value("Last-Event-ID");
    if (header.empty() && req.has_param("lastEventId")) header = req.get_param_value("lastEventId");
    if (!header.empty()) {
      try {
        last = std::stol(header);
      } catch (const std::exception&) {
        throw ApiError(400, "Last-Event-ID must be an integer");
      }
    }
    auto cursor = std::make_shared<long>(last);
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider("text/event-stream", [&jm, id, cursor](size_t, httplib::DataSink& sink) {
      bool finished = false;
      auto events = jm.events_after(id, *cursor, std::chrono::seconds(15), finished);
      if (events.empty() && !finished) {
        std::string ping = ": keep-alive\n\n";
        return sink.write(ping.data(), ping.size());
      }
      for (auto& e : events) {
        auto frame = sse_frame(e);
        if (!sink.write(frame.data(), frame.size())) return false;
        *cursor = e.id;
      }
      if (finished) sink.done();
      return true;
    });
  }));

  if (config_.ui_dir) s.set_mount_point("/", *config_.ui_dir);
}

void HttpService::start() {
  if (config_.port == 0) {
    port_ = server_->bind_to_any_port(config_.host);
  } else {
    port_ = server_->bind_to_port(config_.host, config_.port) ? config_.port : -1;
  }
  if (port_ < 0) throw std::runtime_error("cannot bind " + config_.host + ":" + std::to_string(config_.port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void HttpService::stop() {
  if (manager_) manager_->shutdown();
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace elminer
