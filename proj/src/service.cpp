#include "valueplan/service.hpp"

#include <fstream>
#include <random>

#include <httplib.h>

#include "valueplan/project_io.hpp"
#include "valueplan/report_io.hpp"

namespace valueplan {

using nlohmann::json;

namespace {

std::string random_id() {
  static std::mutex mutex;
  static std::mt19937_64 engine{std::random_device{}()};
  std::lock_guard lock(mutex);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id(16, '0');
  std::uint64_t bits = engine();
  for (char& c : id) {
    c = kHex[bits & 0xF];
    bits >>= 4;
  }
  return id;
}

std::shared_ptr<const StoredProject> make_entry(Project project) {
  auto entry = std::make_shared<StoredProject>();
  entry->influences = compute_influences(project);
  entry->document = serialize_project(project);
  entry->project = std::move(project);
  return entry;
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

json violations_to_json(const std::vector<Violation>& violations) {
  json list = json::array();
  for (const Violation& v : violations)
    list.push_back({{"field", v.field}, {"rule", v.rule}, {"ids", v.ids}});
  return {{"error", "validation"}, {"violations", std::move(list)}};
}

json parse_error_to_json(const ParseError& e) {
  return {{"error", "parse"}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()},
          {"path", e.path()}};
}

// Runs fn, mapping document errors onto 422 / 400 responses.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    send_json(res, 422, parse_error_to_json(e));
  } catch (const ValidationError& e) {
    send_json(res, 400, violations_to_json(e.violations()));
  }
}

}  // namespace

ProjectStore::ProjectStore(std::optional<std::filesystem::path> directory)
    : directory_(std::move(directory)) {
  if (!directory_) return;
  std::filesystem::create_directories(*directory_);
  for (const auto& file : std::filesystem::directory_iterator(*directory_)) {
    if (file.path().extension() != ".json") continue;
    std::ifstream in(file.path());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
      entries_[file.path().stem().string()] = make_entry(parse_project(text));
    } catch (const std::exception&) {
      // Unreadable documents stay on disk but are not served.
    }
  }
}

std::string ProjectStore::create(Project project) {
  auto entry = make_entry(std::move(project));
  std::unique_lock lock(mutex_);
  std::string id;
  do {
    id = random_id();
  } while (entries_.contains(id));
  persist(id, *entry);
  entries_[id] = std::move(entry);
  return id;
}

bool ProjectStore::replace(const std::string& id, Project project) {
  auto entry = make_entry(std::move(project));
  std::unique_lock lock(mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end()) return false;
  persist(id, *entry);
  it->second = std::move(entry);
  return true;
}

std::shared_ptr<const StoredProject> ProjectStore::get(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : it->second;
}

void ProjectStore::persist(const std::string& id, const StoredProject& entry) const {
  if (!directory_) return;
  const auto final_path = *directory_ / (id + ".json");
  const auto temp_path = *directory_ / (id + ".json.tmp");
  {
    std::ofstream out(temp_path, std::ios::binary | std::ios::trunc);
    out << entry.document;
  }
  std::filesystem::rename(temp_path, final_path);
}

Service::Service(ServiceConfig config)
    : config_(std::move(config)), store_(config_.data_directory),
      server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

bool Service::run() { return server_->listen_after_bind(); }

void Service::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

void Service::wait_until_ready() const { server_->wait_until_ready(); }

void Service::install_routes() {
  httplib::Server& srv = *server_;
  const std::string origin = config_.cors_origin;

  srv.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", origin);
  });
  srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  srv.Get("/api/value-types", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, value_types_to_json(default_value_types()));
  });

  srv.Post("/api/projects", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = store_.create(parse_project(req.body));
      send_json(res, 201, {{"id", id}});
    });
  });

  srv.Get(R"(/api/projects/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
    auto entry = store_.get(req.matches[1]);
    if (!entry) return send_json(res, 404, {{"error", "unknown project"}});
    res.status = 200;
    res.set_content(entry->document, "application/json");
  });

  srv.Put(R"(/api/projects/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    if (!store_.get(id)) return send_json(res, 404, {{"error", "unknown project"}});
    guarded(res, [&] {
      if (!store_.replace(id, parse_project(req.body))) {
        return send_json(res, 404, {{"error", "unknown project"}});
      }
      send_json(res, 200, {{"id", id}});
    });
  });

  srv.Get(R"(/api/projects/([0-9a-f]+)/influence)",
          [this](const httplib::Request& req, httplib::Response& res) {
            auto entry = store_.get(req.matches[1]);
            if (!entry) return send_json(res, 404, {{"error", "unknown project"}});
            int type = 1;
            if (req.has_param("type")) {
              try {
                type = std::stoi(req.get_param_value("type"));
              } catch (const std::exception&) {
                return send_json(res, 400, {{"error", "type must be an integer"}});
              }
            }
            if (type < 1 || type > static_cast<int>(entry->influences.size())) {
              return send_json(res, 400, {{"error", "unknown value type"}});
            }
            send_json(res, 200, influence_to_json(type, entry->influences[type - 1]));
          });

  auto solve_handler = [this](bool persist) {
    return [this, persist](const httplib::Request& req, httplib::Response& res) {
      const std::string id = req.matches[1];
      auto entry = store_.get(id);
      if (!entry) return send_json(res, 404, {{"error", "unknown project"}});
      guarded(res, [&] {
        const json body = req.body.empty() ? json() : parse_json_document(req.body);
        const SolveOverrides overrides = overrides_from_json(body);
        Project project = apply_overrides(entry->project, overrides);

        SolveOptions options;
        options.timeout = overrides.timeout.value_or(config_.solve_timeout);
        const SolveReport report = solve_exact(project, entry->influences, options);

        if (persist && (overrides.budget || !overrides.betas.empty())) store_.replace(id, std::move(project));

        const bool failed = report.status == SolveStatus::infeasible ||
                            report.status == SolveStatus::timeout_no_incumbent;
        send_json(res, failed ? 409 : 200, report_to_json(report));
      });
    };
  };
  srv.Post(R"(/api/projects/([0-9a-f]+)/solve)", solve_handler(true));
  srv.Post(R"(/api/projects/([0-9a-f]+)/whatif)", solve_handler(false));
}

}  // namespace valueplan
