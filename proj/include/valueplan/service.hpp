#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "valueplan/model.hpp"
#include "valueplan/planner.hpp"

namespace httplib {
class Server;
}

namespace valueplan {

/// Immutable snapshot of a stored project together with its influence
/// matrices and canonical document.
struct StoredProject {
  Project project;
  std::vector<InfluenceMatrix> influences;
  std::string document;
};

/// In-memory project store with optional write-through to a directory of
/// `<id>.json` documents. Entries are replaced wholesale, so readers holding a
/// snapshot never observe a half-updated cache.
class ProjectStore {
 public:
  explicit ProjectStore(std::optional<std::filesystem::path> directory = std::nullopt);

  std::string create(Project project);
  /// False when the id is unknown.
  bool replace(const std::string& id, Project project);
  std::shared_ptr<const StoredProject> get(const std::string& id) const;

 private:
  void persist(const std::string& id, const StoredProject& entry) const;

  std::optional<std::filesystem::path> directory_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<const StoredProject>> entries_;
};

struct ServiceConfig {
  std::chrono::milliseconds solve_timeout{10'000};
  std::optional<std::filesystem::path> data_directory;
  std::string cors_origin = "*";
};

/// HTTP front end:
///   POST /api/projects                 create, 201 {"id": ...}
///   GET  /api/projects/{id}            canonical document
///   PUT  /api/projects/{id}            replace
///   GET  /api/projects/{id}/influence  ?type=t (default 1)
///   POST /api/projects/{id}/solve      optional {budget, betas, timeout}; overrides are saved
///   POST /api/projects/{id}/whatif     same as solve, never saved
///   GET  /api/value-types              default catalog
/// 400 validation, 404 unknown id, 409 infeasible, 422 malformed body.
class Service {
 public:
  explicit Service(ServiceConfig config = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds to host:port; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Blocks.
  bool run();
  void stop();
  void wait_until_ready() const;

  ProjectStore& store() { return store_; }

 private:
  void install_routes();

  ServiceConfig config_;
  ProjectStore store_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace valueplan
