/**
 * service.h
 *
 * JSON-over-HTTP facade over teaching sessions. `Handle` is transport-free so
 * tests drive it directly; `Serve` binds it to an HTTP/1.1 listener.
 *
 * Errors come back as {"error": {"code", "message"}} with 400 for schema and
 * validation failures, 404 for unknown sessions, operators and routes, 409
 * for illegal phase transitions and conflicting edits.
 */

#ifndef PBD_SERVICE_H_
#define PBD_SERVICE_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "pbd/session.h"
#include "pbd/store.h"

namespace pbd {

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// HTTP status for a module error code.
int StatusForError(const std::string& code);

class Service {
 public:
  /// Without a store root, sessions live only in memory.
  explicit Service(std::optional<std::filesystem::path> store_root = {},
                   TeachingSession::Clock clock = {});

  Response Handle(const std::string& method, const std::string& path,
                  const std::string& body);

 private:
  struct Slot {
    std::mutex mutex;
    std::optional<TeachingSession> session;
  };

  std::shared_ptr<Slot> FindSlot(const std::string& id);
  Response CreateSession(const std::string& body);
  Response ListSessions();
  Response SessionRequest(const std::string& method,
                          const std::vector<std::string>& parts,
                          const std::string& body);
  void Persist(const TeachingSession& before, const TeachingSession& after);

  std::unique_ptr<SessionStore> store_;
  TeachingSession::Clock clock_;
  std::mutex index_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
  std::uint64_t next_id_ = 1;
};

/// HTTP/1.1 listener routing every request through Service::Handle.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  /// Binds an ephemeral port and returns it, or -1.
  int BindToAnyPort(const std::string& host);
  bool Bind(const std::string& host, int port);
  /// Blocks until Stop().
  bool ListenAfterBind();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pbd

#endif  // PBD_SERVICE_H_
