/**
 * store.h
 *
 * On-disk session persistence. Each session is one append-only JSON-lines
 * file, `<root>/<id>.events.jsonl`, one event per line.
 */

#ifndef PBD_STORE_H_
#define PBD_STORE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "pbd/session.h"

namespace pbd {

class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path LogPath(const std::string& id) const;
  bool Exists(const std::string& id) const;
  std::vector<std::string> List() const;

  /// Appends one event line and flushes it before returning.
  void Append(const std::string& id, const Event& event);

  /// Rewrites the whole log atomically (temp file, then rename).
  void Save(const TeachingSession& session);

  /// Reads a log. A torn final line is dropped, reported in `warnings`, and
  /// cut from the file so later appends stay well-formed. Errors: NotFound,
  /// CorruptLog for any bad line before the last.
  std::vector<Event> LoadEvents(const std::string& id,
                                std::vector<std::string>* warnings = nullptr);

  TeachingSession Load(const std::string& id,
                       std::vector<std::string>* warnings = nullptr,
                       TeachingSession::Clock clock = {});

 private:
  std::filesystem::path root_;
};

/// Writes domain.pddl, problem.pddl and events.jsonl into `dir`.
void ExportBundle(const TeachingSession& session,
                  const std::filesystem::path& dir);

}  // namespace pbd

#endif  // PBD_STORE_H_
