/**
 * store.cc
 */

#include "pbd/store.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "pbd/error.h"
#include "pbd/pddl.h"

namespace fs = std::filesystem;

namespace pbd {

namespace {

std::string EventLines(const std::vector<Event>& events) {
  std::string out;
  for (const Event& e : events) out += ToJson(e).dump() + "\n";
  return out;
}

void WriteAtomically(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << contents;
    out.flush();
    if (!out) throw Error("IoError", "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace

SessionStore::SessionStore(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_);
}

fs::path SessionStore::LogPath(const std::string& id) const {
  CheckName(id);
  return root_ / (id + ".events.jsonl");
}

bool SessionStore::Exists(const std::string& id) const {
  return IsValidName(id) && fs::exists(LogPath(id));
}

std::vector<std::string> SessionStore::List() const {
  static const std::string kSuffix = ".events.jsonl";
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(root_)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > kSuffix.size() &&
        name.compare(name.size() - kSuffix.size(), kSuffix.size(), kSuffix) ==
            0) {
      ids.push_back(name.substr(0, name.size() - kSuffix.size()));
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

void SessionStore::Append(const std::string& id, const Event& event) {
  std::ofstream out(LogPath(id), std::ios::binary | std::ios::app);
  out << ToJson(event).dump() << '\n';
  out.flush();
  if (!out) throw Error("IoError", "cannot append to log of " + id);
}

void SessionStore::Save(const TeachingSession& session) {
  WriteAtomically(LogPath(session.id()), EventLines(session.events()));
}

std::vector<Event> SessionStore::LoadEvents(
    const std::string& id, std::vector<std::string>* warnings) {
  if (!Exists(id)) throw Error("NotFound", "no stored session " + id);
  std::ifstream in(LogPath(id), std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  const bool unterminated = !text.empty() && text.back() != '\n';

  std::vector<Event> events;
  bool torn = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const bool last = i + 1 == lines.size();
    if (lines[i].empty() && !last) continue;
    try {
      if (last && unterminated) throw Error("TornLine", "no newline");
      events.push_back(EventFromJson(nlohmann::json::parse(lines[i])));
    } catch (const std::exception& e) {
      if (!last) {
        throw Error("CorruptLog", "log of " + id + " is corrupt at line " +
                                      std::to_string(i + 1) + ": " + e.what());
      }
      if (lines[i].empty()) continue;
      torn = true;
      if (warnings != nullptr) {
        warnings->push_back("dropped torn final line " +
                            std::to_string(i + 1) + " of " + id);
      }
    }
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].seq != i + 1) {
      throw Error("CorruptLog", "log of " + id + " skips to event " +
                                    std::to_string(events[i].seq));
    }
  }
  if (torn) WriteAtomically(LogPath(id), EventLines(events));
  return events;
}

TeachingSession SessionStore::Load(const std::string& id,
                                   std::vector<std::string>* warnings,
                                   TeachingSession::Clock clock) {
  return TeachingSession::Replay(LoadEvents(id, warnings), std::move(clock));
}

void ExportBundle(const TeachingSession& session, const fs::path& dir) {
  fs::create_directories(dir);
  WriteAtomically(dir / "domain.pddl", EmitDomain(session.Domain()));
  WriteAtomically(dir / "problem.pddl", EmitProblem(session.Problem()));
  WriteAtomically(dir / "events.jsonl", EventLines(session.events()));
}

}  // namespace pbd
