#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "pbd/json_io.h"
#include "pbd/pddl.h"
#include "pbd/store.h"
#include "sessions.h"
#include "test_helpers.h"

using namespace pbd;
using testing::ErrorCode;

namespace {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

}  // namespace

TEST_CASE("save and load round-trip") {
  const auto dir = testing::ScratchDir("store-roundtrip");
  SessionStore store(dir);
  const TeachingSession s = testing::SwappedSession("swap");
  store.Save(s);
  CHECK(store.Exists("swap"));
  CHECK(store.List() == std::vector<std::string>{"swap"});

  const TeachingSession loaded = store.Load("swap", nullptr, testing::FixedClock());
  CHECK(loaded.ExportPddl() == s.ExportPddl());
  CHECK(SessionView(loaded) == SessionView(s));
  CHECK(loaded.events().size() == s.events().size());

  // One JSON object per line, seq counting from 1.
  std::ifstream in(store.LogPath("swap"));
  std::string line;
  std::uint64_t seq = 0;
  while (std::getline(in, line)) {
    const Json j = Json::parse(line);
    CHECK(j.at("seq") == ++seq);
    CHECK(j.contains("ts"));
    CHECK(j.contains("type"));
    CHECK(j.contains("payload"));
  }
  CHECK(seq == s.events().size());
  std::filesystem::remove_all(dir);
}

TEST_CASE("append builds the same log as save") {
  const auto dir = testing::ScratchDir("store-append");
  SessionStore store(dir);
  const TeachingSession s = testing::TaughtSession("a");
  for (const Event& e : s.events()) store.Append("a", e);
  const std::string appended = ReadFile(store.LogPath("a"));
  store.Save(s);
  CHECK(ReadFile(store.LogPath("a")) == appended);
  std::filesystem::remove_all(dir);
}

TEST_CASE("missing session") {
  const auto dir = testing::ScratchDir("store-missing");
  SessionStore store(dir);
  CHECK_FALSE(store.Exists("nope"));
  CHECK(ErrorCode([&] { store.Load("nope"); }) == "NotFound");
  CHECK(store.List().empty());
  std::filesystem::remove_all(dir);
}

TEST_CASE("torn final line is dropped") {
  const auto dir = testing::ScratchDir("store-torn");
  SessionStore store(dir);
  const TeachingSession s = testing::SwappedSession("torn");
  store.Save(s);
  const std::string full = ReadFile(store.LogPath("torn"));
  // Cut the last line in half, as a crash mid-write would.
  const std::size_t last_start = full.rfind('\n', full.size() - 2) + 1;
  const std::string torn = full.substr(0, last_start + (full.size() - last_start) / 2);
  WriteFile(store.LogPath("torn"), torn);

  std::vector<std::string> warnings;
  const auto events = store.LoadEvents("torn", &warnings);
  CHECK(events.size() == s.events().size() - 1);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("torn") != std::string::npos);
  CHECK(ReadFile(store.LogPath("torn")) == full.substr(0, last_start));

  // Everything but the lost event replays.
  std::vector<Event> prefix(s.events().begin(), s.events().end() - 1);
  const TeachingSession expected = TeachingSession::Replay(prefix, testing::FixedClock());
  const TeachingSession loaded = store.Load("torn", nullptr, testing::FixedClock());
  CHECK(loaded.ExportPddl() == expected.ExportPddl());
  CHECK(SessionView(loaded) == SessionView(expected));

  // A second load sees a clean file.
  warnings.clear();
  store.LoadEvents("torn", &warnings);
  CHECK(warnings.empty());
  std::filesystem::remove_all(dir);
}

TEST_CASE("complete but invalid final line is also dropped") {
  const auto dir = testing::ScratchDir("store-badtail");
  SessionStore store(dir);
  const TeachingSession s = testing::TaughtSession("b");
  store.Save(s);
  const std::string full = ReadFile(store.LogPath("b"));
  WriteFile(store.LogPath("b"), full + "{\"seq\": \n");
  std::vector<std::string> warnings;
  CHECK(store.LoadEvents("b", &warnings).size() == s.events().size());
  CHECK(warnings.size() == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("damage before the last line is corruption") {
  const auto dir = testing::ScratchDir("store-corrupt");
  SessionStore store(dir);
  const TeachingSession s = testing::TaughtSession("c");
  store.Save(s);
  const std::string full = ReadFile(store.LogPath("c"));

  SUBCASE("garbage middle line") {
    const std::size_t second = full.find('\n') + 1;
    WriteFile(store.LogPath("c"),
              full.substr(0, second) + "not json\n" + full.substr(second));
    CHECK(ErrorCode([&] { store.LoadEvents("c"); }) == "CorruptLog");
  }
  SUBCASE("sequence gap") {
    const std::size_t second = full.find('\n') + 1;
    const std::size_t third = full.find('\n', second) + 1;
    WriteFile(store.LogPath("c"), full.substr(0, second) + full.substr(third));
    CHECK(ErrorCode([&] { store.LoadEvents("c"); }) == "CorruptLog");
  }
  // Nothing was rewritten.
  CHECK(ReadFile(store.LogPath("c")) != full);
  std::filesystem::remove_all(dir);
}

TEST_CASE("export bundle") {
  const auto dir = testing::ScratchDir("store-bundle");
  const TeachingSession s = testing::SwappedSession("bundle");
  ExportBundle(s, dir / "out");
  const std::string domain = ReadFile(dir / "out" / "domain.pddl");
  const std::string problem = ReadFile(dir / "out" / "problem.pddl");
  CHECK(domain == EmitDomain(s.Domain()));
  CHECK(problem == EmitProblem(s.Problem()));
  CHECK(s.ExportPddl() == domain + "\n" + problem);
  std::size_t lines = 0;
  std::ifstream in(dir / "out" / "events.jsonl");
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == s.events().size());
  std::filesystem::remove_all(dir);
}
