/**
 * service.cc
 */

#include "pbd/service.h"

#include <iostream>
#include <set>

#include "httplib.h"
#include "pbd/error.h"
#include "pbd/json_io.h"
#include "pbd/pddl.h"

namespace pbd {

namespace {

Response JsonResponse(int status, const Json& body) {
  return {status, body.dump(), "application/json"};
}

Response ErrorResponse(int status, const std::string& code,
                       const std::string& message) {
  return JsonResponse(status,
                      {{"error", {{"code", code}, {"message", message}}}});
}

std::vector<std::string> SplitPath(const std::string& path) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : path.substr(0, path.find('?'))) {
    if (c == '/') {
      if (!current.empty()) parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) parts.push_back(current);
  return parts;
}

Json BodyJson(const std::string& body) {
  if (body.empty()) return Json::object();
  return ParseJson(body);
}

std::vector<PredicateDecl> DefaultPredicates() {
  return {{"at", {{"?obj", std::string(kObjectType)},
                  {"?pos", std::string(kPositionType)}}},
          {"empty", {{"?pos", std::string(kPositionType)}}},
          {"color", {{"?obj", std::string(kObjectType)},
                     {"?col", std::string(kColorType)}}}};
}

Json Vocabulary(const TeachingSession& session) {
  const std::vector<PredicateDecl> predicates = WorldPredicates(session.world());
  Json per_operator = Json::object();
  for (const LiftedOperator& op : session.operators()) {
    Json literals = Json::array();
    for (const Literal& l : ConditionVocabulary(
             predicates, op.parameters, DeclaredSymbols(session.world()))) {
      literals.push_back(ToString(l));
    }
    per_operator[op.name] = literals;
  }
  return {{"templates", VocabularyTemplates(predicates)},
          {"operators", per_operator}};
}

[[noreturn]] void NoRoute(const std::string& method, const std::string& path) {
  throw Error("NoSuchRoute", "no route for " + method + " " + path);
}

}  // namespace

int StatusForError(const std::string& code) {
  static const std::map<std::string, int> kStatus = {
      {"NotFound", 404},          {"UnknownSession", 404},
      {"UnknownOperator", 404},   {"NoSuchRoute", 404},
      {"IllegalPhase", 409},      {"DuplicateLiteral", 409},
      {"NoSuchLiteral", 409},     {"NoSuchConstant", 409},
      {"ContradictionError", 409}, {"DuplicateParameter", 409},
      {"NoFailure", 409},         {"SessionExists", 409},
      {"EffectConflict", 409},    {"DuplicateSymbol", 409},
      {"CorruptLog", 500},        {"IoError", 500},
  };
  auto it = kStatus.find(code);
  return it == kStatus.end() ? 400 : it->second;
}

Service::Service(std::optional<std::filesystem::path> store_root,
                 TeachingSession::Clock clock)
    : clock_(std::move(clock)) {
  if (store_root) store_ = std::make_unique<SessionStore>(*store_root);
}

Response Service::Handle(const std::string& method, const std::string& path,
                         const std::string& body) {
  try {
    const std::vector<std::string> parts = SplitPath(path);
    if (parts.size() == 1 && parts[0] == "vocabulary" && method == "GET") {
      return JsonResponse(200,
                          {{"templates", VocabularyTemplates(DefaultPredicates())}});
    }
    if (parts.empty() || parts[0] != "sessions") NoRoute(method, path);
    if (parts.size() == 1) {
      if (method == "POST") return CreateSession(body);
      if (method == "GET") return ListSessions();
      NoRoute(method, path);
    }
    return SessionRequest(method, parts, body);
  } catch (const Error& e) {
    return ErrorResponse(StatusForError(e.code()), e.code(), e.what());
  } catch (const Json::exception& e) {
    return ErrorResponse(400, "SchemaError", e.what());
  } catch (const std::exception& e) {
    return ErrorResponse(500, "InternalError", e.what());
  }
}

std::shared_ptr<Service::Slot> Service::FindSlot(const std::string& id) {
  std::lock_guard<std::mutex> lock(index_mutex_);
  auto it = slots_.find(id);
  if (it != slots_.end()) return it->second;
  if (store_ == nullptr || !store_->Exists(id)) {
    throw Error("UnknownSession", "no session " + id);
  }
  std::vector<std::string> warnings;
  auto slot = std::make_shared<Slot>();
  slot->session = store_->Load(id, &warnings, clock_);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  slots_[id] = slot;
  return slot;
}

Response Service::CreateSession(const std::string& body) {
  const Json request = BodyJson(body);
  if (!request.is_object()) throw Error("SchemaError", "expected an object");
  const bool wrapped = request.contains("world");
  const WorldConfig world =
      WorldConfigFromJson(wrapped ? request["world"] : request);
  InductionMode mode = InductionMode::kMinimal;
  std::optional<std::string> id;
  if (wrapped) {
    if (request.contains("mode")) {
      if (!request["mode"].is_string()) {
        throw Error("SchemaError", "mode must be a string");
      }
      mode = ParseInductionMode(request["mode"].get<std::string>());
    }
    if (request.contains("id")) {
      if (!request["id"].is_string()) {
        throw Error("SchemaError", "id must be a string");
      }
      id = request["id"].get<std::string>();
      CheckName(*id);
    }
  }

  std::lock_guard<std::mutex> lock(index_mutex_);
  auto taken = [&](const std::string& candidate) {
    return slots_.count(candidate) > 0 ||
           (store_ != nullptr && store_->Exists(candidate));
  };
  if (id) {
    if (taken(*id)) throw Error("SessionExists", "session " + *id + " exists");
  } else {
    do {
      id = "s" + std::to_string(next_id_++);
    } while (taken(*id));
  }
  auto slot = std::make_shared<Slot>();
  slot->session = TeachingSession::Create(*id, world, mode, clock_);
  if (store_ != nullptr) store_->Save(*slot->session);
  slots_[*id] = slot;
  return JsonResponse(201, SessionView(*slot->session));
}

Response Service::ListSessions() {
  std::lock_guard<std::mutex> lock(index_mutex_);
  std::set<std::string> ids;
  for (const auto& [id, slot] : slots_) ids.insert(id);
  if (store_ != nullptr) {
    for (const std::string& id : store_->List()) ids.insert(id);
  }
  return JsonResponse(200, {{"sessions", ids}});
}

void Service::Persist(const TeachingSession& before,
                      const TeachingSession& after) {
  if (store_ == nullptr) return;
  for (std::size_t i = before.events().size(); i < after.events().size(); ++i) {
    store_->Append(after.id(), after.events()[i]);
  }
}

Response Service::SessionRequest(const std::string& method,
                                 const std::vector<std::string>& parts,
                                 const std::string& body) {
  std::shared_ptr<Slot> slot = FindSlot(parts[1]);
  std::lock_guard<std::mutex> lock(slot->mutex);
  const TeachingSession& current = *slot->session;
  const std::string resource = parts.size() > 2 ? parts[2] : "";
  const std::string path = "/" + parts[0] + "/" + parts[1] + "/" + resource;

  // Read-only endpoints.
  if (method == "GET") {
    if (parts.size() == 2 || (parts.size() == 3 && resource == "state")) {
      return JsonResponse(200, SessionView(current));
    }
    if (parts.size() == 3 && resource == "operators") {
      Json out = Json::array();
      for (const LiftedOperator& op : current.operators()) {
        out.push_back(ToJson(op));
      }
      return JsonResponse(200, out);
    }
    if (parts.size() == 4 && resource == "operators") {
      const LiftedOperator* op = current.FindOperator(parts[3]);
      if (op == nullptr) {
        throw Error("UnknownOperator", "no operator named " + parts[3]);
      }
      return JsonResponse(200, ToJson(*op));
    }
    if (parts.size() == 3 && resource == "diagnosis") {
      return JsonResponse(200, ToJson(current.Diagnose()));
    }
    if (parts.size() == 3 && resource == "export.pddl") {
      return {200, current.ExportPddl(), "text/plain"};
    }
    if (parts.size() == 3 && resource == "vocabulary") {
      return JsonResponse(200, Vocabulary(current));
    }
    if (parts.size() == 3 && resource == "events") {
      Json out = Json::array();
      for (const Event& e : current.events()) out.push_back(ToJson(e));
      return JsonResponse(200, out);
    }
    NoRoute(method, path);
  }

  // Mutations run on a copy that replaces the session only once its new
  // events are on disk.
  TeachingSession next = current;
  const Json request = BodyJson(body);
  Response response;
  if (method == "POST" && parts.size() == 3 && resource == "demonstrations") {
    const DemonstrationRequest demo = DemonstrationRequestFromJson(request);
    if (next.phase() != Phase::kDemonstrating) next.BeginDemonstration();
    const Demonstration& recorded = next.RecordDemonstration(demo);
    const LiftedOperator* op = next.FindOperator(demo.action.operator_name);
    response = JsonResponse(
        201, {{"demonstration", ToJson(recorded)}, {"operator", ToJson(*op)}});
  } else if (method == "PATCH" && parts.size() == 4 &&
             resource == "operators") {
    if (next.FindOperator(parts[3]) == nullptr) {
      throw Error("UnknownOperator", "no operator named " + parts[3]);
    }
    const LiftedOperator& op =
        next.RefineOperator(parts[3], RefinementFromJson(request));
    response = JsonResponse(200, ToJson(op));
  } else if (method == "POST" && parts.size() == 3 && resource == "goal") {
    next.SetGoal(LiteralSetFromJson(
        request.is_array() ? request : request.value("goal", Json())));
    response = JsonResponse(200, SessionView(next));
  } else if (method == "POST" && parts.size() == 3 && resource == "plan") {
    if (request.is_object() && request.contains("steps")) {
      next.SetPlan(PlanFromJson(request));
      response = JsonResponse(
          200, {{"status", "ok"}, {"plan", ToJson(*next.last_plan())}});
    } else {
      response = JsonResponse(200, ToJson(next.RunPlanner(
                                       SearchConfigFromJson(request))));
    }
  } else if (method == "POST" && parts.size() == 3 && resource == "execute") {
    response = JsonResponse(200, ToJson(next.ExecutePlan()));
  } else if (method == "POST" && parts.size() == 3 && resource == "world") {
    next.ResetWorld(WorldConfigFromJson(
        request.contains("world") ? request["world"] : request));
    response = JsonResponse(200, SessionView(next));
  } else if (method == "POST" && parts.size() == 3 && resource == "positions") {
    if (!request.is_object() || !request.contains("name") ||
        !request["name"].is_string()) {
      throw Error("SchemaError", "expected {\"name\": <position>}");
    }
    next.AddPosition(request["name"].get<std::string>());
    response = JsonResponse(200, SessionView(next));
  } else {
    NoRoute(method, path);
  }
  Persist(current, next);
  slot->session = std::move(next);
  return response;
}

struct HttpServer::Impl {
  explicit Impl(Service& s) : service(s) {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      const Response r = service.Handle(req.method, req.path, req.body);
      res.status = r.status;
      res.set_content(r.body, r.content_type);
    };
    server.Get(".*", handler);
    server.Post(".*", handler);
    server.Patch(".*", handler);
    server.Put(".*", handler);
    server.Delete(".*", handler);
  }

  Service& service;
  httplib::Server server;
};

HttpServer::HttpServer(Service& service)
    : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() = default;

int HttpServer::BindToAnyPort(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpServer::Bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

bool HttpServer::ListenAfterBind() { return impl_->server.listen_after_bind(); }

void HttpServer::Stop() { impl_->server.stop(); }

}  // namespace pbd
