#include "ontokit/service.hpp"

#include <condition_variable>
#include <mutex>
#include <optional>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "ontokit/error.hpp"
#include "ontokit/sheet_csv.hpp"

namespace ontokit {

using nlohmann::json;

namespace {

HttpResponse json_response(int status, const json& body) {
  return {status, "application/json", body.dump(2) + "\n"};
}

HttpResponse error_response(int status, std::string_view code, std::string_view message) {
  return json_response(status, {{"error", code}, {"message", message}});
}

json hit_json(const SearchHit& h) {
  json lemmas = json::array();
  for (const auto& w : h.synset.words) lemmas.push_back(w);
  return {{"gid", h.gid.value()},
          {"wsr", h.wsr},
          {"preferred", h.synset.preferred()},
          {"lemmas", lemmas},
          {"gloss", h.synset.gloss}};
}

}  // namespace

struct AnnotationService::Impl {
  SharedCore& core;
  InformalOntology ontology;
  AnnotateOptions options;
  FinalizeHook on_finalize;

  mutable std::mutex mutex;
  std::condition_variable finalized_cv;
  std::optional<AnnotationSession> session;
  bool finalized = false;

  httplib::Server server;
  std::thread thread;

  Impl(SharedCore& c, InformalOntology o, AnnotateOptions opt, FinalizeHook hook)
      : core(c), ontology(std::move(o)), options(std::move(opt)), on_finalize(std::move(hook)) {
    open_session();
  }

  void open_session() {
    const KnowledgeCore* k = core.read([](const KnowledgeCore& c) { return &c; });
    session.emplace(ontology, *k, options);
    finalized = false;
  }

  json state() const {
    if (finalized) return {{"status", "finalized"}};
    const auto& s = *session;
    json out = {{"index", s.position()}, {"total", s.total()}};
    if (s.done()) {
      out["status"] = "complete";
      return out;
    }
    out["status"] = "active";
    const auto& c = s.current();
    out["candidate"] = {{"label", c.label},        {"iri", c.iri},
                        {"kind", to_string(c.kind)}, {"language", c.language},
                        {"gloss", c.gloss}};
    Gid pg = s.current_parent_gid();
    out["parent"] = pg.null() ? json(nullptr)
                              : json{{"label", s.current_parent_label()}, {"gid", pg.value()}};
    json hits = json::array();
    for (const auto& h : s.current_hits()) hits.push_back(hit_json(h));
    out["hits"] = hits;
    return out;
  }

  HttpResponse get_session() {
    std::lock_guard lock(mutex);
    return core.read([&](const KnowledgeCore&) { return json_response(200, state()); });
  }

  HttpResponse post_session() {
    std::lock_guard lock(mutex);
    if (!finalized)
      return error_response(409, "SessionConflict", "an annotation session is already active");
    open_session();
    return core.read([&](const KnowledgeCore&) { return json_response(201, state()); });
  }

  HttpResponse post_decision(std::string_view body) {
    json req = json::parse(body, nullptr, false);
    if (req.is_discarded() || !req.is_object() || !req.contains("type") ||
        !req["type"].is_string())
      return error_response(400, "MalformedDecision", "expected a JSON object with a \"type\"");
    std::lock_guard lock(mutex);
    if (finalized) return error_response(409, "SessionConflict", "the session is finalized");
    if (session->done()) return error_response(409, "SessionComplete", "no candidate left");
    if (req.contains("index") &&
        (!req["index"].is_number_unsigned() || req["index"].get<std::size_t>() != session->position()))
      return error_response(409, "StaleDecision", "decision does not refer to the current candidate");

    Decision d;
    const std::string type = req["type"].get<std::string>();
    if (type == "accept") {
      if (!req.contains("gid") || !req["gid"].is_number_integer())
        return error_response(400, "MalformedDecision", "accept needs an integer \"gid\"");
      bool override_hits = false;
      if (req.contains("override")) {
        if (!req["override"].is_boolean())
          return error_response(400, "MalformedDecision", "\"override\" must be a boolean");
        override_hits = req["override"].get<bool>();
      }
      d = Decision::accept(Gid(req["gid"].get<std::int64_t>()), override_hits);
    } else if (type == "new") {
      if (req.contains("gloss") && !req["gloss"].is_string())
        return error_response(400, "MalformedDecision", "\"gloss\" must be a string");
      d = Decision::new_concept(req.value("gloss", std::string()));
    } else if (type == "skip") {
      d = Decision::skip();
    } else {
      return error_response(400, "MalformedDecision", "unknown decision type '" + type + "'");
    }
    return core.read([&](const KnowledgeCore&) {
      try {
        session->decide(d);
      } catch (const Error& e) {
        return error_response(400, to_string(e.code()), e.what());
      }
      return json_response(200, state());
    });
  }

  HttpResponse get_sheet() {
    std::lock_guard lock(mutex);
    if (!session) return error_response(404, "NoSession", "no session");
    return {200, "text/csv; charset=utf-8", export_sheet(session->sheet())};
  }

  HttpResponse post_finalize() {
    std::lock_guard lock(mutex);
    if (finalized) return error_response(409, "SessionConflict", "the session is finalized");
    if (!session->done())
      return json_response(409, {{"error", "SessionIncomplete"},
                                 {"message", "candidates remain undecided"},
                                 {"index", session->position()},
                                 {"total", session->total()}});
    AnnotationSheet sheet = session->sheet();
    auto violations = core.read([&](const KnowledgeCore& k) { return validate_sheet(sheet, k); });
    if (has_errors(violations)) {
      json list = json::array();
      for (const auto& v : violations)
        list.push_back({{"kind", to_string(v.kind)},
                        {"record", v.record},
                        {"label", sheet.records.at(v.record).label},
                        {"message", v.message},
                        {"warning", v.warning}});
      return json_response(422, {{"error", "ValidationFailed"}, {"violations", list}});
    }
    try {
      auto mapping = core.write([&](KnowledgeCore& k) {
        KnowledgeCore before = k;
        auto m = import_sheet(sheet, k);
        try {
          if (on_finalize) on_finalize(sheet, m, k);
        } catch (...) {
          k = std::move(before);
          throw;
        }
        return m;
      });
      // The session's core reference stays valid; only the cursor state is dropped.
      finalized = true;
      finalized_cv.notify_all();
      json pairs = json::array();
      for (const auto& [placeholder, gid] : mapping)
        pairs.push_back({{"placeholder", placeholder.value()}, {"gid", gid.value()}});
      return json_response(200, {{"status", "finalized"},
                                 {"records", sheet.records.size()},
                                 {"new_concepts", sheet.new_concept_count()},
                                 {"mapping", pairs}});
    } catch (const Error& e) {
      int status = e.code() == ErrorCode::ValidationFailed ? 422 : 500;
      return error_response(status, to_string(e.code()), e.what());
    }
  }

  HttpResponse get_search(const std::map<std::string, std::string>& query) {
    auto lemma = query.find("lemma");
    if (lemma == query.end() || lemma->second.empty())
      return error_response(400, "Usage", "missing 'lemma' parameter");
    auto lang = query.find("lang");
    std::string language = lang == query.end() || lang->second.empty() ? "en" : lang->second;
    return core.read([&](const KnowledgeCore& k) {
      if (!k.has_language(language))
        return error_response(404, "UnknownLanguage", "no language module '" + language + "'");
      json hits = json::array();
      for (const auto& h : k.search_synonymous(lemma->second, language)) hits.push_back(hit_json(h));
      return json_response(200, {{"lemma", lemma->second}, {"lang", language}, {"hits", hits}});
    });
  }
};

AnnotationService::AnnotationService(SharedCore& core, InformalOntology ontology,
                                     AnnotateOptions options, FinalizeHook on_finalize)
    : impl_(std::make_unique<Impl>(core, std::move(ontology), std::move(options),
                                   std::move(on_finalize))) {}

AnnotationService::~AnnotationService() { stop(); }

bool AnnotationService::finalized() const {
  std::lock_guard lock(impl_->mutex);
  return impl_->finalized;
}

HttpResponse AnnotationService::handle(std::string_view method, std::string_view path,
                                       const std::map<std::string, std::string>& query,
                                       std::string_view body) {
  if (path == "/session" && method == "GET") return impl_->get_session();
  if (path == "/session" && method == "POST") return impl_->post_session();
  if (path == "/decision" && method == "POST") return impl_->post_decision(body);
  if (path == "/sheet" && method == "GET") return impl_->get_sheet();
  if (path == "/finalize" && method == "POST") return impl_->post_finalize();
  if (path == "/core/search" && method == "GET") return impl_->get_search(query);
  for (auto p : {"/session", "/decision", "/sheet", "/finalize", "/core/search"})
    if (path == p) return error_response(405, "MethodNotAllowed", "method not allowed");
  return error_response(404, "NotFound", "no such endpoint");
}

int AnnotationService::start(const std::string& host, int port) {
  auto& server = impl_->server;
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    HttpResponse r = handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  for (auto p : {"/session", "/decision", "/sheet", "/finalize", "/core/search"}) {
    server.Get(p, dispatch);
    server.Post(p, dispatch);
  }
  int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) return -1;
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  server.wait_until_ready();
  return bound;
}

void AnnotationService::wait_until_finalized() {
  std::unique_lock lock(impl_->mutex);
  impl_->finalized_cv.wait(lock, [&] { return impl_->finalized; });
}

void AnnotationService::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace ontokit
