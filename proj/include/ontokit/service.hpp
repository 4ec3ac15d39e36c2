#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "ontokit/annotation.hpp"
#include "ontokit/knowledge_core.hpp"
#include "ontokit/ontology.hpp"

namespace ontokit {

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// One annotation session at a time over an ontology, driven over HTTP:
//
//   GET  /session                current candidate, parent, hits, progress
//   POST /session                restart after finalize (409 while active)
//   POST /decision               {"type":"accept","gid":12,"override":false}
//                                {"type":"new","gloss":"..."} | {"type":"skip"}
//   GET  /sheet                  the sheet so far, as CSV
//   POST /finalize               validate and import; placeholder -> GID map
//   GET  /core/search?lemma=&lang=
class AnnotationService {
 public:
  // Runs under the core's writer lock after a successful import.
  using FinalizeHook = std::function<void(const AnnotationSheet&, const std::map<Gid, Gid>&,
                                          const KnowledgeCore&)>;

  AnnotationService(SharedCore& core, InformalOntology ontology, AnnotateOptions options,
                    FinalizeHook on_finalize = {});
  ~AnnotationService();
  AnnotationService(const AnnotationService&) = delete;
  AnnotationService& operator=(const AnnotationService&) = delete;

  HttpResponse handle(std::string_view method, std::string_view path,
                      const std::map<std::string, std::string>& query, std::string_view body);

  bool finalized() const;

  // Binds and serves on a background thread; port 0 picks a free port.
  // Returns the bound port, or -1 when binding fails.
  int start(const std::string& host, int port);
  // Blocks until stop() or until the session is finalized.
  void wait_until_finalized();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ontokit
