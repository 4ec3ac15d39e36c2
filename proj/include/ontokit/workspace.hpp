#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ontokit/knowledge_core.hpp"
#include "ontokit/teleology.hpp"

namespace ontokit {

// workspace.conf, one "key = value" per line:
//   language, annotator, default-parent, space-root, time-root, namespace,
//   context-domain, spatial-scope, temporal-start, temporal-end
struct WorkspaceConfig {
  std::string language = "en";
  std::string annotator;
  Gid default_parent;
  Gid space_root;
  Gid time_root;
  std::string model_namespace;
  ft::ThingContext context;

  static WorkspaceConfig parse(std::string_view text);
};

std::string read_file(const std::filesystem::path& path);
// Writes through a temporary file and renames it into place.
void write_file(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view data);

// A directory holding every artifact of one modelling effort:
//
//   workspace.conf   core.snapshot   session.log
//   catalog/manifest.tsv   sheets/   decisions/   cqs/   models/
class Workspace {
 public:
  explicit Workspace(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }
  const WorkspaceConfig& config() const noexcept { return config_; }

  std::filesystem::path core_path() const { return root_ / "core.snapshot"; }
  std::filesystem::path manifest_path() const { return root_ / "catalog" / "manifest.tsv"; }
  std::filesystem::path sheets_dir() const { return root_ / "sheets"; }
  std::filesystem::path decisions_dir() const { return root_ / "decisions"; }
  std::filesystem::path cqs_dir() const { return root_ / "cqs"; }
  std::filesystem::path models_dir() const { return root_ / "models"; }
  std::filesystem::path log_path() const { return root_ / "session.log"; }

  // An empty core when no snapshot exists yet.
  KnowledgeCore load_core() const;
  void save_core(const KnowledgeCore& core) const;

  // Appends one line: UTC timestamp, command, then "in"/"out" entries with
  // the SHA-256 of each file's content at call time.
  void log(std::string_view command, const std::vector<std::filesystem::path>& inputs,
           const std::vector<std::filesystem::path>& outputs) const;

 private:
  std::string relative(const std::filesystem::path& p) const;

  std::filesystem::path root_;
  WorkspaceConfig config_;
};

}  // namespace ontokit
