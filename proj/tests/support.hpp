#pragma once

#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <string>

#include "ontokit/error.hpp"
#include "ontokit/knowledge_core.hpp"
#include "ontokit/workspace.hpp"

namespace testing_support {

inline std::filesystem::path source_dir() { return ONTOKIT_SOURCE_DIR; }
inline std::filesystem::path fixture(const std::string& rel) {
  return source_dir() / "fixtures" / rel;
}
inline std::string fixture_text(const std::string& rel) {
  return ontokit::read_file(fixture(rel));
}
inline ontokit::KnowledgeCore seed_core() {
  return ontokit::load_snapshot(fixture("core/seed.snapshot"));
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() /
            ("ontokit-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

// Assembles the tourist-facilities workspace (config, decisions, CQs, the
// catalog and the seed core) under `root`.
inline void make_fixture_workspace(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  fs::copy(fixture("workspace"), root, fs::copy_options::recursive);
  fs::copy(fixture("catalog"), root / "catalog", fs::copy_options::recursive);
  fs::copy_file(fixture("core/seed.snapshot"), root / "core.snapshot");
}

#define EXPECT_ONTOKIT_ERROR(stmt, error_code)                                   \
  do {                                                                           \
    try {                                                                        \
      stmt;                                                                      \
      ADD_FAILURE() << "expected " << ontokit::to_string(error_code);            \
    } catch (const ontokit::Error& e) {                                          \
      EXPECT_EQ(e.code(), error_code) << e.what();                               \
    }                                                                            \
  } while (0)

}  // namespace testing_support
