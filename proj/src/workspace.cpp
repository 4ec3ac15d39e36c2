#include "ontokit/workspace.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ontokit/error.hpp"
#include "ontokit/text.hpp"

namespace ontokit {

namespace fs = std::filesystem;

WorkspaceConfig WorkspaceConfig::parse(std::string_view text) {
  WorkspaceConfig c;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::ParseError, "expected 'key = value'", line_no, 1);
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    auto gid = [&]() {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || ptr != value.data() + value.size() || v <= 0)
        throw Error(ErrorCode::ParseError, key + " needs a positive GID", line_no, eq + 2);
      return Gid(v);
    };
    auto date = [&]() {
      auto d = ft::parse_date(value);
      if (!d) throw Error(ErrorCode::ParseError, "bad date '" + value + "'", line_no, eq + 2);
      return *d;
    };
    if (key == "language") c.language = value;
    else if (key == "annotator") c.annotator = value;
    else if (key == "default-parent") c.default_parent = gid();
    else if (key == "space-root") c.space_root = gid();
    else if (key == "time-root") c.time_root = gid();
    else if (key == "namespace") c.model_namespace = value;
    else if (key == "context-domain") c.context.domain = value;
    else if (key == "spatial-scope") c.context.spatial_scope = value;
    else if (key == "temporal-start") c.context.start = date();
    else if (key == "temporal-end") c.context.end = date();
    else throw Error(ErrorCode::ParseError, "unknown setting '" + key + "'", line_no, 1);
  }
  c.context.validate();
  return c;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot replace " + path.string() + ": " + ec.message());
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr))
    throw Error(ErrorCode::Io, "SHA-256 failed");
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

Workspace::Workspace(fs::path root) : root_(std::move(root)) {
  if (!fs::is_directory(root_))
    throw Error(ErrorCode::Io, "workspace " + root_.string() + " is not a directory");
  fs::path conf = root_ / "workspace.conf";
  if (fs::exists(conf)) {
    try {
      config_ = WorkspaceConfig::parse(read_file(conf));
    } catch (const Error& e) {
      throw Error(e.code(), conf.string() + ": " + e.what());
    }
  }
}

KnowledgeCore Workspace::load_core() const {
  if (!fs::exists(core_path())) return KnowledgeCore();
  return load_snapshot(core_path());
}

void Workspace::save_core(const KnowledgeCore& core) const { save_snapshot(core, core_path()); }

std::string Workspace::relative(const fs::path& p) const {
  std::error_code ec;
  auto rel = fs::relative(p, root_, ec);
  if (ec || rel.empty() || *rel.begin() == "..") return p.string();
  return rel.generic_string();
}

void Workspace::log(std::string_view command, const std::vector<fs::path>& inputs,
                    const std::vector<fs::path>& outputs) const {
  auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  auto day = std::chrono::floor<std::chrono::days>(now);
  std::chrono::year_month_day ymd{day};
  std::chrono::hh_mm_ss hms{now - day};
  char stamp[32];
  std::snprintf(stamp, sizeof stamp, "%04d-%02u-%02uT%02ld:%02ld:%02lldZ", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()), long(hms.hours().count()),
                long(hms.minutes().count()), static_cast<long long>(hms.seconds().count()));
  std::string line = std::string(stamp) + '\t' + std::string(command);
  auto entry = [&](const char* dir, const fs::path& p) {
    line += '\t';
    line += dir;
    line += ' ' + relative(p) + '=';
    line += fs::is_regular_file(p) ? "sha256:" + sha256_hex(read_file(p)) : "missing";
  };
  for (const auto& p : inputs) entry("in", p);
  for (const auto& p : outputs) entry("out", p);
  std::ofstream out(log_path(), std::ios::app | std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot append to " + log_path().string());
  out << line << '\n';
}

}  // namespace ontokit
