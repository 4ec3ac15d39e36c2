#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ontokit/error.hpp"
#include "ontokit/knowledge_core.hpp"
#include "ontokit/text.hpp"

namespace ontokit {

namespace {

constexpr std::string_view kMagic = "ontokit-core";
constexpr int kVersion = 1;

[[noreturn]] void corrupt(const std::string& what, std::size_t line, std::size_t col = 0) {
  throw Error(ErrorCode::CorruptSnapshot, what, line, col);
}

class RecordReader {
 public:
  RecordReader(std::vector<Field> fields, std::size_t line)
      : fields_(std::move(fields)), line_(line) {}

  void expect_count(std::size_t n) const {
    if (fields_.size() != n)
      corrupt("'" + fields_[0].text + "' record expects " + std::to_string(n - 1) +
                  " fields, found " + std::to_string(fields_.size() - 1),
              line_, fields_.back().column);
  }

  std::int64_t integer(std::size_t i) const {
    const Field& f = fields_.at(i);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), v);
    if (f.quoted || ec != std::errc() || ptr != f.text.data() + f.text.size())
      corrupt("expected an integer, found '" + f.text + "'", line_, f.column);
    return v;
  }

  Gid gid(std::size_t i) const {
    std::int64_t v = integer(i);
    if (v <= 0) corrupt("GID must be positive, found " + std::to_string(v), line_, fields_[i].column);
    return Gid(v);
  }

  const std::string& string(std::size_t i) const {
    if (!fields_.at(i).quoted)
      corrupt("expected a quoted string", line_, fields_[i].column);
    return fields_[i].text;
  }

  const std::string& word(std::size_t i) const {
    if (fields_.at(i).quoted) corrupt("expected a bare word", line_, fields_[i].column);
    return fields_[i].text;
  }

  std::size_t column(std::size_t i) const { return fields_.at(i).column; }
  std::size_t size() const { return fields_.size(); }

 private:
  std::vector<Field> fields_;
  std::size_t line_;
};

}  // namespace

void write_snapshot(const KnowledgeCore& core, std::ostream& out) {
  std::size_t records = 0;
  out << kMagic << ' ' << kVersion << '\n';
  out << "next-gid " << core.next_gid_ << '\n';
  out << "revision " << core.revision_ << '\n';
  records += 2;
  for (const auto& [lang, module] : core.languages_) {
    out << "language " << lang << '\n';
    ++records;
  }
  for (const auto& [gid, c] : core.concepts_) {
    out << "concept " << gid.value() << ' ' << quote(c.gloss);
    if (c.provenance.is_native()) {
      out << " native";
    } else {
      out << ' ' << quote(c.provenance.source_iri) << ' '
          << (c.provenance.kind ? to_string(*c.provenance.kind) : "-");
    }
    out << '\n';
    ++records;
  }
  for (const auto& [gid, c] : core.concepts_)
    for (Gid p : c.parents) {
      out << "hypernym " << gid.value() << ' ' << p.value() << '\n';
      ++records;
    }
  for (const auto& r : core.relations_) {
    out << "relation " << r.from.value() << ' ' << quote(r.label) << ' ' << r.to.value()
        << '\n';
    ++records;
  }
  for (const auto& [lang, module] : core.languages_)
    for (const auto& [gid, s] : module.synsets) {
      out << "synset " << gid.value() << ' ' << lang << ' ' << quote(s.gloss) << '\n';
      ++records;
      for (std::size_t i = 0; i < s.words.size(); ++i) {
        out << "lemma " << gid.value() << ' ' << lang << ' ' << (i + 1) << ' '
            << quote(s.words[i]) << '\n';
        ++records;
      }
      for (const auto& e : s.examples) {
        out << "example " << gid.value() << ' ' << lang << ' ' << quote(e) << '\n';
        ++records;
      }
    }
  out << "end " << records << '\n';
}

KnowledgeCore read_snapshot(std::istream& in) {
  KnowledgeCore core;
  std::string text;
  std::size_t line_no = 0;
  std::size_t records = 0;
  bool header = false;
  bool ended = false;
  bool have_next = false;
  std::int64_t max_gid = 0;
  std::vector<std::pair<RecordReader, std::size_t>> deferred;

  while (std::getline(in, text)) {
    ++line_no;
    if (ended) {
      if (!trim(text).empty()) corrupt("content after end record", line_no, 1);
      continue;
    }
    auto fields = split_fields(text, line_no, ErrorCode::CorruptSnapshot);
    if (fields.empty()) continue;
    std::string tag = fields[0].text;
    RecordReader r(std::move(fields), line_no);

    if (!header) {
      if (tag != kMagic) corrupt("missing 'ontokit-core' header", line_no, 1);
      r.expect_count(2);
      if (r.integer(1) != kVersion)
        corrupt("unsupported snapshot version " + std::to_string(r.integer(1)), line_no,
                r.column(1));
      header = true;
      continue;
    }
    if (tag == "end") {
      r.expect_count(2);
      if (static_cast<std::size_t>(r.integer(1)) != records)
        corrupt("record count mismatch: end says " + std::to_string(r.integer(1)) +
                    ", file has " + std::to_string(records),
                line_no, r.column(1));
      ended = true;
      continue;
    }
    ++records;
    if (tag == "next-gid") {
      r.expect_count(2);
      core.next_gid_ = r.integer(1);
      if (core.next_gid_ < 1) corrupt("next-gid must be positive", line_no, r.column(1));
      have_next = true;
    } else if (tag == "revision") {
      r.expect_count(2);
      core.revision_ = static_cast<std::uint64_t>(r.integer(1));
    } else if (tag == "language") {
      r.expect_count(2);
      const std::string& lang = r.word(1);
      core.languages_.emplace(lang, LanguageModule{lang, {}});
    } else if (tag == "concept") {
      if (r.size() != 4 && r.size() != 5) r.expect_count(5);
      Gid gid = r.gid(1);
      Concept c{gid, {}, r.string(2), {}};
      if (r.size() == 4) {
        if (r.word(3) != "native") corrupt("expected 'native' or an IRI", line_no, r.column(3));
      } else {
        c.provenance.source_iri = r.string(3);
        if (c.provenance.source_iri.empty())
          corrupt("empty provenance IRI", line_no, r.column(3));
        if (r.word(4) != "-") {
          c.provenance.kind = parse_hierarchy_kind(r.word(4));
          if (!c.provenance.kind)
            corrupt("unknown hierarchy kind '" + r.word(4) + "'", line_no, r.column(4));
        }
      }
      if (!core.concepts_.emplace(gid, std::move(c)).second)
        corrupt("duplicate concept " + to_string(gid), line_no, r.column(1));
      max_gid = std::max(max_gid, gid.value());
    } else if (tag == "hypernym" || tag == "relation" || tag == "synset" ||
               tag == "lemma" || tag == "example") {
      deferred.emplace_back(std::move(r), line_no);
    } else {
      corrupt("unknown record '" + tag + "'", line_no, 1);
    }
  }
  if (!header) corrupt("empty snapshot", line_no + 1);
  if (!ended) corrupt("truncated snapshot: missing end record", line_no + 1);
  if (!have_next) corrupt("missing next-gid record", line_no);
  if (max_gid >= core.next_gid_)
    corrupt("concept " + std::to_string(max_gid) + " is not below next-gid", line_no);

  auto require = [&](Gid gid, std::size_t line, std::size_t col) {
    if (!core.concepts_.count(gid)) corrupt("unknown concept " + to_string(gid), line, col);
  };
  for (auto& [r, line] : deferred) {
    const std::string& tag = r.word(0);
    if (tag == "hypernym") {
      r.expect_count(3);
      Gid child = r.gid(1), parent = r.gid(2);
      require(child, line, r.column(1));
      require(parent, line, r.column(2));
      core.concepts_[child].parents.insert(parent);
    } else if (tag == "relation") {
      r.expect_count(4);
      Gid from = r.gid(1), to = r.gid(3);
      require(from, line, r.column(1));
      require(to, line, r.column(3));
      core.relations_.insert(Relation{from, r.string(2), to});
    } else if (tag == "synset") {
      r.expect_count(4);
      Gid gid = r.gid(1);
      require(gid, line, r.column(1));
      auto& module = core.languages_[r.word(2)];
      module.language = r.word(2);
      Synset s;
      s.gid = gid;
      s.language = r.word(2);
      s.gloss = r.string(3);
      if (!module.synsets.emplace(gid, std::move(s)).second)
        corrupt("duplicate synset", line, r.column(1));
    } else {
      bool lemma = tag == "lemma";
      r.expect_count(lemma ? 5 : 4);
      Gid gid = r.gid(1);
      auto lang = core.languages_.find(r.word(2));
      if (lang == core.languages_.end() || !lang->second.synsets.count(gid))
        corrupt("no synset declared for " + to_string(gid) + "/" + r.word(2), line,
                r.column(1));
      Synset& s = lang->second.synsets[gid];
      if (lemma) {
        if (r.integer(3) != static_cast<std::int64_t>(s.words.size()) + 1)
          corrupt("lemma rank " + std::to_string(r.integer(3)) + " out of sequence", line,
                  r.column(3));
        s.words.push_back(r.string(4));
      } else {
        s.examples.push_back(r.string(3));
      }
    }
  }
  for (const auto& [lang, module] : core.languages_)
    for (const auto& [gid, s] : module.synsets)
      if (s.words.empty())
        corrupt("synset " + to_string(gid) + "/" + lang + " has no lemmas", line_no);

  core.rebuild_indexes();
  try {
    core.topological_order();
  } catch (const Error&) {
    corrupt("hypernym records form a cycle", line_no);
  }
  return core;
}

std::string snapshot_text(const KnowledgeCore& core) {
  std::ostringstream out;
  write_snapshot(core, out);
  return out.str();
}

KnowledgeCore snapshot_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_snapshot(in);
}

void save_snapshot(const KnowledgeCore& core, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    write_snapshot(core, out);
    if (!out.flush()) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

KnowledgeCore load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  return read_snapshot(in);
}

}  // namespace ontokit
