#include "ontokit/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ontokit/error.hpp"
#include "ontokit/text.hpp"

namespace ontokit {

std::vector<CatalogEntry> parse_manifest(std::string_view text) {
  std::vector<CatalogEntry> entries;
  std::size_t line_no = 0;
  std::set<std::string> seen;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty() || trim(line).front() == '#') continue;
    auto cols = split(line, '\t');
    if (cols.size() < 3 || cols.size() > 4)
      throw Error(ErrorCode::ParseError,
                  "manifest record needs 3 or 4 tab-separated fields, found " +
                      std::to_string(cols.size()),
                  line_no, 1);
    CatalogEntry e;
    e.iri = std::string(trim(cols[0]));
    e.title = std::string(trim(cols[1]));
    e.path = std::string(trim(cols[2]));
    if (e.iri.empty() || e.path.empty())
      throw Error(ErrorCode::ParseError, "manifest record needs an IRI and a path", line_no, 1);
    if (!seen.insert(e.iri).second)
      throw Error(ErrorCode::ParseError, "duplicate catalog IRI " + e.iri, line_no, 1);
    if (cols.size() == 4)
      for (auto tag : split(cols[3], ','))
        if (!trim(tag).empty()) e.tags.emplace_back(trim(tag));
    entries.push_back(std::move(e));
  }
  return entries;
}

std::string format_manifest(const std::vector<CatalogEntry>& entries) {
  std::ostringstream out;
  for (const auto& e : entries) {
    out << e.iri << '\t' << e.title << '\t' << e.path << '\t';
    for (std::size_t i = 0; i < e.tags.size(); ++i) out << (i ? "," : "") << e.tags[i];
    out << '\n';
  }
  return out.str();
}

bool in_namespace(std::string_view iri, std::string_view ns) {
  if (ns.empty() || iri.size() < ns.size() || iri.substr(0, ns.size()) != ns) return false;
  if (iri.size() == ns.size()) return true;
  char last = ns.back();
  if (last == '#' || last == '/') return true;
  char next = iri[ns.size()];
  return next == '#' || next == '/';
}

void compute_incoming_links(std::vector<CatalogEntry>& entries,
                            const std::vector<rdf::Document>& documents) {
  if (entries.size() != documents.size())
    throw Error(ErrorCode::Usage, "one document per catalog entry required");
  auto owner_of = [&](std::string_view iri) -> std::ptrdiff_t {
    std::ptrdiff_t best = -1;
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (in_namespace(iri, entries[i].iri) &&
          (best < 0 || entries[i].iri.size() > entries[static_cast<std::size_t>(best)].iri.size()))
        best = static_cast<std::ptrdiff_t>(i);
    return best;
  };
  std::vector<std::set<std::size_t>> referrers(entries.size());
  const std::string imports = rdf::owl("imports");
  for (std::size_t from = 0; from < documents.size(); ++from) {
    auto note = [&](std::ptrdiff_t owner) {
      if (owner >= 0 && static_cast<std::size_t>(owner) != from)
        referrers[static_cast<std::size_t>(owner)].insert(from);
    };
    for (const auto& t : documents[from].triples) {
      if (t.predicate.value == imports && t.object.is_iri()) {
        for (std::size_t i = 0; i < entries.size(); ++i)
          if (entries[i].iri == t.object.value) note(static_cast<std::ptrdiff_t>(i));
      }
      for (const rdf::Term* term : {&t.subject, &t.predicate, &t.object})
        if (term->is_iri()) note(owner_of(term->value));
      if (t.object.is_literal() && !t.object.datatype.empty()) note(owner_of(t.object.datatype));
    }
  }
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].incoming_links = referrers[i].size();
}

std::vector<CatalogEntry> rank_catalog(std::vector<CatalogEntry> catalog) {
  std::sort(catalog.begin(), catalog.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    if (a.incoming_links != b.incoming_links) return a.incoming_links > b.incoming_links;
    return a.iri < b.iri;
  });
  return catalog;
}

std::vector<CatalogEntry> load_catalog(const std::filesystem::path& manifest) {
  auto read = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto entries = parse_manifest(read(manifest));
  std::vector<rdf::Document> docs;
  for (const auto& e : entries) {
    auto path = manifest.parent_path() / e.path;
    try {
      docs.push_back(rdf::parse_turtle(read(path), e.iri));
    } catch (const Error& err) {
      throw Error(err.code(), path.string() + ": " + err.what());
    }
  }
  compute_incoming_links(entries, docs);
  return entries;
}

}  // namespace ontokit
