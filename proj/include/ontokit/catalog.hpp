#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ontokit/turtle.hpp"

namespace ontokit {

// One ontology of the local general-purpose catalog.
struct CatalogEntry {
  std::string iri;
  std::string title;
  std::string path;  // relative to the manifest directory
  std::vector<std::string> tags;
  std::size_t incoming_links = 0;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

// Manifest: one tab-separated record per line, `IRI  title  path  tags`,
// tags comma-separated and optional. '#' starts a comment line.
std::vector<CatalogEntry> parse_manifest(std::string_view text);
std::string format_manifest(const std::vector<CatalogEntry>& entries);

// True when `iri` is `ns` itself or a term inside that namespace.
bool in_namespace(std::string_view iri, std::string_view ns);

// Sets incoming_links[i] to the number of other entries whose document
// imports entry i or uses a term from its namespace. Terms are attributed to
// the entry with the longest matching namespace. `documents[i]` belongs to
// `entries[i]`.
void compute_incoming_links(std::vector<CatalogEntry>& entries,
                            const std::vector<rdf::Document>& documents);

// Descending by incoming links, ties by IRI.
std::vector<CatalogEntry> rank_catalog(std::vector<CatalogEntry> catalog);

// Reads the manifest and every referenced Turtle file, then computes links.
std::vector<CatalogEntry> load_catalog(const std::filesystem::path& manifest);

}  // namespace ontokit
