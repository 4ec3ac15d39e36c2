#include "ontokit/sheet_csv.hpp"

#include <charconv>
#include <sstream>

#include "ontokit/error.hpp"
#include "ontokit/text.hpp"

namespace ontokit {

namespace {

constexpr std::string_view kMagic = "ontokit-sheet 1";

struct Cell {
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

[[noreturn]] void malformed(const std::string& what, std::size_t line, std::size_t col) {
  throw Error(ErrorCode::MalformedRow, what, line, col);
}

// Reads one CSV record starting at `pos`; advances `pos` and `line`.
std::vector<Cell> read_record(std::string_view text, std::size_t& pos, std::size_t& line) {
  std::vector<Cell> cells;
  std::size_t col = 1;
  Cell cell{{}, line, col};
  bool quoted = false;
  bool was_quoted = false;
  while (pos < text.size()) {
    char c = text[pos];
    if (quoted) {
      ++pos;
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          cell.text.push_back('"');
          ++pos;
          col += 2;
        } else {
          quoted = false;
          ++col;
        }
        continue;
      }
      cell.text.push_back(c);
      if (c == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      continue;
    }
    if (c == '"') {
      if (!cell.text.empty() || was_quoted) malformed("stray quote inside a field", line, col);
      quoted = was_quoted = true;
      ++pos;
      ++col;
      continue;
    }
    if (c == ',') {
      cells.push_back(std::move(cell));
      ++pos;
      ++col;
      cell = Cell{{}, line, col};
      was_quoted = false;
      continue;
    }
    if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
    if (c == '\n' || c == '\r') {
      ++pos;
      ++line;
      cells.push_back(std::move(cell));
      return cells;
    }
    if (was_quoted) malformed("characters after closing quote", line, col);
    cell.text.push_back(c);
    ++pos;
    ++col;
  }
  if (quoted) malformed("unterminated quoted field", cell.line, cell.column);
  cells.push_back(std::move(cell));
  return cells;
}

std::int64_t integer(const Cell& cell, std::string_view what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(cell.text.data(), cell.text.data() + cell.text.size(), v);
  if (cell.text.empty() || ec != std::errc() || ptr != cell.text.data() + cell.text.size())
    malformed(std::string(what) + " must be an integer, found '" + cell.text + "'", cell.line,
              cell.column);
  return v;
}

std::string one_line(std::string_view v) {
  std::string out;
  for (char c : v) out.push_back(c == '\n' || c == '\r' ? ' ' : c);
  return out;
}

}  // namespace

std::string csv_field(std::string_view value) {
  bool needs = value.find_first_of(",\"\n\r") != std::string_view::npos ||
               (!value.empty() && (value.front() == ' ' || value.back() == ' '));
  if (!needs) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string export_sheet(const AnnotationSheet& sheet) {
  std::ostringstream out;
  out << "# " << kMagic << '\n';
  out << "# source: " << one_line(sheet.source_iri) << '\n';
  out << "# annotator: " << one_line(sheet.metadata.annotator) << '\n';
  out << "# core-revision: " << sheet.metadata.core_revision << '\n';
  for (const auto& s : sheet.metadata.skipped) out << "# skipped: " << one_line(s) << '\n';
  out << kSheetHeader << '\n';
  for (const auto& r : sheet.records) {
    out << csv_field(r.label) << ',' << csv_field(r.language) << ',' << r.gid().value() << ','
        << (r.is_new() ? std::string() : std::to_string(r.wsr())) << ','
        << csv_field(r.parent_label) << ','
        << (r.parent_gid.null() ? std::string() : to_string(r.parent_gid)) << ','
        << csv_field(r.gloss) << ',' << to_string(r.kind) << ',' << csv_field(r.source_iri)
        << '\n';
  }
  return out.str();
}

AnnotationSheet parse_sheet(std::string_view text) {
  AnnotationSheet sheet;
  std::size_t pos = 0;
  std::size_t line = 1;
  // metadata lines
  while (pos < text.size() && text[pos] == '#') {
    auto end = text.find('\n', pos);
    std::string_view raw = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::string_view body = raw.substr(1);
    if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
    pos = end == std::string_view::npos ? text.size() : end + 1;
    if (body != kMagic) {
      auto colon = body.find(':');
      if (colon == std::string_view::npos) malformed("metadata line needs 'key: value'", line, 1);
      auto key = trim(body.substr(0, colon));
      // keep the value verbatim apart from the single separating space
      auto value = body.substr(colon + 1);
      if (!value.empty() && value.front() == ' ') value.remove_prefix(1);
      if (key == "source") sheet.source_iri = std::string(value);
      else if (key == "annotator") sheet.metadata.annotator = std::string(value);
      else if (key == "core-revision")
        sheet.metadata.core_revision = static_cast<std::uint64_t>(
            integer(Cell{std::string(trim(value)), line, colon + 3}, "core-revision"));
      else if (key == "skipped") sheet.metadata.skipped.emplace_back(value);
      else malformed("unknown metadata key '" + std::string(key) + "'", line, 3);
    }
    ++line;
  }
  if (pos >= text.size()) malformed("missing header row", line, 1);
  auto header = read_record(text, pos, line);
  std::string joined;
  for (std::size_t i = 0; i < header.size(); ++i) joined += (i ? "," : "") + header[i].text;
  if (joined != kSheetHeader)
    malformed("header must be '" + std::string(kSheetHeader) + "'", header.front().line, 1);

  while (pos < text.size()) {
    auto cells = read_record(text, pos, line);
    if (cells.size() == 1 && cells[0].text.empty()) continue;  // blank line
    if (cells.size() != 9)
      malformed("expected 9 fields, found " + std::to_string(cells.size()), cells.front().line,
                cells.back().column);
    AnnotationRecord r;
    r.label = cells[0].text;
    r.language = cells[1].text;
    std::int64_t gid = integer(cells[2], "gid_or_placeholder");
    if (gid == 0) malformed("gid_or_placeholder must be non-zero", cells[2].line, cells[2].column);
    if (gid > 0) {
      auto wsr = integer(cells[3], "wsr");
      if (wsr < 1) malformed("wsr must be positive", cells[3].line, cells[3].column);
      r.outcome = SynonymousMatch{Gid(gid), static_cast<int>(wsr)};
    } else {
      if (!cells[3].text.empty())
        malformed("wsr must be empty for a new concept", cells[3].line, cells[3].column);
      r.outcome = NoSynonymousMatch{Gid(gid)};
    }
    r.parent_label = cells[4].text;
    if (!cells[5].text.empty()) r.parent_gid = Gid(integer(cells[5], "parent_gid"));
    r.gloss = cells[6].text;
    auto kind = parse_hierarchy_kind(cells[7].text);
    if (!kind)
      malformed("unknown hierarchy_kind '" + cells[7].text + "'", cells[7].line, cells[7].column);
    r.kind = *kind;
    r.source_iri = cells[8].text;
    sheet.records.push_back(std::move(r));
  }
  return sheet;
}

}  // namespace ontokit
