#include <sstream>

#include "ontokit/cq_pipeline.hpp"
#include "ontokit/error.hpp"

namespace ontokit::cq {

namespace {

constexpr std::string_view kMagic = "ontokit-cq 1";

[[noreturn]] void bad(const std::string& what, std::size_t line, std::size_t col) {
  throw Error(ErrorCode::ParseError, what, line, col);
}

}  // namespace

std::string dump_staged(const std::vector<StagedCQ>& cqs) {
  std::ostringstream out;
  out << kMagic << '\n';
  for (const auto& cq : cqs) {
    out << "cq " << quote(cq.id) << ' ' << to_string(cq.stage) << ' ' << quote(cq.raw) << '\n';
    for (const auto& l : cq.kernel)
      out << "  kernel " << quote(l.text) << (l.latent ? " latent" : " explicit") << '\n';
    for (const auto& [label, a] : cq.analyzed)
      out << "  facet " << quote(label) << ' ' << to_string(a.facet) << ' '
          << to_string(a.source) << '\n';
    for (const auto& [label, k] : cq.classified)
      out << "  kind " << quote(label) << ' ' << to_string(k) << '\n';
    for (const auto& [label, specs] : cq.attributed) {
      out << "  attributed " << quote(label) << '\n';
      for (const auto& p : specs)
        out << "  property " << quote(label) << ' ' << quote(p.name) << ' ' << to_string(p.kind)
            << ' ' << quote(p.range) << '\n';
    }
    for (const auto& w : cq.warnings) out << "  warning " << quote(w) << '\n';
    out << "end\n";
  }
  return out.str();
}

std::vector<StagedCQ> parse_staged(std::string_view text) {
  std::vector<StagedCQ> out;
  StagedCQ* open = nullptr;
  std::size_t line_no = 0;
  bool header = false;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (!header) {
      if (trim(line) != kMagic) bad("expected '" + std::string(kMagic) + "' header", line_no, 1);
      header = true;
      continue;
    }
    auto f = split_fields(line, line_no, ErrorCode::ParseError);
    const std::string& tag = f[0].text;
    auto arity = [&](std::size_t n) {
      if (f.size() != n)
        bad("'" + tag + "' expects " + std::to_string(n - 1) + " fields", line_no, f[0].column);
    };
    auto quoted = [&](std::size_t i) -> const std::string& {
      if (!f[i].quoted) bad("expected a quoted string", line_no, f[i].column);
      return f[i].text;
    };
    if (tag == "cq") {
      if (open) bad("'cq' before 'end' of the previous CQ", line_no, f[0].column);
      arity(4);
      auto stage = parse_stage(f[2].text);
      if (!stage) bad("unknown stage '" + f[2].text + "'", line_no, f[2].column);
      StagedCQ cq;
      cq.id = quoted(1);
      cq.stage = *stage;
      cq.raw = quoted(3);
      out.push_back(std::move(cq));
      open = &out.back();
      continue;
    }
    if (!open) bad("'" + tag + "' outside a CQ", line_no, f[0].column);
    if (tag == "end") {
      arity(1);
      open = nullptr;
    } else if (tag == "kernel") {
      arity(3);
      if (f[2].text != "latent" && f[2].text != "explicit")
        bad("expected 'latent' or 'explicit'", line_no, f[2].column);
      open->kernel.push_back({quoted(1), f[2].text == "latent"});
    } else if (tag == "facet") {
      arity(4);
      auto facet = parse_facet(f[2].text);
      if (!facet) bad("unknown facet '" + f[2].text + "'", line_no, f[2].column);
      auto source = parse_assignment_source(f[3].text);
      if (!source) bad("unknown source '" + f[3].text + "'", line_no, f[3].column);
      open->analyzed[quoted(1)] = {*facet, *source};
    } else if (tag == "kind") {
      arity(3);
      auto kind = parse_concept_kind(f[2].text);
      if (!kind) bad("unknown kind '" + f[2].text + "'", line_no, f[2].column);
      open->classified[quoted(1)] = *kind;
    } else if (tag == "attributed") {
      arity(2);
      open->attributed[quoted(1)];
    } else if (tag == "property") {
      arity(5);
      auto it = open->attributed.find(quoted(1));
      if (it == open->attributed.end())
        bad("property for '" + f[1].text + "' before its 'attributed' record", line_no,
            f[1].column);
      auto kind = parse_property_kind(f[3].text);
      if (!kind) bad("unknown property kind '" + f[3].text + "'", line_no, f[3].column);
      it->second.push_back({quoted(2), *kind, quoted(4)});
    } else if (tag == "warning") {
      arity(2);
      open->warnings.push_back(quoted(1));
    } else {
      bad("unknown record '" + tag + "'", line_no, f[0].column);
    }
  }
  if (!header) bad("empty stage dump", 1, 1);
  if (open) bad("CQ '" + open->id + "' has no 'end'", line_no, 1);
  return out;
}

}  // namespace ontokit::cq
