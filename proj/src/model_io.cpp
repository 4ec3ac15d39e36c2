#include "ontokit/model_io.hpp"

#include <charconv>
#include <sstream>

#include "ontokit/error.hpp"
#include "ontokit/text.hpp"

namespace ontokit {

namespace {

constexpr std::string_view kMagic = "ontokit-model";

std::string write_model(const ERModel& m, std::string_view stage,
                        const GroundedDomainModel* grounded) {
  std::ostringstream out;
  std::size_t records = 0;
  out << kMagic << " 1 " << stage << '\n';
  const auto& c = m.context;
  out << "context " << quote(c.domain) << ' ' << quote(c.spatial_scope) << ' '
      << (c.start ? ft::format_date(*c.start) : "-") << ' '
      << (c.end ? ft::format_date(*c.end) : "-") << '\n';
  ++records;
  for (const auto& label : m.top_down()) {
    const ERNode& n = m.node(label);
    out << "node " << quote(n.label) << ' ' << cq::to_string(n.kind) << ' '
        << (n.gid.null() ? "-" : to_string(n.gid)) << ' ' << (n.parent ? quote(*n.parent) : "-");
    if (grounded) out << ' ' << ft::to_string(grounded->nodes.at(label));
    out << '\n';
    ++records;
  }
  for (const auto& r : m.relations()) {
    out << "relation " << quote(r.name) << ' ' << quote(r.source) << ' ' << quote(r.target) << ' '
        << (r.grounding ? ft::to_string(*r.grounding) : "-") << '\n';
    ++records;
  }
  for (const auto& [label, specs] : m.attributions())
    for (const auto& s : specs) {
      out << "property " << quote(label) << ' ' << quote(s.name) << ' ' << cq::to_string(s.kind)
          << ' ' << quote(s.range) << '\n';
      ++records;
    }
  if (grounded)
    for (const auto& w : grounded->warnings) {
      out << "warning " << quote(w) << '\n';
      ++records;
    }
  out << "end " << records << '\n';
  return out.str();
}

struct Parsed {
  std::string stage;
  ERModel model;
  std::map<std::string, ft::Distinction> distinctions;
  std::vector<std::string> warnings;
};

[[noreturn]] void bad(const std::string& what, std::size_t line, std::size_t col) {
  throw Error(ErrorCode::ParseError, what, line, col);
}

Parsed parse_model(std::string_view text) {
  Parsed p;
  std::vector<std::pair<std::string, std::string>> edges;
  std::size_t line_no = 0, records = 0;
  bool header = false, ended = false;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (ended) bad("content after 'end'", line_no, 1);
    auto f = split_fields(line, line_no, ErrorCode::ParseError);
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (f.size() < lo || f.size() > hi)
        bad("'" + f[0].text + "' record has " + std::to_string(f.size() - 1) + " fields", line_no,
            f[0].column);
    };
    auto quoted = [&](std::size_t i) -> const std::string& {
      if (!f[i].quoted) bad("expected a quoted string", line_no, f[i].column);
      return f[i].text;
    };
    auto date = [&](std::size_t i) -> std::optional<ft::Date> {
      if (f[i].text == "-") return std::nullopt;
      auto d = ft::parse_date(f[i].text);
      if (!d) bad("bad date '" + f[i].text + "'", line_no, f[i].column);
      return d;
    };
    const std::string& tag = f[0].text;
    if (!header) {
      if (tag != kMagic || f.size() != 3 || f[1].text != "1")
        bad("expected '" + std::string(kMagic) + " 1 <stage>' header", line_no, 1);
      p.stage = f[2].text;
      if (p.stage != "er" && p.stage != "etg" && p.stage != "grounded")
        bad("unknown model stage '" + p.stage + "'", line_no, f[2].column);
      header = true;
      continue;
    }
    try {
      if (tag == "end") {
        arity(2, 2);
        if (f[1].text != std::to_string(records))
          bad("record count " + f[1].text + " does not match " + std::to_string(records), line_no,
              f[1].column);
        ended = true;
        continue;
      }
      ++records;
      if (tag == "context") {
        arity(5, 5);
        p.model.context = {quoted(1), quoted(2), date(3), date(4)};
      } else if (tag == "node") {
        arity(5, 6);
        auto kind = cq::parse_concept_kind(f[2].text);
        if (!kind) bad("unknown kind '" + f[2].text + "'", line_no, f[2].column);
        ERNode& n = p.model.add_node(quoted(1), *kind);
        if (f[3].text != "-") {
          std::int64_t v = 0;
          const auto& t = f[3].text;
          auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
          if (ec != std::errc() || ptr != t.data() + t.size() || v == 0)
            bad("bad GID '" + t + "'", line_no, f[3].column);
          n.gid = Gid(v);
        }
        if (f[4].text != "-") edges.emplace_back(n.label, quoted(4));
        if (f.size() == 6) {
          auto d = ft::parse_distinction(f[5].text);
          if (!d) bad("unknown distinction '" + f[5].text + "'", line_no, f[5].column);
          p.distinctions[n.label] = *d;
        }
      } else if (tag == "relation") {
        arity(5, 5);
        ERRelation r{quoted(1), quoted(2), quoted(3), std::nullopt};
        if (f[4].text != "-") {
          r.grounding = ft::parse_relation_kind(f[4].text);
          if (!r.grounding) bad("unknown relation kind '" + f[4].text + "'", line_no, f[4].column);
        }
        p.model.add_relation(std::move(r));
      } else if (tag == "property") {
        arity(5, 5);
        auto kind = cq::parse_property_kind(f[3].text);
        if (!kind) bad("unknown property kind '" + f[3].text + "'", line_no, f[3].column);
        p.model.add_attribution(quoted(1), {quoted(2), *kind, quoted(4)});
      } else if (tag == "warning") {
        arity(2, 2);
        p.warnings.push_back(quoted(1));
      } else {
        bad("unknown record '" + tag + "'", line_no, f[0].column);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      throw Error(ErrorCode::ParseError, e.what(), line_no, 1);
    }
  }
  if (!header) bad("empty model file", 1, 1);
  if (!ended) bad("model file is truncated (no 'end' record)", line_no, 1);
  for (const auto& [child, parent] : edges) p.model.set_parent(child, parent);
  return p;
}

void expect_stage(const Parsed& p, std::string_view stage) {
  if (p.stage != stage)
    throw Error(ErrorCode::ParseError,
                "expected a " + std::string(stage) + " model, found " + p.stage, 1, 1);
}

}  // namespace

std::string write_er(const ERModel& model) { return write_model(model, "er", nullptr); }
std::string write_etg(const ETG& etg) { return write_model(etg.model(), "etg", nullptr); }
std::string write_grounded(const GroundedDomainModel& model) {
  return write_model(model.etg.model(), "grounded", &model);
}

ERModel read_er(std::string_view text) { return parse_model(text).model; }

ETG read_etg(std::string_view text) {
  Parsed p = parse_model(text);
  if (p.stage == "er") expect_stage(p, "etg");
  return ETG(std::move(p.model));
}

GroundedDomainModel read_grounded(std::string_view text) {
  Parsed p = parse_model(text);
  expect_stage(p, "grounded");
  GroundedDomainModel g;
  g.etg = ETG(std::move(p.model));
  g.nodes = std::move(p.distinctions);
  g.warnings = std::move(p.warnings);
  if (g.nodes.size() != g.etg.model().size())
    throw Error(ErrorCode::ParseError, "grounded model lacks node distinctions", 1, 1);
  if (auto v = grounding_violations(g); !v.empty())
    throw Error(ErrorCode::ValidationFailed, "grounded model is unsound", v);
  return g;
}

}  // namespace ontokit
