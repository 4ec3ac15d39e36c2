#include "ontokit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "ontokit/annotation.hpp"
#include "ontokit/catalog.hpp"
#include "ontokit/cq_pipeline.hpp"
#include "ontokit/decision_script.hpp"
#include "ontokit/domain_export.hpp"
#include "ontokit/error.hpp"
#include "ontokit/etg.hpp"
#include "ontokit/model_io.hpp"
#include "ontokit/ontology.hpp"
#include "ontokit/service.hpp"
#include "ontokit/sheet_csv.hpp"
#include "ontokit/teleology.hpp"
#include "ontokit/workspace.hpp"

namespace ontokit {

namespace fs = std::filesystem;

namespace {

// Reads `path` and runs `parse` on its content; errors carry the file name.
template <class F>
auto parse_file(const fs::path& path, F&& parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string tsv_escape(std::string s) {
  for (char& c : s)
    if (c == '\t' || c == '\n') c = ' ';
  return s;
}

struct Options {
  std::string workspace = ".";

  std::string manifest;

  std::string ontology;
  std::string base;
  std::string decisions;
  bool interactive = false;
  bool serve = false;
  std::string bind = "127.0.0.1";
  int port = 8765;
  std::string output;

  std::string sheet;

  std::string cq_file;
  bool strict = false;

  std::string input;
  std::string structure;

  std::string lemma;
  std::string lang;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err, std::istream& in)
      : o_(o), out_(out), err_(err), in_(in) {}

  int catalog_rank() {
    Workspace ws = workspace();
    fs::path manifest = o_.manifest.empty() ? ws.manifest_path() : fs::path(o_.manifest);
    auto ranked = rank_catalog(load_catalog(manifest));
    std::string table = "rank\tincoming\tiri\ttitle\n";
    std::size_t rank = 0;
    for (const auto& e : ranked)
      table += std::to_string(++rank) + '\t' + std::to_string(e.incoming_links) + '\t' + e.iri +
               '\t' + tsv_escape(e.title) + '\n';
    fs::path target = manifest.parent_path() / "ranking.tsv";
    write_file(target, table);
    std::vector<fs::path> inputs{manifest};
    for (const auto& e : ranked) inputs.push_back(manifest.parent_path() / e.path);
    ws.log("catalog rank", inputs, {target});
    out_ << table;
    return kExitOk;
  }

  int ingest() {
    auto onto = load_ontology(o_.ontology, o_.lang.empty() ? "en" : o_.lang);
    out_ << "ontology " << (onto.iri.empty() ? "-" : onto.iri) << '\n';
    for (auto kind : kAllHierarchyKinds) {
      const auto& h = onto.hierarchy(kind);
      out_ << to_string(kind) << ": " << h.size() << " nodes, " << h.edge_count() << " edges\n";
      for (const auto& c : iterate_top_down(h)) {
        out_ << "  " << c.label;
        if (!c.parents.empty()) out_ << " < " << h.node(c.parents.front()).label;
        for (std::size_t i = 1; i < c.parents.size(); ++i)
          out_ << ", " << h.node(c.parents[i]).label;
        out_ << '\n';
      }
    }
    for (const auto& i : onto.imports) out_ << "imports " << i << '\n';
    return kExitOk;
  }

  int annotate_cmd() {
    int modes = int(!o_.decisions.empty()) + int(o_.interactive) + int(o_.serve);
    if (modes != 1) {
      err_ << "error: Usage: annotate needs exactly one of --decisions, --interactive, --serve\n";
      return kExitUsage;
    }
    Workspace ws = workspace();
    const auto& cfg = ws.config();
    auto onto = load_ontology(o_.ontology, cfg.language);
    AnnotateOptions options;
    options.annotator = cfg.annotator;
    options.default_parent = cfg.default_parent;
    fs::path target = o_.output.empty()
                          ? ws.sheets_dir() / (fs::path(o_.ontology).stem().string() + ".csv")
                          : fs::path(o_.output);
    std::vector<fs::path> inputs{o_.ontology, ws.core_path()};

    if (o_.serve) return serve(ws, std::move(onto), options, target, inputs);

    KnowledgeCore core = ws.load_core();
    AnnotationSheet sheet;
    if (o_.interactive) {
      sheet = interactive(onto, core, options);
    } else {
      auto script = parse_file(o_.decisions, [](const std::string& t) { return DecisionScript::parse(t); });
      sheet = annotate(onto, core, decisions_from(script), options);
      inputs.push_back(o_.decisions);
    }
    write_file(target, export_sheet(sheet));
    ws.log("annotate", inputs, {target});
    out_ << "wrote " << target.string() << ": " << sheet.records.size() << " records, "
         << sheet.new_concept_count() << " new concepts, " << sheet.metadata.skipped.size()
         << " skipped\n";
    return kExitOk;
  }

  int sheet_validate() {
    Workspace ws = workspace();
    auto sheet = parse_file(o_.sheet, [](const std::string& t) { return parse_sheet(t); });
    KnowledgeCore core = ws.load_core();
    auto violations = validate_sheet(sheet, core);
    print_violations(sheet, violations);
    if (has_errors(violations)) return kExitFailure;
    out_ << o_.sheet << ": valid, " << sheet.records.size() << " records\n";
    return kExitOk;
  }

  int sheet_import() {
    Workspace ws = workspace();
    auto sheet = parse_file(o_.sheet, [](const std::string& t) { return parse_sheet(t); });
    KnowledgeCore core = ws.load_core();
    auto violations = validate_sheet(sheet, core);
    if (has_errors(violations)) {
      print_violations(sheet, violations);
      err_ << o_.sheet << ": not imported\n";
      return kExitFailure;
    }
    print_violations(sheet, violations);
    auto mapping = import_sheet(sheet, core);
    ws.save_core(core);
    std::string table = mapping_table(sheet, mapping);
    fs::path map_path = fs::path(o_.sheet).replace_extension(".mapping.tsv");
    write_file(map_path, table);
    ws.log("sheet import", {o_.sheet}, {ws.core_path(), map_path});
    out_ << table;
    return kExitOk;
  }

  int cq_run() {
    Workspace ws = workspace();
    const auto& cfg = ws.config();
    auto cqs = parse_file(o_.cq_file, [](const std::string& t) { return cq::parse_cq_file(t); });
    fs::path dir = o_.decisions.empty() ? ws.decisions_dir() / "cq" : fs::path(o_.decisions);
    auto decisions = cq::CqDecisions::load(dir);
    cq::AnalysisOptions options{cfg.language, cfg.space_root, cfg.time_root, o_.strict};
    KnowledgeCore core = ws.load_core();
    auto staged = cq::run_pipeline(cqs, core, options, decisions);
    fs::path target = output_or(ws.models_dir() / "cqs.staged");
    write_file(target, cq::dump_staged(staged));
    std::vector<fs::path> inputs{o_.cq_file, ws.core_path()};
    for (const auto& d : fs::directory_iterator(dir))
      if (d.is_regular_file()) inputs.push_back(d.path());
    std::sort(inputs.begin() + 2, inputs.end());
    ws.log("cq run", inputs, {target});
    for (const auto& cq : staged) {
      out_ << cq.id << ':';
      for (const auto& l : cq.kernel) out_ << ' ' << l.text << (l.latent ? "*" : "");
      out_ << '\n';
      for (const auto& w : cq.warnings) err_ << "warning: " << cq.id << ": " << w << '\n';
    }
    out_ << "wrote " << target.string() << '\n';
    return kExitOk;
  }

  int er_build() {
    Workspace ws = workspace();
    fs::path input = input_or(ws.models_dir() / "cqs.staged");
    auto staged = parse_file(input, [](const std::string& t) { return cq::parse_staged(t); });
    fs::path structure = structure_path(ws);
    StructureDecisions decisions;
    if (fs::exists(structure))
      decisions = parse_file(structure, [](const std::string& t) { return StructureDecisions::parse(t); });
    KnowledgeCore core = ws.load_core();
    auto er = build_er(staged, ws.config().context, core, decisions, {ws.config().language});
    fs::path target = output_or(ws.models_dir() / "er.model");
    write_file(target, write_er(er));
    ws.log("er build", {input, structure, ws.core_path()}, {target});
    print_sizes(er);
    out_ << "wrote " << target.string() << '\n';
    return kExitOk;
  }

  int etg_formalize() {
    Workspace ws = workspace();
    const auto& cfg = ws.config();
    fs::path input = input_or(ws.models_dir() / "er.model");
    auto er = parse_file(input, [](const std::string& t) { return read_er(t); });
    fs::path script_path = o_.decisions.empty() ? ws.decisions_dir() / "etg.txt" : fs::path(o_.decisions);
    DecisionScript script;
    if (fs::exists(script_path))
      script = parse_file(script_path, [](const std::string& t) { return DecisionScript::parse(t); });
    KnowledgeCore core = ws.load_core();
    auto result = formalize_to_etg(er, core, script, {cfg.language, cfg.annotator, cfg.default_parent});
    fs::path target = output_or(ws.models_dir() / "etg.model");
    fs::path sheet_path = o_.sheet.empty() ? ws.sheets_dir() / "etg.csv" : fs::path(o_.sheet);
    write_file(sheet_path, export_sheet(result.sheet));
    fs::path map_path = fs::path(sheet_path).replace_extension(".mapping.tsv");
    write_file(map_path, mapping_table(result.sheet, result.mapping));
    ws.save_core(core);
    write_file(target, write_etg(result.etg));
    ws.log("etg formalize", {input, script_path}, {ws.core_path(), sheet_path, map_path, target});
    out_ << "formalized " << result.etg.model().size() << " nodes, "
         << result.sheet.new_concept_count() << " new concepts\n";
    out_ << "wrote " << target.string() << '\n';
    return kExitOk;
  }

  int ground() {
    Workspace ws = workspace();
    fs::path input = input_or(ws.models_dir() / "etg.model");
    auto etg = parse_file(input, [](const std::string& t) { return read_etg(t); });
    fs::path structure = structure_path(ws);
    StructureDecisions decisions;
    if (fs::exists(structure))
      decisions = parse_file(structure, [](const std::string& t) { return StructureDecisions::parse(t); });
    auto grounded = ground_to_ft(etg, decisions.refinements);
    fs::path target = output_or(ws.models_dir() / "grounded.model");
    write_file(target, write_grounded(grounded));
    ws.log("ground", {input, structure}, {target});
    for (const auto& r : grounded.etg.model().relations())
      out_ << r.name << ": " << r.source << " -> " << r.target << " : "
           << ft::to_string(*r.grounding) << '\n';
    for (const auto& w : grounded.warnings) err_ << "warning: " << w << '\n';
    out_ << "wrote " << target.string() << '\n';
    return kExitOk;
  }

  int export_cmd() {
    Workspace ws = workspace();
    fs::path input = input_or(ws.models_dir() / "grounded.model");
    auto model = parse_file(input, [](const std::string& t) { return read_grounded(t); });
    fs::path target = output_or(ws.models_dir() / "domain.ttl");
    ExportOptions options{ws.config().model_namespace, ws.config().language};
    write_file(target, export_turtle(model, options));
    ws.log("export", {input}, {target});
    out_ << "wrote " << target.string() << '\n';
    return kExitOk;
  }

  int core_search() {
    Workspace ws = workspace();
    KnowledgeCore core = ws.load_core();
    std::string lang = o_.lang.empty() ? ws.config().language : o_.lang;
    for (const auto& h : core.search_synonymous(o_.lemma, lang)) {
      out_ << h.gid.value() << "\twsr " << h.wsr << '\t';
      for (std::size_t i = 0; i < h.synset.words.size(); ++i)
        out_ << (i ? ", " : "") << h.synset.words[i];
      out_ << '\t' << h.synset.gloss << '\n';
    }
    return kExitOk;
  }

 private:
  Workspace workspace() const { return Workspace(o_.workspace); }

  fs::path output_or(fs::path fallback) const {
    return o_.output.empty() ? fallback : fs::path(o_.output);
  }
  fs::path input_or(fs::path fallback) const {
    return o_.input.empty() ? fallback : fs::path(o_.input);
  }
  fs::path structure_path(const Workspace& ws) const {
    return o_.structure.empty() ? ws.decisions_dir() / "structure.txt" : fs::path(o_.structure);
  }

  InformalOntology load_ontology(const std::string& path, const std::string& language) const {
    IngestOptions options{language};
    return parse_file(path, [&](const std::string& t) { return parse_ontology(t, o_.base, options); });
  }

  void print_violations(const AnnotationSheet& sheet, const std::vector<Violation>& violations) {
    for (const auto& v : violations) {
      err_ << o_.sheet << ": record " << v.record + 1;
      if (v.record < sheet.records.size()) err_ << " (" << sheet.records[v.record].label << ")";
      err_ << ": " << (v.warning ? "warning: " : "") << to_string(v.kind) << ": " << v.message
           << '\n';
    }
  }

  static std::string mapping_table(const AnnotationSheet& sheet, const std::map<Gid, Gid>& mapping) {
    std::string table = "placeholder\tgid\tlabel\n";
    for (const auto& r : sheet.records)
      if (r.is_new())
        table += to_string(r.gid()) + '\t' + to_string(mapping.at(r.gid())) + '\t' +
                 tsv_escape(r.label) + '\n';
    return table;
  }

  void print_sizes(const ERModel& er) {
    for (auto kind : kAllConceptKinds)
      out_ << cq::to_string(kind) << ": " << er.hierarchy(kind).size() << " nodes\n";
    out_ << "relations: " << er.relations().size() << '\n';
  }

  AnnotationSheet interactive(const InformalOntology& onto, const KnowledgeCore& core,
                              const AnnotateOptions& options) {
    AnnotationSession session(onto, core, options);
    while (!session.done()) {
      const auto& c = session.current();
      const auto& hits = session.current_hits();
      out_ << '[' << session.position() + 1 << '/' << session.total() << "] " << to_string(c.kind)
           << " \"" << c.label << '"';
      if (!session.current_parent_gid().null())
        out_ << " (parent: " << session.current_parent_label() << ' '
             << session.current_parent_gid().value() << ')';
      out_ << '\n';
      if (!c.gloss.empty()) out_ << "  gloss: " << c.gloss << '\n';
      for (std::size_t i = 0; i < hits.size(); ++i)
        out_ << "  " << i + 1 << ") " << hits[i].gid.value() << ' ' << hits[i].synset.preferred()
             << " (wsr " << hits[i].wsr << ") " << hits[i].synset.gloss << '\n';
      out_ << "choice [number | g <gid> | n <gloss> | s]: " << std::flush;
      std::string line;
      if (!std::getline(in_, line))
        throw Error(ErrorCode::MissingDecision, "input ended before '" + c.label + "' was decided");
      std::string_view answer = trim(line);
      try {
        if (answer == "s") {
          session.decide(Decision::skip());
        } else if (answer.substr(0, 2) == "n " || answer == "n") {
          session.decide(Decision::new_concept(std::string(trim(answer.substr(1)))));
        } else if (answer.substr(0, 2) == "g ") {
          session.decide(Decision::accept(Gid(number(trim(answer.substr(2)))), true));
        } else {
          auto k = number(answer);
          if (k < 1 || static_cast<std::size_t>(k) > hits.size())
            throw Error(ErrorCode::InvalidDecision, "no hit number " + std::string(answer));
          session.decide(Decision::accept(hits[static_cast<std::size_t>(k - 1)].gid));
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::InvalidDecision && e.code() != ErrorCode::MissingGloss) throw;
        out_ << "  " << e.what() << '\n';
      }
    }
    return session.sheet();
  }

  static std::int64_t number(std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw Error(ErrorCode::InvalidDecision, "not a number: '" + std::string(s) + "'");
    return v;
  }

  int serve(const Workspace& ws, InformalOntology onto, AnnotateOptions options,
            const fs::path& target, const std::vector<fs::path>& inputs) {
    SharedCore core(ws.load_core());
    auto hook = [&](const AnnotationSheet& sheet, const std::map<Gid, Gid>& mapping,
                    const KnowledgeCore& k) {
      write_file(target, export_sheet(sheet));
      fs::path map_path = fs::path(target).replace_extension(".mapping.tsv");
      write_file(map_path, mapping_table(sheet, mapping));
      ws.save_core(k);
      ws.log("annotate --serve", inputs, {target, map_path, ws.core_path()});
    };
    AnnotationService service(core, std::move(onto), std::move(options), hook);
    int port = service.start(o_.bind, o_.port);
    if (port < 0) throw Error(ErrorCode::Io, "cannot bind " + o_.bind + ":" + std::to_string(o_.port));
    out_ << "serving annotation session on http://" << o_.bind << ':' << port << std::endl;
    service.wait_until_finalized();
    service.stop();
    out_ << "finalized; wrote " << target.string() << '\n';
    return kExitOk;
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  std::istream& in_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::istream& in) {
  Options o;
  CLI::App app{"Diversity-aware ontology development toolkit", "ontokit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-w,--workspace", o.workspace, "Workspace directory")->capture_default_str();

  std::function<int()> action;
  Runner runner(o, out, err, in);
  auto on = [&](CLI::App* sub, int (Runner::*fn)()) {
    sub->callback([&action, &runner, fn] { action = [&runner, fn] { return (runner.*fn)(); }; });
  };

  auto* catalog = app.add_subcommand("catalog", "Catalog operations");
  catalog->require_subcommand(1);
  auto* rank = catalog->add_subcommand("rank", "Rank catalog ontologies by incoming links");
  rank->add_option("--manifest", o.manifest, "Manifest file (default catalog/manifest.tsv)");
  on(rank, &Runner::catalog_rank);

  auto* ingest = app.add_subcommand("ingest", "Parse an ontology and print its hierarchies");
  ingest->add_option("file", o.ontology, "Turtle file")->required();
  ingest->add_option("--base", o.base, "Base IRI");
  ingest->add_option("--lang", o.lang, "Preferred label language");
  on(ingest, &Runner::ingest);

  auto* annotate_cmd = app.add_subcommand("annotate", "Annotate an ontology against the core");
  annotate_cmd->add_option("ontology", o.ontology, "Turtle file")->required();
  annotate_cmd->add_option("--base", o.base, "Base IRI");
  annotate_cmd->add_option("--decisions", o.decisions, "Decision script (headless)");
  annotate_cmd->add_flag("--interactive", o.interactive, "Prompt for each candidate");
  annotate_cmd->add_flag("--serve", o.serve, "Serve the session over HTTP");
  annotate_cmd->add_option("--bind", o.bind, "Address for --serve")->capture_default_str();
  annotate_cmd->add_option("--port", o.port, "Port for --serve (0 picks one)")->capture_default_str();
  annotate_cmd->add_option("-o,--output", o.output, "Sheet path (default sheets/<name>.csv)");
  on(annotate_cmd, &Runner::annotate_cmd);

  auto* sheet = app.add_subcommand("sheet", "Annotation sheet operations");
  sheet->require_subcommand(1);
  auto* validate = sheet->add_subcommand("validate", "Check a sheet against the core");
  validate->add_option("file", o.sheet, "Sheet CSV")->required();
  on(validate, &Runner::sheet_validate);
  auto* import = sheet->add_subcommand("import", "Validate a sheet and commit it to the core");
  import->add_option("file", o.sheet, "Sheet CSV")->required();
  on(import, &Runner::sheet_import);

  auto* cq = app.add_subcommand("cq", "Competency question pipeline");
  cq->require_subcommand(1);
  auto* cq_run = cq->add_subcommand("run", "Run every stage over a CQ file");
  cq_run->add_option("cqfile", o.cq_file, "CQ file")->required();
  cq_run->add_option("--decisions", o.decisions, "Decision directory (default decisions/cq)");
  cq_run->add_flag("--strict", o.strict, "Fail on labels the core does not know");
  cq_run->add_option("-o,--output", o.output, "Staged output (default models/cqs.staged)");
  on(cq_run, &Runner::cq_run);

  auto* er = app.add_subcommand("er", "ER model");
  er->require_subcommand(1);
  auto* er_build = er->add_subcommand("build", "Assemble the ER model from staged CQs");
  er_build->add_option("--cqs", o.input, "Staged CQs (default models/cqs.staged)");
  er_build->add_option("--structure", o.structure, "Structure decisions (default decisions/structure.txt)");
  er_build->add_option("-o,--output", o.output, "Output (default models/er.model)");
  on(er_build, &Runner::er_build);

  auto* etg = app.add_subcommand("etg", "Entity type graph");
  etg->require_subcommand(1);
  auto* formalize = etg->add_subcommand("formalize", "Give every ER node a core GID");
  formalize->add_option("--er", o.input, "ER model (default models/er.model)");
  formalize->add_option("--decisions", o.decisions, "Decision script (default decisions/etg.txt)");
  formalize->add_option("--sheet", o.sheet, "Sheet output (default sheets/etg.csv)");
  formalize->add_option("-o,--output", o.output, "Output (default models/etg.model)");
  on(formalize, &Runner::etg_formalize);

  auto* ground = app.add_subcommand("ground", "Ground the ETG in the foundational teleology");
  ground->add_option("--etg", o.input, "ETG (default models/etg.model)");
  ground->add_option("--structure", o.structure, "Structure decisions (default decisions/structure.txt)");
  ground->add_option("-o,--output", o.output, "Output (default models/grounded.model)");
  on(ground, &Runner::ground);

  auto* export_cmd = app.add_subcommand("export", "Write the domain model as Turtle");
  export_cmd->add_option("--model", o.input, "Grounded model (default models/grounded.model)");
  export_cmd->add_option("-o,--output", o.output, "Output (default models/domain.ttl)");
  on(export_cmd, &Runner::export_cmd);

  auto* ft = app.add_subcommand("ft", "Foundational teleology");
  ft->require_subcommand(1);
  ft->add_subcommand("dump", "Print the lattice")->callback([&] {
    action = [&] {
      out << ft::dump_lattice();
      return int(kExitOk);
    };
  });

  auto* core = app.add_subcommand("core", "Knowledge core");
  core->require_subcommand(1);
  auto* search = core->add_subcommand("search", "Synonymous-match search");
  search->add_option("lemma", o.lemma, "Lemma")->required();
  search->add_option("--lang", o.lang, "Language (default from workspace.conf)");
  on(search, &Runner::core_search);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? int(kExitOk) : int(kExitUsage);
  }

  try {
    return action ? action() : int(kExitUsage);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::Usage ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace ontokit
