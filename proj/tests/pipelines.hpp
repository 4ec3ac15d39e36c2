#pragma once

// The fixture workspace's modelling steps, run in-process.

#include <sstream>

#include "ontokit/annotation.hpp"
#include "ontokit/cli.hpp"
#include "ontokit/cq_pipeline.hpp"
#include "ontokit/decision_script.hpp"
#include "ontokit/etg.hpp"
#include "support.hpp"

namespace testing_support {

inline ontokit::ft::ThingContext tourist_context() {
  return {"tourist facilities", "Trentino, Italy", ontokit::ft::parse_date("01.01.2020"),
          ontokit::ft::parse_date("01.01.2021")};
}

inline ontokit::cq::AnalysisOptions fixture_analysis() {
  ontokit::cq::AnalysisOptions o;
  o.space = ontokit::Gid(2);
  o.time = ontokit::Gid(3);
  return o;
}

inline ontokit::InformalOntology tourism_ontology() {
  return ontokit::parse_ontology(fixture_text("catalog/tourism.ttl"), "http://example.org/tourism");
}

inline ontokit::AnnotateOptions rooted_options() {
  ontokit::AnnotateOptions o;
  o.default_parent = ontokit::Gid(1);
  return o;
}

inline ontokit::DecisionSource tourism_decisions() {
  return ontokit::decisions_from(
      ontokit::DecisionScript::parse(fixture_text("workspace/decisions/tourism.txt")));
}

// The seed core after the tourism ontology has been annotated and imported.
inline ontokit::KnowledgeCore tourism_core() {
  auto core = seed_core();
  auto sheet = ontokit::annotate(tourism_ontology(), core, tourism_decisions(), rooted_options());
  ontokit::import_sheet(sheet, core);
  return core;
}

inline std::vector<ontokit::cq::StagedCQ> tourist_cqs(const ontokit::KnowledgeCore& core) {
  auto cqs = ontokit::cq::parse_cq_file(fixture_text("workspace/cqs/tourist_facilities.txt"));
  return ontokit::cq::run_pipeline(cqs, core, fixture_analysis(),
                                   ontokit::cq::CqDecisions::load(fixture("workspace/decisions/cq")));
}

inline ontokit::StructureDecisions tourist_structure() {
  return ontokit::StructureDecisions::parse(fixture_text("workspace/decisions/structure.txt"));
}

inline ontokit::ERModel tourist_er(const ontokit::KnowledgeCore& core) {
  return ontokit::build_er(tourist_cqs(core), tourist_context(), core, tourist_structure());
}

inline ontokit::ETG tourist_etg(ontokit::KnowledgeCore& core) {
  ontokit::FormalizeOptions fo;
  fo.default_parent = ontokit::Gid(1);
  return ontokit::formalize_to_etg(
             tourist_er(core), core,
             ontokit::DecisionScript::parse(fixture_text("workspace/decisions/etg.txt")), fo)
      .etg;
}

inline ontokit::GroundedDomainModel tourist_grounded() {
  auto core = tourism_core();
  return ontokit::ground_to_ft(tourist_etg(core), tourist_structure().refinements);
}

struct CliResult {
  int status = 0;
  std::string out;
  std::string err;
};

inline CliResult run_cli(std::vector<std::string> args, const std::string& input = {}) {
  args.insert(args.begin(), "ontokit");
  std::ostringstream out, err;
  std::istringstream in(input);
  int status = ontokit::run_cli(args, out, err, in);
  return {status, out.str(), err.str()};
}

// The full command sequence over a fixture workspace at `root`; stops at the
// first failing command and returns its result.
inline CliResult run_fixture_sequence(const std::filesystem::path& root) {
  const std::string w = root.string();
  const std::vector<std::vector<std::string>> steps = {
      {"-w", w, "catalog", "rank"},
      {"-w", w, "annotate", (root / "catalog/tourism.ttl").string(), "--decisions",
       (root / "decisions/tourism.txt").string()},
      {"-w", w, "sheet", "import", (root / "sheets/tourism.csv").string()},
      {"-w", w, "cq", "run", (root / "cqs/tourist_facilities.txt").string()},
      {"-w", w, "er", "build"},
      {"-w", w, "etg", "formalize"},
      {"-w", w, "ground"},
      {"-w", w, "export"},
  };
  CliResult last;
  for (const auto& step : steps) {
    last = run_cli(step);
    if (last.status != 0) {
      last.err = step[2] + ": " + last.err;
      return last;
    }
  }
  return last;
}

}  // namespace testing_support
