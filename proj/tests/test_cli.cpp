#include "ontokit/cli.hpp"

#include "ontokit/teleology.hpp"
#include "pipelines.hpp"

using namespace ontokit;
using testing_support::CliResult;
using testing_support::fixture;
using testing_support::make_fixture_workspace;
using testing_support::run_cli;
using testing_support::run_fixture_sequence;
using testing_support::TempDir;

namespace {

std::vector<std::string> artifacts() {
  return {"catalog/ranking.tsv",   "sheets/tourism.csv",  "sheets/tourism.mapping.tsv",
          "core.snapshot",         "models/cqs.staged",   "models/er.model",
          "sheets/etg.csv",        "sheets/etg.mapping.tsv", "models/etg.model",
          "models/grounded.model", "models/domain.ttl"};
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).status, kExitUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).status, kExitUsage);
  EXPECT_EQ(run_cli({"annotate"}).status, kExitUsage);
  TempDir dir;
  auto both = run_cli({"-w", dir.path().string(), "annotate", fixture("catalog/tourism.ttl").string(),
                       "--decisions", "x", "--interactive"});
  EXPECT_EQ(both.status, kExitUsage);
  auto none = run_cli({"-w", dir.path().string(), "annotate", fixture("catalog/tourism.ttl").string()});
  EXPECT_EQ(none.status, kExitUsage);
  EXPECT_NE(none.err.find("error"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
  auto r = run_cli({"--help"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.out.find("annotate"), std::string::npos);
}

TEST(Cli, FtDumpPrintsLattice) {
  auto r = run_cli({"ft", "dump"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_EQ(r.out, ft::dump_lattice());
}

TEST(Cli, GapPlaceholdersFailImport) {
  TempDir dir;
  make_fixture_workspace(dir.path());
  auto before = read_file(dir / "core.snapshot");
  auto r = run_cli({"-w", dir.path().string(), "sheet", "import",
                    fixture("sheets/gap_placeholders.csv").string()});
  EXPECT_EQ(r.status, kExitFailure);
  EXPECT_NE(r.err.find("PlaceholderSequence"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("out of sequence"), std::string::npos);
  EXPECT_EQ(read_file(dir / "core.snapshot"), before);

  auto v = run_cli({"-w", dir.path().string(), "sheet", "validate",
                    fixture("sheets/gap_placeholders.csv").string()});
  EXPECT_EQ(v.status, kExitFailure);
}

TEST(Cli, ParseErrorsNameTheFile) {
  TempDir dir;
  write_file(dir / "bad.ttl", "@prefix ex: <http://e.org/> .\nex:a ex:b\n");
  auto r = run_cli({"-w", dir.path().string(), "ingest", (dir / "bad.ttl").string()});
  EXPECT_EQ(r.status, kExitFailure);
  EXPECT_NE(r.err.find("bad.ttl"), std::string::npos);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(Cli, IngestSummarizes) {
  auto r = run_cli({"ingest", fixture("catalog/tourism.ttl").string()});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.out.find("class: 8 nodes, 6 edges"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("Malga < Facility"), std::string::npos);
}

TEST(Cli, CoreSearch) {
  TempDir dir;
  make_fixture_workspace(dir.path());
  auto r = run_cli({"-w", dir.path().string(), "core", "search", "place"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_EQ(r.out.rfind("2\twsr 2\t", 0), 0u) << r.out;
}

TEST(Cli, InteractiveAnnotation) {
  TempDir dir;
  make_fixture_workspace(dir.path());
  auto r = run_cli({"-w", dir.path().string(), "annotate", fixture("ontologies/facility_malga.ttl").string(),
                    "--interactive", "-o", (dir / "out.csv").string()},
                   "1\nn\nn a malga is a facility in alpine pastures\n");
  ASSERT_EQ(r.status, kExitOk) << r.err;
  auto headless = run_cli({"-w", dir.path().string(), "annotate",
                           fixture("ontologies/facility_malga.ttl").string(), "--decisions",
                           fixture("ontologies/facility_malga.decisions").string(), "-o",
                           (dir / "headless.csv").string()});
  ASSERT_EQ(headless.status, kExitOk) << headless.err;
  auto interactive = read_file(dir / "out.csv");
  auto scripted = read_file(dir / "headless.csv");
  // Only the annotator line may differ.
  EXPECT_EQ(interactive.substr(interactive.find("# core")), scripted.substr(scripted.find("# core")));
}

TEST(Cli, FixtureRunMatchesGolden) {
  TempDir dir;
  make_fixture_workspace(dir.path());
  auto r = run_fixture_sequence(dir.path());
  ASSERT_EQ(r.status, kExitOk) << r.err;
  for (const auto& a : artifacts()) EXPECT_TRUE(std::filesystem::exists(dir / a)) << a;
  EXPECT_EQ(read_file(dir / "models/domain.ttl"),
            read_file(testing_support::source_dir() / "tests/golden/domain.ttl"));

  auto log = read_file(dir / "session.log");
  std::size_t lines = std::count(log.begin(), log.end(), '\n');
  EXPECT_EQ(lines, 8u);
  EXPECT_NE(log.find("\tsheet import\tin sheets/tourism.csv=sha256:"), std::string::npos) << log;
}

TEST(Cli, RunsAreDeterministic) {
  TempDir a, b;
  make_fixture_workspace(a.path());
  make_fixture_workspace(b.path());
  ASSERT_EQ(run_fixture_sequence(a.path()).status, kExitOk);
  ASSERT_EQ(run_fixture_sequence(b.path()).status, kExitOk);
  for (const auto& f : artifacts()) EXPECT_EQ(read_file(a / f), read_file(b / f)) << f;
}
