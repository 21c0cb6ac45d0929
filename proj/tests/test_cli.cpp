#include <gtest/gtest.h>

#include <json.hpp>
#include <regex>

#include "adfkit/audio/wav.hpp"
#include "adfkit/manifest.hpp"
#include "adfkit/presets_bundled.hpp"
#include "adfkit/stub.hpp"
#include "cli_helpers.hpp"
#include "oracles.hpp"

using namespace adfkit;
using clitest::run;
namespace fs = std::filesystem;

namespace {

std::size_t count_lines(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  text::for_each_line(s, [&](std::size_t, std::string_view line) { n += line.find(needle) != std::string_view::npos; });
  return n;
}

std::string S(const fs::path& p) { return p.string(); }

}  // namespace

TEST(Cli, HelpAndBadUsage) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"manifest", "build", "--preset", "iter1"}).code, 1);
  const auto r = run({"preset", "show", "--preset", "iter9"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("iter9"), std::string::npos);
}

TEST(Cli, PresetShowPrintsComponentSums) {
  const auto r = run({"preset", "show", "--preset", "iter2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("108423"), std::string::npos);
  EXPECT_NE(r.out.find("45606"), std::string::npos);
}

TEST(Cli, Iteration1BuildAndValidate) {
  oracle::TempDir t("cli_iter1");
  ASSERT_EQ(run({"catalog", "stub", "--preset", "iter1", "--out", S(t / "cat.tsv")}).code, 0);
  const auto b = run({"manifest", "build", "--preset", "iter1", "--catalog", S(t / "cat.tsv"), "--out", S(t / "m.tsv"),
                      "--seed", "3"});
  ASSERT_EQ(b.code, 0) << b.err;
  const auto m = load_manifest(t / "m.tsv");
  EXPECT_EQ(m.entries.size(), 25380u);

  const auto v = run({"manifest", "validate", "--preset", "iter1", "--manifest", S(t / "m.tsv"), "--catalog",
                      S(t / "cat.tsv"), "--report", S(t / "v.json")});
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_TRUE(nlohmann::json::parse(text::read_file(t / "v.json"))["passed"].get<bool>());

  // Delete one data row.
  std::string bytes = text::read_file(t / "m.tsv");
  const auto first = bytes.find('\n') + 1;
  bytes.erase(first, bytes.find('\n', first) + 1 - first);
  text::write_file(t / "m_short.tsv", bytes);
  const auto bad = run({"manifest", "validate", "--preset", "iter1", "--manifest", S(t / "m_short.tsv")});
  EXPECT_NE(bad.code, 0);
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("FAIL"), std::string::npos) << bad.out;
}

TEST(Cli, Iteration4BuildPrintsArithmeticNotes) {
  oracle::TempDir t("cli_iter4");
  ASSERT_EQ(run({"catalog", "stub", "--preset", "iter4", "--out", S(t / "cat.tsv")}).code, 0);
  const auto b = run({"manifest", "build", "--preset", "iter4", "--catalog", S(t / "cat.tsv"), "--out", S(t / "m.tsv")});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NE(b.out.find("200000"), std::string::npos) << b.out;
  EXPECT_NE(b.out.find("207300"), std::string::npos) << b.out;
  EXPECT_EQ(run({"manifest", "validate", "--preset", "iter4", "--manifest", S(t / "m.tsv")}).code, 0);
}

TEST(Cli, ShortCatalogIsAConstraintError) {
  oracle::TempDir t("cli_short");
  auto cat = stub::generate_stub_catalog(presets::bundled("iter1"), {.margin = 0.0});
  cat.entries.pop_back();
  text::write_file(t / "cat.tsv", serialize_catalog(cat));
  const auto r = run({"manifest", "build", "--preset", "iter1", "--catalog", S(t / "cat.tsv"), "--out", S(t / "m.tsv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("shortfall 1"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(t / "m.tsv"));
}

TEST(Cli, PreprocessWritesFixedLengthSegments) {
  oracle::TempDir t("cli_pre3");
  ASSERT_EQ(clitest::prepare(t.path), 0);
  auto m = load_manifest(t / "manifest.tsv");
  m.entries.resize(3);
  text::write_file(t / "three.tsv", serialize_manifest(m));
  const auto r = run({"preprocess", "--manifest", S(t / "three.tsv"), "--audio-root", S(t / "audio"), "--out-dir",
                      S(t / "out"), "--augment", S(t / "recipe.json"), "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& row : m.entries) {
    const auto clip = audio::read_wav(t / "out" / (row.entry.sample_id + ".seg.wav"));
    EXPECT_EQ(clip.sample_rate_hz, 16000);
    EXPECT_EQ(clip.samples.size(), 64000u);
  }
  const auto log = text::read_file(t / "out" / "preprocess.log");
  EXPECT_EQ(count_lines(log, "\twrote\t"), 3u);
}

TEST(Cli, PreprocessMissingFileKeepGoingAndRerun) {
  oracle::TempDir t("cli_pre_missing");
  ASSERT_EQ(clitest::prepare(t.path), 0);
  const auto m = load_manifest(t / "manifest.tsv");
  fs::remove(t / "audio" / m.entries[2].entry.path);
  const std::vector<std::string> base = {"preprocess", "--manifest", S(t / "manifest.tsv"), "--audio-root",
                                         S(t / "audio"),  "--out-dir",  S(t / "out"),          "--augment",
                                         S(t / "recipe.json")};

  auto strict = run(base);
  EXPECT_EQ(strict.code, 1);
  auto args = base;
  args.push_back("--keep-going");
  const auto r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  const auto failures = text::read_file(t / "out" / "failures.tsv");
  EXPECT_EQ(count_lines(failures, m.entries[2].entry.sample_id), 1u);
  EXPECT_EQ(count_lines(failures, "\t"), 2u);  // header + one row

  // Nothing changed: every previously written file is skipped.
  const auto again = run(args);
  EXPECT_EQ(again.code, 0);
  const auto log = text::read_file(t / "out" / "preprocess.log");
  EXPECT_EQ(count_lines(log, "\twrote\t"), 0u) << log;
  EXPECT_EQ(count_lines(log, "\tskipped\t"), m.entries.size() - 1);
  EXPECT_EQ(count_lines(log, "\tfailed\t"), 1u);

  // A different seed changes the parameters of every row.
  args.insert(args.end(), {"--seed", "9"});
  ASSERT_EQ(run(args).code, 0);
  EXPECT_EQ(count_lines(text::read_file(t / "out" / "preprocess.log"), "\twrote\t"), m.entries.size() - 1);
}

TEST(Cli, PreprocessIsIndependentOfJobsAndRepeatable) {
  oracle::TempDir t("cli_pre_jobs");
  ASSERT_EQ(clitest::prepare(t.path), 0);
  for (const char* dir : {"a", "b", "c"}) {
    const std::string jobs = std::string(dir) == "b" ? "4" : "1";
    ASSERT_EQ(run({"preprocess", "--manifest", S(t / "manifest.tsv"), "--audio-root", S(t / "audio"), "--out-dir",
                   S(t / dir), "--augment", S(t / "recipe.json"), "--seed", "11", "--jobs", jobs})
                  .code,
              0);
  }
  std::size_t compared = 0;
  for (const auto& f : fs::directory_iterator(t / "a")) {
    const auto name = f.path().filename().string();
    if (name.ends_with(".json")) continue;
    EXPECT_EQ(text::read_file(f.path()), text::read_file(t / "b" / name)) << name;
    EXPECT_EQ(text::read_file(f.path()), text::read_file(t / "c" / name)) << name;
    ++compared;
  }
  EXPECT_EQ(compared, 20u + 2u);
}

TEST(Cli, ValidationRowsAreNotAugmented) {
  oracle::TempDir t("cli_pre_val");
  ASSERT_EQ(clitest::prepare(t.path), 0);
  const std::vector<std::string> common = {"preprocess", "--manifest", S(t / "manifest.tsv"), "--audio-root", S(t / "audio")};
  auto with = common;
  with.insert(with.end(), {"--out-dir", S(t / "aug"), "--augment", S(t / "recipe.json")});
  auto without = common;
  without.insert(without.end(), {"--out-dir", S(t / "plain")});
  ASSERT_EQ(run(with).code, 0);
  ASSERT_EQ(run(without).code, 0);
  for (const auto& row : load_manifest(t / "manifest.tsv").entries) {
    const auto name = row.entry.sample_id + ".seg.wav";
    const bool same = text::read_file(t / "aug" / name) == text::read_file(t / "plain" / name);
    EXPECT_EQ(same, row.split == Split::val) << name;
  }
}

TEST(Cli, ScoreAndEvaluateSeparableData) {
  oracle::TempDir t("cli_eval");
  ASSERT_EQ(clitest::prepare(t.path), 0);
  ASSERT_EQ(run({"preprocess", "--manifest", S(t / "manifest.tsv"), "--audio-root", S(t / "audio"), "--out-dir",
                 S(t / "proc")})
                .code,
            0);
  const auto s = run({"score", "--manifest", S(t / "manifest.tsv"), "--processed-dir", S(t / "proc"), "--split", "val",
                      "--out", S(t / "scores.tsv")});
  ASSERT_EQ(s.code, 0) << s.err;
  const auto e = run({"evaluate", "--scores", S(t / "scores.tsv"), "--manifest", S(t / "manifest.tsv"), "--split", "val",
                      "--out-dir", S(t / "rep"), "--iteration", "2", "--frontend", "reference"});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_NE(e.out.find("EER 0.00%"), std::string::npos) << e.out;
  const auto j = nlohmann::json::parse(text::read_file(t / "rep" / "report.json"));
  EXPECT_EQ(j["eer_percent"].get<double>(), 0.0);
  EXPECT_EQ(j["balanced_accuracy"].get<double>(), 1.0);
  EXPECT_EQ(j["n_scored"], 8);
  EXPECT_EQ(j["coverage"]["missing_count"], 0);
  EXPECT_FALSE(j["polarity_warning"].get<bool>());
  EXPECT_TRUE(std::regex_search(text::read_file(t / "rep" / "report.txt"), std::regex(R"(\| 2 +\| reference +\|)")));

  // Same inputs, same report bytes.
  ASSERT_EQ(run({"evaluate", "--scores", S(t / "scores.tsv"), "--manifest", S(t / "manifest.tsv"), "--split", "val",
                 "--out-dir", S(t / "rep2"), "--iteration", "2", "--frontend", "reference"})
                .code,
            0);
  EXPECT_EQ(text::read_file(t / "rep" / "report.json"), text::read_file(t / "rep2" / "report.json"));
  EXPECT_EQ(text::read_file(t / "rep" / "report.txt"), text::read_file(t / "rep2" / "report.txt"));
}

TEST(Cli, EvaluateReportsCoverageAndInvertedScores) {
  oracle::TempDir t("cli_eval_cov");
  ASSERT_EQ(clitest::prepare(t.path), 0);
  const auto m = load_manifest(t / "manifest.tsv");
  std::vector<eval::ScoreRecord> recs;
  for (const auto& row : m.entries)
    if (row.split == Split::val && recs.size() < 7) recs.push_back({row.entry.sample_id, row.entry.label == Label::bonafide ? 0.1 : 0.9});
  text::write_file(t / "scores.tsv", eval::serialize_scores(recs));
  const auto e = run({"evaluate", "--scores", S(t / "scores.tsv"), "--manifest", S(t / "manifest.tsv"), "--split", "val",
                      "--out-dir", S(t / "rep")});
  ASSERT_EQ(e.code, 0) << e.err;
  EXPECT_NE(e.err.find("1 manifest rows have no score"), std::string::npos) << e.err;
  EXPECT_NE(e.err.find("inverted"), std::string::npos) << e.err;
  const auto j = nlohmann::json::parse(text::read_file(t / "rep" / "report.json"));
  EXPECT_TRUE(j["polarity_warning"].get<bool>());
  EXPECT_EQ(j["coverage"]["missing_count"], 1);
}

TEST(Cli, EvaluateRejectsUnknownIds) {
  oracle::TempDir t("cli_eval_unknown");
  ASSERT_EQ(clitest::prepare(t.path), 0);
  text::write_file(t / "scores.tsv", "sample_id\tscore\nnot_in_manifest\t0.5\n");
  const auto e = run({"evaluate", "--scores", S(t / "scores.tsv"), "--manifest", S(t / "manifest.tsv"), "--out-dir",
                      S(t / "rep")});
  EXPECT_EQ(e.code, 1);
  EXPECT_NE(e.err.find("not_in_manifest"), std::string::npos);
  EXPECT_FALSE(fs::exists(t / "rep" / "report.json"));
}

TEST(Cli, ReportCommandsRenderFixtures) {
  oracle::TempDir t("cli_report");
  const std::string fx = ADFKIT_FIXTURES;
  const auto it = run({"report", "iterations", "--input", fx + "/iterations_reported.tsv"});
  ASSERT_EQ(it.code, 0) << it.err;
  EXPECT_NE(it.out.find("**8.42**"), std::string::npos);
  ASSERT_EQ(run({"report", "sources", "--input", fx + "/sources_task1_reported.tsv", "--out", S(t / "t3.md")}).code, 0);
  EXPECT_NE(text::read_file(t / "t3.md").find("**0.39**"), std::string::npos);
  text::write_file(t / "bad.tsv", "category\tsource\tmetric\nx\ty\tnope\n");
  EXPECT_EQ(run({"report", "sources", "--input", S(t / "bad.tsv")}).code, 1);
}

TEST(Cli, EmbeddingsAnalyze) {
  oracle::TempDir t("cli_emb");
  std::string file = "sample_id\tlabel\tv0\tv1\tv2\n";
  SplitMix64 r(4);
  for (int i = 0; i < 40; ++i) {
    const bool spoof = i % 2;
    file += "e" + std::to_string(i) + (spoof ? "\tspoof" : "\tbonafide");
    for (int d = 0; d < 3; ++d) file += "\t" + text::format_double((spoof ? 5.0 : 0.0) + r.uniform(-0.5, 0.5));
    file += "\n";
  }
  text::write_file(t / "emb.tsv", file);
  const auto a = run({"embeddings", "analyze", "--input", S(t / "emb.tsv"), "--out-dir", S(t / "out"), "--svg"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto j = nlohmann::json::parse(text::read_file(t / "out" / "analysis.json"));
  EXPECT_GT(j["silhouette"].get<double>(), 0.9);
  EXPECT_EQ(count_lines(text::read_file(t / "out" / "projection.tsv"), "\t"), 41u);
  EXPECT_TRUE(fs::exists(t / "out" / "scatter.svg"));

  text::write_file(t / "flat.tsv", "sample_id\tlabel\tv0\tv1\na\tspoof\t1\t1\nb\tbonafide\t1\t1\n");
  const auto flat = run({"embeddings", "analyze", "--input", S(t / "flat.tsv"), "--out-dir", S(t / "o2")});
  EXPECT_EQ(flat.code, 1);
  EXPECT_NE(flat.err.find("zero variance"), std::string::npos);
}
