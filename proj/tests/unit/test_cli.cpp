#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"
#include "scratch.hpp"
#include "seizcnn/eegio/recording.hpp"
#include "seizcnn/eval/loo.hpp"
#include "seizcnn/eval/stats.hpp"

using namespace seizcnn;
using seizcnn::testing::ScratchDir;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int rc;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int rc = cli::run(args, out, err);
  return {rc, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream is(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::map<std::string, std::string> read_metrics(const fs::path& p) {
  std::map<std::string, std::string> m;
  for (const auto& r : read_csv(p)) {
    if (r.size() == 2) m[r[0]] = r[1];
  }
  return m;
}

std::vector<std::string> small_synth(const fs::path& out, std::size_t subjects) {
  return {"synth", "--subjects", std::to_string(subjects), "--duration", "300", "--channels", "2",
          "--events", "2", "--event-min", "40", "--event-max", "60", "--out", out.string(),
          "--seed", "7"};
}

}  // namespace

TEST(Cli, InspectReportsTotals) {
  const auto a = run({"inspect", "cnn11"});
  EXPECT_EQ(a.rc, 0) << a.err;
  EXPECT_NE(a.out.find("total params: 28642"), std::string::npos);
  EXPECT_NE(a.out.find("final conv receptive field: 212"), std::string::npos);
  const auto b = run({"inspect", "cnn6", "--csv"});
  EXPECT_EQ(b.rc, 0);
  EXPECT_NE(b.out.find("total,,,,,17058"), std::string::npos);
  const auto c = run({"inspect", "cnn6"});
  EXPECT_NE(c.out.find("final conv receptive field: 47"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"inspect", "cnn11", "--input-len", "2"}).rc, 2);
  EXPECT_EQ(run({"inspect", "cnn7"}).rc, 1);
  EXPECT_EQ(run({"synth", "--subjects", "0"}).rc, 1);
  EXPECT_EQ(run({"frobnicate"}).rc, 1);
  EXPECT_EQ(run({}).rc, 1);
  EXPECT_EQ(run({"--help"}).rc, 0);
  ScratchDir dir("cli");
  EXPECT_EQ(run({"eval", "--trace", (dir / "none.csv").string(), "--labels",
                 (dir / "none.csv").string()})
                .rc,
            2);
}

TEST(Cli, ConfigFile) {
  ScratchDir dir("cli");
  std::ofstream(dir / "bad.ini") << "[inspect]\nfrobnicate = 3\n";
  EXPECT_EQ(run({"--config", (dir / "bad.ini").string(), "inspect", "cnn11"}).rc, 1);
  std::ofstream(dir / "good.ini") << "[inspect]\ninput-len = 512\n";
  const auto r = run({"--config", (dir / "good.ini").string(), "inspect", "cnn11"});
  EXPECT_EQ(r.rc, 0) << r.err;
  EXPECT_NE(r.out.find("input 512x1"), std::string::npos) << r.out;
}

TEST(Cli, SynthIsByteIdenticalAcrossRuns) {
  ScratchDir dir("cli");
  const auto a = run(small_synth(dir / "a", 2));
  const auto b = run(small_synth(dir / "b", 2));
  ASSERT_EQ(a.rc, 0) << a.err;
  ASSERT_EQ(b.rc, 0) << b.err;
  for (const std::string f : {"subject01.eeg", "subject01.json", "subject01.csv", "subject02.eeg"}) {
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
  EXPECT_NE(slurp(dir / "a" / "subject01.eeg"), slurp(dir / "a" / "subject02.eeg"));
  const auto rec = eegio::read_recording(dir / "a" / "subject01.eeg");
  EXPECT_EQ(rec.n_channels(), 2u);
  EXPECT_EQ(rec.whole_seconds(), 300u);
}

TEST(Cli, EvalRawOnLabelsIsPerfect) {
  ScratchDir dir("cli");
  eegio::LabelTrack t{"x", std::vector<std::uint8_t>(1800, 0)};
  std::fill(t.labels.begin() + 400, t.labels.begin() + 500, 1);
  eegio::write_labels(t, dir / "x.csv");
  {
    std::ofstream os(dir / "x.trace.csv");
    eval::write_trace_csv(os, std::vector<double>(t.labels.begin(), t.labels.end()));
  }
  const auto r = run({"eval", "--raw", "--trace", (dir / "x.trace.csv").string(), "--labels",
                      (dir / "x.csv").string(), "--out", (dir / "res").string()});
  ASSERT_EQ(r.rc, 0) << r.err;
  const auto m = read_metrics(dir / "res" / "x.metrics.csv");
  EXPECT_EQ(m.at("auc"), "100.000000");
  EXPECT_EQ(m.at("auc90"), "100.000000");
  EXPECT_EQ(m.at("sens_at_fdh"), "100.000000");
  const auto fdh = read_csv(dir / "res" / "x.fdh.csv");
  ASSERT_EQ(fdh.size(), 10u);
  for (std::size_t i = 1; i < fdh.size(); ++i) EXPECT_EQ(fdh[i][1], "0.000000");
  EXPECT_TRUE(fs::exists(dir / "res" / "x.roc.csv"));
}

TEST(Cli, FuseEndpointCopiesInput) {
  ScratchDir dir("cli");
  {
    std::ofstream a(dir / "cnn.trace.csv");
    eval::write_trace_csv(a, std::vector<double>{0.1, 0.7, 0.0, 1.0});
    std::ofstream b(dir / "svm.trace.csv");
    eval::write_trace_csv(b, std::vector<double>{0.0, 0.3333333333333333, 0.9, 0.25});
  }
  const auto r = run({"fuse", "--cnn", (dir / "cnn.trace.csv").string(), "--svm",
                      (dir / "svm.trace.csv").string(), "--alpha", "0", "--mode", "geometric",
                      "--out", dir.path().string()});
  ASSERT_EQ(r.rc, 0) << r.err;
  EXPECT_EQ(slurp(dir / "fused.trace.csv"), slurp(dir / "svm.trace.csv"));
  EXPECT_EQ(run({"fuse", "--cnn", (dir / "cnn.trace.csv").string(), "--svm",
                 (dir / "svm.trace.csv").string(), "--alpha", "1.5", "--out",
                 dir.path().string()})
                .rc,
            1);
}

TEST(Cli, BaselineLooSummaryRow) {
  ScratchDir dir("cli");
  const auto r = run({"loo", "--subjects", "3", "--duration", "600", "--channels", "0",
                      "--arch", "baseline", "--out", dir.path().string(), "--seed", "5"});
  ASSERT_EQ(r.rc, 0) << r.err;
  const auto rows = read_csv(dir / "folds.csv");
  ASSERT_EQ(rows.size(), 6u);
  std::vector<double> aucs;
  for (std::size_t i = 1; i <= 3; ++i) aucs.push_back(std::stod(rows[i][1]));
  const auto ci = eval::mean_ci(aucs);
  EXPECT_EQ(rows[4][0], "mean");
  EXPECT_NEAR(std::stod(rows[4][1]), ci.mean, 2e-6);
  EXPECT_EQ(rows[5][0], "ci95");
  EXPECT_NEAR(std::stod(rows[5][1]), ci.half_width, 2e-6);
  for (std::size_t i = 1; i <= 3; ++i) {
    EXPECT_TRUE(fs::exists(dir / "traces" / (rows[i][0] + ".trace.csv")));
  }
  EXPECT_TRUE(fs::exists(dir / "data" / "subject01.eeg"));
}
