// Copyright 2026 The Gleason Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "gleason/cli.hpp"
#include "gleason/sample_io.hpp"

namespace gleason {
namespace {

namespace fs = std::filesystem;

std::string spec(const std::string& name) { return std::string(GLEASON_SPECS_DIR) + "/" + name; }

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("gleason-") + info->test_suite_name() + "-" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

cli::RunConfig base(cli::Command command) {
  cli::RunConfig c;
  c.command = command;
  c.timings = false;
  return c;
}

// ---- Sample files ---------------------------------------------------------------------

TEST(SampleIo, RoundTripIsExact) {
  Rng rng = make_rng(131);
  std::vector<LabeledSample> samples;
  for (int r : {1, 2, 1}) {
    Projector e = all_projectors(4, r).sample(rng);
    samples.push_back({std::move(e), std::uniform_real_distribution<double>(-1, 1)(rng)});
  }
  const std::string text = format_samples(4, samples);
  const SampleFile back = parse_samples(text);
  ASSERT_EQ(back.dim, 4);
  ASSERT_EQ(back.samples.size(), 3u);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    EXPECT_EQ(back.samples[k].value, samples[k].value);
    EXPECT_EQ(back.samples[k].projector.matrix(), samples[k].projector.matrix());
    EXPECT_EQ(back.samples[k].projector.rank(), samples[k].projector.rank());
  }
  EXPECT_EQ(format_samples(4, back.samples), text);
}

TEST(SampleIo, EmptyFileHasHeader) {
  const std::string text = format_samples(3, {});
  EXPECT_EQ(text, "gleason-samples 1\ndim 3 count 0\n");
  const SampleFile back = parse_samples(text);
  EXPECT_EQ(back.dim, 3);
  EXPECT_TRUE(back.samples.empty());
}

TEST(SampleIo, CommentsAndBlankLinesIgnored) {
  const std::string text = "# generated\ngleason-samples 1\n\ndim 1 count 1\n1 0.5 1 0\n";
  const SampleFile f = parse_samples(text);
  ASSERT_EQ(f.samples.size(), 1u);
  EXPECT_EQ(f.samples[0].value, 0.5);
}

TEST(SampleIo, MalformedInputsRejected) {
  EXPECT_THROW(parse_samples(""), InvalidArgument);
  EXPECT_THROW(parse_samples("gleason-samples 2\ndim 1 count 0\n"), InvalidArgument);
  EXPECT_THROW(parse_samples("gleason-samples 1\ndim 1 count 2\n1 0.5 1 0\n"), InvalidArgument);
  EXPECT_THROW(parse_samples("gleason-samples 1\ndim 1 count 1\n1 0.5 1\n"), InvalidArgument);
  EXPECT_THROW(parse_samples("gleason-samples 1\ndim 1 count 1\n1 zero 1 0\n"), InvalidArgument);
  // Not idempotent.
  EXPECT_THROW(parse_samples("gleason-samples 1\ndim 1 count 1\n1 0.5 0.5 0\n"), InvalidArgument);
  // Rank field disagrees with the trace.
  EXPECT_THROW(parse_samples("gleason-samples 1\ndim 2 count 1\n2 0.5 1 0 0 0 0 0 0 0\n"), InvalidArgument);
  try {
    parse_samples("gleason-samples 1\ndim 1 count 1\n1 0.5 1\n", "data.txt");
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("data.txt: record 1"), std::string::npos) << e.what();
  }
}

TEST(SampleIo, MissingFileNamesThePath) {
  try {
    read_samples("/nonexistent/dir/samples.txt");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/samples.txt"), std::string::npos);
  }
}

// ---- run() -------------------------------------------------------------------------------

TEST(Run, VerifyGleasonBornPasses) {
  auto c = base(cli::Command::VerifyGleason);
  c.measure_path = spec("born.spec");
  c.dim = 3;
  c.samples = 100;
  c.seed = 7;
  const auto r = cli::run(c);
  EXPECT_EQ(r.exit_code, cli::kExitPass) << r.report.dump(2);
  EXPECT_TRUE(r.report["summary"]["pass"].get<bool>());
}

TEST(Run, FitQuadraticFails) {
  auto c = base(cli::Command::Fit);
  c.measure_path = spec("quadratic.spec");
  c.dim = 3;
  const auto r = cli::run(c);
  EXPECT_EQ(r.exit_code, cli::kExitCheckFailed);
  EXPECT_GT(r.report["checks"][0]["max_residual"].get<double>(), r.report["checks"][0]["tolerance"].get<double>());
}

TEST(Run, ReconstructIndefiniteFails) {
  auto c = base(cli::Command::Reconstruct);
  c.measure_path = spec("indefinite.spec");
  EXPECT_EQ(cli::run(c).exit_code, cli::kExitCheckFailed);
  c.measure_path = spec("born.spec");
  EXPECT_EQ(cli::run(c).exit_code, cli::kExitPass);
}

TEST(Run, UsageErrors) {
  auto c = base(cli::Command::VerifyGleason);
  EXPECT_EQ(cli::run(c).exit_code, cli::kExitUsage);  // no --measure
  c.measure_path = spec("born.spec");
  c.dim = 4;
  EXPECT_EQ(cli::run(c).exit_code, cli::kExitUsage);  // dim mismatch
  c.dim = 3;
  c.h = 0.5;
  EXPECT_EQ(cli::run(c).exit_code, cli::kExitUsage);
  c.h = 1e-3;
  c.measure_path = spec("missing.spec");
  EXPECT_EQ(cli::run(c).exit_code, cli::kExitUsage);
  auto m = base(cli::Command::CheckModel);
  m.model = "bb";
  EXPECT_EQ(cli::run(m).exit_code, cli::kExitUsage);  // no --dim
  m.dim = 3;
  m.model = "nope";
  EXPECT_EQ(cli::run(m).exit_code, cli::kExitUsage);
}

TEST(Run, ReportCarriesSchemaAndFullConfig) {
  auto c = base(cli::Command::SimulateEpr);
  c.rounds = 2000;
  c.points = 3;
  c.seed = 5;
  c.workers = 2;
  c.timings = true;
  const auto r = cli::run(c);
  const Json& j = r.report;
  EXPECT_EQ(j["schema_version"].get<int>(), kSchemaVersion);
  EXPECT_EQ(j["command"], "simulate-epr");
  EXPECT_EQ(j["config"]["seed"].get<std::uint64_t>(), 5u);
  EXPECT_EQ(j["config"]["workers"].get<int>(), 2);
  for (const char* key : {"dim", "samples", "trials", "rounds", "points", "count", "h", "fd_constant",
                          "tolerance", "measure", "input", "output", "csv", "model", "ranks", "a", "b"}) {
    EXPECT_TRUE(j["config"].contains(key)) << key;
  }
  EXPECT_TRUE(j.contains("checks"));
  EXPECT_TRUE(j.contains("summary"));
  EXPECT_TRUE(j.contains("timings"));
  EXPECT_FALSE(cli::without_timings(j).contains("timings"));
}

TEST(Run, SameSeedSameReport) {
  auto c = base(cli::Command::CheckModel);
  c.model = "bb";
  c.dim = 3;
  c.trials = 5000;
  c.samples = 50;
  c.seed = 17;
  c.timings = true;
  const auto x = cli::run(c);
  const auto y = cli::run(c);
  EXPECT_EQ(cli::without_timings(x.report).dump(), cli::without_timings(y.report).dump());
  c.seed = 18;
  EXPECT_NE(cli::without_timings(cli::run(c).report).dump(), cli::without_timings(x.report).dump());
}

TEST(Run, ReportWrittenToOutputPath) {
  TempDir dir;
  auto c = base(cli::Command::Reconstruct);
  c.measure_path = spec("born.spec");
  c.output_path = dir.file("report.json");
  const auto r = cli::run(c);
  ASSERT_EQ(r.exit_code, cli::kExitPass);
  EXPECT_EQ(read_text_file(c.output_path), r.report.dump(2) + "\n");
}

TEST(Run, DefaultSeedFromEnvironment) {
  ::unsetenv("GLEASON_SEED");
  EXPECT_EQ(cli::default_seed(), cli::kDefaultSeed);
  ::setenv("GLEASON_SEED", "1234", 1);
  EXPECT_EQ(cli::default_seed(), 1234u);
  ::setenv("GLEASON_SEED", "12x", 1);
  EXPECT_THROW(cli::default_seed(), cli::UsageError);
  ::unsetenv("GLEASON_SEED");
}

// ---- gen-data -----------------------------------------------------------------------------

TEST(GenData, CountZeroWritesHeaderOnly) {
  TempDir dir;
  auto c = base(cli::Command::GenData);
  c.measure_path = spec("born.spec");
  c.output_path = dir.file("empty.txt");
  c.count = 0;
  ASSERT_EQ(cli::run(c).exit_code, cli::kExitPass);
  EXPECT_EQ(read_text_file(c.output_path), "gleason-samples 1\ndim 3 count 0\n");
}

TEST(GenData, FixedSeedIsByteIdentical) {
  TempDir dir;
  auto c = base(cli::Command::GenData);
  c.measure_path = spec("affine.spec");
  c.ranks = {1, 2};
  c.count = 40;
  c.seed = 9;
  c.output_path = dir.file("a.txt");
  ASSERT_EQ(cli::run(c).exit_code, cli::kExitPass);
  c.output_path = dir.file("b.txt");
  ASSERT_EQ(cli::run(c).exit_code, cli::kExitPass);
  EXPECT_EQ(read_text_file(dir.file("a.txt")), read_text_file(dir.file("b.txt")));
}

TEST(GenData, ThenFitRecoversEta) {
  TempDir dir;
  auto g = base(cli::Command::GenData);
  g.measure_path = spec("affine.spec");
  g.ranks = {1, 2};
  g.count = 120;
  g.output_path = dir.file("samples.txt");
  ASSERT_EQ(cli::run(g).exit_code, cli::kExitPass);

  auto f = base(cli::Command::Fit);
  f.input_path = g.output_path;
  f.ranks = {1, 2};
  const auto r = cli::run(f);
  ASSERT_EQ(r.exit_code, cli::kExitPass) << r.report.dump(2);

  // eta as written in affine.spec; it is already traceless.
  Matrix eta = Matrix::Zero(4, 4);
  eta(0, 1) = Complex(0.0, 0.2);
  eta(1, 0) = Complex(0.0, -0.2);
  eta(2, 2) = 0.2;
  eta(3, 3) = -0.2;
  const Json& fitted = r.report["checks"][0]["details"]["eta"];
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Complex v(fitted[i][j][0].get<double>(), fitted[i][j][1].get<double>());
      worst = std::max(worst, std::abs(v - eta(i, j)));
    }
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(GenData, UnwritablePathIsUsageError) {
  auto c = base(cli::Command::GenData);
  c.measure_path = spec("born.spec");
  c.output_path = "/nonexistent/dir/out.txt";
  const auto r = cli::run(c);
  EXPECT_EQ(r.exit_code, cli::kExitUsage);
  EXPECT_NE(r.report["error"].get<std::string>().find("/nonexistent/dir/out.txt"), std::string::npos);
}

}  // namespace
}  // namespace gleason
