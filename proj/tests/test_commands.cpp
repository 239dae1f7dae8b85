#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "encforge/cli/commands.hpp"
#include "encforge/error.hpp"
#include "encforge/model/checkpoint.hpp"
#include "test_util.hpp"

using namespace encforge;
using namespace encforge::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("encforge_cmd_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_rows(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

fs::path tiny_dataset(const fs::path& dir) {
  SynthCommand s;
  s.count = 4;
  s.seed = 3;
  s.out = dir / "data";
  return run_synth(s).front();
}

TrainCommand tiny_train(const fs::path& dataset, const fs::path& out) {
  TrainCommand t;
  t.dataset = dataset;
  t.length = 10;
  t.train.hidden = 5;
  t.train.latent = 3;
  t.train.epochs = 3;
  t.train.batch_size = 2;
  t.train.seed = 9;
  t.out = out;
  return t;
}

}  // namespace

TEST(SynthCommand, WritesRequestedCountDeterministically) {
  const auto dir = scratch("synth");
  SynthCommand s;
  s.count = 200;
  s.seed = 42;
  s.out = dir / "a";
  const auto files = run_synth(s);
  ASSERT_EQ(files.size(), 2u);
  const auto encs = data::ingest(files[0]);
  EXPECT_EQ(encs.size(), 200u);
  EXPECT_EQ(data::read_manifest(files[1]).ids.size(), 200u);

  s.out = dir / "b";
  run_synth(s);
  EXPECT_EQ(slurp(dir / "a" / "encounters.csv"), slurp(dir / "b" / "encounters.csv"));
  EXPECT_EQ(slurp(dir / "a" / "manifest.json"), slurp(dir / "b" / "manifest.json"));

  s.seed = 43;
  s.out = dir / "c";
  run_synth(s);
  EXPECT_NE(slurp(dir / "a" / "encounters.csv"), slurp(dir / "c" / "encounters.csv"));
}

TEST(SynthCommand, SingleFamilyAndBadFamily) {
  const auto dir = scratch("synth_family");
  SynthCommand s;
  s.family = "crossing";
  s.count = 7;
  s.out = dir;
  EXPECT_EQ(data::ingest(run_synth(s).front()).size(), 7u);
  s.family = "zigzag";
  EXPECT_THROW(run_synth(s), ConfigError);
}

TEST(TrainCommand, HistoryAndReproducibleCheckpoint) {
  const auto dir = scratch("train");
  const auto dataset = tiny_dataset(dir);
  const auto files = run_train(tiny_train(dataset, dir / "a"));
  ASSERT_EQ(files.size(), 2u);
  const auto rows = read_rows(dir / "a" / "history.csv");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"epoch", "total", "recon", "kl"}));
  EXPECT_EQ(rows[3][0], "3");

  const auto p = model::load_checkpoint(dir / "a" / "checkpoint.json");
  EXPECT_EQ(p.config.latent, 3u);
  EXPECT_EQ(p.config.length, 10u);

  run_train(tiny_train(dataset, dir / "b"));
  EXPECT_EQ(slurp(dir / "a" / "checkpoint.json"), slurp(dir / "b" / "checkpoint.json"));
  EXPECT_EQ(slurp(dir / "a" / "history.csv"), slurp(dir / "b" / "history.csv"));
}

TEST(TrainCommand, MissingDatasetFails) {
  const auto dir = scratch("train_missing");
  EXPECT_THROW(run_train(tiny_train(dir / "nope.csv", dir)), Error);
}

TEST(SweepCommand, WritesCsvAndSvg) {
  const auto dir = scratch("sweep");
  run_train(tiny_train(tiny_dataset(dir), dir / "m"));
  SweepCommand s;
  s.checkpoint = dir / "m" / "checkpoint.json";
  s.code = 2;
  s.out = dir / "out";
  const auto files = run_sweep(s);
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(files[0].filename(), "sweep_code2.csv");
  EXPECT_EQ(files[1].filename(), "sweep_code2.svg");
  const auto rows = read_rows(files[0]);
  EXPECT_EQ(rows.size(), 1u + 21u * 10u);
  EXPECT_NE(slurp(files[1]).find("</svg>"), std::string::npos);
  s.code = 3;
  EXPECT_THROW(run_sweep(s), IndexError);
}

TEST(DisentangleCommand, IdentityFixtureRatiosAreOne) {
  const auto dir = scratch("dis");
  DisentangleCommand d;
  d.identity_latent = 4;
  d.samples = 30;
  d.seed = 1;
  d.out = dir / "a";
  const auto files = run_disentangle(d);
  ASSERT_EQ(files.size(), 4u);
  const auto ratios = read_rows(dir / "a" / "ratio.csv");
  ASSERT_EQ(ratios.size(), 1u + 4u * 10u);
  for (std::size_t r = 1; r < ratios.size(); ++r) EXPECT_EQ(std::stod(ratios[r][2]), 1.0);

  const auto profile = read_rows(dir / "a" / "profile.csv");
  ASSERT_EQ(profile.size(), 1u + 4u * 10u * 4u);
  for (std::size_t r = 1; r < profile.size(); ++r) {
    if (profile[r][0] != profile[r][2]) EXPECT_EQ(std::stod(profile[r][3]), 0.0);
  }
  const std::string svg = slurp(dir / "a" / "disentangle.svg");
  std::size_t rects = 0;
  for (auto pos = svg.find("<rect"); pos != std::string::npos; pos = svg.find("<rect", pos + 1)) ++rects;
  EXPECT_EQ(rects, 1u + 10u + 4u * 4u * 10u);

  d.out = dir / "b";
  run_disentangle(d);
  for (const char* f : {"profile.csv", "ratio.csv", "prior_metric.csv", "disentangle.svg"})
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
}

TEST(DisentangleCommand, CustomGridOnCheckpoint) {
  const auto dir = scratch("dis_ckpt");
  run_train(tiny_train(tiny_dataset(dir), dir / "m"));
  DisentangleCommand d;
  d.checkpoint = dir / "m" / "checkpoint.json";
  d.sigma_grid = {0.5, 1.5};
  d.samples = 5;
  d.out = dir / "out";
  run_disentangle(d);
  EXPECT_EQ(read_rows(dir / "out" / "ratio.csv").size(), 1u + 3u * 2u);
  EXPECT_EQ(read_rows(dir / "out" / "prior_metric.csv").size(), 1u + 3u * 3u);
}

TEST(RationalityCommand, StraightFixtureAndReferenceOverlay) {
  const auto dir = scratch("rat");
  data::Encounter straight;
  straight.id = "straight";
  straight.s1 = encforge::testing::line({0, 0}, {3, 0}, 20);
  straight.s2 = encforge::testing::line({0, 40}, {2, -2}, 20);
  data::export_csv({straight}, dir / "straight.csv");
  data::Encounter other = straight;
  other.id = "other";
  other.s2 = encforge::testing::line({10, 40}, {0, -3}, 20);
  data::export_csv({straight, other}, dir / "ref.csv");

  RationalityCommand r;
  r.dataset = dir / "straight.csv";
  r.length = 20;
  r.out = dir / "plain";
  const auto files = run_rationality(r);
  ASSERT_EQ(files.size(), 4u);
  const auto dir_rows = read_rows(dir / "plain" / "direction.csv");
  ASSERT_EQ(dir_rows.size(), 1u + 18u);
  EXPECT_EQ(dir_rows[0], (std::vector<std::string>{"t", "direction1", "direction2"}));
  for (std::size_t i = 1; i < dir_rows.size(); ++i) {
    EXPECT_NEAR(std::stod(dir_rows[i][1]), 0.0, 1e-9);
    EXPECT_NEAR(std::stod(dir_rows[i][2]), 0.0, 1e-9);
  }
  EXPECT_EQ(read_rows(dir / "plain" / "distance.csv").size(), 21u);
  EXPECT_EQ(read_rows(dir / "plain" / "speed.csv").size(), 20u);
  EXPECT_EQ(read_rows(dir / "plain" / "distance.csv")[0].size(), 2u);

  r.reference = dir / "ref.csv";
  r.out = dir / "ref";
  run_rationality(r);
  EXPECT_EQ(read_rows(dir / "ref" / "distance.csv")[0],
            (std::vector<std::string>{"t", "distance", "reference"}));
  EXPECT_EQ(read_rows(dir / "ref" / "speed.csv")[0].size(), 5u);
  EXPECT_NE(slurp(dir / "ref" / "rationality.svg").find("stroke-dasharray"), std::string::npos);
  EXPECT_EQ(slurp(dir / "plain" / "rationality.svg").find("stroke-dasharray"), std::string::npos);
}

TEST(RationalityCommand, SourceSelectionErrors) {
  const auto dir = scratch("rat_err");
  RationalityCommand r;
  r.out = dir;
  EXPECT_THROW(run_rationality(r), ConfigError);
  data::Encounter e;
  e.id = "only";
  e.s1 = encforge::testing::line({0, 0}, {1, 0}, 5);
  e.s2 = encforge::testing::line({0, 1}, {1, 0}, 5);
  data::export_csv({e}, dir / "one.csv");
  r.dataset = dir / "one.csv";
  r.index = 1;
  EXPECT_THROW(run_rationality(r), IndexError);
}
