#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "encforge/data/encounter.hpp"
#include "encforge/data/io.hpp"
#include "encforge/model/train.hpp"

namespace encforge::cli {

namespace fs = std::filesystem;

struct SynthCommand {
  std::string family = "mixed";  // a family name, or "mixed" for all four
  std::size_t count = 200;
  double noise = 0.0;
  double speed_min = 5.0;
  double speed_max = 15.0;
  std::uint64_t seed = 0;
  fs::path out = "out";
};

struct TrainCommand {
  fs::path dataset;
  data::CsvFormat format = data::CsvFormat::Xy;
  std::size_t length = 50;
  bool literal_normalize = false;
  model::TrainConfig train;
  fs::path out = "out";
};

struct SweepCommand {
  fs::path checkpoint;
  std::size_t code = 0;
  double lo = -1.0;
  double hi = 1.0;
  double step = 0.1;
  fs::path out = "out";
};

struct DisentangleCommand {
  fs::path checkpoint;
  // Run on the lossless identity fixture with this K instead of a checkpoint.
  std::optional<std::size_t> identity_latent;
  std::vector<double> sigma_grid;  // empty: default grid
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  bool pin_non_target = false;
  fs::path out = "out";
};

struct RationalityCommand {
  // Exactly one of checkpoint / dataset.
  std::optional<fs::path> checkpoint;
  std::vector<double> z;  // decode input for checkpoint mode; zeros when empty
  std::optional<fs::path> dataset;
  std::size_t index = 0;  // encounter within the dataset
  std::optional<fs::path> reference;
  data::CsvFormat format = data::CsvFormat::Xy;
  std::size_t length = 50;
  bool literal_normalize = false;
  fs::path out = "out";
};

// Each writes its artifacts into `out` (created if needed) and returns the
// files it wrote.
std::vector<fs::path> run_synth(const SynthCommand& cmd);
std::vector<fs::path> run_train(const TrainCommand& cmd, const model::EpochCallback& on_epoch = {});
std::vector<fs::path> run_sweep(const SweepCommand& cmd);
std::vector<fs::path> run_disentangle(const DisentangleCommand& cmd);
std::vector<fs::path> run_rationality(const RationalityCommand& cmd);

// Resample to `length` and normalize every encounter.
std::vector<data::Encounter> prepare_dataset(const std::vector<data::Encounter>& raw,
                                             std::size_t length, bool literal_normalize);

}  // namespace encforge::cli
