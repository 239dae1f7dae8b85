// encforge: synthesize encounter data, train sequence VAEs, and evaluate them.
//
//   encforge synth        --out DIR [--family F] [--count N] [--noise S] [--seed N]
//   encforge train        --dataset CSV --out DIR [--beta B] [--hidden H] [--latent K] ...
//   encforge sweep        --checkpoint FILE --code K --out DIR
//   encforge disentangle  --checkpoint FILE --out DIR [--sigma-grid ...] [--samples L]
//   encforge rationality  (--checkpoint FILE | --dataset CSV) [--reference CSV] --out DIR
//   encforge serve        --checkpoint FILE [--port P]
//
// Every run that writes outputs also writes resolved_config.toml next to
// them. --config reads the same TOML layout; unknown keys are rejected.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "encforge/cli/commands.hpp"
#include "encforge/cli/service.hpp"
#include "encforge/error.hpp"
#include "encforge/model/checkpoint.hpp"
#include "encforge/numerics/kernels.hpp"

namespace fs = std::filesystem;
using namespace encforge;

namespace {

// Global options plus the options of the subcommand that ran.
void write_resolved_config(const CLI::App& app, const CLI::App& sub, const fs::path& out) {
  std::istringstream all(app.config_to_str(true, false));
  std::ofstream f(out / "resolved_config.toml", std::ios::binary);
  const std::string prefix = sub.get_name() + ".";
  for (std::string line; std::getline(all, line);) {
    const auto eq = line.find('=');
    const std::string key = line.substr(0, eq);
    if (key.find('.') == std::string::npos || key.rfind(prefix, 0) == 0) f << line << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"encforge: two-vehicle encounter sequence VAE toolkit"};
  app.set_config("--config", "", "TOML configuration file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Random seed")->envname("ENCFORGE_SEED");
  std::string kernels;
  app.add_option("--kernels", kernels, "Kernel backend: scalar or avx2 (default: best available)");
  fs::path out = "out";
  app.add_option("--out", out, "Output directory");

  // synth
  cli::SynthCommand synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic encounter dataset");
  synth_cmd->add_option("--family", synth.family,
                        "crossing, same-direction, opposite-direction, merging or mixed");
  synth_cmd->add_option("--count", synth.count, "Number of encounters")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--noise", synth.noise, "Positional noise std-dev (m)")->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--speed-min", synth.speed_min, "Minimum speed (m/s)");
  synth_cmd->add_option("--speed-max", synth.speed_max, "Maximum speed (m/s)");

  // train
  cli::TrainCommand train;
  std::string train_format = "xy";
  std::string variant = "mtg";
  bool no_teacher = false;
  bool no_sample = false;
  auto* train_cmd = app.add_subcommand("train", "Train a model on a CSV dataset");
  train_cmd->add_option("--dataset", train.dataset, "Encounter CSV")->required();
  train_cmd->add_option("--format", train_format, "xy or latlon");
  train_cmd->add_option("--length", train.length, "Resampled sequence length T");
  train_cmd->add_flag("--literal-normalize", train.literal_normalize,
                      "Center each sequence on its own mean");
  train_cmd->add_option("--variant", variant, "mtg or baseline1");
  train_cmd->add_option("--beta", train.train.beta, "KL weight")->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--hidden", train.train.hidden, "GRU hidden width H")->check(CLI::PositiveNumber);
  train_cmd->add_option("--latent", train.train.latent, "Latent width K")->check(CLI::PositiveNumber);
  train_cmd->add_option("--epochs", train.train.epochs, "Training epochs");
  train_cmd->add_option("--batch", train.train.batch_size, "Minibatch size")->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", train.train.learning_rate, "Adam learning rate");
  train_cmd->add_flag("--no-teacher-forcing", no_teacher, "Feed the decoder its own outputs");
  train_cmd->add_flag("--no-sample-latent", no_sample, "Train on z = mu instead of a sampled z");

  // sweep
  cli::SweepCommand sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Traverse one latent code");
  sweep_cmd->add_option("--checkpoint", sweep.checkpoint, "Checkpoint file")->required();
  sweep_cmd->add_option("--code", sweep.code, "Code index k")->required();
  sweep_cmd->add_option("--lo", sweep.lo, "First value");
  sweep_cmd->add_option("--hi", sweep.hi, "Last value");
  sweep_cmd->add_option("--step", sweep.step, "Step size");

  // disentangle
  cli::DisentangleCommand dis;
  std::size_t identity_k = 0;
  auto* dis_cmd = app.add_subcommand("disentangle", "Disentanglement scan and variance ratios");
  auto* dis_ckpt = dis_cmd->add_option("--checkpoint", dis.checkpoint, "Checkpoint file");
  auto* dis_identity =
      dis_cmd->add_option("--identity-fixture", identity_k, "Scan the lossless identity model with K codes");
  dis_ckpt->excludes(dis_identity);
  dis_cmd->add_option("--sigma-grid", dis.sigma_grid, "Input standard deviations")->delimiter(',');
  dis_cmd->add_option("--samples", dis.samples, "Samples L per group");
  dis_cmd->add_flag("--pin-non-target", dis.pin_non_target, "Hold non-target codes at 0");

  // rationality
  cli::RationalityCommand rat;
  fs::path rat_ckpt, rat_dataset, rat_reference;
  std::string rat_format = "xy";
  auto* rat_cmd = app.add_subcommand("rationality", "Distance, speed and direction profiles");
  auto* rat_ckpt_opt = rat_cmd->add_option("--checkpoint", rat_ckpt, "Checkpoint to decode from");
  auto* rat_data_opt = rat_cmd->add_option("--dataset", rat_dataset, "Encounter CSV");
  rat_ckpt_opt->excludes(rat_data_opt);
  rat_cmd->add_option("--z", rat.z, "Latent code to decode (checkpoint mode)")->delimiter(',');
  rat_cmd->add_option("--index", rat.index, "Encounter index (dataset mode)");
  rat_cmd->add_option("--reference", rat_reference, "Reference encounter CSV for overlays");
  rat_cmd->add_option("--format", rat_format, "xy or latlon");
  rat_cmd->add_option("--length", rat.length, "Resampled sequence length T");
  rat_cmd->add_flag("--literal-normalize", rat.literal_normalize,
                    "Center each sequence on its own mean");

  // serve
  fs::path serve_ckpt;
  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve_cmd = app.add_subcommand("serve", "Local JSON inference service");
  serve_cmd->add_option("--checkpoint", serve_ckpt, "Checkpoint file")->required();
  serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", host, "Bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (!kernels.empty()) numerics::kernels::set_backend(numerics::kernels::parse_backend(kernels));

    std::vector<fs::path> written;
    if (*synth_cmd) {
      synth.seed = seed;
      synth.out = out;
      written = cli::run_synth(synth);
    } else if (*train_cmd) {
      train.format = data::parse_csv_format(train_format);
      train.train.variant = model::parse_variant(variant);
      train.train.seed = seed;
      train.train.teacher_forcing = !no_teacher;
      train.train.sample_latent = !no_sample;
      train.out = out;
      written = cli::run_train(train, [&](const model::EpochStats& s) {
        if (s.epoch == 1 || s.epoch % 100 == 0 || s.epoch == train.train.epochs) {
          std::cerr << "epoch " << s.epoch << " total " << s.total << " recon " << s.recon << " kl "
                    << s.kl << '\n';
        }
      });
    } else if (*sweep_cmd) {
      sweep.out = out;
      written = cli::run_sweep(sweep);
    } else if (*dis_cmd) {
      if (*dis_identity) {
        dis.identity_latent = identity_k;
      } else if (!*dis_ckpt) {
        throw ConfigError("disentangle: give --checkpoint or --identity-fixture");
      }
      dis.seed = seed;
      dis.out = out;
      written = cli::run_disentangle(dis);
    } else if (*rat_cmd) {
      if (*rat_ckpt_opt) rat.checkpoint = rat_ckpt;
      if (*rat_data_opt) rat.dataset = rat_dataset;
      if (!rat_reference.empty()) rat.reference = rat_reference;
      rat.format = data::parse_csv_format(rat_format);
      rat.out = out;
      written = cli::run_rationality(rat);
    } else if (*serve_cmd) {
      cli::InferenceService service(model::load_checkpoint(serve_ckpt));
      std::cerr << "serving on http://" << host << ':' << port << '\n';
      cli::serve(service, host, port);
      return 0;
    }
    write_resolved_config(app, *app.get_subcommands().front(), out);
    for (const auto& p : written) std::cout << p.string() << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IndexError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
