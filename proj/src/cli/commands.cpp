#include "encforge/cli/commands.hpp"

#include <fstream>
#include <sstream>

#include "encforge/data/preprocess.hpp"
#include "encforge/data/synth.hpp"
#include "encforge/error.hpp"
#include "encforge/metrics/disentangle.hpp"
#include "encforge/metrics/export.hpp"
#include "encforge/metrics/model_pair.hpp"
#include "encforge/metrics/rationality.hpp"
#include "encforge/metrics/svg.hpp"
#include "encforge/model/checkpoint.hpp"
#include "encforge/model/sweep.hpp"

namespace encforge::cli {

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error("cannot create output directory '" + dir.string() + "'");
}

template <typename Writer>
fs::path write_file(const fs::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  writer(out);
  if (!out) throw Error("write failed for '" + path.string() + "'");
  return path;
}

}  // namespace

std::vector<data::Encounter> prepare_dataset(const std::vector<data::Encounter>& raw,
                                             std::size_t length, bool literal_normalize) {
  const auto mode =
      literal_normalize ? data::NormalizeMode::PerSequence : data::NormalizeMode::SharedFrame;
  std::vector<data::Encounter> out;
  out.reserve(raw.size());
  for (const auto& e : raw) out.push_back(data::normalize(data::resample(e, length), mode));
  return out;
}

std::vector<fs::path> run_synth(const SynthCommand& cmd) {
  std::vector<data::Encounter> encs;
  if (cmd.family == "mixed") {
    // Round-robin over the four families until `count` is reached.
    const std::size_t per_family = (cmd.count + 3) / 4;
    data::SynthSpec spec;
    spec.noise = cmd.noise;
    spec.speed_min = cmd.speed_min;
    spec.speed_max = cmd.speed_max;
    spec.count = per_family;
    std::vector<std::vector<data::Encounter>> batches;
    std::uint64_t offset = 0;
    for (auto f : {data::EncounterFamily::Crossing, data::EncounterFamily::SameDirection,
                   data::EncounterFamily::OppositeDirection, data::EncounterFamily::Merging}) {
      spec.family = f;
      spec.seed = cmd.seed + offset++;
      batches.push_back(data::synth_generate(spec));
    }
    for (std::size_t i = 0; encs.size() < cmd.count; ++i) {
      encs.push_back(batches[i % 4][i / 4]);
    }
  } else {
    data::SynthSpec spec;
    spec.family = data::parse_family(cmd.family);
    spec.noise = cmd.noise;
    spec.speed_min = cmd.speed_min;
    spec.speed_max = cmd.speed_max;
    spec.seed = cmd.seed;
    spec.count = cmd.count;
    encs = data::synth_generate(spec);
  }
  ensure_dir(cmd.out);
  const fs::path csv = cmd.out / "encounters.csv";
  data::export_csv(encs, csv);
  const fs::path manifest = cmd.out / "manifest.json";
  data::write_manifest(data::make_manifest(encs, csv.filename().string()), manifest);
  return {csv, manifest};
}

std::vector<fs::path> run_train(const TrainCommand& cmd, const model::EpochCallback& on_epoch) {
  const auto raw = data::ingest(cmd.dataset, cmd.format);
  const auto dataset = prepare_dataset(raw, cmd.length, cmd.literal_normalize);
  const model::TrainResult result = model::train(dataset, cmd.train, on_epoch);

  ensure_dir(cmd.out);
  std::vector<fs::path> files;
  files.push_back(cmd.out / "checkpoint.json");
  model::save_checkpoint(result.params, files.back());
  files.push_back(write_file(cmd.out / "history.csv", [&](std::ostream& out) {
    out << "epoch,total,recon,kl\n";
    for (const auto& h : result.history) {
      out << h.epoch << ',' << data::format_double(h.total) << ',' << data::format_double(h.recon)
          << ',' << data::format_double(h.kl) << '\n';
    }
  }));
  return files;
}

std::vector<fs::path> run_sweep(const SweepCommand& cmd) {
  const model::ModelParams params = model::load_checkpoint(cmd.checkpoint);
  model::SweepOptions opts;
  opts.lo = cmd.lo;
  opts.hi = cmd.hi;
  opts.step = cmd.step;
  const auto frames = model::latent_sweep(params, cmd.code, opts);

  ensure_dir(cmd.out);
  const std::string stem = "sweep_code" + std::to_string(cmd.code);
  return {write_file(cmd.out / (stem + ".csv"),
                     [&](std::ostream& out) { metrics::write_sweep_csv(out, frames); }),
          write_file(cmd.out / (stem + ".svg"), [&](std::ostream& out) {
            out << metrics::render_sweep_panel(frames, cmd.code);
          })};
}

std::vector<fs::path> run_disentangle(const DisentangleCommand& cmd) {
  std::optional<model::ModelParams> params;
  metrics::ModelPair pair;
  if (cmd.identity_latent) {
    pair = metrics::identity_pair(*cmd.identity_latent);
  } else {
    params = model::load_checkpoint(cmd.checkpoint);
    pair = metrics::model_pair(*params, params->config.length);
  }
  metrics::ScanOptions opts;
  if (!cmd.sigma_grid.empty()) opts.sigma_grid = cmd.sigma_grid;
  opts.samples = cmd.samples;
  opts.seed = cmd.seed;
  opts.pin_non_target = cmd.pin_non_target;
  const auto profile = metrics::disentanglement_scan(pair, opts);
  const auto ratios = metrics::variance_ratio(profile);
  const auto prior = metrics::prior_metric_profile(pair, cmd.samples, cmd.seed);

  ensure_dir(cmd.out);
  return {
      write_file(cmd.out / "profile.csv",
                 [&](std::ostream& out) { metrics::write_profile_csv(out, profile); }),
      write_file(cmd.out / "ratio.csv", [&](std::ostream& out) { metrics::write_ratio_csv(out, ratios); }),
      write_file(cmd.out / "prior_metric.csv",
                 [&](std::ostream& out) { metrics::write_prior_metric_csv(out, prior); }),
      write_file(cmd.out / "disentangle.svg",
                 [&](std::ostream& out) { out << metrics::render_disentanglement(profile); }),
  };
}

std::vector<fs::path> run_rationality(const RationalityCommand& cmd) {
  if (cmd.checkpoint.has_value() == cmd.dataset.has_value()) {
    throw ConfigError("rationality: give exactly one of --checkpoint or --dataset");
  }
  data::Encounter subject;
  std::size_t length = cmd.length;
  if (cmd.checkpoint) {
    const model::ModelParams params = model::load_checkpoint(*cmd.checkpoint);
    std::vector<double> z = cmd.z;
    if (z.empty()) z.assign(params.config.latent, 0.0);
    if (z.size() != params.config.latent) {
      throw ConfigError("rationality: --z has " + std::to_string(z.size()) + " values, model has K=" +
                        std::to_string(params.config.latent));
    }
    length = params.config.length;
    subject = model::decode(params, z, length);
  } else {
    const auto encs = prepare_dataset(data::ingest(*cmd.dataset, cmd.format), length,
                                      cmd.literal_normalize);
    if (cmd.index >= encs.size()) {
      throw IndexError("rationality: encounter index " + std::to_string(cmd.index) +
                       " out of range (dataset holds " + std::to_string(encs.size()) + ")");
    }
    subject = encs[cmd.index];
  }
  std::optional<std::vector<data::Encounter>> reference;
  if (cmd.reference) {
    reference = prepare_dataset(data::ingest(*cmd.reference, cmd.format), length,
                                cmd.literal_normalize);
  }
  const auto report =
      metrics::rationality_report(subject, reference ? &*reference : nullptr);

  ensure_dir(cmd.out);
  return {
      write_file(cmd.out / "distance.csv",
                 [&](std::ostream& out) { metrics::write_distance_csv(out, report); }),
      write_file(cmd.out / "speed.csv", [&](std::ostream& out) { metrics::write_speed_csv(out, report); }),
      write_file(cmd.out / "direction.csv",
                 [&](std::ostream& out) { metrics::write_direction_csv(out, report); }),
      write_file(cmd.out / "rationality.svg",
                 [&](std::ostream& out) { out << metrics::render_rationality(report); }),
  };
}

}  // namespace encforge::cli
