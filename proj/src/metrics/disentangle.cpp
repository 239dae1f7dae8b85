#include "encforge/metrics/disentangle.hpp"

#include <cmath>
#include <random>
#include <string>

#include "encforge/error.hpp"

namespace encforge::metrics {

ModelPair identity_pair(std::size_t latent) {
  ModelPair pair;
  pair.latent = latent;
  pair.decode = [latent](std::span<const double> z) {
    Encounter e;
    e.id = "identity";
    e.s1.resize(latent);
    e.s2.resize(latent);
    for (std::size_t k = 0; k < latent; ++k) e.s1[k].x = z[k];
    return e;
  };
  pair.encode = [latent](const Encounter& e) {
    std::vector<double> z(latent);
    for (std::size_t k = 0; k < latent; ++k) z[k] = e.s1[k].x;
    return z;
  };
  return pair;
}

ModelPair constant_pair(std::size_t latent) {
  ModelPair pair;
  pair.latent = latent;
  pair.decode = [](std::span<const double>) {
    Encounter e;
    e.id = "constant";
    e.s1 = {{0.1, 0.2}, {0.3, 0.4}};
    e.s2 = {{-0.1, -0.2}, {-0.3, -0.4}};
    return e;
  };
  pair.encode = [latent](const Encounter& e) {
    std::vector<double> z(latent);
    for (std::size_t k = 0; k < latent; ++k) z[k] = e.s1[k % 2].x + 0.5 * e.s2[k % 2].y;
    return z;
  };
  return pair;
}

double sample_variance(std::span<const double> values) {
  if (values.size() < 2) throw PreconditionError("sample variance needs at least 2 values");
  const double shift = values.front();
  double mean = 0.0;
  for (double v : values) mean += v - shift;
  mean /= static_cast<double>(values.size());
  double acc = 0.0;
  for (double v : values) {
    const double d = (v - shift) - mean;
    acc += d * d;
  }
  return acc / static_cast<double>(values.size() - 1);
}

namespace {

void check_model(const ModelPair& model) {
  if (model.latent < 1 || !model.decode || !model.encode) {
    throw PreconditionError("model pair needs K >= 1 and both decode and encode");
  }
}

std::vector<double> recover(const ModelPair& model, std::span<const double> z) {
  std::vector<double> out = model.encode(model.decode(z));
  if (out.size() != model.latent) {
    throw DimensionError("encoder returned " + std::to_string(out.size()) + " codes, expected " +
                         std::to_string(model.latent));
  }
  return out;
}

}  // namespace

DisentanglementProfile disentanglement_scan(const ModelPair& model, const ScanOptions& opts) {
  check_model(model);
  if (opts.samples < 2) throw PreconditionError("disentanglement scan needs L >= 2 samples");
  if (opts.sigma_grid.empty()) throw PreconditionError("disentanglement scan needs a sigma grid");
  for (double s : opts.sigma_grid) {
    if (!(s > 0.0)) throw PreconditionError("sigma grid values must be > 0");
  }
  const std::size_t K = model.latent;
  const std::size_t L = opts.samples;

  DisentanglementProfile profile;
  profile.sigma_grid = opts.sigma_grid;
  profile.latent = K;
  profile.samples = L;
  profile.groups.reserve(K * opts.sigma_grid.size());

  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t m = 0; m < opts.sigma_grid.size(); ++m) {
      const double sigma = opts.sigma_grid[m];
      // Each group has its own stream so groups are independent of order.
      std::seed_seq seq{opts.seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(m)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> draw(0.0, sigma);

      std::vector<double> z(K, 0.0);
      for (std::size_t j = 0; j < K; ++j) {
        if (j != i && !opts.pin_non_target) z[j] = draw(rng);
      }
      std::vector<double> inputs(L);
      std::vector<std::vector<double>> recovered(K, std::vector<double>(L));
      for (std::size_t l = 0; l < L; ++l) {
        z[i] = draw(rng);
        inputs[l] = z[i];
        const std::vector<double> zhat = recover(model, z);
        for (std::size_t j = 0; j < K; ++j) recovered[j][l] = zhat[j];
      }
      ScanGroup g;
      g.target = i;
      g.sigma_index = m;
      g.sigma = sigma;
      g.input_variance = sample_variance(inputs);
      g.omega.resize(K);
      for (std::size_t j = 0; j < K; ++j) g.omega[j] = sample_variance(recovered[j]);
      profile.groups.push_back(std::move(g));
    }
  }
  return profile;
}

std::vector<RatioEntry> variance_ratio(const DisentanglementProfile& profile) {
  std::vector<RatioEntry> out;
  out.reserve(profile.groups.size());
  for (const ScanGroup& g : profile.groups) {
    if (!(g.sigma > 0.0)) throw PreconditionError("variance ratio needs sigma > 0");
    RatioEntry r;
    r.code = g.target;
    r.sigma_index = g.sigma_index;
    r.sigma_sq = g.sigma * g.sigma;
    if (g.input_variance > 0.0) {
      r.ratio = g.omega[g.target] / g.input_variance;
    } else {
      r.flagged = true;
    }
    out.push_back(r);
  }
  return out;
}

PriorMetricProfile prior_metric_profile(const ModelPair& model, std::size_t samples,
                                        std::uint64_t seed) {
  check_model(model);
  if (samples < 2) throw PreconditionError("prior metric needs L >= 2 samples");
  const std::size_t K = model.latent;
  const std::size_t L = samples;

  std::seed_seq seq{seed, std::uint64_t{0x9e3779b9}};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);

  // Calibration: population deviation of each recovered code under N(0, I).
  std::vector<std::vector<double>> calib(K, std::vector<double>(L));
  std::vector<double> z(K);
  for (std::size_t l = 0; l < L; ++l) {
    for (double& v : z) v = normal(rng);
    const auto zhat = recover(model, z);
    for (std::size_t j = 0; j < K; ++j) calib[j][l] = zhat[j];
  }
  PriorMetricProfile out;
  out.latent = K;
  out.excluded.assign(K, false);
  std::vector<double> deviation(K);
  for (std::size_t j = 0; j < K; ++j) {
    const double var = sample_variance(calib[j]) * static_cast<double>(L - 1) / static_cast<double>(L);
    deviation[j] = std::sqrt(var);
    out.excluded[j] = !(deviation[j] > 0.0);
  }

  for (std::size_t k = 0; k < K; ++k) {
    std::vector<std::vector<double>> normalized(K, std::vector<double>(L));
    for (std::size_t l = 0; l < L; ++l) {
      for (std::size_t j = 0; j < K; ++j) z[j] = j == k ? 0.0 : normal(rng);
      const auto zhat = recover(model, z);
      for (std::size_t j = 0; j < K; ++j) {
        normalized[j][l] = out.excluded[j] ? 0.0 : zhat[j] / deviation[j];
      }
    }
    std::vector<double> row(K);
    std::optional<std::size_t> lowest;
    for (std::size_t j = 0; j < K; ++j) {
      row[j] = out.excluded[j] ? 0.0 : sample_variance(normalized[j]);
      if (!out.excluded[j] && (!lowest || row[j] < row[*lowest])) lowest = j;
    }
    out.variance.push_back(std::move(row));
    out.lowest.push_back(lowest);
  }
  return out;
}

}  // namespace encforge::metrics
