#pragma once

// Latent-code disentanglement scan and the variance diagnostics built on it.
//
// For every target code i and input spread σ, the non-target codes are drawn
// once from N(0, σ) and held; then L values of z_i ~ N(0, σ) are decoded to
// encounters and re-encoded (encoder mean, no sampling). The per-dimension
// sample variance of the recovered codes is ω(i, σ). A disentangled, robust
// model shows variance only at j = i, equal to the input variance.
//
// The loop runs decode -> encode: latent codes are turned into trajectories
// and those trajectories are encoded again.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "encforge/data/encounter.hpp"

namespace encforge::metrics {

using data::Encounter;

inline const std::vector<double> kDefaultSigmaGrid = {0.1, 0.4, 0.7, 1.0, 1.3,
                                                     1.6, 1.9, 2.2, 2.5, 2.8};
inline constexpr std::size_t kDefaultScanSamples = 100;

// A decoder/encoder pair over K-dimensional codes.
struct ModelPair {
  std::size_t latent = 0;
  std::function<Encounter(std::span<const double>)> decode;
  std::function<std::vector<double>(const Encounter&)> encode;
};

// Lossless fixture: decode writes z_k into s1[k].x, encode reads it back.
ModelPair identity_pair(std::size_t latent);
// Decoder ignores z; every code decodes to the same encounter.
ModelPair constant_pair(std::size_t latent);

struct ScanOptions {
  std::vector<double> sigma_grid = kDefaultSigmaGrid;
  std::size_t samples = kDefaultScanSamples;  // L
  std::uint64_t seed = 0;
  // Hold non-target codes at 0 instead of one N(0, σ) draw per group.
  bool pin_non_target = false;
};

struct ScanGroup {
  std::size_t target = 0;
  std::size_t sigma_index = 0;
  double sigma = 0.0;
  // Sample variance of the drawn target values.
  double input_variance = 0.0;
  std::vector<double> omega;  // K output variances
};

struct DisentanglementProfile {
  std::vector<double> sigma_grid;
  std::size_t latent = 0;
  std::size_t samples = 0;
  std::vector<ScanGroup> groups;  // target-major, then sigma

  const ScanGroup& group(std::size_t target, std::size_t sigma_index) const {
    return groups[target * sigma_grid.size() + sigma_index];
  }
};

// Unbiased (L - 1) variance, computed on values shifted by the first sample
// so a constant series gives exactly 0.
double sample_variance(std::span<const double> values);

// Throws PreconditionError when L < 2 or the grid is empty or non-positive.
DisentanglementProfile disentanglement_scan(const ModelPair& model, const ScanOptions& opts = {});

struct RatioEntry {
  std::size_t code = 0;
  std::size_t sigma_index = 0;
  double sigma_sq = 0.0;               // nominal input variance σ²
  std::optional<double> ratio;         // ω(i,σ)[i] / realized input variance
  bool flagged = false;                // realized input variance was 0
};

// One entry per group. Uses the realized sample variance of the drawn z_i as
// the denominator so a perfect encode/decode loop gives exactly 1.
std::vector<RatioEntry> variance_ratio(const DisentanglementProfile& profile);

struct PriorMetricProfile {
  std::size_t latent = 0;
  // variance[k][j]: variance of recovered code j, divided by its calibration
  // deviation, when code k is held at 0 and the others drawn from N(0, 1).
  std::vector<std::vector<double>> variance;
  std::vector<bool> excluded;  // zero calibration deviation
  std::vector<std::optional<std::size_t>> lowest;  // per k, argmin over non-excluded codes
};

// Classifier-free variance profile of the fixed-code metric.
PriorMetricProfile prior_metric_profile(const ModelPair& model, std::size_t samples,
                                        std::uint64_t seed);

}  // namespace encforge::metrics
