#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "encforge/model/model.hpp"

namespace encforge::model {

inline constexpr int kCheckpointVersion = 1;

// JSON document:
//   { "format_version", "variant", "I", "H", "K", "T", "gate_convention",
//     "params": { name: { "shape": [...], "values": [...] } } }
// Parameters appear in store order; values round-trip bit-exactly.
void save_checkpoint(const ModelParams& p, std::ostream& out);
void save_checkpoint(const ModelParams& p, const std::filesystem::path& path);

// Throws LoadError naming the offending field. When `expected` is given, a
// checkpoint of another variant is rejected as an architecture mismatch.
ModelParams load_checkpoint(std::istream& in, std::optional<Variant> expected = std::nullopt);
ModelParams load_checkpoint(const std::filesystem::path& path,
                            std::optional<Variant> expected = std::nullopt);

}  // namespace encforge::model
