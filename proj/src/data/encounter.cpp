#include "encforge/data/encounter.hpp"

#include <cmath>

#include "encforge/error.hpp"

namespace encforge::data {

const char* to_string(NormalizeMode mode) {
  return mode == NormalizeMode::SharedFrame ? "shared-frame" : "per-sequence";
}

NormalizeMode parse_normalize_mode(const std::string& name) {
  if (name == "shared-frame") return NormalizeMode::SharedFrame;
  if (name == "per-sequence") return NormalizeMode::PerSequence;
  throw ConfigError("unknown normalization mode '" + name + "'");
}

void Encounter::validate() const {
  if (s1.empty() || s2.empty()) {
    throw ValidationError("encounter '" + id + "' has an empty trajectory");
  }
  if (s1.size() != s2.size()) {
    throw ValidationError("encounter '" + id + "' has mixed lengths " + std::to_string(s1.size()) +
                          " and " + std::to_string(s2.size()));
  }
}

void Encounter::require_unit_box() const {
  for (const Trajectory* s : {&s1, &s2}) {
    for (const Point& p : *s) {
      if (!(std::abs(p.x) <= 1.0 && std::abs(p.y) <= 1.0)) {
        throw PreconditionError("encounter '" + id +
                                "' is not normalized: coordinate outside [-1, 1]");
      }
    }
  }
}

}  // namespace encforge::data
