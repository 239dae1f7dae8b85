#include "encforge/model/checkpoint.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "encforge/data/io.hpp"
#include "encforge/error.hpp"
#include "encforge/recurrent/gru.hpp"

namespace encforge::model {

namespace {

std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

// Integral-looking values get a ".0" so JSON readers keep them as doubles
// (a bare "-0" would parse as the integer 0 and lose its sign).
std::string checkpoint_double(double v) {
  std::string s = data::format_double(v);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

void save_checkpoint(const ModelParams& p, std::ostream& out) {
  const auto& c = p.config;
  out << "{\n"
      << "  \"format_version\": " << kCheckpointVersion << ",\n"
      << "  \"variant\": " << quoted(to_string(c.variant)) << ",\n"
      << "  \"I\": " << kInputWidth << ",\n"
      << "  \"H\": " << c.hidden << ",\n"
      << "  \"K\": " << c.latent << ",\n"
      << "  \"T\": " << c.length << ",\n"
      << "  \"gate_convention\": " << quoted(recurrent::kGateConvention) << ",\n"
      << "  \"params\": {";
  bool first = true;
  for (const auto& e : p.store) {
    out << (first ? "\n" : ",\n") << "    " << quoted(e.name) << ": {\"shape\": [";
    first = false;
    const auto& shape = e.value.shape();
    for (std::size_t i = 0; i < shape.size(); ++i) out << (i ? ", " : "") << shape[i];
    out << "], \"values\": [";
    const auto vals = e.value.values();
    for (std::size_t i = 0; i < vals.size(); ++i) {
      out << (i ? ", " : "") << checkpoint_double(vals[i]);
    }
    out << "]}";
  }
  out << "\n  }\n}\n";
}

void save_checkpoint(const ModelParams& p, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write checkpoint '" + path.string() + "'");
  save_checkpoint(p, out);
  if (!out) throw Error("write failed for checkpoint '" + path.string() + "'");
}

namespace {

template <typename T>
T field(const nlohmann::ordered_json& j, const char* name) {
  if (!j.contains(name)) throw LoadError(std::string("checkpoint: missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw LoadError(std::string("checkpoint: field '") + name + "' has the wrong type");
  }
}

}  // namespace

ModelParams load_checkpoint(std::istream& in, std::optional<Variant> expected) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw LoadError(std::string("checkpoint: malformed or truncated document (") + e.what() + ")");
  }
  if (!doc.is_object()) throw LoadError("checkpoint: top level is not an object");

  const int version = field<int>(doc, "format_version");
  if (version != kCheckpointVersion) {
    throw LoadError("checkpoint: field 'format_version' is " + std::to_string(version) +
                    ", this build reads " + std::to_string(kCheckpointVersion));
  }
  Variant variant;
  try {
    variant = parse_variant(field<std::string>(doc, "variant"));
  } catch (const ConfigError& e) {
    throw LoadError(std::string("checkpoint: field 'variant': ") + e.what());
  }
  if (expected && *expected != variant) {
    throw LoadError(std::string("checkpoint: architecture mismatch in field 'variant': file holds ") +
                    to_string(variant) + ", expected " + to_string(*expected));
  }
  if (field<std::size_t>(doc, "I") != kInputWidth) {
    throw LoadError("checkpoint: field 'I' must be " + std::to_string(kInputWidth));
  }
  if (field<std::string>(doc, "gate_convention") != recurrent::kGateConvention) {
    throw LoadError("checkpoint: field 'gate_convention' does not match this build");
  }
  ModelConfig config;
  config.variant = variant;
  config.hidden = field<std::size_t>(doc, "H");
  config.latent = field<std::size_t>(doc, "K");
  config.length = field<std::size_t>(doc, "T");
  if (config.hidden < 1 || config.latent < 1 || config.length < 1) {
    throw LoadError("checkpoint: fields 'H', 'K' and 'T' must be >= 1");
  }

  // The freshly initialized skeleton fixes the expected names and shapes.
  ModelParams p = init_params(config, 0);
  if (!doc.contains("params") || !doc["params"].is_object()) {
    throw LoadError("checkpoint: missing field 'params'");
  }
  const auto& params = doc["params"];
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (!p.store.contains(it.key())) throw LoadError("checkpoint: unknown parameter '" + it.key() + "'");
  }
  for (auto& e : p.store) {
    if (!params.contains(e.name)) throw LoadError("checkpoint: missing parameter '" + e.name + "'");
    const auto& entry = params[e.name];
    numerics::Shape shape;
    std::vector<double> values;
    try {
      shape = entry.at("shape").get<numerics::Shape>();
      values = entry.at("values").get<std::vector<double>>();
    } catch (const nlohmann::json::exception&) {
      throw LoadError("checkpoint: parameter '" + e.name + "' is malformed");
    }
    if (shape != e.value.shape()) {
      throw LoadError("checkpoint: parameter '" + e.name + "' has shape " +
                      numerics::shape_string(shape) + ", expected " +
                      numerics::shape_string(e.value.shape()));
    }
    if (values.size() != e.value.size()) {
      throw LoadError("checkpoint: parameter '" + e.name + "' holds " +
                      std::to_string(values.size()) + " values, shape needs " +
                      std::to_string(e.value.size()));
    }
    e.value = numerics::Tensor(shape, std::move(values));
  }
  return p;
}

ModelParams load_checkpoint(const std::filesystem::path& path, std::optional<Variant> expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open checkpoint '" + path.string() + "'");
  return load_checkpoint(in, expected);
}

}  // namespace encforge::model
