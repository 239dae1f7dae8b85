#include <gtest/gtest.h>

#include <bit>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "encforge/error.hpp"
#include "encforge/model/checkpoint.hpp"
#include "encforge/recurrent/gru.hpp"

using namespace encforge;
using namespace encforge::model;

namespace {

ModelParams awkward_params(Variant v) {
  auto p = init_params({v, 5, 3, 7}, 31);
  // Values that need all 17 digits, plus subnormals and signed zero.
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& e : p.store)
    for (auto& x : e.value.values()) x = u(rng) / 3.0;
  p.store.entry(0).value[0] = 4.9406564584124654e-324;
  p.store.entry(0).value[1] = -0.0;
  p.store.entry(1).value[0] = 1.7976931348623157e308;
  return p;
}

std::string save_to_string(const ModelParams& p) {
  std::ostringstream out;
  save_checkpoint(p, out);
  return out.str();
}

ModelParams load_from_string(const std::string& s, std::optional<Variant> v = std::nullopt) {
  std::istringstream in(s);
  return load_checkpoint(in, v);
}

void expect_bit_identical(const ModelParams& a, const ModelParams& b) {
  ASSERT_EQ(a.store.size(), b.store.size());
  for (std::size_t i = 0; i < a.store.size(); ++i) {
    const auto& x = a.store.entry(i);
    const auto& y = b.store.entry(i);
    EXPECT_EQ(x.name, y.name);
    ASSERT_EQ(x.value.shape(), y.value.shape());
    for (std::size_t k = 0; k < x.value.size(); ++k) {
      EXPECT_EQ(std::bit_cast<std::uint64_t>(x.value[k]), std::bit_cast<std::uint64_t>(y.value[k]))
          << x.name << "[" << k << "]";
    }
  }
}

std::string expect_load_error(const std::string& doc, std::optional<Variant> v = std::nullopt) {
  try {
    load_from_string(doc, v);
  } catch (const LoadError& e) {
    return e.what();
  }
  ADD_FAILURE() << "no LoadError";
  return {};
}

}  // namespace

TEST(Checkpoint, RoundTripIsBitExact) {
  for (Variant v : {Variant::Mtg, Variant::Baseline1}) {
    const auto p = awkward_params(v);
    const auto q = load_from_string(save_to_string(p), v);
    EXPECT_EQ(q.config, p.config);
    expect_bit_identical(p, q);
    EXPECT_EQ(save_to_string(q), save_to_string(p));
  }
}

TEST(Checkpoint, FileRoundTrip) {
  const auto p = awkward_params(Variant::Mtg);
  const auto path = std::filesystem::temp_directory_path() / "encforge_ckpt_test.json";
  save_checkpoint(p, path);
  expect_bit_identical(p, load_checkpoint(path));
  std::filesystem::remove(path);
  EXPECT_THROW(load_checkpoint(path), LoadError);
}

TEST(Checkpoint, SelfDescribingHeader) {
  const auto doc = nlohmann::json::parse(save_to_string(awkward_params(Variant::Baseline1)));
  EXPECT_EQ(doc["format_version"], kCheckpointVersion);
  EXPECT_EQ(doc["variant"], "baseline1");
  EXPECT_EQ(doc["I"], 4);
  EXPECT_EQ(doc["H"], 5);
  EXPECT_EQ(doc["K"], 3);
  EXPECT_EQ(doc["T"], 7);
  EXPECT_EQ(doc["gate_convention"], recurrent::kGateConvention);
}

TEST(Checkpoint, CrossVariantLoadRejected) {
  const std::string mtg = save_to_string(awkward_params(Variant::Mtg));
  const std::string msg = expect_load_error(mtg, Variant::Baseline1);
  EXPECT_NE(msg.find("architecture mismatch"), std::string::npos) << msg;
  EXPECT_NE(msg.find("variant"), std::string::npos);
}

TEST(Checkpoint, CorruptionNamesTheField) {
  const std::string good = save_to_string(awkward_params(Variant::Mtg));
  EXPECT_NE(expect_load_error(good.substr(0, good.size() / 2)).find("truncated"), std::string::npos);

  auto edit = [&](auto fn) {
    auto doc = nlohmann::ordered_json::parse(good);
    fn(doc);
    return doc.dump();
  };
  EXPECT_NE(expect_load_error(edit([](auto& d) { d["format_version"] = 99; })).find("format_version"),
            std::string::npos);
  EXPECT_NE(expect_load_error(edit([](auto& d) { d.erase("H"); })).find("'H'"), std::string::npos);
  EXPECT_NE(expect_load_error(edit([](auto& d) { d["gate_convention"] = "h=u*h_prev"; }))
                .find("gate_convention"),
            std::string::npos);
  EXPECT_NE(expect_load_error(edit([](auto& d) { d["params"]["head.b_mu"]["shape"][0] = 4; }))
                .find("head.b_mu"),
            std::string::npos);
  EXPECT_NE(expect_load_error(edit([](auto& d) { d["params"]["dec1.out.W"]["values"].erase(0); }))
                .find("dec1.out.W"),
            std::string::npos);
  EXPECT_NE(expect_load_error(edit([](auto& d) { d["params"].erase("dec2.start"); })).find("dec2.start"),
            std::string::npos);
  EXPECT_NE(expect_load_error(edit([](auto& d) { d["variant"] = "gan"; })).find("variant"),
            std::string::npos);
}
