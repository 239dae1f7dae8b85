#include "encforge/cli/service.hpp"

#include <charconv>
#include <cmath>

#include <httplib.h>
#include <json.hpp>

#include "encforge/error.hpp"
#include "encforge/metrics/rationality.hpp"
#include "encforge/model/sweep.hpp"

namespace encforge::cli {

using nlohmann::json;

namespace {

HttpResponse ok(const json& j) { return {200, j.dump()}; }

HttpResponse bad_request(const std::string& field, const std::string& message) {
  return {400, json{{"error", message}, {"field", field}}.dump()};
}

json points(const data::Trajectory& s) {
  json arr = json::array();
  for (const auto& p : s) arr.push_back(json::array({p.x, p.y}));
  return arr;
}

// Parses {"z":[K doubles]}; on failure fills `error` and returns nullopt.
std::optional<std::vector<double>> parse_z(const std::string& body, std::size_t K,
                                           HttpResponse& error) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error&) {
    error = bad_request("body", "request body is not valid JSON");
    return std::nullopt;
  }
  if (!doc.is_object() || !doc.contains("z")) {
    error = bad_request("z", "missing field 'z'");
    return std::nullopt;
  }
  const json& z = doc["z"];
  if (!z.is_array()) {
    error = bad_request("z", "field 'z' must be an array of numbers");
    return std::nullopt;
  }
  if (z.size() != K) {
    error = bad_request("z", "field 'z' has " + std::to_string(z.size()) + " values, expected " +
                                 std::to_string(K));
    return std::nullopt;
  }
  std::vector<double> out;
  out.reserve(K);
  for (const json& v : z) {
    if (!v.is_number()) {
      error = bad_request("z", "field 'z' must contain only numbers");
      return std::nullopt;
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      error = bad_request("z", "field 'z' must be finite");
      return std::nullopt;
    }
    out.push_back(d);
  }
  return out;
}

std::optional<double> parse_query_double(const std::optional<std::string>& s, bool& bad) {
  if (!s) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s->data(), s->data() + s->size(), v);
  if (ec != std::errc() || ptr != s->data() + s->size() || !std::isfinite(v)) {
    bad = true;
    return std::nullopt;
  }
  return v;
}

}  // namespace

InferenceService::InferenceService(model::ModelParams params) : params_(std::move(params)) {}

HttpResponse InferenceService::model_info() const {
  const auto& c = params_.config;
  return ok(json{{"K", c.latent}, {"T", c.length}, {"H", c.hidden},
                 {"variant", model::to_string(c.variant)}});
}

HttpResponse InferenceService::decode(const std::string& body) const {
  HttpResponse error;
  const auto z = parse_z(body, params_.config.latent, error);
  if (!z) return error;
  const data::Encounter enc = model::decode(params_, *z, params_.config.length);
  return ok(json{{"s1", points(enc.s1)}, {"s2", points(enc.s2)}});
}

HttpResponse InferenceService::rationality(const std::string& body) const {
  HttpResponse error;
  const auto z = parse_z(body, params_.config.latent, error);
  if (!z) return error;
  const data::Encounter enc = model::decode(params_, *z, params_.config.length);
  const metrics::RationalityReport r = metrics::rationality_report(enc);
  auto summary = [](const metrics::Summary& s) {
    return json{{"mean", s.mean}, {"min", s.min}, {"max", s.max}};
  };
  return ok(json{{"distance", r.distance},
                 {"speed1", r.speed1},
                 {"speed2", r.speed2},
                 {"direction1", r.direction1},
                 {"direction2", r.direction2},
                 {"degenerate_direction", r.degenerate_direction},
                 {"summary",
                  {{"distance", summary(r.distance_summary)},
                   {"speed1", summary(r.speed1_summary)},
                   {"speed2", summary(r.speed2_summary)},
                   {"direction1", summary(r.direction1_summary)},
                   {"direction2", summary(r.direction2_summary)}}}});
}

HttpResponse InferenceService::sweep(const std::optional<std::string>& code,
                                     const std::optional<std::string>& lo,
                                     const std::optional<std::string>& hi,
                                     const std::optional<std::string>& step) const {
  if (!code) return bad_request("code", "missing query parameter 'code'");
  std::size_t k = 0;
  {
    auto [ptr, ec] = std::from_chars(code->data(), code->data() + code->size(), k);
    if (ec != std::errc() || ptr != code->data() + code->size()) {
      return bad_request("code", "query parameter 'code' must be a non-negative integer");
    }
  }
  if (k >= params_.config.latent) {
    return bad_request("code", "code " + std::to_string(k) + " out of range [0, " +
                                   std::to_string(params_.config.latent) + ")");
  }
  model::SweepOptions opts;
  bool bad = false;
  if (auto v = parse_query_double(lo, bad)) opts.lo = *v;
  if (bad) return bad_request("lo", "query parameter 'lo' must be a number");
  if (auto v = parse_query_double(hi, bad)) opts.hi = *v;
  if (bad) return bad_request("hi", "query parameter 'hi' must be a number");
  if (auto v = parse_query_double(step, bad)) opts.step = *v;
  if (bad) return bad_request("step", "query parameter 'step' must be a number");
  if (!(opts.step > 0.0)) return bad_request("step", "query parameter 'step' must be > 0");
  if (!(opts.hi >= opts.lo)) return bad_request("hi", "query parameter 'hi' must be >= lo");

  json frames = json::array();
  for (const auto& f : model::latent_sweep(params_, k, opts)) {
    frames.push_back(
        json{{"value", f.value}, {"s1", points(f.encounter.s1)}, {"s2", points(f.encounter.s2)}});
  }
  return ok(json{{"code", k}, {"frames", std::move(frames)}});
}

void InferenceService::install(httplib::Server& server) const {
  auto reply = [](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body, "application/json");
  };
  auto param = [](const httplib::Request& req, const char* name) -> std::optional<std::string> {
    if (!req.has_param(name)) return std::nullopt;
    return req.get_param_value(name);
  };
  server.Get("/model", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, model_info());
  });
  server.Post("/decode", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, decode(req.body));
  });
  server.Post("/rationality", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, rationality(req.body));
  });
  server.Get("/sweep", [this, reply, param](const httplib::Request& req, httplib::Response& res) {
    reply(res, sweep(param(req, "code"), param(req, "lo"), param(req, "hi"), param(req, "step")));
  });
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

void serve(const InferenceService& service, const std::string& host, int port) {
  httplib::Server server;
  service.install(server);
  if (!server.listen(host, port)) {
    throw Error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

}  // namespace encforge::cli
